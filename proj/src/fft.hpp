#pragma once

#include <complex>
#include <cstddef>

namespace movewin::detail {

using Complex = std::complex<double>;

enum class Direction { Forward, Backward };

/// Unnormalized in-place or out-of-place DFT of a 1-D (n0) or 2-D (n0 x n1,
/// row-major) array. Forward uses exp(-2 pi i jk/n); Backward uses the
/// conjugate kernel. Plans are created once per shape and cached; executing
/// a cached plan is safe from any thread.
void fft(int dim, int n0, int n1, Direction direction, const Complex* in, Complex* out);

/// Smallest m >= n whose prime factors are all in {2, 3, 5, 7}.
int smooth_size(int n);

}  // namespace movewin::detail
