#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <span>

#include "movewin/grid.hpp"

namespace movewin::detail {

// Copies cutoff-`modes` coefficients (DFT layout) into a zero-filled array of
// per-axis length m; mode k lands at (stride * k) mod m.
inline void spread_into(int dim, int modes, std::span<const std::complex<double>> coeffs, int m, int stride,
                        std::span<std::complex<double>> out) {
  std::fill(out.begin(), out.end(), std::complex<double>{});
  const int n = 2 * modes + 1;
  const auto mm = static_cast<std::size_t>(m);
  auto target = [&](int j) {
    const int k = mode_of_index(j, modes) * stride;
    return static_cast<std::size_t>(((k % m) + m) % m);
  };
  if (dim == 1) {
    for (int j = 0; j < n; ++j) out[target(j)] = coeffs[static_cast<std::size_t>(j)];
    return;
  }
  const auto nn = static_cast<std::size_t>(n);
  for (int jx = 0; jx < n; ++jx) {
    const auto row = target(jx) * mm;
    for (int jy = 0; jy < n; ++jy) out[row + target(jy)] = coeffs[static_cast<std::size_t>(jx) * nn + static_cast<std::size_t>(jy)];
  }
}

// Flat index in an array of per-axis length m holding the mode stored at
// DFT position (jx, jy) of a cutoff-`modes` array.
inline std::size_t source_index(int dim, int modes, int m, int jx, int jy) {
  auto wrap = [&](int j) {
    const int k = mode_of_index(j, modes);
    return static_cast<std::size_t>(((k % m) + m) % m);
  };
  if (dim == 1) return wrap(jx);
  return wrap(jx) * static_cast<std::size_t>(m) + wrap(jy);
}

}  // namespace movewin::detail
