#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace movewin {

/// A point of R^d. For d = 1 only the first component is used.
using Point = std::array<double, 2>;

/// Collocation geometry of the scaled torus [-L, L]^d with 2N+1 nodes per
/// axis at x_n = 2nL/(2N+1), n = -N..N.
///
/// Storage conventions shared by every array on a grid:
///  - physical samples are ordered by ascending node index n = -N..N,
///  - coefficients use the DFT layout 0, 1, ..., N, -N, ..., -1 per axis,
///  - in 2-D the first axis (x) is the slow index (row-major).
class Grid {
 public:
  /// Throws InvalidArgument unless dim is 1 or 2, half_width > 0, modes >= 1.
  Grid(int dim, double half_width, int modes);

  int dim() const noexcept { return dim_; }
  double half_width() const noexcept { return half_width_; }
  int modes() const noexcept { return modes_; }

  int axis_size() const noexcept { return 2 * modes_ + 1; }
  std::size_t size() const noexcept;
  double spacing() const noexcept { return 2.0 * half_width_ / axis_size(); }

  /// Coordinate of node n, n in [-N, N].
  double node(int n) const noexcept { return 2.0 * n * half_width_ / axis_size(); }
  std::vector<double> axis_nodes() const;

  /// Point for the flat sample index (ascending-node layout).
  Point point(std::size_t flat_index) const noexcept;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int dim_;
  double half_width_;
  int modes_;
};

Grid make_grid(int dim, double half_width, int modes);

/// Wavenumber index k stored at DFT position j of an axis of length 2N+1.
inline int mode_of_index(int j, int modes) noexcept {
  return j <= modes ? j : j - (2 * modes + 1);
}

/// DFT position of wavenumber index k, |k| <= N.
inline int index_of_mode(int k, int modes) noexcept {
  return k >= 0 ? k : k + 2 * modes + 1;
}

}  // namespace movewin
