#include "movewin/grid.hpp"

#include <cmath>
#include <string>

#include "movewin/error.hpp"

namespace movewin {

Grid::Grid(int dim, double half_width, int modes)
    : dim_(dim), half_width_(half_width), modes_(modes) {
  if (dim != 1 && dim != 2) {
    throw InvalidArgument("grid dimension must be 1 or 2, got " + std::to_string(dim));
  }
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw InvalidArgument("grid half-width must be positive and finite");
  }
  if (modes < 1) {
    throw InvalidArgument("grid mode cutoff must be >= 1, got " + std::to_string(modes));
  }
}

std::size_t Grid::size() const noexcept {
  const auto n = static_cast<std::size_t>(axis_size());
  return dim_ == 1 ? n : n * n;
}

std::vector<double> Grid::axis_nodes() const {
  std::vector<double> x(static_cast<std::size_t>(axis_size()));
  for (int n = -modes_; n <= modes_; ++n) x[static_cast<std::size_t>(n + modes_)] = node(n);
  return x;
}

Point Grid::point(std::size_t flat_index) const noexcept {
  const auto n = static_cast<std::size_t>(axis_size());
  if (dim_ == 1) return {node(static_cast<int>(flat_index) - modes_), 0.0};
  const auto i = flat_index / n;
  const auto j = flat_index % n;
  return {node(static_cast<int>(i) - modes_), node(static_cast<int>(j) - modes_)};
}

Grid make_grid(int dim, double half_width, int modes) { return Grid(dim, half_width, modes); }

}  // namespace movewin
