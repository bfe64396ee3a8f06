#pragma once

#include "movewin/grid.hpp"

namespace movewin {

/// b(r) = exp(-1/(1 - r^2)) for |r| < 1 and 0 otherwise.
double bump(double r);

/// Same bump as a function of r^2 (the radial 2-D variant b(x, y)).
double bump_squared(double r_squared);

/// C-infinity ramp: 1 for y <= 0, 0 for y >= 1, strictly decreasing in
/// between, g(y) = h(1-y) / (h(y) + h(1-y)) with h(y) = exp(-1/y).
double transition(double y);

/// Smooth cutoff chi_{a,L}: 1 on [-aL, aL]^d, 0 outside (-L, L)^d.
struct CutoffSpec {
  double plateau = 0.5;  ///< a, in (0, 1)
  double half_width = 1.0;
  int dim = 1;

  /// Throws InvalidArgument on a bad plateau fraction or half-width.
  void validate() const;
};

double cutoff_eval(const CutoffSpec& spec, const Point& x);

}  // namespace movewin
