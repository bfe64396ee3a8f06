#include "movewin/cutoff.hpp"

#include <cmath>

#include "movewin/error.hpp"

namespace movewin {
namespace {

// exp(-1/y) underflows to exactly zero well before y reaches 1e-300.
double h(double y) { return y > 1e-300 ? std::exp(-1.0 / y) : 0.0; }

}  // namespace

double bump_squared(double r_squared) {
  if (!(r_squared < 1.0)) return 0.0;
  return std::exp(-1.0 / (1.0 - r_squared));
}

double bump(double r) { return bump_squared(r * r); }

double transition(double y) {
  if (y <= 0.0) return 1.0;
  if (y >= 1.0) return 0.0;
  const double right = h(1.0 - y);
  return right / (h(y) + right);
}

void CutoffSpec::validate() const {
  if (!(plateau > 0.0 && plateau < 1.0)) throw InvalidArgument("cutoff plateau fraction must lie in (0, 1)");
  if (!(half_width > 0.0)) throw InvalidArgument("cutoff half-width must be positive");
  if (dim != 1 && dim != 2) throw InvalidArgument("cutoff dimension must be 1 or 2");
}

double cutoff_eval(const CutoffSpec& spec, const Point& x) {
  double value = 1.0;
  for (int i = 0; i < spec.dim; ++i) {
    value *= transition((std::abs(x[static_cast<std::size_t>(i)]) / spec.half_width - spec.plateau) / (1.0 - spec.plateau));
  }
  return value;
}

}  // namespace movewin
