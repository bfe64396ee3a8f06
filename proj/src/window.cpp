#include "movewin/window.hpp"

#include <algorithm>
#include <sstream>

#include "movewin/error.hpp"

namespace movewin {

void WindowPolicy::validate() const {
  if (!(threshold > 0.0)) throw InvalidArgument("extension threshold must be positive");
  if (check_interval < 1) throw InvalidArgument("check interval must be at least 1");
  if (max_extensions < 0) throw InvalidArgument("max extensions must be non-negative");
}

double boundary_indicator(const Field& field) {
  const auto s = field.samples();
  const Grid& g = field.grid();
  const int n = g.axis_size();
  double best = 0.0;
  if (g.dim() == 1) return std::max(std::abs(s.front()), std::abs(s.back()));
  const auto at = [&](int i, int j) {
    return std::abs(s[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]);
  };
  for (int i = 0; i < n; ++i) {
    best = std::max({best, at(0, i), at(n - 1, i), at(i, 0), at(i, n - 1)});
  }
  return best;
}

int maybe_extend(Stepper& stepper, const WindowPolicy& policy, const PotentialBuilder& rebuild_potential,
                 int extensions_so_far, std::vector<ExtensionEvent>* log) {
  if (!policy.enabled) return 0;
  int done = 0;
  double indicator = boundary_indicator(stepper.field());
  while (indicator >= policy.threshold) {
    if (extensions_so_far + done >= policy.max_extensions) {
      std::ostringstream os;
      os << "window extension limit (" << policy.max_extensions << ") reached at t = " << stepper.time()
         << " with boundary indicator " << indicator;
      throw ExtensionLimitError(os.str());
    }
    const Grid old = stepper.grid();
    const double new_l = 2.0 * old.half_width();
    const int new_n = 2 * old.modes();
    Field resampled = resample_zero_extend(stepper.field(), new_l, new_n);
    Field pot = rebuild_potential(resampled.grid());
    stepper.rebind(std::move(resampled), std::move(pot));
    if (log) log->push_back({stepper.time(), old.half_width(), new_l, old.modes(), new_n, indicator});
    ++done;
    indicator = boundary_indicator(stepper.field());
  }
  return done;
}

}  // namespace movewin
