#include "movewin/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "movewin/cutoff.hpp"
#include "movewin/error.hpp"
#include "movewin/evolve.hpp"
#include "parallel.hpp"

namespace movewin {
namespace {

constexpr double kTailTolerance = 1e-12;

struct Rule {
  std::vector<double> nodes;  // on [-1, 1]
  std::vector<double> weights;
};

// Gauss-Legendre by Newton iteration on P_n.
Rule gauss_legendre(int n) {
  Rule r{std::vector<double>(static_cast<std::size_t>(n)), std::vector<double>(static_cast<std::size_t>(n))};
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.nodes[static_cast<std::size_t>(i)] = x;
    r.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

const Rule& rule8() {
  static const Rule r = gauss_legendre(8);
  return r;
}

// Composite 8-point nodes and weights on [a, b] with panels of width <= h.
void composite(double a, double b, double h, std::vector<double>& x, std::vector<double>& w) {
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / h)));
  const double width = (b - a) / panels;
  const Rule& r = rule8();
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * width;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      x.push_back(mid + 0.5 * width * r.nodes[i]);
      w.push_back(0.5 * width * r.weights[i]);
    }
  }
}

double panel_width(double extent) { return std::max(0.25, extent / 512.0); }

// Integral of |u(., t)|^2 over [-outer, outer]^d minus [-inner, inner]^d.
double shell_mass(const SpaceTimeFn& u, double t, int dim, double inner, double outer) {
  std::vector<double> xs, ws;
  composite(inner, outer, panel_width(outer - inner), xs, ws);
  double sum = 0.0;
  if (dim == 1) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sum += ws[i] * (std::norm(u({xs[i], 0.0}, t)) + std::norm(u({-xs[i], 0.0}, t)));
    }
    return sum;
  }
  std::vector<double> ys, vs;
  composite(-inner, inner, panel_width(2.0 * inner), ys, vs);
  std::vector<double> full_x, full_w;
  composite(-outer, outer, panel_width(2.0 * outer), full_x, full_w);
  // Two strips |y| in [inner, outer] across the full width, two side blocks.
  for (std::size_t i = 0; i < full_x.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const double w = full_w[i] * ws[j];
      sum += w * (std::norm(u({full_x[i], xs[j]}, t)) + std::norm(u({full_x[i], -xs[j]}, t)));
    }
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      const double w = ws[i] * vs[j];
      sum += w * (std::norm(u({xs[i], ys[j]}, t)) + std::norm(u({-xs[i], ys[j]}, t)));
    }
  }
  return sum;
}

double node_quadrature(const Grid& q, std::span<const Complex> a, std::span<const Complex> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::norm(a[i] - b[i]);
  return std::pow(q.spacing(), q.dim()) * sum;
}

struct Job {
  SimConfig config;
  ConvergenceRow row;
};

struct Plan {
  std::vector<Job> points;
  std::optional<SimConfig> reference;
  const InitialData* exact = nullptr;
};

SimConfig fixed_window(SimConfig c) {
  c.window.enabled = false;
  return c;
}

const InitialData* exact_for(const SimConfig& base, const SweepOptions& options) {
  if (!options.prefer_exact || is_tabulated(base.initial) || is_tabulated(base.potential)) return nullptr;
  if (!potential(base.potential).is_zero()) return nullptr;
  const auto& u0 = initial_data(base.initial);
  return u0.free_solution ? &u0 : nullptr;
}

std::string describe(const SimConfig& c) {
  std::ostringstream os;
  os << "reference run L=" << c.half_width << " N=" << c.modes << " tau=" << c.tau << " T=" << c.tmax
     << " dealias=" << (c.dealias ? "on" : "off");
  return os.str();
}

ConvergenceTable execute(Plan plan, std::string parameter) {
  ConvergenceTable table;
  table.parameter = std::move(parameter);
  const std::size_t n = plan.points.size();
  const bool has_ref = plan.reference.has_value();
  std::vector<std::optional<Field>> results(n + (has_ref ? 1 : 0));
  std::vector<std::string> errors(results.size());

  // Reference first in the job order so the largest run starts early.
  detail::parallel_for(results.size(), [&](std::size_t i) {
    const SimConfig& cfg = (has_ref && i == 0) ? *plan.reference : plan.points[i - (has_ref ? 1 : 0)].config;
    try {
      results[i] = evolve(cfg).field;
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  if (has_ref && !results[0]) {
    throw NumericalError("reference run failed: " + errors[0], -1, -1);
  }
  if (plan.exact) {
    table.reference = "exact:" + plan.exact->id;
  } else {
    table.reference = describe(*plan.reference);
  }

  std::vector<std::optional<ConvergenceRow>> rows(n);
  detail::parallel_for(n, [&](std::size_t i) {
    const std::size_t slot = i + (has_ref ? 1 : 0);
    if (!results[slot]) return;
    ConvergenceRow row = plan.points[i].row;
    try {
      if (plan.exact) {
        const auto est = error_vs_exact(*results[slot], plan.exact->free_solution, plan.points[i].config.tmax);
        row.error = est.error;
        row.lower_bound = est.lower_bound;
      } else {
        row.error = error_vs_reference(*results[slot], *results[0]);
      }
      rows[i] = row;
    } catch (const std::exception& e) {
      errors[slot] = e.what();
    }
  });

  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i]) {
      table.rows.push_back(*rows[i]);
    } else {
      table.partial = true;
      std::ostringstream os;
      os << table.parameter << "=" << plan.points[i].row.param << ": " << errors[i + (has_ref ? 1 : 0)];
      table.failures.push_back(os.str());
    }
  }
  if (table.rows.size() >= 2) {
    const auto fit = fit_slope(table);
    table.slope = fit.slope;
    table.residual = fit.residual;
  } else {
    table.partial = true;
    table.slope = std::nan("");
    table.residual = std::nan("");
  }
  return table;
}

void require_sweep(std::size_t count) {
  if (count < 3) throw InvalidArgument("a sweep needs at least 3 points");
}

}  // namespace

SlopeFit fit_slope(std::span<const double> params, std::span<const double> errors) {
  if (params.size() != errors.size()) throw InvalidArgument("fit_slope: size mismatch");
  std::vector<double> x, y;
  SlopeFit fit;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (params[i] > 0.0 && errors[i] > 0.0 && std::isfinite(errors[i])) {
      x.push_back(std::log(params[i]));
      y.push_back(std::log(errors[i]));
    } else {
      ++fit.excluded;
    }
  }
  fit.used = x.size();
  if (fit.used < 2) throw InvalidArgument("fit_slope: fewer than two positive rows");
  const double m = static_cast<double>(fit.used);
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw InvalidArgument("fit_slope: parameters are all equal");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    rss += r * r;
  }
  fit.residual = std::sqrt(rss / m);
  return fit;
}

SlopeFit fit_slope(const ConvergenceTable& table) {
  std::vector<double> p, e;
  for (const auto& r : table.rows) {
    p.push_back(r.param);
    e.push_back(r.error);
  }
  return fit_slope(p, e);
}

ErrorEstimate error_vs_exact(const Field& field, const SpaceTimeFn& exact, double t) {
  if (!exact) throw InvalidArgument("error_vs_exact: no exact solution");
  const Grid& g = field.grid();
  const Grid q(g.dim(), 2.0 * g.half_width(), 4 * g.modes());
  const auto numeric = zero_extended_samples(field, q);
  std::vector<Complex> truth(q.size());
  for (std::size_t i = 0; i < truth.size(); ++i) truth[i] = exact(q.point(i), t);
  const double inside = node_quadrature(q, numeric, truth);
  const double tail = shell_mass(exact, t, g.dim(), 2.0 * g.half_width(), 4.0 * g.half_width());
  ErrorEstimate est;
  est.tail = std::sqrt(tail);
  est.error = std::sqrt(inside + tail);
  est.lower_bound = est.tail > kTailTolerance;
  return est;
}

double error_vs_reference(const Field& field, const Field& reference) {
  const Grid& r = reference.grid();
  if (field.grid().dim() != r.dim()) throw InvalidArgument("error_vs_reference: dimension mismatch");
  if (field.grid().half_width() > r.half_width() * (1.0 + 1e-12)) {
    throw InvalidArgument("error_vs_reference: reference window is smaller than the field's");
  }
  const Grid q(r.dim(), r.half_width(), 2 * r.modes());
  const auto a = zero_extended_samples(field, q);
  const auto b = zero_extended_samples(reference, q);
  return std::sqrt(node_quadrature(q, a, b));
}

double window_for_modes(int modes) {
  if (modes < 1) throw InvalidArgument("window_for_modes: modes must be positive");
  return std::round(4.0 * std::sqrt(static_cast<double>(modes))) / 4.0;
}

ConvergenceTable sweep_space(const SimConfig& base, const std::vector<int>& modes, const SweepOptions& options) {
  require_sweep(modes.size());
  base.validate();
  Plan plan;
  plan.exact = exact_for(base, options);
  for (int n : modes) {
    SimConfig c = fixed_window(base);
    c.modes = n;
    c.half_width = window_for_modes(n);
    c.validate();
    plan.points.push_back({c, {static_cast<double>(n), c.half_width, n, c.tau, 0.0, false}});
  }
  if (!plan.exact) {
    const int max_n = *std::max_element(modes.begin(), modes.end());
    SimConfig ref = fixed_window(base);
    ref.modes = options.reference_modes.value_or(4 * max_n);
    ref.tau = options.reference_tau.value_or(base.tau);
    if (ref.modes < 4 * max_n) throw InvalidArgument("reference N must be at least 4 x the largest sweep N");
    if (ref.tau > base.tau) throw InvalidArgument("reference tau must not exceed the sweep tau");
    ref.half_width = window_for_modes(ref.modes);
    ref.validate();
    plan.reference = ref;
  }
  return execute(std::move(plan), "N");
}

ConvergenceTable sweep_time(const SimConfig& base, const std::vector<double>& taus, TimeCoupling coupling,
                            const SweepOptions& options) {
  require_sweep(taus.size());
  base.validate();
  Plan plan;
  plan.exact = exact_for(base, options);
  const double tau_min = *std::min_element(taus.begin(), taus.end());
  int max_n = 0;
  for (double tau : taus) {
    SimConfig c = fixed_window(base);
    c.tau = tau;
    if (coupling == TimeCoupling::InverseTau) {
      c.modes = static_cast<int>(std::lround(1.0 / tau));
      c.half_width = window_for_modes(c.modes);
    }
    max_n = std::max(max_n, c.modes);
    c.validate();
    plan.points.push_back({c, {tau, c.half_width, c.modes, tau, 0.0, false}});
  }
  if (!plan.exact) {
    SimConfig ref = fixed_window(base);
    if (coupling == TimeCoupling::FixedModes) {
      ref.tau = options.reference_tau.value_or(tau_min / 16.0);
      if (options.reference_modes && *options.reference_modes != base.modes) {
        throw InvalidArgument("a fixed-N time sweep uses its own N for the reference");
      }
    } else {
      ref.tau = options.reference_tau.value_or(tau_min / 4.0);
      ref.modes = options.reference_modes.value_or(4 * max_n);
      if (ref.modes < 4 * max_n) throw InvalidArgument("reference N must be at least 4 x the largest sweep N");
      ref.half_width = window_for_modes(ref.modes);
    }
    if (ref.tau > tau_min / 4.0 * (1.0 + 1e-12)) throw InvalidArgument("reference tau must be at most tau_min / 4");
    ref.validate();
    plan.reference = ref;
  }
  return execute(std::move(plan), "tau");
}

ConvergenceTable projection_rate_check(const ScalarFn& f, const std::vector<int>& modes, double plateau,
                                       int oversampling) {
  require_sweep(modes.size());
  if (oversampling < 2) throw InvalidArgument("projection_rate_check: oversampling must be at least 2");
  ConvergenceTable table;
  table.parameter = "N";
  table.reference = "quadrature";
  for (int n : modes) {
    const double l = window_for_modes(n);
    const CutoffSpec cut{plateau, l, 1};
    cut.validate();
    const Grid fine(1, l, oversampling * n);
    const Field truncated = interpolate_fn([&](const Point& x) { return cutoff_eval(cut, x) * f(x); }, fine);
    const Field approx = project(truncated, n);
    // Inside Omega_L: node quadrature on the fine grid.
    const auto values = zero_extended_samples(approx, fine);
    std::vector<Complex> truth(fine.size());
    for (std::size_t i = 0; i < truth.size(); ++i) truth[i] = f(fine.point(i));
    const double inside = node_quadrature(fine, values, truth);
    // Outside: int_L^inf g(x) dx = int_0^1 g(L/s) L/s^2 ds on both sides.
    std::vector<double> s, w;
    composite(0.0, 1.0, 1.0 / 64.0, s, w);
    double tail = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double x = l / s[i];
      tail += w[i] * (std::norm(f({x, 0.0})) + std::norm(f({-x, 0.0}))) * l / (s[i] * s[i]);
    }
    table.rows.push_back({static_cast<double>(n), l, n, 0.0, std::sqrt(inside + tail), false});
  }
  const auto fit = fit_slope(table);
  table.slope = fit.slope;
  table.residual = fit.residual;
  return table;
}

}  // namespace movewin
