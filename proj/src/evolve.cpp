#include "movewin/evolve.hpp"

#include "movewin/cutoff.hpp"
#include "movewin/error.hpp"
#include "movewin/physics.hpp"

namespace movewin {
namespace {

std::string tabulated_path(const std::string& id) { return id.substr(std::string(kTabulatedPrefix).size()); }

Grid initial_grid(const SimConfig& c) { return Grid(c.dim, c.half_width, c.modes); }

// Tabulated samples are taken as given at the nodes; the cutoff is still applied.
Field cut_samples(std::vector<Complex> values, const Grid& grid, double plateau) {
  const CutoffSpec cut{plateau, grid.half_width(), grid.dim()};
  for (std::size_t i = 0; i < values.size(); ++i) values[i] *= cutoff_eval(cut, grid.point(i));
  return field_from_samples(grid, values);
}

}  // namespace

Field initial_field(const SimConfig& config) {
  const Grid grid = initial_grid(config);
  if (is_tabulated(config.initial)) {
    return cut_samples(load_tabulated(tabulated_path(config.initial), grid), grid, config.plateau);
  }
  return discretize_initial(initial_data(config.initial).eval, grid, config.plateau);
}

PotentialBuilder potential_builder(const SimConfig& config) {
  if (is_tabulated(config.potential)) {
    const Grid home = initial_grid(config);
    auto values = load_tabulated(tabulated_path(config.potential), home);
    for (auto& v : values) v = v.real();
    const Field table = cut_samples(std::move(values), home, config.plateau);
    return [table, id = config.potential](const Grid& grid) {
      if (!(grid == table.grid())) {
        throw InvalidArgument("tabulated potential '" + id + "' cannot be rebuilt on a new window; disable extension");
      }
      return table;
    };
  }
  const auto& v = potential(config.potential);
  const double plateau = config.plateau;
  if (v.is_zero()) return [](const Grid& grid) { return Field(grid); };
  return [eval = v.eval, plateau](const Grid& grid) { return discretize_potential(eval, grid, plateau); };
}

EvolveResult evolve(const SimConfig& config, const Observers& observers) {
  config.validate();
  const auto steps = config.step_count();
  const auto stride = config.snapshot_stride();
  const auto rebuild = potential_builder(config);

  Field u0 = initial_field(config);
  Field v0 = rebuild(u0.grid());
  Stepper stepper(std::move(u0), std::move(v0), config.tau, config.product_mode());

  EvolveResult result{stepper.field(), 0.0, 0, {}, stepper.norm()};
  int extensions = 0;
  const bool want_indicator = static_cast<bool>(observers.progress);

  const auto report = [&] {
    if (observers.progress && stepper.steps_taken() % config.progress_every == 0) {
      observers.progress({stepper.steps_taken(), stepper.time(), stepper.norm(),
                          want_indicator ? boundary_indicator(stepper.field()) : 0.0});
    }
  };

  report();
  if (observers.snapshot) observers.snapshot(stepper.field(), stepper.time(), 0);

  for (std::int64_t n = 0; n < steps; ++n) {
    if (config.window.enabled && n % config.window.check_interval == 0) {
      const auto before = result.extensions.size();
      extensions += maybe_extend(stepper, config.window, rebuild, extensions, &result.extensions);
      if (observers.extension) {
        for (auto i = before; i < result.extensions.size(); ++i) observers.extension(result.extensions[i]);
      }
    }
    stepper.step();
    report();
    const auto done = stepper.steps_taken();
    if (observers.snapshot && ((stride > 0 && done % stride == 0) || done == steps)) {
      observers.snapshot(stepper.field(), stepper.time(), done);
    }
  }

  result.field = stepper.field();
  result.t = stepper.time();
  result.steps = stepper.steps_taken();
  return result;
}

}  // namespace movewin
