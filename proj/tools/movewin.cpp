// movewin: command-line front end over the C API.
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "movewin/movewin.h"

namespace {

struct ConfigFlags {
  std::string config_path;
  std::map<std::string, std::string> values;  // key -> textual value
  bool no_extend = false;
  CLI::Option* dealias = nullptr;
  CLI::Option* no_dealias = nullptr;
};

void add_config_flags(CLI::App& app, ConfigFlags& f) {
  app.add_option("--config", f.config_path, "JSON config file; flags override its values");
  const std::vector<std::pair<std::string, std::string>> flags = {
      {"dim", "dimension (1 or 2)"},
      {"half-width", "initial half-width L0"},
      {"modes", "initial mode cutoff N0"},
      {"tau", "time step"},
      {"tmax", "final time T"},
      {"potential", "potential id or csv:<path>"},
      {"initial", "initial datum id or csv:<path>"},
      {"plateau-fraction", "cutoff plateau fraction a"},
      {"extend-eps", "window extension threshold"},
      {"check-interval", "steps between boundary checks"},
      {"max-extensions", "window extension cap"},
      {"snapshot-every", "time between snapshots (0: first and last)"},
      {"progress-every", "steps between progress rows"},
      {"out", "output directory"},
      {"seed", "RNG seed"},
  };
  for (const auto& [key, help] : flags) {
    app.add_option_function<std::string>("--" + key, [&f, key = key](const std::string& v) { f.values[key] = v; }, help);
  }
  app.add_flag("--no-extend", f.no_extend, "disable window extension");
  f.dealias = app.add_flag("--dealias", "dealiased products (default)");
  f.no_dealias = app.add_flag("--no-dealias", "collocation products");
  f.dealias->excludes(f.no_dealias);
}

int report(mw_status s) {
  if (s != MW_OK) std::fprintf(stderr, "movewin: %s\n", mw_last_error());
  return static_cast<int>(s);
}

// Builds the config: defaults, then file, then flags.
mw_status build_config(const ConfigFlags& f, mw_config** cfg) {
  mw_status s = f.config_path.empty() ? mw_config_create(cfg) : mw_config_load(f.config_path.c_str(), cfg);
  if (s != MW_OK) return s;
  for (const auto& [key, value] : f.values) {
    if ((s = mw_config_set(*cfg, key.c_str(), value.c_str())) != MW_OK) return s;
  }
  if (f.no_extend && (s = mw_config_set(*cfg, "extend", "false")) != MW_OK) return s;
  if (f.dealias->count() && (s = mw_config_set(*cfg, "dealias", "true")) != MW_OK) return s;
  if (f.no_dealias->count() && (s = mw_config_set(*cfg, "dealias", "false")) != MW_OK) return s;
  return mw_config_validate(*cfg);
}

void print_table(const mw_table* t) {
  std::printf("param,L,N,tau,error\n");
  for (size_t i = 0; i < mw_table_rows(t); ++i) {
    double p, l, tau, e;
    int n;
    mw_table_row(t, i, &p, &l, &n, &tau, &e);
    std::printf("%.10g,%.6g,%d,%.10g,%.6e\n", p, l, n, tau, e);
  }
  std::printf("slope %.4f (residual %.3g)%s\n", mw_table_slope(t), mw_table_residual(t),
              mw_table_partial(t) ? " [partial]" : "");
}

int finish_sweep(mw_status s, mw_table* table, mw_config* cfg, const char* kind) {
  if (table) {
    print_table(table);
    char* dir = nullptr;
    const mw_status w = mw_table_write(table, cfg, kind, &dir);
    if (w == MW_OK) {
      std::printf("wrote %s\n", dir);
      mw_string_free(dir);
    } else if (s == MW_OK) {
      s = w;
    }
    mw_table_destroy(table);
  }
  mw_config_destroy(cfg);
  return report(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moving-window Fourier spectral solver for the linear Schroedinger equation"};
  app.require_subcommand(1);

  ConfigFlags run_flags, space_flags, time_flags, demo_flags;

  auto* run = app.add_subcommand("run", "evolve one configuration and write snapshots and logs");
  add_config_flags(*run, run_flags);

  auto* space = app.add_subcommand("conv-space", "spatial convergence sweep");
  add_config_flags(*space, space_flags);
  std::vector<int> sweep_modes;
  int space_ref_modes = 0;
  double space_ref_tau = 0.0;
  space->add_option("--Ns", sweep_modes, "mode cutoffs to sweep")->required()->delimiter(',');
  space->add_option("--ref-modes", space_ref_modes, "reference N (default 4 x max N)");
  space->add_option("--ref-tau", space_ref_tau, "reference tau (default: sweep tau)");

  auto* time = app.add_subcommand("conv-time", "temporal convergence sweep");
  add_config_flags(*time, time_flags);
  std::vector<double> sweep_taus;
  std::string coupling = "fixed";
  int time_ref_modes = 0;
  double time_ref_tau = 0.0;
  time->add_option("--taus", sweep_taus, "time steps to sweep")->required()->delimiter(',');
  time->add_option("--coupling", coupling, "fixed (fixed N) or inverse (N = 1/tau)")
      ->check(CLI::IsMember({"fixed", "inverse"}));
  time->add_option("--ref-modes", time_ref_modes, "reference N (inverse coupling)");
  time->add_option("--ref-tau", time_ref_tau, "reference tau");

  auto* demo = app.add_subcommand("extend-demo", "extended small window vs direct large window");
  add_config_flags(*demo, demo_flags);
  double direct_half_width = 0.0;
  demo->add_option("--direct-half-width", direct_half_width, "large window (default: final extended window)");

  CLI11_PARSE(app, argc, argv);

  mw_config* cfg = nullptr;
  if (run->parsed()) {
    mw_status s = build_config(run_flags, &cfg);
    if (s == MW_OK) {
      mw_field* f = nullptr;
      char* dir = nullptr;
      s = mw_run(cfg, &f, &dir);
      if (s == MW_OK) {
        int d, n;
        double l;
        mw_field_info(f, &d, &l, &n);
        std::printf("wrote %s (final L = %g, N = %d, norm = %.12g)\n", dir, l, n, mw_field_norm(f));
        mw_field_destroy(f);
        mw_string_free(dir);
      }
    }
    mw_config_destroy(cfg);
    return report(s);
  }
  if (space->parsed()) {
    mw_status s = build_config(space_flags, &cfg);
    mw_table* table = nullptr;
    if (s == MW_OK) {
      s = mw_sweep_space(cfg, sweep_modes.data(), sweep_modes.size(), space_ref_modes, space_ref_tau, &table);
    }
    return finish_sweep(s, table, cfg, "conv-space");
  }
  if (time->parsed()) {
    mw_status s = build_config(time_flags, &cfg);
    mw_table* table = nullptr;
    if (s == MW_OK) {
      const auto c = coupling == "inverse" ? MW_COUPLING_N_INV_TAU : MW_COUPLING_FIXED_N;
      s = mw_sweep_time(cfg, sweep_taus.data(), sweep_taus.size(), c, time_ref_modes, time_ref_tau, &table);
    }
    return finish_sweep(s, table, cfg, "conv-time");
  }
  mw_status s = build_config(demo_flags, &cfg);
  if (s == MW_OK) {
    double rel = 0.0;
    char* dir = nullptr;
    s = mw_extend_demo(cfg, direct_half_width, &rel, &dir);
    if (s == MW_OK) {
      std::printf("relative L2 distance %.6e\nwrote %s\n", rel, dir);
      mw_string_free(dir);
    }
  }
  mw_config_destroy(cfg);
  return report(s);
}
