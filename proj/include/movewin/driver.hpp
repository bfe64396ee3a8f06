#pragma once

#include <optional>
#include <string>
#include <vector>

#include "movewin/harness.hpp"
#include "movewin/io.hpp"

namespace movewin {

struct RunReport {
  std::string run_dir;
  EvolveResult result;
  std::size_t snapshots = 0;
};

/// out/<run-id>/, run-id = first 12 hex digits of the config hash.
std::string run_directory(const SimConfig& config, const std::string& kind = "run");

/// Evolves and writes config.json, progress.csv, extensions.csv,
/// snapshots/{step}.csv + .bin and summary.json under run_directory().
RunReport run(const SimConfig& config);

struct ExtendDemoReport {
  std::string run_dir;
  EvolveResult extended;
  EvolveResult direct;
  double distance = 0.0;
  double relative_distance = 0.0;
};

/// Runs `config` with its window policy, then a fixed run on the extended
/// run's final window (or on `direct_half_width` with N scaled to keep N/L),
/// and reports the L^2 distance of the two final fields.
ExtendDemoReport extend_demo(const SimConfig& config, std::optional<double> direct_half_width = std::nullopt);

/// Writes table.csv, summary.json and config.json of a sweep.
std::string write_sweep(const SimConfig& config, const ConvergenceTable& table, const std::string& kind);

}  // namespace movewin
