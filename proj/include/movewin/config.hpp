#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "movewin/window.hpp"

namespace movewin {

/// Full description of one run. Every key of the JSON form mirrors a CLI flag.
struct SimConfig {
  int dim = 1;
  double half_width = 20.0;  ///< L0
  int modes = 800;           ///< N0
  double tau = 1e-2;
  double tmax = 1.0;
  std::string potential = "zero";  ///< registry id or csv:<path>
  std::string initial = "free-gaussian";
  double plateau = 0.5;
  WindowPolicy window;
  bool dealias = true;
  double snapshot_every = 0.0;  ///< time between snapshots; 0: initial and final only
  int progress_every = 1;       ///< steps between progress rows
  std::string out = "out";
  std::uint64_t seed = 0;

  /// Throws InvalidArgument: T/tau (and snapshot_every/tau) must be integral
  /// to 1e-9, N0 >= 4, ids registered and of matching dimension.
  void validate() const;

  std::int64_t step_count() const;
  std::int64_t snapshot_stride() const;  ///< 0 when snapshots are off
  ProductMode product_mode() const { return dealias ? ProductMode::Dealiased : ProductMode::Collocation; }
};

std::string to_json(const SimConfig& config, int indent = 2);

/// Keys absent from the text keep the values already in `base`; unknown keys are rejected.
SimConfig config_from_json(const std::string& text, const SimConfig& base = {});

SimConfig load_config(const std::string& path);

/// Sets one key from its textual value (same key names as the JSON form).
void set_config_key(SimConfig& config, const std::string& key, const std::string& value);

std::vector<std::string> config_keys();

/// 16 hex digits of FNV-1a over the canonical JSON without the output directory.
std::string config_hash(const SimConfig& config);

/// Prefix marking tabulated inputs, e.g. "csv:data/u0.csv".
inline constexpr const char* kTabulatedPrefix = "csv:";
bool is_tabulated(const std::string& id);

}  // namespace movewin
