#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "movewin/config.hpp"

namespace movewin {

struct ProgressRecord {
  std::int64_t step = 0;
  double t = 0.0;
  double norm = 0.0;
  double indicator = 0.0;
};

/// Callbacks fired by evolve; any may be empty.
struct Observers {
  std::function<void(const ProgressRecord&)> progress;
  std::function<void(const Field&, double t, std::int64_t step)> snapshot;
  std::function<void(const ExtensionEvent&)> extension;
};

struct EvolveResult {
  Field field;
  double t = 0.0;
  std::int64_t steps = 0;
  std::vector<ExtensionEvent> extensions;
  double initial_norm = 0.0;
};

/// u^0 on the config's initial window (tabulated data are used as node samples).
Field initial_field(const SimConfig& config);

/// I_{L,N}(chi V) for any window; throws InvalidArgument when asked to
/// rebuild a tabulated potential on a window other than the initial one.
PotentialBuilder potential_builder(const SimConfig& config);

/// Runs T/tau steps. Snapshots are emitted at step 0, every snapshot stride
/// and at the final step; the window check runs before a step every
/// check_interval steps when the policy is enabled.
EvolveResult evolve(const SimConfig& config, const Observers& observers = {});

}  // namespace movewin
