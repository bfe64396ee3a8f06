#pragma once

#include <vector>

#include "movewin/stepper.hpp"

namespace movewin {

struct WindowPolicy {
  double threshold = 1e-4;  ///< epsilon, compared with the boundary indicator
  int check_interval = 1;   ///< steps between checks
  int max_extensions = 6;
  bool enabled = true;

  /// Throws InvalidArgument unless threshold > 0, check_interval >= 1, max_extensions >= 0.
  void validate() const;
};

struct ExtensionEvent {
  double t = 0.0;
  double old_half_width = 0.0;
  double new_half_width = 0.0;
  int old_modes = 0;
  int new_modes = 0;
  double indicator = 0.0;  ///< value that triggered the extension
};

/// Largest |u| over the outermost shell of grid nodes (1-D: the two end nodes;
/// 2-D: every node with an index component equal to +-N).
double boundary_indicator(const Field& field);

/// One pass of the window-doubling loop: while the indicator is >= threshold,
/// doubles L and N, resamples the field by zero extension and rebinds the
/// stepper with a potential rebuilt on the new window. Events are appended to
/// `log` (may be null). Throws ExtensionLimitError once `extensions_so_far`
/// would exceed the policy cap. Returns the number of extensions performed.
int maybe_extend(Stepper& stepper, const WindowPolicy& policy, const PotentialBuilder& rebuild_potential,
                 int extensions_so_far, std::vector<ExtensionEvent>* log);

}  // namespace movewin
