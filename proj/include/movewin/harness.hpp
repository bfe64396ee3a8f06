#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "movewin/config.hpp"
#include "movewin/physics.hpp"

namespace movewin {

struct ConvergenceRow {
  double param = 0.0;  ///< N or tau
  double half_width = 0.0;
  int modes = 0;
  double tau = 0.0;
  double error = 0.0;
  bool lower_bound = false;  ///< tail of the exact solution outside Omega_2L was not negligible
};

struct ConvergenceTable {
  std::string parameter;  ///< "N" or "tau"
  std::vector<ConvergenceRow> rows;
  double slope = 0.0;
  double residual = 0.0;
  bool partial = false;               ///< some sweep point failed
  std::vector<std::string> failures;  ///< one message per failed point
  std::string reference;              ///< how errors were measured
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  ///< RMS of the log-log residuals
  std::size_t used = 0;
  std::size_t excluded = 0;  ///< rows with non-positive error or parameter
};

/// Least squares of log(error) against log(param). Throws InvalidArgument
/// with fewer than two usable rows.
SlopeFit fit_slope(std::span<const double> params, std::span<const double> errors);
SlopeFit fit_slope(const ConvergenceTable& table);

struct ErrorEstimate {
  double error = 0.0;
  double tail = 0.0;  ///< ||u_exact||_{L^2(Omega_4L \ Omega_2L)}
  bool lower_bound = false;
};

/// ||E u - u_exact(t)||_{L^2(R^d)}: node quadrature over Omega_2L with
/// cutoff 4N plus Gauss-Legendre quadrature of |u_exact|^2 on Omega_4L minus
/// Omega_2L. Flags a lower bound when that tail exceeds 1e-12.
ErrorEstimate error_vs_exact(const Field& field, const SpaceTimeFn& exact, double t);

/// ||E u - E u_ref|| on the reference window, by node quadrature with cutoff
/// 2 N_ref (exact for fields on the reference window). Requires L <= L_ref.
double error_vs_reference(const Field& field, const Field& reference);

/// sqrt(N) rounded to the nearest multiple of 1/4.
double window_for_modes(int modes);

struct SweepOptions {
  std::optional<int> reference_modes;
  std::optional<double> reference_tau;
  /// Use the closed-form solution when the datum has one and V = 0.
  bool prefer_exact = true;
};

enum class TimeCoupling { FixedModes, InverseTau };

/// Runs base at each N with L = window_for_modes(N), extension off, and
/// fits the slope in N. Reference (unless exact): N_ref >= 4 max N,
/// tau_ref <= tau; defaults N_ref = 4 max N, tau_ref = tau.
ConvergenceTable sweep_space(const SimConfig& base, const std::vector<int>& modes, const SweepOptions& options = {});

/// FixedModes: base (L, N) at every tau; reference at the same (L, N) with
/// tau_ref <= tau_min / 4 (default tau_min / 16).
/// InverseTau: N = 1/tau, L = window_for_modes(N); reference N_ref >= 4 max N
/// and tau_ref <= tau_min / 4 (defaults 4 max N and tau_min / 4).
ConvergenceTable sweep_time(const SimConfig& base, const std::vector<double>& taus, TimeCoupling coupling,
                            const SweepOptions& options = {});

/// ||f - E P_{L,N} chi_{a,L} f||_{L^2(R)} over N with L = window_for_modes(N)
/// (1-D). The projection is taken from `oversampling` x N interpolation.
ConvergenceTable projection_rate_check(const ScalarFn& f, const std::vector<int>& modes, double plateau = 0.5,
                                       int oversampling = 16);

}  // namespace movewin
