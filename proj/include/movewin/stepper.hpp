#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "movewin/field.hpp"

namespace movewin {

/// phi_1(z) = (e^z - 1) / z, with phi_1(0) = 1.
Complex phi1(Complex z);

/// e^{i tau Laplacian}: mode k is multiplied by exp(-i tau pi^2 |k|^2 / L^2).
Field free_propagate(const Field& field, double tau);

/// Builds I_{L,N}(chi_{a,L} V) for the window described by a grid.
using PotentialBuilder = std::function<Field(const Grid&)>;

/// P_{L,N}(chi_{a,L} u_0), approximated by interpolation on a grid with twice
/// the cutoff followed by truncation.
Field discretize_initial(const ScalarFn& u0, const Grid& grid, double plateau = 0.5);

/// I_{L,N}(chi_{a,L} V).
Field discretize_potential(const std::function<double(const Point&)>& v, const Grid& grid, double plateau = 0.5);

/// Oversampling factor used by discretize_initial.
inline constexpr int kInitialOversampling = 2;

/// Exponential Euler integrator on the scaled torus:
///   u^{n+1} = e^{i tau Lap} u^n - i tau phi_1(i tau Lap) P_{L,N}(I_{L,N}(chi V) u^n).
///
/// Owns the current field, the fixed potential field of the current window
/// and per-mode symbol caches. A Stepper is confined to one thread.
class Stepper {
 public:
  Stepper(Field initial, Field potential_field, double tau, ProductMode mode = ProductMode::Dealiased,
          double start_time = 0.0);

  const Field& field() const noexcept { return field_; }
  const Field& potential_field() const noexcept { return potential_; }
  const Grid& grid() const noexcept { return field_.grid(); }
  double tau() const noexcept { return tau_; }
  ProductMode mode() const noexcept { return mode_; }

  /// t_n = start + n tau (computed, not accumulated).
  double time() const noexcept { return start_time_ + static_cast<double>(steps_) * tau_; }
  std::int64_t steps_taken() const noexcept { return steps_; }

  /// ||u^n|| from the last step (or the initial field).
  double norm() const noexcept { return norm_; }

  /// Advances one step. Throws NumericalError (with the offending mode)
  /// when a coefficient becomes NaN or Inf.
  void step();

  /// Replaces field and potential on a new window; symbol caches are rebuilt
  /// when (L, N) changed. Time and step count carry over.
  void rebind(Field field, Field potential_field);

  /// True when the cached symbols were built for the current (L, N, tau).
  bool symbols_valid() const noexcept;

 private:
  struct CacheKey {
    std::uint64_t half_width_bits = 0;
    int modes = 0;
    std::uint64_t tau_bits = 0;
    friend bool operator==(const CacheKey&, const CacheKey&) = default;
  };

  CacheKey current_key() const noexcept;
  void rebuild_symbols();
  void rebuild_potential_samples();

  Field field_;
  Field potential_;
  double tau_;
  ProductMode mode_;
  double start_time_;
  std::int64_t steps_ = 0;
  double norm_ = 0.0;

  CacheKey key_;
  std::vector<Complex> propagator_;   // exp(-i tau lambda_k)
  std::vector<Complex> phi_factor_;   // -i tau phi_1(-i tau lambda_k)
  bool potential_is_zero_ = false;
  int product_size_ = 0;              // per-axis length of the product grid
  std::vector<Complex> potential_samples_;  // DFT-ordered samples on the product grid
  std::vector<Complex> work_;
};

}  // namespace movewin
