#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "movewin/grid.hpp"

namespace movewin {

using Complex = std::complex<double>;

/// Pointwise-evaluable function of x (initial data, potentials, exact solutions).
using ScalarFn = std::function<Complex(const Point&)>;

/// Element of S_{L,N}: the trigonometric polynomial
///   u(x) = sum_{|k|_inf <= N} a_k exp(i pi k.x / L)
/// stored by its coefficients a_k (DFT layout, see Grid). Immutable value.
class Field {
 public:
  explicit Field(Grid grid);  ///< zero field
  Field(Grid grid, std::vector<Complex> coeffs);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }

  /// Coefficient of wavenumber index k (k[1] ignored in 1-D).
  Complex coeff(int kx, int ky = 0) const;

  /// Physical samples at the collocation nodes (ascending-node layout).
  std::vector<Complex> samples() const;

  /// Value of the trigonometric polynomial at an arbitrary point.
  Complex evaluate(const Point& x) const;

 private:
  Grid grid_;
  std::vector<Complex> coeffs_;
};

/// Coefficients a_k of the interpolant of the given node samples.
std::vector<Complex> forward(const Grid& grid, std::span<const Complex> samples);

/// Node samples of the trigonometric polynomial with the given coefficients.
std::vector<Complex> inverse(const Grid& grid, std::span<const Complex> coeffs);

Field field_from_samples(const Grid& grid, std::span<const Complex> samples);

/// P_{L,M}: drops every mode with |k|_inf > M; the result lives on cutoff M.
Field project(const Field& field, int cutoff);

/// I_{L,N} f: the trigonometric interpolant of f at the grid nodes.
Field interpolate_fn(const ScalarFn& f, const Grid& grid);

enum class ProductMode {
  Dealiased,    ///< exact P_{L,N}(f g) via a padded grid of >= 4N+1 points per axis
  Collocation,  ///< I_{L,N}(f g): pointwise product on the native 2N+1 grid
};

/// P_{L,N} of the product of two fields on the same grid.
Field multiply(const Field& f, const Field& g, ProductMode mode = ProductMode::Dealiased);

/// Per-axis size of the padded grid used by the dealiased product.
int padded_size(int modes);

/// P_{L',N'} I_{L',2N'} E u: evaluates the zero extension of `field` on the
/// grid of [-L', L']^d with cutoff 2N', transforms and truncates to N'.
/// Exact zero-padding is used when L'/L is an integer; otherwise the old
/// polynomial is evaluated directly at the new nodes.
Field resample_zero_extend(const Field& field, double new_half_width, int new_modes);

/// Samples of the zero extension E u at the nodes of `target`, in
/// ascending-node layout (zero at nodes with some |x_i| >= L).
std::vector<Complex> zero_extended_samples(const Field& field, const Grid& target);

/// ||u||_{L^2(Omega_L)} = (2L)^{d/2} ||a||_{l^2}.
double l2_norm(const Field& field);

/// L^2 distance; fields on different grids are compared on the larger window
/// after resample_zero_extend of the other one.
double l2_distance(const Field& f, const Field& g);

/// a f + b g for fields on the same grid.
Field axpby(Complex a, const Field& f, Complex b, const Field& g);

}  // namespace movewin
