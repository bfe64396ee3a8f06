#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "movewin/field.hpp"

namespace movewin {

/// Exact solution u(x, t) of the free equation, when one is known.
using SpaceTimeFn = std::function<Complex(const Point&, double)>;

/// Registered initial datum u_0.
struct InitialData {
  std::string id;
  int dim = 1;
  /// gamma with u_0 in H^gamma intersected with L^2(|x|^{2 gamma} dx); 0 means smooth.
  int regularity = 0;
  ScalarFn eval;
  /// Closed-form free evolution (zero potential); empty when unavailable.
  SpaceTimeFn free_solution;
};

/// Registered time-independent, real, compactly supported potential V.
struct Potential {
  std::string id;
  int dim = 0;  ///< 0: any dimension
  /// V vanishes outside the ball (1-D: interval) of this radius about the origin.
  double support_radius = 0.0;
  std::function<double(const Point&)> eval;
  bool is_zero() const { return id == "zero"; }
};

/// Throws InvalidArgument for an unknown id.
const InitialData& initial_data(std::string_view id);
const Potential& potential(std::string_view id);

std::vector<std::string> initial_data_ids();
std::vector<std::string> potential_ids();

Complex eval_initial(std::string_view id, const Point& x);
double eval_potential(std::string_view id, const Point& x);

/// u_0(x) = exp(-(x - center)^2 / width^2 + i wavenumber (x - center)).
struct GaussianPacket {
  double center = 0.0;
  double width = 3.0;
  double wavenumber = 1.0;
};

/// Free evolution of a Gaussian packet under i u_t + u_xx = 0:
///   u = (1 + 4iat)^{-1/2} exp(-a (y - 2 k0 t)^2 / (1 + 4iat)) exp(i k0 y - i k0^2 t),
/// y = x - center, a = 1/width^2. The peak of |u| moves with speed 2 k0.
Complex exact_free_solution(double x, double t, const GaussianPacket& packet);

/// Samples read from a CSV with columns x[,y],re[,im]. The coordinates must
/// coincide with the nodes of `grid` (no interpolation is attempted).
std::vector<Complex> load_tabulated(const std::string& path, const Grid& grid);

}  // namespace movewin
