#include "movewin/stepper.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fft.hpp"
#include "layout.hpp"
#include "movewin/cutoff.hpp"
#include "movewin/error.hpp"

namespace movewin {
namespace {

using namespace std::complex_literals;

constexpr double kSeriesRadius = 1e-4;

// |k|^2 (exact integer) for every stored mode.
std::vector<std::int64_t> squared_modes(const Grid& grid) {
  const int n = grid.axis_size();
  std::vector<std::int64_t> k2(grid.size());
  if (grid.dim() == 1) {
    for (int j = 0; j < n; ++j) {
      const std::int64_t k = mode_of_index(j, grid.modes());
      k2[static_cast<std::size_t>(j)] = k * k;
    }
  } else {
    for (int jx = 0; jx < n; ++jx) {
      const std::int64_t kx = mode_of_index(jx, grid.modes());
      for (int jy = 0; jy < n; ++jy) {
        const std::int64_t ky = mode_of_index(jy, grid.modes());
        k2[static_cast<std::size_t>(jx) * static_cast<std::size_t>(n) + static_cast<std::size_t>(jy)] = kx * kx + ky * ky;
      }
    }
  }
  return k2;
}

// exp(-i tau (pi/L)^2 |k|^2). The phase can reach 1e5 rad or more, so it is
// formed and reduced mod 2 pi in long double before the double cos/sin.
struct PhaseTable {
  long double scale;  // tau (pi/L)^2
  Complex operator()(std::int64_t k2) const {
    constexpr long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    const long double phase = std::fmod(scale * static_cast<long double>(k2), two_pi);
    return std::polar(1.0, -static_cast<double>(phase));
  }
};

PhaseTable phases(double tau, double half_width) {
  const long double w = std::numbers::pi_v<long double> / static_cast<long double>(half_width);
  return {static_cast<long double>(tau) * w * w};
}

std::string describe_mode(const Grid& grid, std::size_t flat) {
  std::ostringstream os;
  const int n = grid.axis_size();
  if (grid.dim() == 1) {
    os << "k = " << mode_of_index(static_cast<int>(flat), grid.modes());
  } else {
    os << "k = (" << mode_of_index(static_cast<int>(flat / static_cast<std::size_t>(n)), grid.modes()) << ", "
       << mode_of_index(static_cast<int>(flat % static_cast<std::size_t>(n)), grid.modes()) << ")";
  }
  return os.str();
}

}  // namespace

Complex phi1(Complex z) {
  if (std::abs(z) < kSeriesRadius) {
    return 1.0 + z * (1.0 / 2.0 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z * (1.0 / 120.0))));
  }
  // e^z - 1 without cancellation: (e^x cos y - 1) = expm1(x) cos y - 2 sin^2(y/2).
  const double x = z.real();
  const double y = z.imag();
  const double half = std::sin(0.5 * y);
  const double ex = std::exp(x);
  const Complex em1{std::expm1(x) * std::cos(y) - 2.0 * half * half, ex * std::sin(y)};
  return em1 / z;
}

Field free_propagate(const Field& field, double tau) {
  const auto k2 = squared_modes(field.grid());
  const auto phase = phases(tau, field.grid().half_width());
  std::vector<Complex> out(field.coeffs().begin(), field.coeffs().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= phase(k2[i]);
  return Field(field.grid(), std::move(out));
}

Field discretize_initial(const ScalarFn& u0, const Grid& grid, double plateau) {
  const CutoffSpec cut{plateau, grid.half_width(), grid.dim()};
  cut.validate();
  const Grid fine(grid.dim(), grid.half_width(), kInitialOversampling * grid.modes());
  const auto truncated = [&](const Point& x) { return cutoff_eval(cut, x) * u0(x); };
  return project(interpolate_fn(truncated, fine), grid.modes());
}

Field discretize_potential(const std::function<double(const Point&)>& v, const Grid& grid, double plateau) {
  const CutoffSpec cut{plateau, grid.half_width(), grid.dim()};
  cut.validate();
  return interpolate_fn([&](const Point& x) { return Complex{cutoff_eval(cut, x) * v(x), 0.0}; }, grid);
}

Stepper::Stepper(Field initial, Field potential_field, double tau, ProductMode mode, double start_time)
    : field_(std::move(initial)),
      potential_(std::move(potential_field)),
      tau_(tau),
      mode_(mode),
      start_time_(start_time) {
  if (!std::isfinite(tau)) throw InvalidArgument("time step must be finite");
  if (!(field_.grid() == potential_.grid())) throw InvalidArgument("stepper: field and potential grids differ");
  norm_ = l2_norm(field_);
  rebuild_symbols();
  rebuild_potential_samples();
}

Stepper::CacheKey Stepper::current_key() const noexcept {
  return {std::bit_cast<std::uint64_t>(grid().half_width()), grid().modes(), std::bit_cast<std::uint64_t>(tau_)};
}

bool Stepper::symbols_valid() const noexcept { return key_ == current_key() && propagator_.size() == grid().size(); }

void Stepper::rebuild_symbols() {
  const auto k2 = squared_modes(grid());
  const auto phase = phases(tau_, grid().half_width());
  const double w = std::numbers::pi / grid().half_width();
  propagator_.resize(k2.size());
  phi_factor_.resize(k2.size());
  for (std::size_t i = 0; i < k2.size(); ++i) {
    const Complex z{0.0, -tau_ * w * w * static_cast<double>(k2[i])};
    propagator_[i] = phase(k2[i]);
    phi_factor_[i] = Complex{0.0, -tau_} * phi1(z);
  }
  key_ = current_key();
}

void Stepper::rebuild_potential_samples() {
  potential_is_zero_ = true;
  for (const auto& c : potential_.coeffs()) {
    if (c != Complex{}) {
      potential_is_zero_ = false;
      break;
    }
  }
  const Grid& g = grid();
  const int d = g.dim();
  product_size_ = mode_ == ProductMode::Dealiased ? padded_size(g.modes()) : g.axis_size();
  const auto m = static_cast<std::size_t>(product_size_);
  const std::size_t total = d == 1 ? m : m * m;
  if (potential_is_zero_) {
    potential_samples_.clear();
    work_.clear();
    return;
  }
  potential_samples_.assign(total, Complex{});
  detail::spread_into(d, g.modes(), potential_.coeffs(), product_size_, 1, potential_samples_);
  detail::fft(d, product_size_, product_size_, detail::Direction::Backward, potential_samples_.data(),
              potential_samples_.data());
  // Fold the 1/M^d normalization of the forward transform into the samples.
  const double scale = 1.0 / static_cast<double>(total);
  for (auto& v : potential_samples_) v *= scale;
  work_.assign(total, Complex{});
}

void Stepper::rebind(Field field, Field potential_field) {
  if (!(field.grid() == potential_field.grid())) throw InvalidArgument("stepper: field and potential grids differ");
  field_ = std::move(field);
  potential_ = std::move(potential_field);
  norm_ = l2_norm(field_);
  if (!symbols_valid()) rebuild_symbols();
  rebuild_potential_samples();
}

void Stepper::step() {
  const Grid& g = grid();
  const int d = g.dim();
  const int n = g.axis_size();
  std::vector<Complex> u(field_.coeffs().begin(), field_.coeffs().end());

  if (potential_is_zero_) {
    for (std::size_t i = 0; i < u.size(); ++i) u[i] *= propagator_[i];
  } else {
    detail::spread_into(d, g.modes(), u, product_size_, 1, work_);
    detail::fft(d, product_size_, product_size_, detail::Direction::Backward, work_.data(), work_.data());
    for (std::size_t i = 0; i < work_.size(); ++i) work_[i] *= potential_samples_[i];
    detail::fft(d, product_size_, product_size_, detail::Direction::Forward, work_.data(), work_.data());
    const int rows = d == 1 ? 1 : n;
    for (int jx = 0; jx < rows; ++jx) {
      for (int jy = 0; jy < n; ++jy) {
        const std::size_t flat = d == 1 ? static_cast<std::size_t>(jy)
                                        : static_cast<std::size_t>(jx) * static_cast<std::size_t>(n) + static_cast<std::size_t>(jy);
        const Complex product = d == 1 ? work_[detail::source_index(1, g.modes(), product_size_, jy, 0)]
                                       : work_[detail::source_index(2, g.modes(), product_size_, jx, jy)];
        u[flat] = propagator_[flat] * u[flat] + phi_factor_[flat] * product;
      }
    }
  }

  double sum = 0.0;
  for (const auto& c : u) sum += std::norm(c);
  if (!std::isfinite(sum)) {
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (!std::isfinite(u[i].real()) || !std::isfinite(u[i].imag())) {
        throw NumericalError("non-finite coefficient at " + describe_mode(g, i) + " in step " + std::to_string(steps_ + 1),
                             steps_ + 1, static_cast<std::int64_t>(i));
      }
    }
    throw NumericalError("norm overflow in step " + std::to_string(steps_ + 1), steps_ + 1, -1);
  }
  norm_ = std::pow(2.0 * g.half_width(), 0.5 * d) * std::sqrt(sum);
  field_ = Field(g, std::move(u));
  ++steps_;
}

}  // namespace movewin
