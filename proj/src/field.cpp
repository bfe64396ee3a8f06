#include "movewin/field.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "layout.hpp"
#include "movewin/error.hpp"

namespace movewin {
namespace {

using detail::Direction;

std::size_t as_size(int n) { return static_cast<std::size_t>(n); }

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) throw InvalidArgument(std::string(what) + ": fields live on different grids");
}

// Ascending-node layout <-> DFT layout. Node n sits at ascending index n + N
// and at DFT index n mod (2N+1).
std::vector<Complex> ascending_to_dft(const Grid& grid, std::span<const Complex> in) {
  const int n = grid.axis_size();
  const int shift = grid.modes() + 1;
  std::vector<Complex> out(in.size());
  if (grid.dim() == 1) {
    for (int i = 0; i < n; ++i) out[as_size((i + shift) % n)] = in[as_size(i)];
  } else {
    for (int i = 0; i < n; ++i) {
      const auto row_out = as_size((i + shift) % n) * as_size(n);
      const auto row_in = as_size(i) * as_size(n);
      for (int j = 0; j < n; ++j) out[row_out + as_size((j + shift) % n)] = in[row_in + as_size(j)];
    }
  }
  return out;
}

std::vector<Complex> dft_to_ascending(const Grid& grid, std::span<const Complex> in) {
  const int n = grid.axis_size();
  const int shift = grid.modes() + 1;
  std::vector<Complex> out(in.size());
  if (grid.dim() == 1) {
    for (int i = 0; i < n; ++i) out[as_size(i)] = in[as_size((i + shift) % n)];
  } else {
    for (int i = 0; i < n; ++i) {
      const auto row_in = as_size((i + shift) % n) * as_size(n);
      const auto row_out = as_size(i) * as_size(n);
      for (int j = 0; j < n; ++j) out[row_out + as_size(j)] = in[row_in + as_size((j + shift) % n)];
    }
  }
  return out;
}

std::vector<Complex> spread(int dim, int modes, std::span<const Complex> coeffs, int m, int stride = 1) {
  std::vector<Complex> out(dim == 1 ? as_size(m) : as_size(m) * as_size(m));
  detail::spread_into(dim, modes, coeffs, m, stride, out);
  return out;
}

// Keeps modes |k|_inf <= modes of a per-axis length-m array, scaled.
std::vector<Complex> gather(int dim, int modes, std::span<const Complex> full, int m, double scale) {
  const int n = 2 * modes + 1;
  std::vector<Complex> out(dim == 1 ? as_size(n) : as_size(n) * as_size(n));
  if (dim == 1) {
    for (int j = 0; j < n; ++j) out[as_size(j)] = scale * full[detail::source_index(1, modes, m, j, 0)];
  } else {
    for (int jx = 0; jx < n; ++jx) {
      for (int jy = 0; jy < n; ++jy) {
        out[as_size(jx) * as_size(n) + as_size(jy)] = scale * full[detail::source_index(2, modes, m, jx, jy)];
      }
    }
  }
  return out;
}

// Sum_{|k|<=N} c[k] exp(i pi k x / L) for one axis (DFT layout, given stride).
Complex horner_axis(const Complex* c, std::size_t stride, int modes, double half_width, double x) {
  const Complex w = std::polar(1.0, std::numbers::pi * x / half_width);
  const Complex wbar = std::conj(w);
  const int n = 2 * modes + 1;
  Complex pos = 0.0;
  for (int k = modes; k >= 0; --k) pos = pos * w + c[as_size(k) * stride];
  Complex neg = 0.0;
  for (int k = modes; k >= 1; --k) neg = neg * wbar + c[as_size(n - k) * stride];
  return pos + neg * wbar;
}

}  // namespace

Field::Field(Grid grid) : grid_(grid), coeffs_(grid.size()) {}

Field::Field(Grid grid, std::vector<Complex> coeffs) : grid_(grid), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.size()) {
    throw InvalidArgument("coefficient array has " + std::to_string(coeffs_.size()) +
                          " entries, grid expects " + std::to_string(grid_.size()));
  }
}

Complex Field::coeff(int kx, int ky) const {
  const int n = grid_.modes();
  if (std::abs(kx) > n || (grid_.dim() == 2 && std::abs(ky) > n)) return 0.0;
  if (grid_.dim() == 1) return coeffs_[as_size(index_of_mode(kx, n))];
  return coeffs_[as_size(index_of_mode(kx, n)) * as_size(grid_.axis_size()) + as_size(index_of_mode(ky, n))];
}

std::vector<Complex> Field::samples() const { return inverse(grid_, coeffs_); }

Complex Field::evaluate(const Point& x) const {
  const int n = grid_.modes();
  const double l = grid_.half_width();
  if (grid_.dim() == 1) return horner_axis(coeffs_.data(), 1, n, l, x[0]);
  const int m = grid_.axis_size();
  // Collapse the y-sums row by row, then sum over x.
  std::vector<Complex> rows(as_size(m));
  for (int jx = 0; jx < m; ++jx) rows[as_size(jx)] = horner_axis(coeffs_.data() + as_size(jx) * as_size(m), 1, n, l, x[1]);
  return horner_axis(rows.data(), 1, n, l, x[0]);
}

std::vector<Complex> forward(const Grid& grid, std::span<const Complex> samples) {
  if (samples.size() != grid.size()) {
    throw InvalidArgument("forward: sample array has " + std::to_string(samples.size()) +
                          " entries, grid expects " + std::to_string(grid.size()));
  }
  auto data = ascending_to_dft(grid, samples);
  const int n = grid.axis_size();
  detail::fft(grid.dim(), n, n, Direction::Forward, data.data(), data.data());
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& v : data) v *= scale;
  return data;
}

std::vector<Complex> inverse(const Grid& grid, std::span<const Complex> coeffs) {
  if (coeffs.size() != grid.size()) {
    throw InvalidArgument("inverse: coefficient array has " + std::to_string(coeffs.size()) +
                          " entries, grid expects " + std::to_string(grid.size()));
  }
  std::vector<Complex> data(coeffs.begin(), coeffs.end());
  const int n = grid.axis_size();
  detail::fft(grid.dim(), n, n, Direction::Backward, data.data(), data.data());
  return dft_to_ascending(grid, data);
}

Field field_from_samples(const Grid& grid, std::span<const Complex> samples) {
  return Field(grid, forward(grid, samples));
}

Field project(const Field& field, int cutoff) {
  const Grid& g = field.grid();
  if (cutoff > g.modes()) {
    throw InvalidArgument("project: cutoff " + std::to_string(cutoff) + " exceeds field cutoff " +
                          std::to_string(g.modes()));
  }
  Grid target(g.dim(), g.half_width(), cutoff);
  return Field(target, gather(g.dim(), cutoff, field.coeffs(), g.axis_size(), 1.0));
}

Field interpolate_fn(const ScalarFn& f, const Grid& grid) {
  std::vector<Complex> samples(grid.size());
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = f(grid.point(i));
  return field_from_samples(grid, samples);
}

int padded_size(int modes) { return detail::smooth_size(4 * modes + 1); }

Field multiply(const Field& f, const Field& g, ProductMode mode) {
  require_same_grid(f.grid(), g.grid(), "multiply");
  const Grid& grid = f.grid();
  const int d = grid.dim();
  const int m = mode == ProductMode::Dealiased ? padded_size(grid.modes()) : grid.axis_size();

  auto a = spread(d, grid.modes(), f.coeffs(), m);
  auto b = spread(d, grid.modes(), g.coeffs(), m);
  detail::fft(d, m, m, Direction::Backward, a.data(), a.data());
  detail::fft(d, m, m, Direction::Backward, b.data(), b.data());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
  detail::fft(d, m, m, Direction::Forward, a.data(), a.data());
  const double scale = 1.0 / static_cast<double>(a.size());
  return Field(grid, gather(d, grid.modes(), a, m, scale));
}

std::vector<Complex> zero_extended_samples(const Field& field, const Grid& target) {
  const Grid& src = field.grid();
  if (src.dim() != target.dim()) throw InvalidArgument("zero extension: dimension mismatch");
  const int d = src.dim();
  const double l = src.half_width();
  const int q = target.axis_size();
  const auto nodes = target.axis_nodes();

  std::vector<char> inside(as_size(q));
  for (int i = 0; i < q; ++i) inside[as_size(i)] = std::abs(nodes[as_size(i)]) < l;

  const double ratio = target.half_width() / l;
  const double nearest = std::round(ratio);
  const bool commensurate = nearest >= 1.0 && std::abs(ratio - nearest) <= 1e-12 * ratio &&
                            static_cast<long long>(nearest) * src.modes() <= target.modes();

  std::vector<Complex> values;
  if (commensurate) {
    // exp(i pi k x_q / L) = exp(2 pi i (r k) q / Q) on the target nodes.
    const int r = static_cast<int>(nearest);
    auto spread_coeffs = spread(d, src.modes(), field.coeffs(), q, r);
    detail::fft(d, q, q, Direction::Backward, spread_coeffs.data(), spread_coeffs.data());
    values = dft_to_ascending(target, spread_coeffs);
  } else {
    const int n = src.axis_size();
    values.assign(target.size(), Complex{});
    if (d == 1) {
      for (int i = 0; i < q; ++i) {
        if (inside[as_size(i)]) values[as_size(i)] = horner_axis(field.coeffs().data(), 1, src.modes(), l, nodes[as_size(i)]);
      }
    } else {
      // Sum over ky for each kx row at every inside y node, then over kx.
      std::vector<Complex> partial(as_size(n) * as_size(q));
      for (int jx = 0; jx < n; ++jx) {
        const Complex* row = field.coeffs().data() + as_size(jx) * as_size(n);
        for (int iy = 0; iy < q; ++iy) {
          if (inside[as_size(iy)]) partial[as_size(jx) * as_size(q) + as_size(iy)] = horner_axis(row, 1, src.modes(), l, nodes[as_size(iy)]);
        }
      }
      for (int iy = 0; iy < q; ++iy) {
        if (!inside[as_size(iy)]) continue;
        for (int ix = 0; ix < q; ++ix) {
          if (!inside[as_size(ix)]) continue;
          values[as_size(ix) * as_size(q) + as_size(iy)] =
              horner_axis(partial.data() + as_size(iy), as_size(q), src.modes(), l, nodes[as_size(ix)]);
        }
      }
    }
  }

  if (d == 1) {
    for (int i = 0; i < q; ++i) {
      if (!inside[as_size(i)]) values[as_size(i)] = 0.0;
    }
  } else {
    for (int ix = 0; ix < q; ++ix) {
      for (int iy = 0; iy < q; ++iy) {
        if (!inside[as_size(ix)] || !inside[as_size(iy)]) values[as_size(ix) * as_size(q) + as_size(iy)] = 0.0;
      }
    }
  }
  return values;
}

Field resample_zero_extend(const Field& field, double new_half_width, int new_modes) {
  const Grid& src = field.grid();
  if (new_half_width < src.half_width() * (1.0 - 1e-14)) {
    throw InvalidArgument("resample_zero_extend: new half-width " + std::to_string(new_half_width) +
                          " is smaller than " + std::to_string(src.half_width()));
  }
  Grid target(src.dim(), new_half_width, new_modes);
  Grid interpolation(src.dim(), new_half_width, 2 * new_modes);
  auto values = zero_extended_samples(field, interpolation);
  return project(Field(interpolation, forward(interpolation, values)), target.modes());
}

double l2_norm(const Field& field) {
  double sum = 0.0;
  for (const auto& a : field.coeffs()) sum += std::norm(a);
  const Grid& g = field.grid();
  return std::pow(2.0 * g.half_width(), 0.5 * g.dim()) * std::sqrt(sum);
}

double l2_distance(const Field& f, const Field& g) {
  if (f.grid() == g.grid()) {
    double sum = 0.0;
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) sum += std::norm(f.coeffs()[i] - g.coeffs()[i]);
    const Grid& grid = f.grid();
    return std::pow(2.0 * grid.half_width(), 0.5 * grid.dim()) * std::sqrt(sum);
  }
  if (f.grid().dim() != g.grid().dim()) throw InvalidArgument("l2_distance: dimension mismatch");
  const auto key = [](const Grid& grid) { return std::pair{grid.half_width(), grid.modes()}; };
  const bool f_larger = key(f.grid()) > key(g.grid());
  const Field& big = f_larger ? f : g;
  const Field& small = f_larger ? g : f;
  const Field moved = resample_zero_extend(small, big.grid().half_width(), big.grid().modes());
  return l2_distance(big, moved);
}

Field axpby(Complex a, const Field& f, Complex b, const Field& g) {
  require_same_grid(f.grid(), g.grid(), "axpby");
  std::vector<Complex> out(f.coeffs().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * f.coeffs()[i] + b * g.coeffs()[i];
  return Field(f.grid(), std::move(out));
}

}  // namespace movewin
