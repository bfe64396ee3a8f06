#include "movewin/physics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "movewin/cutoff.hpp"
#include "movewin/error.hpp"

namespace movewin {
namespace {

using namespace std::complex_literals;

// |s|^p through exp(p log|s|), exactly zero at s = 0.
double abs_pow(double s, double p) {
  const double a = std::abs(s);
  return a > 0.0 ? std::exp(p * std::log(a)) : 0.0;
}

Complex tunnel_phase(double y, double k) { return std::exp(-y * y + 1i * (k * y)); }

Complex scatter_envelope(const Point& p, double& r) {
  const double dx = p[0] + 2.0;
  const double r2 = dx * dx + p[1] * p[1];
  r = std::sqrt(r2);
  return std::exp(-r2 + 4i * dx);
}

const std::vector<InitialData>& initial_registry() {
  static const std::vector<InitialData> registry = [] {
    std::vector<InitialData> r;
    const GaussianPacket free_packet{0.0, 3.0, 1.0};
    r.push_back({"free-gaussian", 1, 0,
                 [free_packet](const Point& p) { return exact_free_solution(p[0], 0.0, free_packet); },
                 [free_packet](const Point& p, double t) { return exact_free_solution(p[0], t, free_packet); }});

    const GaussianPacket tunnel_packet{-5.0, 1.0, 8.0};
    r.push_back({"tunnel-I", 1, 0, [](const Point& p) { return tunnel_phase(p[0] + 5.0, 8.0); },
                 [tunnel_packet](const Point& p, double t) { return exact_free_solution(p[0], t, tunnel_packet); }});
    r.push_back({"tunnel-II-H1", 1, 1,
                 [](const Point& p) {
                   const double y = p[0] + 8.0;
                   return abs_pow(y, 0.51) * tunnel_phase(y, 4.0);
                 },
                 {}});
    r.push_back({"tunnel-III-H2", 1, 2,
                 [](const Point& p) {
                   const double y = p[0] + 8.0;
                   return y * abs_pow(y, 0.51) * tunnel_phase(y, 4.0);
                 },
                 {}});

    const GaussianPacket scatter_x{-2.0, 1.0, 4.0};
    const GaussianPacket scatter_y{0.0, 1.0, 0.0};
    r.push_back({"scatter-I", 2, 0,
                 [](const Point& p) {
                   double radius = 0.0;
                   return scatter_envelope(p, radius);
                 },
                 [scatter_x, scatter_y](const Point& p, double t) {
                   return exact_free_solution(p[0], t, scatter_x) * exact_free_solution(p[1], t, scatter_y);
                 }});
    r.push_back({"scatter-II-H2", 2, 2,
                 [](const Point& p) {
                   double radius = 0.0;
                   const Complex base = scatter_envelope(p, radius);
                   return abs_pow(radius, 1.02) * base;
                 },
                 {}});
    return r;
  }();
  return registry;
}

double lattice(const Point& p) {
  double sum = 0.0;
  for (int i = -1; i <= 1; ++i) {
    const double dx = p[0] - i;
    for (int j = -5; j <= 5; ++j) {
      const double dy = p[1] - 6.0 * j / 5.0;
      sum += bump_squared(4.0 * (dx * dx + dy * dy));
    }
  }
  return 10.0 * sum;
}

const std::vector<Potential>& potential_registry() {
  static const std::vector<Potential> registry = {
      {"zero", 0, 0.0, [](const Point&) { return 0.0; }},
      {"tunnel-bump", 1, 0.1, [](const Point& p) { return 200.0 * bump(10.0 * p[0]); }},
      {"lattice", 2, std::hypot(1.0, 6.0) + 0.5, lattice},
  };
  return registry;
}

template <typename Registry>
const auto& find_or_throw(const Registry& registry, std::string_view id, const char* kind) {
  auto it = std::find_if(registry.begin(), registry.end(), [&](const auto& e) { return e.id == id; });
  if (it == registry.end()) throw InvalidArgument(std::string("unknown ") + kind + " id '" + std::string(id) + "'");
  return *it;
}

}  // namespace

const InitialData& initial_data(std::string_view id) { return find_or_throw(initial_registry(), id, "initial-data"); }

const Potential& potential(std::string_view id) { return find_or_throw(potential_registry(), id, "potential"); }

std::vector<std::string> initial_data_ids() {
  std::vector<std::string> ids;
  for (const auto& e : initial_registry()) ids.push_back(e.id);
  return ids;
}

std::vector<std::string> potential_ids() {
  std::vector<std::string> ids;
  for (const auto& e : potential_registry()) ids.push_back(e.id);
  return ids;
}

Complex eval_initial(std::string_view id, const Point& x) { return initial_data(id).eval(x); }

double eval_potential(std::string_view id, const Point& x) { return potential(id).eval(x); }

Complex exact_free_solution(double x, double t, const GaussianPacket& packet) {
  if (!(packet.width > 0.0)) throw InvalidArgument("Gaussian packet width must be positive");
  const double a = 1.0 / (packet.width * packet.width);
  const double k0 = packet.wavenumber;
  const double y = x - packet.center;
  const Complex spread = 1.0 + 4i * (a * t);
  const double drift = y - 2.0 * k0 * t;
  return std::exp(-a * drift * drift / spread + 1i * (k0 * y - k0 * k0 * t)) / std::sqrt(spread);
}

std::vector<Complex> load_tabulated(const std::string& path, const Grid& grid) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open tabulated input '" + path + "'");

  const int d = grid.dim();
  const int n = grid.axis_size();
  const double tol = 1e-9 * std::max(1.0, grid.half_width());
  std::vector<Complex> values(grid.size());
  std::vector<char> seen(grid.size(), 0);

  auto node_index = [&](double x) -> int {
    const int i = static_cast<int>(std::lround(x / grid.spacing())) + grid.modes();
    if (i < 0 || i >= n || std::abs(grid.node(i - grid.modes()) - x) > tol) {
      throw InvalidArgument("tabulated input '" + path + "': coordinate " + std::to_string(x) +
                            " is not a node of the target grid");
    }
    return i;
  };

  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::vector<double> cols;
    double v = 0.0;
    while (fields >> v) cols.push_back(v);
    if (!fields.eof()) {
      if (rows == 0 && cols.empty()) continue;  // header
      throw InvalidArgument("tabulated input '" + path + "': malformed row '" + line + "'");
    }
    if (cols.size() != static_cast<std::size_t>(d + 1) && cols.size() != static_cast<std::size_t>(d + 2)) {
      throw InvalidArgument("tabulated input '" + path + "': expected " + std::to_string(d + 1) + " or " +
                            std::to_string(d + 2) + " columns");
    }
    std::size_t flat = static_cast<std::size_t>(node_index(cols[0]));
    if (d == 2) flat = flat * static_cast<std::size_t>(n) + static_cast<std::size_t>(node_index(cols[1]));
    if (seen[flat]) throw InvalidArgument("tabulated input '" + path + "': duplicate node");
    seen[flat] = 1;
    const double re = cols[static_cast<std::size_t>(d)];
    const double im = cols.size() == static_cast<std::size_t>(d + 2) ? cols.back() : 0.0;
    values[flat] = {re, im};
    ++rows;
  }
  if (rows != grid.size()) {
    throw InvalidArgument("tabulated input '" + path + "' has " + std::to_string(rows) + " rows, grid has " +
                          std::to_string(grid.size()) + " nodes");
  }
  return values;
}

}  // namespace movewin
