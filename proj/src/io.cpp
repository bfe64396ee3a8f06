#include "movewin/io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "movewin/error.hpp"

namespace movewin {
namespace {

static_assert(std::endian::native == std::endian::little, "snapshot format assumes a little-endian host");

constexpr char kMagic[8] = {'M', 'W', 'F', 'I', 'E', 'L', 'D', '\0'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kSpectral = 0;

template <typename T>
void put(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T take(std::ifstream& in, const std::string& path) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) throw IoError("truncated snapshot '" + path + "'");
  return v;
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode);
  if (!out) throw IoError("cannot write '" + path + "'");
  return out;
}

// 17 significant digits: reads back to the same double.
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_field(const std::string& path, const Field& field) {
  auto out = open_out(path, std::ios::binary);
  const Grid& g = field.grid();
  out.write(kMagic, sizeof kMagic);
  put<std::uint32_t>(out, kVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.dim()));
  put<double>(out, g.half_width());
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.modes()));
  put<std::uint32_t>(out, kSpectral);
  for (const auto& c : field.coeffs()) {
    put<double>(out, c.real());
    put<double>(out, c.imag());
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

Field read_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open snapshot '" + path + "'");
  char magic[8];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0) {
    throw IoError("'" + path + "' is not a field snapshot");
  }
  if (take<std::uint32_t>(in, path) != kVersion) throw IoError("unsupported snapshot version in '" + path + "'");
  const auto dim = take<std::uint32_t>(in, path);
  const auto half_width = take<double>(in, path);
  const auto modes = take<std::uint32_t>(in, path);
  if (take<std::uint32_t>(in, path) != kSpectral) throw IoError("unsupported representation in '" + path + "'");
  const Grid grid(static_cast<int>(dim), half_width, static_cast<int>(modes));
  std::vector<Complex> coeffs(grid.size());
  for (auto& c : coeffs) {
    const double re = take<double>(in, path);
    const double im = take<double>(in, path);
    c = {re, im};
  }
  return Field(grid, std::move(coeffs));
}

void write_field_csv(const std::string& path, const Field& field) {
  auto out = open_out(path);
  const Grid& g = field.grid();
  const auto s = field.samples();
  out << (g.dim() == 1 ? "x,re,im,abs\n" : "x,y,re,im,abs\n");
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Point p = g.point(i);
    out << num(p[0]) << ',';
    if (g.dim() == 2) out << num(p[1]) << ',';
    out << num(s[i].real()) << ',' << num(s[i].imag()) << ',' << num(std::abs(s[i])) << '\n';
  }
}

void write_table_csv(const std::string& path, const ConvergenceTable& table) {
  auto out = open_out(path);
  out << "param,L,N,tau,error\n";
  for (const auto& r : table.rows) {
    out << num(r.param) << ',' << num(r.half_width) << ',' << r.modes << ',' << num(r.tau) << ',' << num(r.error) << '\n';
  }
}

std::string table_summary_json(const ConvergenceTable& table, const std::string& config_hash) {
  nlohmann::json j;
  j["parameter"] = table.parameter;
  j["rows"] = table.rows.size();
  j["slope"] = std::isfinite(table.slope) ? nlohmann::json(table.slope) : nlohmann::json(nullptr);
  j["residual"] = std::isfinite(table.residual) ? nlohmann::json(table.residual) : nlohmann::json(nullptr);
  j["partial"] = table.partial;
  j["failures"] = table.failures;
  j["reference"] = table.reference;
  j["config_hash"] = config_hash;
  auto lower = nlohmann::json::array();
  for (const auto& r : table.rows) {
    if (r.lower_bound) lower.push_back(r.param);
  }
  j["lower_bound_params"] = lower;
  return j.dump(2);
}

void write_text(const std::string& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

std::string progress_row(const ProgressRecord& r) {
  return std::to_string(r.step) + ',' + num(r.t) + ',' + num(r.norm) + ',' + num(r.indicator);
}

std::string extension_row(const ExtensionEvent& e) {
  return num(e.t) + ',' + num(e.old_half_width) + ',' + num(e.new_half_width) + ',' + std::to_string(e.old_modes) + ',' +
         std::to_string(e.new_modes) + ',' + num(e.indicator);
}

}  // namespace movewin
