#include "movewin/driver.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "movewin/error.hpp"

namespace fs = std::filesystem;

namespace movewin {
namespace {

void make_dirs(const fs::path& p) {
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw IoError("cannot create '" + p.string() + "': " + ec.message());
}

std::ofstream open_log(const fs::path& p, const char* header) {
  std::ofstream out(p);
  if (!out) throw IoError("cannot write '" + p.string() + "'");
  out << header << '\n';
  return out;
}

std::string step_name(std::int64_t step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%08lld", static_cast<long long>(step));
  return buf;
}

nlohmann::json events_json(const std::vector<ExtensionEvent>& events) {
  auto arr = nlohmann::json::array();
  for (const auto& e : events) {
    arr.push_back({{"t", e.t}, {"old_L", e.old_half_width}, {"new_L", e.new_half_width}, {"old_N", e.old_modes},
                   {"new_N", e.new_modes}, {"indicator", e.indicator}});
  }
  return arr;
}

}  // namespace

std::string run_directory(const SimConfig& config, const std::string& kind) {
  return (fs::path(config.out) / (kind + "-" + config_hash(config).substr(0, 12))).string();
}

RunReport run(const SimConfig& config) {
  config.validate();
  std::size_t snapshots = 0;
  const fs::path dir = run_directory(config);
  make_dirs(dir / "snapshots");
  write_text((dir / "config.json").string(), to_json(config));

  auto progress = open_log(dir / "progress.csv", kProgressHeader);
  auto extensions = open_log(dir / "extensions.csv", kExtensionHeader);
  Observers obs;
  obs.progress = [&](const ProgressRecord& r) { progress << progress_row(r) << '\n'; };
  obs.extension = [&](const ExtensionEvent& e) { extensions << extension_row(e) << '\n'; };
  obs.snapshot = [&](const Field& f, double, std::int64_t step) {
    const auto base = dir / "snapshots" / step_name(step);
    write_field_csv(base.string() + ".csv", f);
    write_field(base.string() + ".bin", f);
    ++snapshots;
  };
  RunReport report{dir.string(), evolve(config, obs), snapshots};

  const auto& r = report.result;
  nlohmann::json summary{{"config_hash", config_hash(config)},
                         {"t", r.t},
                         {"steps", r.steps},
                         {"final_L", r.field.grid().half_width()},
                         {"final_N", r.field.grid().modes()},
                         {"initial_norm", r.initial_norm},
                         {"final_norm", l2_norm(r.field)},
                         {"snapshots", report.snapshots},
                         {"extensions", events_json(r.extensions)}};
  write_text((dir / "summary.json").string(), summary.dump(2));
  return report;
}

ExtendDemoReport extend_demo(const SimConfig& config, std::optional<double> direct_half_width) {
  config.validate();
  EvolveResult extended = evolve(config);

  SimConfig direct = config;
  direct.window.enabled = false;
  if (direct_half_width) {
    const double ratio = *direct_half_width / config.half_width;
    direct.half_width = *direct_half_width;
    direct.modes = static_cast<int>(std::lround(config.modes * ratio));
  } else {
    direct.half_width = extended.field.grid().half_width();
    direct.modes = extended.field.grid().modes();
  }
  const fs::path dir = run_directory(config, "extend");
  ExtendDemoReport report{dir.string(), std::move(extended), evolve(direct), 0.0, 0.0};
  report.distance = l2_distance(report.extended.field, report.direct.field);
  const double ref = l2_norm(report.direct.field);
  report.relative_distance = ref > 0.0 ? report.distance / ref : report.distance;

  make_dirs(dir);
  write_text((dir / "config.json").string(), to_json(config));
  write_field_csv((dir / "extended.csv").string(), report.extended.field);
  write_field((dir / "extended.bin").string(), report.extended.field);
  write_field_csv((dir / "direct.csv").string(), report.direct.field);
  write_field((dir / "direct.bin").string(), report.direct.field);
  nlohmann::json summary{{"config_hash", config_hash(config)},
                         {"t", report.extended.t},
                         {"extended_L", report.extended.field.grid().half_width()},
                         {"extended_N", report.extended.field.grid().modes()},
                         {"direct_L", direct.half_width},
                         {"direct_N", direct.modes},
                         {"distance", report.distance},
                         {"relative_distance", report.relative_distance},
                         {"extensions", events_json(report.extended.extensions)}};
  write_text((dir / "summary.json").string(), summary.dump(2));
  return report;
}

std::string write_sweep(const SimConfig& config, const ConvergenceTable& table, const std::string& kind) {
  const fs::path dir = run_directory(config, kind);
  make_dirs(dir);
  write_text((dir / "config.json").string(), to_json(config));
  write_table_csv((dir / "table.csv").string(), table);
  write_text((dir / "summary.json").string(), table_summary_json(table, config_hash(config)));
  return dir.string();
}

}  // namespace movewin
