#include "movewin/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "movewin/error.hpp"
#include "movewin/physics.hpp"

namespace movewin {
namespace {

using nlohmann::json;

std::int64_t integral_ratio(double num, double den, const char* what) {
  const double r = num / den;
  const double k = std::round(r);
  if (std::abs(r - k) > 1e-9 * std::max(1.0, std::abs(r))) {
    std::ostringstream os;
    os << what << " (" << num << ") is not an integer multiple of tau (" << den << ")";
    throw InvalidArgument(os.str());
  }
  return static_cast<std::int64_t>(k);
}

json as_json(const SimConfig& c) {
  return json{{"dim", c.dim},
              {"half-width", c.half_width},
              {"modes", c.modes},
              {"tau", c.tau},
              {"tmax", c.tmax},
              {"potential", c.potential},
              {"initial", c.initial},
              {"plateau-fraction", c.plateau},
              {"extend-eps", c.window.threshold},
              {"extend", c.window.enabled},
              {"check-interval", c.window.check_interval},
              {"max-extensions", c.window.max_extensions},
              {"dealias", c.dealias},
              {"snapshot-every", c.snapshot_every},
              {"progress-every", c.progress_every},
              {"out", c.out},
              {"seed", c.seed}};
}

template <typename T>
T get_as(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw InvalidArgument("config key '" + key + "' has the wrong type");
  }
}

void assign(SimConfig& c, const std::string& key, const json& v) {
  if (key == "dim") c.dim = get_as<int>(v, key);
  else if (key == "half-width") c.half_width = get_as<double>(v, key);
  else if (key == "modes") c.modes = get_as<int>(v, key);
  else if (key == "tau") c.tau = get_as<double>(v, key);
  else if (key == "tmax") c.tmax = get_as<double>(v, key);
  else if (key == "potential") c.potential = get_as<std::string>(v, key);
  else if (key == "initial") c.initial = get_as<std::string>(v, key);
  else if (key == "plateau-fraction") c.plateau = get_as<double>(v, key);
  else if (key == "extend-eps") c.window.threshold = get_as<double>(v, key);
  else if (key == "extend") c.window.enabled = get_as<bool>(v, key);
  else if (key == "check-interval") c.window.check_interval = get_as<int>(v, key);
  else if (key == "max-extensions") c.window.max_extensions = get_as<int>(v, key);
  else if (key == "dealias") c.dealias = get_as<bool>(v, key);
  else if (key == "snapshot-every") c.snapshot_every = get_as<double>(v, key);
  else if (key == "progress-every") c.progress_every = get_as<int>(v, key);
  else if (key == "out") c.out = get_as<std::string>(v, key);
  else if (key == "seed") c.seed = get_as<std::uint64_t>(v, key);
  else throw InvalidArgument("unknown config key '" + key + "'");
}

}  // namespace

bool is_tabulated(const std::string& id) { return id.rfind(kTabulatedPrefix, 0) == 0; }

void SimConfig::validate() const {
  if (dim != 1 && dim != 2) throw InvalidArgument("dim must be 1 or 2");
  if (!(half_width > 0.0) || !std::isfinite(half_width)) throw InvalidArgument("half-width must be positive");
  if (modes < 4) throw InvalidArgument("modes must be at least 4");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidArgument("tau must be positive");
  if (!(tmax >= 0.0) || !std::isfinite(tmax)) throw InvalidArgument("tmax must be non-negative");
  if (!(plateau > 0.0 && plateau < 1.0)) throw InvalidArgument("plateau-fraction must lie in (0, 1)");
  if (progress_every < 1) throw InvalidArgument("progress-every must be at least 1");
  if (snapshot_every < 0.0) throw InvalidArgument("snapshot-every must be non-negative");
  window.validate();
  integral_ratio(tmax, tau, "tmax");
  if (snapshot_every > 0.0) integral_ratio(snapshot_every, tau, "snapshot-every");

  if (!is_tabulated(initial)) {
    const auto& u0 = initial_data(initial);
    if (u0.dim != dim) throw InvalidArgument("initial datum '" + initial + "' is not " + std::to_string(dim) + "-D");
  }
  if (!is_tabulated(potential)) {
    const auto& v = movewin::potential(potential);
    if (v.dim != 0 && v.dim != dim) throw InvalidArgument("potential '" + potential + "' is not " + std::to_string(dim) + "-D");
  }
}

std::int64_t SimConfig::step_count() const { return integral_ratio(tmax, tau, "tmax"); }

std::int64_t SimConfig::snapshot_stride() const {
  return snapshot_every > 0.0 ? integral_ratio(snapshot_every, tau, "snapshot-every") : 0;
}

std::string to_json(const SimConfig& config, int indent) { return as_json(config).dump(indent); }

SimConfig config_from_json(const std::string& text, const SimConfig& base) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  SimConfig c = base;
  for (const auto& [key, value] : j.items()) assign(c, key, value);
  return c;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str());
}

void set_config_key(SimConfig& config, const std::string& key, const std::string& value) {
  const json current = as_json(config);
  if (!current.contains(key)) throw InvalidArgument("unknown config key '" + key + "'");
  if (current.at(key).is_string()) {
    assign(config, key, json(value));
    return;
  }
  json parsed;
  try {
    parsed = json::parse(value);
  } catch (const json::parse_error&) {
    throw InvalidArgument("bad value '" + value + "' for config key '" + key + "'");
  }
  assign(config, key, parsed);
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  const json j = as_json(SimConfig{});
  for (const auto& [key, value] : j.items()) keys.push_back(key);
  return keys;
}

std::string config_hash(const SimConfig& config) {
  json j = as_json(config);
  j.erase("out");
  const std::string text = j.dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace movewin
