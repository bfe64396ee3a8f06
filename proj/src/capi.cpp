#include "movewin/movewin.h"

#include <cstring>
#include <new>
#include <string>

#include "movewin/driver.hpp"
#include "movewin/error.hpp"

struct mw_config {
  movewin::SimConfig value;
};
struct mw_field {
  movewin::Field value;
};
struct mw_table {
  movewin::ConvergenceTable value;
};

namespace {

thread_local std::string last_error;

mw_status fail(mw_status s, const char* what) {
  last_error = what;
  return s;
}

template <typename F>
mw_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const movewin::InvalidArgument& e) {
    return fail(MW_INVALID_ARGUMENT, e.what());
  } catch (const movewin::NumericalError& e) {
    return fail(MW_NUMERICAL, e.what());
  } catch (const movewin::ExtensionLimitError& e) {
    return fail(MW_EXTENSION_LIMIT, e.what());
  } catch (const movewin::IoError& e) {
    return fail(MW_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(MW_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MW_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* p = new char[s.size() + 1];
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

#define MW_REQUIRE(cond)                                                  \
  do {                                                                    \
    if (!(cond)) return fail(MW_INVALID_ARGUMENT, "null argument: " #cond); \
  } while (0)

}  // namespace

extern "C" {

const char* mw_last_error(void) { return last_error.c_str(); }
const char* mw_version(void) { return "0.1.0"; }

mw_status mw_config_create(mw_config** out) {
  MW_REQUIRE(out);
  return guarded([&] {
    *out = new mw_config{};
    return MW_OK;
  });
}

mw_status mw_config_load(const char* path, mw_config** out) {
  MW_REQUIRE(path && out);
  return guarded([&] {
    *out = new mw_config{movewin::load_config(path)};
    return MW_OK;
  });
}

mw_status mw_config_parse(const char* json, mw_config** out) {
  MW_REQUIRE(json && out);
  return guarded([&] {
    *out = new mw_config{movewin::config_from_json(json)};
    return MW_OK;
  });
}

mw_status mw_config_set(mw_config* cfg, const char* key, const char* value) {
  MW_REQUIRE(cfg && key && value);
  return guarded([&] {
    movewin::set_config_key(cfg->value, key, value);
    return MW_OK;
  });
}

mw_status mw_config_validate(const mw_config* cfg) {
  MW_REQUIRE(cfg);
  return guarded([&] {
    cfg->value.validate();
    return MW_OK;
  });
}

mw_status mw_config_to_json(const mw_config* cfg, char** json) {
  MW_REQUIRE(cfg && json);
  return guarded([&] {
    *json = dup(movewin::to_json(cfg->value));
    return MW_OK;
  });
}

mw_status mw_config_hash(const mw_config* cfg, char out[17]) {
  MW_REQUIRE(cfg && out);
  return guarded([&] {
    const auto h = movewin::config_hash(cfg->value);
    std::memcpy(out, h.c_str(), 17);
    return MW_OK;
  });
}

void mw_config_destroy(mw_config* cfg) { delete cfg; }
void mw_string_free(char* s) { delete[] s; }

mw_status mw_run(const mw_config* cfg, mw_field** final_field, char** run_dir) {
  MW_REQUIRE(cfg);
  return guarded([&] {
    auto report = movewin::run(cfg->value);
    if (final_field) *final_field = new mw_field{std::move(report.result.field)};
    if (run_dir) *run_dir = dup(report.run_dir);
    return MW_OK;
  });
}

mw_status mw_extend_demo(const mw_config* cfg, double direct_half_width, double* relative_distance, char** run_dir) {
  MW_REQUIRE(cfg);
  return guarded([&] {
    std::optional<double> l;
    if (direct_half_width > 0.0) l = direct_half_width;
    const auto report = movewin::extend_demo(cfg->value, l);
    if (relative_distance) *relative_distance = report.relative_distance;
    if (run_dir) *run_dir = dup(report.run_dir);
    return MW_OK;
  });
}

namespace {
movewin::SweepOptions sweep_options(int reference_modes, double reference_tau) {
  movewin::SweepOptions o;
  if (reference_modes > 0) o.reference_modes = reference_modes;
  if (reference_tau > 0.0) o.reference_tau = reference_tau;
  return o;
}
}  // namespace

mw_status mw_sweep_space(const mw_config* cfg, const int* modes, size_t count, int reference_modes,
                         double reference_tau, mw_table** out) {
  MW_REQUIRE(cfg && modes && out);
  return guarded([&] {
    auto t = movewin::sweep_space(cfg->value, std::vector<int>(modes, modes + count),
                                  sweep_options(reference_modes, reference_tau));
    const bool partial = t.partial;
    *out = new mw_table{std::move(t)};
    return partial ? fail(MW_PARTIAL, "sweep finished with failed points") : MW_OK;
  });
}

mw_status mw_sweep_time(const mw_config* cfg, const double* taus, size_t count, mw_coupling coupling,
                        int reference_modes, double reference_tau, mw_table** out) {
  MW_REQUIRE(cfg && taus && out);
  return guarded([&] {
    const auto c = coupling == MW_COUPLING_N_INV_TAU ? movewin::TimeCoupling::InverseTau
                                                     : movewin::TimeCoupling::FixedModes;
    auto t = movewin::sweep_time(cfg->value, std::vector<double>(taus, taus + count), c,
                                 sweep_options(reference_modes, reference_tau));
    const bool partial = t.partial;
    *out = new mw_table{std::move(t)};
    return partial ? fail(MW_PARTIAL, "sweep finished with failed points") : MW_OK;
  });
}

mw_status mw_table_write(const mw_table* table, const mw_config* cfg, const char* kind, char** run_dir) {
  MW_REQUIRE(table && cfg && kind);
  return guarded([&] {
    const auto dir = movewin::write_sweep(cfg->value, table->value, kind);
    if (run_dir) *run_dir = dup(dir);
    return MW_OK;
  });
}

size_t mw_table_rows(const mw_table* table) { return table ? table->value.rows.size() : 0; }

mw_status mw_table_row(const mw_table* table, size_t i, double* param, double* half_width, int* modes, double* tau,
                       double* error) {
  MW_REQUIRE(table);
  if (i >= table->value.rows.size()) return fail(MW_INVALID_ARGUMENT, "row index out of range");
  const auto& r = table->value.rows[i];
  if (param) *param = r.param;
  if (half_width) *half_width = r.half_width;
  if (modes) *modes = r.modes;
  if (tau) *tau = r.tau;
  if (error) *error = r.error;
  return MW_OK;
}

double mw_table_slope(const mw_table* table) { return table ? table->value.slope : 0.0; }
double mw_table_residual(const mw_table* table) { return table ? table->value.residual : 0.0; }
int mw_table_partial(const mw_table* table) { return table && table->value.partial ? 1 : 0; }
void mw_table_destroy(mw_table* table) { delete table; }

mw_status mw_field_read(const char* path, mw_field** out) {
  MW_REQUIRE(path && out);
  return guarded([&] {
    *out = new mw_field{movewin::read_field(path)};
    return MW_OK;
  });
}

mw_status mw_field_write(const mw_field* field, const char* path) {
  MW_REQUIRE(field && path);
  return guarded([&] {
    movewin::write_field(path, field->value);
    return MW_OK;
  });
}

mw_status mw_field_write_csv(const mw_field* field, const char* path) {
  MW_REQUIRE(field && path);
  return guarded([&] {
    movewin::write_field_csv(path, field->value);
    return MW_OK;
  });
}

mw_status mw_field_info(const mw_field* field, int* dim, double* half_width, int* modes) {
  MW_REQUIRE(field);
  const auto& g = field->value.grid();
  if (dim) *dim = g.dim();
  if (half_width) *half_width = g.half_width();
  if (modes) *modes = g.modes();
  return MW_OK;
}

size_t mw_field_size(const mw_field* field) { return field ? field->value.coeffs().size() : 0; }

mw_status mw_field_coeffs(const mw_field* field, double* out, size_t count) {
  MW_REQUIRE(field && out);
  const auto c = field->value.coeffs();
  if (count < c.size()) return fail(MW_INVALID_ARGUMENT, "output buffer too small");
  for (std::size_t i = 0; i < c.size(); ++i) {
    out[2 * i] = c[i].real();
    out[2 * i + 1] = c[i].imag();
  }
  return MW_OK;
}

double mw_field_norm(const mw_field* field) { return field ? movewin::l2_norm(field->value) : 0.0; }
void mw_field_destroy(mw_field* field) { delete field; }

}  // extern "C"
