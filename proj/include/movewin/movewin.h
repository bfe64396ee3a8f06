/* C interface to the moving-window spectral Schroedinger solver. */
#ifndef MOVEWIN_MOVEWIN_H
#define MOVEWIN_MOVEWIN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef MOVEWIN_BUILDING_LIBRARY
#    define MW_API __declspec(dllexport)
#  else
#    define MW_API __declspec(dllimport)
#  endif
#else
#  define MW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mw_status {
  MW_OK = 0,
  MW_INVALID_ARGUMENT = 2,
  MW_NUMERICAL = 3,       /* NaN or Inf during stepping */
  MW_EXTENSION_LIMIT = 4,
  MW_IO = 5,
  MW_PARTIAL = 6,         /* a sweep finished with failed points */
  MW_INTERNAL = 7
} mw_status;

typedef struct mw_config mw_config;
typedef struct mw_field mw_field;
typedef struct mw_table mw_table;

typedef enum mw_coupling { MW_COUPLING_FIXED_N = 0, MW_COUPLING_N_INV_TAU = 1 } mw_coupling;

/* Message of the last failure on the calling thread; never NULL. */
MW_API const char* mw_last_error(void);
MW_API const char* mw_version(void);

/* Configuration. Keys are the JSON/CLI names: dim, half-width, modes, tau,
   tmax, potential, initial, plateau-fraction, extend-eps, extend,
   check-interval, max-extensions, dealias, snapshot-every, progress-every,
   out, seed. */
MW_API mw_status mw_config_create(mw_config** out);
MW_API mw_status mw_config_load(const char* path, mw_config** out);
MW_API mw_status mw_config_parse(const char* json, mw_config** out);
MW_API mw_status mw_config_set(mw_config* cfg, const char* key, const char* value);
MW_API mw_status mw_config_validate(const mw_config* cfg);
/* *json is allocated by the library; release with mw_string_free. */
MW_API mw_status mw_config_to_json(const mw_config* cfg, char** json);
MW_API mw_status mw_config_hash(const mw_config* cfg, char out[17]);
MW_API void mw_config_destroy(mw_config* cfg);

MW_API void mw_string_free(char* s);

/* Commands. Output goes under the config's out directory; *run_dir (optional,
   may be NULL) receives the directory written, free with mw_string_free. */
MW_API mw_status mw_run(const mw_config* cfg, mw_field** final_field, char** run_dir);
/* direct_half_width <= 0 selects the extended run's final window. */
MW_API mw_status mw_extend_demo(const mw_config* cfg, double direct_half_width, double* relative_distance,
                                char** run_dir);
/* reference_modes <= 0 and reference_tau <= 0 select the defaults. */
MW_API mw_status mw_sweep_space(const mw_config* cfg, const int* modes, size_t count, int reference_modes,
                                double reference_tau, mw_table** out);
MW_API mw_status mw_sweep_time(const mw_config* cfg, const double* taus, size_t count, mw_coupling coupling,
                               int reference_modes, double reference_tau, mw_table** out);
MW_API mw_status mw_table_write(const mw_table* table, const mw_config* cfg, const char* kind, char** run_dir);

/* Convergence tables. */
MW_API size_t mw_table_rows(const mw_table* table);
MW_API mw_status mw_table_row(const mw_table* table, size_t i, double* param, double* half_width, int* modes,
                              double* tau, double* error);
MW_API double mw_table_slope(const mw_table* table);
MW_API double mw_table_residual(const mw_table* table);
MW_API int mw_table_partial(const mw_table* table);
MW_API void mw_table_destroy(mw_table* table);

/* Fields. Coefficients are interleaved (re, im) in DFT order, x slow in 2-D;
   mw_field_coeffs needs room for `count` complex values (2 * count doubles). */
MW_API mw_status mw_field_read(const char* path, mw_field** out);
MW_API mw_status mw_field_write(const mw_field* field, const char* path);
MW_API mw_status mw_field_write_csv(const mw_field* field, const char* path);
MW_API mw_status mw_field_info(const mw_field* field, int* dim, double* half_width, int* modes);
MW_API size_t mw_field_size(const mw_field* field);
MW_API mw_status mw_field_coeffs(const mw_field* field, double* out, size_t count);
MW_API double mw_field_norm(const mw_field* field);
MW_API void mw_field_destroy(mw_field* field);

#ifdef __cplusplus
}
#endif

#endif
