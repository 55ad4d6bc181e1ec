/* C interface to the apf library. Every fallible call returns an apf_status; on failure
 * apf_last_error() describes it. Strings returned through char** are freed with
 * apf_string_free. Handles are freed with their *_free function; freeing NULL is a no-op. */
#ifndef APF_APF_H
#define APF_APF_H

#include <stddef.h>
#include <stdint.h>

#if defined(APF_BUILDING_LIBRARY)
#define APF_API __attribute__((visibility("default")))
#else
#define APF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum apf_status {
  APF_OK = 0,
  APF_ERR_INVALID_ARGUMENT = 1,
  APF_ERR_PARSE = 2,
  APF_ERR_DUPLICATE_FREQUENCY = 3,
  APF_ERR_NON_POSITIVE_FREQUENCY = 4,
  APF_ERR_EMPTY_RANGE = 5,
  APF_ERR_INSUFFICIENT_DATA = 6,
  APF_ERR_ALIASING = 7,
  APF_ERR_OUT_OF_RANGE = 8,
  APF_ERR_BUDGET_EXCEEDED = 9,
  APF_ERR_QUADRATURE = 10,
  APF_ERR_IO = 11,
  APF_ERR_INTERNAL = 100
} apf_status;

typedef struct apf_spectrum apf_spectrum_t;
typedef struct apf_sampled apf_sampled_t;
typedef struct apf_moment_report apf_moment_report_t;
typedef struct apf_distribution apf_distribution_t;
typedef struct apf_spectral_data apf_spectral_data_t;
typedef struct apf_group apf_group_t;
typedef struct apf_orbit apf_orbit_t;

/* ---- library-wide ---- */
APF_API const char* apf_version(void);
/* Message of the last failure on this thread, "" if none. */
APF_API const char* apf_last_error(void);
/* Warnings from the last call that produced any (e.g. an unsorted spectrum file), "" if none. */
APF_API const char* apf_last_warning(void);
APF_API void apf_string_free(char* s);
/* 0 restores the default (hardware concurrency). */
APF_API void apf_set_threads(unsigned n);
APF_API unsigned apf_get_threads(void);
APF_API apf_status apf_set_budgets(uint64_t sieve_limit, uint64_t count_limit);
APF_API void apf_get_budgets(uint64_t* sieve_limit, uint64_t* count_limit);
/* FNV-1a 64 of the file bytes. */
APF_API apf_status apf_hash_file(const char* path, uint64_t* out);

/* ---- spectra ---- */
/* Two-sided coefficients c_n; r_n = 2 c_n. */
APF_API apf_status apf_spectrum_create(const double* lambda, const double* re_c, const double* im_c, size_t n,
                                       apf_spectrum_t** out);
APF_API apf_status apf_spectrum_load(const char* path, apf_spectrum_t** out);
APF_API apf_status apf_spectrum_parse(const char* csv_text, apf_spectrum_t** out);
/* Zeta-zero spectrum for ordinates <= X from a table file. */
APF_API apf_status apf_spectrum_zeta(const char* zeros_path, double X, apf_spectrum_t** out);
/* normalization: 0 classical, 1 the alternative 4 pi sqrt(n) form. */
APF_API apf_status apf_spectrum_gauss(int64_t n_max, int normalization, apf_spectrum_t** out);
APF_API void apf_spectrum_free(apf_spectrum_t* spec);
APF_API size_t apf_spectrum_size(const apf_spectrum_t* spec);
APF_API apf_status apf_spectrum_get(const apf_spectrum_t* spec, size_t index, double* lambda, double* re_c,
                                    double* im_c);
APF_API uint64_t apf_spectrum_digest(const apf_spectrum_t* spec);
APF_API apf_status apf_spectrum_to_csv(const apf_spectrum_t* spec, char** out);
/* Least-squares decay fit of unit-window sums over [t_min, t_max). windows_csv (optional)
 * receives "T,sum" rows. */
APF_API apf_status apf_spectrum_fit_beta(const apf_spectrum_t* spec, double t_min, double t_max, double* beta_hat,
                                         double* r_squared, char** windows_csv);

/* ---- evaluation ---- */
typedef enum apf_schedule_kind { APF_SCHEDULE_EXPONENTIAL = 0, APF_SCHEDULE_LINEAR = 1, APF_SCHEDULE_CONSTANT = 2 } apf_schedule_kind;

typedef struct apf_schedule {
  apf_schedule_kind kind;
  double x0; /* floor, or the constant value */
} apf_schedule;

APF_API apf_status apf_eval_sum(const apf_spectrum_t* spec, double y, double X, double* out);
/* Samples S(y, X(y1)) on y0, y0+step, ... <= y1 (fixed_Y != 0) or S(y, X(y)) otherwise. */
APF_API apf_status apf_eval_grid(const apf_spectrum_t* spec, double y0, double y1, double step,
                                 apf_schedule schedule, int fixed_Y, apf_sampled_t** out);
APF_API apf_status apf_pnt_grid(double y0, double y1, double step, apf_sampled_t** out);
APF_API apf_status apf_gauss_grid(double y0, double y1, double step, apf_sampled_t** out);
APF_API apf_status apf_divisor_grid(double y0, double y1, double step, apf_sampled_t** out);
APF_API void apf_sampled_free(apf_sampled_t* f);
APF_API size_t apf_sampled_size(const apf_sampled_t* f);
APF_API double apf_sampled_y0(const apf_sampled_t* f);
APF_API double apf_sampled_step(const apf_sampled_t* f);
APF_API const double* apf_sampled_values(const apf_sampled_t* f);
/* header_lines: optional, each written as a "# " comment. */
APF_API apf_status apf_sampled_to_csv(const apf_sampled_t* f, const char* const* header_lines, size_t n_header,
                                      char** out);

/* ---- arithmetic ---- */
APF_API apf_status apf_chebyshev_psi(double x, double* out);
APF_API apf_status apf_lattice_count(double x, int64_t* out);
APF_API apf_status apf_divisor_sum(double x, int64_t* out);
APF_API apf_status apf_pnt_remainder(double y, double* out);
APF_API apf_status apf_gauss_remainder(double y, double* out);
APF_API apf_status apf_divisor_remainder(double y, double* out);

/* ---- moments ---- */
typedef enum apf_resonance_mode { APF_RESONANCE_AUTO = 0, APF_RESONANCE_EXACT = 1, APF_RESONANCE_FLOATING = 2 } apf_resonance_mode;

typedef struct apf_moment_options {
  apf_resonance_mode mode;
  double tolerance; /* < 0: default 1e-9 * lambda_max */
  uint64_t max_terms;
} apf_moment_options;

APF_API apf_moment_options apf_moment_options_default(void);
APF_API apf_status apf_theoretical_moment(const apf_spectrum_t* spec, int n, const apf_moment_options* options,
                                          apf_moment_report_t** out);
/* Empirical moments at each Y with X = schedule(Y); the theoretical value is attached when
 * attach_theoretical != 0. max_step caps the grid step. */
APF_API apf_status apf_moment_convergence(const apf_spectrum_t* spec, int n, apf_schedule schedule,
                                          const double* Y_list, size_t n_Y, double max_step, int attach_theoretical,
                                          const apf_moment_options* options, apf_moment_report_t** out);
APF_API apf_status apf_empirical_moment(const apf_sampled_t* f, int n, double Y, double* out);
APF_API void apf_moment_report_free(apf_moment_report_t* r);
/* Returns 1 and writes *value when the theoretical moment is available. */
APF_API int apf_moment_report_theoretical(const apf_moment_report_t* r, double* value);
APF_API uint64_t apf_moment_report_resonance_count(const apf_moment_report_t* r);
APF_API int apf_moment_report_budget_exceeded(const apf_moment_report_t* r);
APF_API int apf_moment_report_exact_mode(const apf_moment_report_t* r);
APF_API double apf_moment_report_tolerance(const apf_moment_report_t* r);
APF_API size_t apf_moment_report_empirical_count(const apf_moment_report_t* r);
APF_API apf_status apf_moment_report_empirical(const apf_moment_report_t* r, size_t index, double* Y, double* value);
APF_API apf_status apf_moment_report_to_json(const apf_moment_report_t* r, char** out);

/* ---- distributions ---- */
APF_API apf_status apf_estimate_distribution(const apf_sampled_t* f, double Y, int bins, apf_distribution_t** out);
APF_API apf_status apf_truncated_distribution(const apf_spectrum_t* spec, double T, double Y, int bins,
                                              double max_step, apf_distribution_t** out);
APF_API void apf_distribution_free(apf_distribution_t* d);
APF_API size_t apf_distribution_bins(const apf_distribution_t* d);
APF_API apf_status apf_distribution_bin(const apf_distribution_t* d, size_t index, double* left, double* right,
                                        double* mass);
APF_API double apf_distribution_tail_mass(const apf_distribution_t* d, double S);
APF_API double apf_distribution_interval_mass(const apf_distribution_t* d, double a, double b);
APF_API double apf_distribution_moment(const apf_distribution_t* d, int n);
APF_API apf_status apf_distribution_to_csv(const apf_distribution_t* d, const char* const* header_lines,
                                           size_t n_header, char** out);

typedef struct apf_tail_summary {
  int has_exponent;
  double exponent_hat;
  int has_predicted;
  double predicted_exponent;
  int compact_support;
  int predicted_compact;
} apf_tail_summary;

/* has_beta == 0 leaves beta unused. json (optional) receives the full fit. */
APF_API apf_status apf_fit_tails(const apf_distribution_t* d, const double* S_grid, size_t n_S, int has_beta,
                                 double beta, apf_tail_summary* summary, char** json);
/* Finite-spectrum variant: beta is infinite and compact support is predicted. */
APF_API apf_status apf_fit_tails_finite(const apf_distribution_t* d, const double* S_grid, size_t n_S,
                                        const apf_spectrum_t* spec, apf_tail_summary* summary, char** json);
/* Writes predicted (2 beta - 1)/(2 - 2 beta) and returns 1, or returns 0 for beta >= 1. */
APF_API int apf_predicted_tail_exponent(double beta, double* out);
/* gaps (optional, n_reports entries) receives histogram moment minus reference. */
APF_API apf_status apf_compare_moments(const apf_distribution_t* d, const apf_moment_report_t* const* reports,
                                       size_t n_reports, double* gaps, char** json);

/* ---- hyperbolic plane ---- */
typedef struct apf_hpoint {
  double x;
  double y;
} apf_hpoint;

/* Accepts "i", "2i", "a+bi", "x,y". */
APF_API apf_status apf_parse_point(const char* text, apf_hpoint* out);
APF_API apf_status apf_distance(apf_hpoint z, apf_hpoint w, double* out);
APF_API apf_status apf_apply_map(const double entries[4], apf_hpoint z, apf_hpoint* out);

APF_API apf_status apf_spectral_data_default(apf_spectral_data_t** out);
APF_API apf_status apf_spectral_data_load(const char* path, apf_spectral_data_t** out);
APF_API apf_status apf_spectral_data_parse(const char* text, apf_spectral_data_t** out);
APF_API void apf_spectral_data_free(apf_spectral_data_t* sd);
APF_API double apf_spectral_data_volume(const apf_spectral_data_t* sd);
APF_API apf_status apf_main_term(const apf_spectral_data_t* sd, double s, double* out);
APF_API apf_status apf_main_term_integral(const apf_spectral_data_t* sd, double s, double* out);
/* sign: +1 or -1. */
APF_API apf_status apf_main_term_smoothed(const apf_spectral_data_t* sd, double s, double delta, int sign,
                                          double* out);

APF_API apf_status apf_group_modular(apf_group_t** out);
/* Generators as integer rows (a, b, c, d), 4 * n entries. Completeness is heuristic. */
APF_API apf_status apf_group_from_generators(const int64_t* entries, size_t n, double prune_margin,
                                             apf_group_t** out);
APF_API void apf_group_free(apf_group_t* g);

APF_API apf_status apf_count_orbit(const apf_group_t* group, double s, apf_hpoint z, apf_hpoint w,
                                   apf_orbit_t** out);
APF_API void apf_orbit_free(apf_orbit_t* o);
APF_API size_t apf_orbit_count(const apf_orbit_t* o);
APF_API size_t apf_orbit_count_within(const apf_orbit_t* o, double s);
APF_API double apf_orbit_radius(const apf_orbit_t* o);
APF_API apf_status apf_orbit_element(const apf_orbit_t* o, size_t index, double entries[4], double* distance);
/* 1 when the enumeration is complete by construction. note (optional) receives the caveat. */
APF_API int apf_orbit_complete(const apf_orbit_t* o, char** note);

APF_API apf_status apf_remainder_e(const apf_orbit_t* o, const apf_spectral_data_t* sd, double s, double* out);
APF_API apf_status apf_variance_window(const apf_orbit_t* o, const apf_spectral_data_t* sd, double T,
                                       double max_piece, double* out);
APF_API apf_status apf_variance_window_fixed_step(const apf_orbit_t* o, const apf_spectral_data_t* sd, double T,
                                                  double step, double* out);
APF_API apf_status apf_variance_fixed_step_bound(const apf_orbit_t* o, const apf_spectral_data_t* sd, double T,
                                                 double step, double* out);
APF_API apf_status apf_integrated_remainder_g3(const apf_orbit_t* o, const apf_spectral_data_t* sd, double s,
                                               double* out);
APF_API apf_status apf_integrated_remainder_g3_fixed_step(const apf_orbit_t* o, const apf_spectral_data_t* sd,
                                                          double s, double step, double* out);

/* ---- Selberg/Harish-Chandra transforms and kernels ---- */
APF_API apf_status apf_shc_integral(double R, double t_re, double t_im, double* out_re, double* out_im);
APF_API apf_status apf_shc_hypergeometric(double R, double t, double* out);
APF_API apf_status apf_shc_asymptotic(double R, double t, double* out);
APF_API apf_status apf_shc_imag(double R, double tau, double* out);
APF_API apf_status apf_shc_small_r(double R, double t_re, double t_im, double* out_re, double* out_im);
APF_API double apf_shc_at_i_half(double R);
APF_API double apf_shc_at_zero_leading(double R);
APF_API apf_status apf_g_transform(double R, double u, double* out);
APF_API apf_status apf_h_pm(double s, double delta, double t_re, double t_im, int sign, double* out_re,
                            double* out_im);
APF_API apf_status apf_h_pm_integral(double s, double delta, int sign, double* out);
APF_API apf_status apf_smoothed_kernels(double s, double delta, const double* u_grid, size_t n, double* k_minus,
                                        double* k_plus);

#ifdef __cplusplus
}
#endif

#endif
