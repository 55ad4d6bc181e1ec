#include "apf/apf.h"

#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "apf/arithmetic.hpp"
#include "apf/distribution.hpp"
#include "apf/error.hpp"
#include "apf/hyperbolic/geometry.hpp"
#include "apf/hyperbolic/kernels.hpp"
#include "apf/hyperbolic/main_term.hpp"
#include "apf/hyperbolic/orbit.hpp"
#include "apf/hyperbolic/remainder.hpp"
#include "apf/hyperbolic/shc.hpp"
#include "apf/moments.hpp"
#include "apf/parallel.hpp"
#include "apf/spectrum.hpp"
#include "apf/trigsum.hpp"

struct apf_spectrum {
  apf::Spectrum value;
};
struct apf_sampled {
  apf::SampledFunction value;
};
struct apf_moment_report {
  apf::MomentReport value;
};
struct apf_distribution {
  apf::DistributionEstimate value;
};
struct apf_spectral_data {
  apf::hyp::SpectralData value;
};
struct apf_group {
  apf::hyp::GroupDescriptor value;
};
struct apf_orbit {
  apf::hyp::OrbitBall value;
};

namespace {

thread_local std::string t_last_error;
thread_local std::string t_last_warning;

template <class F>
apf_status guard(F&& body) {
  t_last_error.clear();
  try {
    body();
    return APF_OK;
  } catch (const apf::Error& e) {
    t_last_error = e.what();
    return static_cast<apf_status>(static_cast<int>(e.code()));
  } catch (const std::bad_alloc&) {
    t_last_error = "out of memory";
    return APF_ERR_BUDGET_EXCEEDED;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return APF_ERR_INTERNAL;
  }
}

void need(const void* p, const char* name) {
  if (p == nullptr) apf::fail(apf::ErrorCode::kInvalidArgument, std::string("null argument: ") + name);
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_warnings(const apf::LoadWarnings& w) {
  t_last_warning.clear();
  for (const auto& m : w.messages) {
    if (!t_last_warning.empty()) t_last_warning += '\n';
    t_last_warning += m;
  }
}

std::vector<std::string> header_vector(const char* const* lines, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < n; ++k)
    if (lines[k] != nullptr) out.emplace_back(lines[k]);
  return out;
}

apf::CutoffSchedule to_schedule(apf_schedule s) {
  switch (s.kind) {
    case APF_SCHEDULE_EXPONENTIAL: return apf::CutoffSchedule::exponential(s.x0);
    case APF_SCHEDULE_LINEAR: return apf::CutoffSchedule::linear(s.x0);
    case APF_SCHEDULE_CONSTANT: return apf::CutoffSchedule::constant(s.x0);
  }
  apf::fail(apf::ErrorCode::kInvalidArgument, "unknown cutoff schedule");
}

apf::MomentOptions to_options(const apf_moment_options* o) {
  apf::MomentOptions out;
  if (o == nullptr) return out;
  switch (o->mode) {
    case APF_RESONANCE_AUTO: out.mode = apf::ResonanceMode::kAuto; break;
    case APF_RESONANCE_EXACT: out.mode = apf::ResonanceMode::kExact; break;
    case APF_RESONANCE_FLOATING: out.mode = apf::ResonanceMode::kFloating; break;
    default: apf::fail(apf::ErrorCode::kInvalidArgument, "unknown resonance mode");
  }
  out.tolerance = o->tolerance;
  out.max_terms = static_cast<std::size_t>(o->max_terms);
  return out;
}

apf::hyp::HPoint to_point(apf_hpoint p) { return apf::hyp::HPoint::create(p.x, p.y); }

int sign_of(int sign) {
  if (sign != 1 && sign != -1) apf::fail(apf::ErrorCode::kInvalidArgument, "sign must be +1 or -1");
  return sign;
}

template <class T, class F>
apf_status make(T** out, F&& build) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    *out = new T{build()};
  });
}

}  // namespace

extern "C" {

const char* apf_version(void) { return APF_VERSION_STRING; }
const char* apf_last_error(void) { return t_last_error.c_str(); }
const char* apf_last_warning(void) { return t_last_warning.c_str(); }
void apf_string_free(char* s) { delete[] s; }
void apf_set_threads(unsigned n) { apf::set_max_threads(n); }
unsigned apf_get_threads(void) { return apf::max_threads(); }

apf_status apf_set_budgets(uint64_t sieve_limit, uint64_t count_limit) {
  return guard([&] {
    apf::require(sieve_limit >= 2 && count_limit >= 2, "budgets must be at least 2");
    apf::set_budgets({sieve_limit, count_limit});
  });
}

void apf_get_budgets(uint64_t* sieve_limit, uint64_t* count_limit) {
  const auto b = apf::budgets();
  if (sieve_limit) *sieve_limit = b.sieve_limit;
  if (count_limit) *count_limit = b.count_limit;
}

apf_status apf_hash_file(const char* path, uint64_t* out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    std::ifstream in(path, std::ios::binary);
    if (!in) apf::fail(apf::ErrorCode::kIo, std::string("cannot open ") + path);
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    *out = apf::fnv1a64(bytes);
  });
}

/* spectra */

apf_status apf_spectrum_create(const double* lambda, const double* re_c, const double* im_c, size_t n,
                               apf_spectrum_t** out) {
  return make(out, [&] {
    if (n > 0) {
      need(lambda, "lambda");
      need(re_c, "re_c");
    }
    std::vector<double> f(lambda, lambda + n);
    std::vector<apf::Complex> c(n);
    for (size_t k = 0; k < n; ++k) c[k] = {re_c[k], im_c ? im_c[k] : 0.0};
    return apf::Spectrum::create(std::move(f), std::move(c));
  });
}

apf_status apf_spectrum_load(const char* path, apf_spectrum_t** out) {
  return make(out, [&] {
    need(path, "path");
    apf::LoadWarnings w;
    auto spec = apf::load_spectrum(path, &w);
    set_warnings(w);
    return spec;
  });
}

apf_status apf_spectrum_parse(const char* csv_text, apf_spectrum_t** out) {
  return make(out, [&] {
    need(csv_text, "csv_text");
    std::istringstream in(csv_text);
    apf::LoadWarnings w;
    auto spec = apf::parse_spectrum(in, &w);
    set_warnings(w);
    return spec;
  });
}

apf_status apf_spectrum_zeta(const char* zeros_path, double X, apf_spectrum_t** out) {
  return make(out, [&] {
    need(zeros_path, "zeros_path");
    return apf::zeta_spectrum(apf::ZeroTable::load(zeros_path), X);
  });
}

apf_status apf_spectrum_gauss(int64_t n_max, int normalization, apf_spectrum_t** out) {
  return make(out, [&] {
    apf::require(normalization == 0 || normalization == 1, "normalization must be 0 or 1");
    return apf::gauss_spectrum(n_max, normalization == 0 ? apf::GaussNormalization::kClassical
                                                         : apf::GaussNormalization::kAlternative);
  });
}

void apf_spectrum_free(apf_spectrum_t* spec) { delete spec; }
size_t apf_spectrum_size(const apf_spectrum_t* spec) { return spec ? spec->value.size() : 0; }
uint64_t apf_spectrum_digest(const apf_spectrum_t* spec) { return spec ? spec->value.digest() : 0; }

apf_status apf_spectrum_get(const apf_spectrum_t* spec, size_t index, double* lambda, double* re_c, double* im_c) {
  return guard([&] {
    need(spec, "spec");
    if (index >= spec->value.size()) apf::fail(apf::ErrorCode::kOutOfRange, "spectrum index out of range");
    if (lambda) *lambda = spec->value.frequencies()[index];
    if (re_c) *re_c = spec->value.coefficients()[index].real();
    if (im_c) *im_c = spec->value.coefficients()[index].imag();
  });
}

apf_status apf_spectrum_to_csv(const apf_spectrum_t* spec, char** out) {
  return guard([&] {
    need(spec, "spec");
    need(out, "out");
    std::ostringstream os;
    apf::write_spectrum(os, spec->value);
    *out = dup_string(os.str());
  });
}

apf_status apf_spectrum_fit_beta(const apf_spectrum_t* spec, double t_min, double t_max, double* beta_hat,
                                 double* r_squared, char** windows_csv) {
  return guard([&] {
    need(spec, "spec");
    const auto windows = apf::window_coefficient_sums(spec->value, t_min, t_max);
    if (windows_csv) {
      std::ostringstream os;
      os.precision(17);
      os << "T,sum\n";
      for (const auto& w : windows) os << w.T << ',' << w.sum << '\n';
      *windows_csv = dup_string(os.str());
    }
    const auto fit = apf::fit_beta(windows);
    if (beta_hat) *beta_hat = fit.beta_hat;
    if (r_squared) *r_squared = fit.r_squared;
  });
}

/* evaluation */

apf_status apf_eval_sum(const apf_spectrum_t* spec, double y, double X, double* out) {
  return guard([&] {
    need(spec, "spec");
    need(out, "out");
    *out = apf::eval_sum(spec->value, y, X);
  });
}

apf_status apf_eval_grid(const apf_spectrum_t* spec, double y0, double y1, double step, apf_schedule schedule,
                         int fixed_Y, apf_sampled_t** out) {
  return make(out, [&] {
    need(spec, "spec");
    return apf::eval_grid(spec->value, y0, y1, step, to_schedule(schedule), fixed_Y != 0);
  });
}

apf_status apf_pnt_grid(double y0, double y1, double step, apf_sampled_t** out) {
  return make(out, [&] { return apf::pnt_remainder_grid(y0, y1, step); });
}
apf_status apf_gauss_grid(double y0, double y1, double step, apf_sampled_t** out) {
  return make(out, [&] { return apf::gauss_remainder_grid(y0, y1, step); });
}
apf_status apf_divisor_grid(double y0, double y1, double step, apf_sampled_t** out) {
  return make(out, [&] { return apf::divisor_remainder_grid(y0, y1, step); });
}

void apf_sampled_free(apf_sampled_t* f) { delete f; }
size_t apf_sampled_size(const apf_sampled_t* f) { return f ? f->value.size() : 0; }
double apf_sampled_y0(const apf_sampled_t* f) { return f ? f->value.y0 : 0; }
double apf_sampled_step(const apf_sampled_t* f) { return f ? f->value.step : 0; }
const double* apf_sampled_values(const apf_sampled_t* f) { return f ? f->value.values.data() : nullptr; }

apf_status apf_sampled_to_csv(const apf_sampled_t* f, const char* const* header_lines, size_t n_header, char** out) {
  return guard([&] {
    need(f, "f");
    need(out, "out");
    std::ostringstream os;
    apf::write_sampled_csv(os, f->value, header_vector(header_lines, header_lines ? n_header : 0));
    *out = dup_string(os.str());
  });
}

/* arithmetic */

apf_status apf_chebyshev_psi(double x, double* out) {
  return guard([&] {
    need(out, "out");
    *out = apf::chebyshev_psi(x);
  });
}
apf_status apf_lattice_count(double x, int64_t* out) {
  return guard([&] {
    need(out, "out");
    *out = apf::lattice_count_R(x);
  });
}
apf_status apf_divisor_sum(double x, int64_t* out) {
  return guard([&] {
    need(out, "out");
    *out = apf::divisor_sum(x);
  });
}
apf_status apf_pnt_remainder(double y, double* out) {
  return guard([&] {
    need(out, "out");
    *out = apf::pnt_remainder(y);
  });
}
apf_status apf_gauss_remainder(double y, double* out) {
  return guard([&] {
    need(out, "out");
    *out = apf::gauss_remainder(y);
  });
}
apf_status apf_divisor_remainder(double y, double* out) {
  return guard([&] {
    need(out, "out");
    *out = apf::divisor_remainder(y);
  });
}

/* moments */

apf_moment_options apf_moment_options_default(void) {
  const apf::MomentOptions d;
  return {APF_RESONANCE_AUTO, d.tolerance, static_cast<uint64_t>(d.max_terms)};
}

apf_status apf_theoretical_moment(const apf_spectrum_t* spec, int n, const apf_moment_options* options,
                                  apf_moment_report_t** out) {
  return make(out, [&] {
    need(spec, "spec");
    return apf::theoretical_moment(spec->value, n, to_options(options));
  });
}

apf_status apf_moment_convergence(const apf_spectrum_t* spec, int n, apf_schedule schedule, const double* Y_list,
                                  size_t n_Y, double max_step, int attach_theoretical,
                                  const apf_moment_options* options, apf_moment_report_t** out) {
  return make(out, [&] {
    need(spec, "spec");
    if (n_Y > 0) need(Y_list, "Y_list");
    apf::ConvergenceOptions opts;
    opts.max_step = max_step;
    opts.attach_theoretical = attach_theoretical != 0;
    opts.moment = to_options(options);
    return apf::moment_convergence(spec->value, n, to_schedule(schedule), std::span<const double>(Y_list, n_Y), opts);
  });
}

apf_status apf_empirical_moment(const apf_sampled_t* f, int n, double Y, double* out) {
  return guard([&] {
    need(f, "f");
    need(out, "out");
    *out = apf::empirical_moment(f->value, n, Y);
  });
}

void apf_moment_report_free(apf_moment_report_t* r) { delete r; }

int apf_moment_report_theoretical(const apf_moment_report_t* r, double* value) {
  if (r == nullptr || !r->value.theoretical) return 0;
  if (value) *value = *r->value.theoretical;
  return 1;
}
uint64_t apf_moment_report_resonance_count(const apf_moment_report_t* r) { return r ? r->value.resonance_count : 0; }
int apf_moment_report_budget_exceeded(const apf_moment_report_t* r) { return r && r->value.budget_exceeded; }
int apf_moment_report_exact_mode(const apf_moment_report_t* r) { return r && r->value.exact_mode; }
double apf_moment_report_tolerance(const apf_moment_report_t* r) { return r ? r->value.tolerance : 0; }
size_t apf_moment_report_empirical_count(const apf_moment_report_t* r) { return r ? r->value.empirical.size() : 0; }

apf_status apf_moment_report_empirical(const apf_moment_report_t* r, size_t index, double* Y, double* value) {
  return guard([&] {
    need(r, "report");
    if (index >= r->value.empirical.size()) apf::fail(apf::ErrorCode::kOutOfRange, "empirical index out of range");
    if (Y) *Y = r->value.empirical[index].first;
    if (value) *value = r->value.empirical[index].second;
  });
}

apf_status apf_moment_report_to_json(const apf_moment_report_t* r, char** out) {
  return guard([&] {
    need(r, "report");
    need(out, "out");
    *out = dup_string(apf::to_json(r->value));
  });
}

/* distributions */

apf_status apf_estimate_distribution(const apf_sampled_t* f, double Y, int bins, apf_distribution_t** out) {
  return make(out, [&] {
    need(f, "f");
    return apf::estimate_distribution(f->value, Y, bins);
  });
}

apf_status apf_truncated_distribution(const apf_spectrum_t* spec, double T, double Y, int bins, double max_step,
                                      apf_distribution_t** out) {
  return make(out, [&] {
    need(spec, "spec");
    return apf::truncated_distribution(spec->value, T, Y, bins, max_step);
  });
}

void apf_distribution_free(apf_distribution_t* d) { delete d; }
size_t apf_distribution_bins(const apf_distribution_t* d) { return d ? d->value.bins() : 0; }

apf_status apf_distribution_bin(const apf_distribution_t* d, size_t index, double* left, double* right,
                                double* mass) {
  return guard([&] {
    need(d, "distribution");
    if (index >= d->value.bins()) apf::fail(apf::ErrorCode::kOutOfRange, "bin index out of range");
    if (left) *left = d->value.bin_edges[index];
    if (right) *right = d->value.bin_edges[index + 1];
    if (mass) *mass = d->value.masses[index];
  });
}

double apf_distribution_tail_mass(const apf_distribution_t* d, double S) { return d ? d->value.tail_mass(S) : 0; }
double apf_distribution_interval_mass(const apf_distribution_t* d, double a, double b) {
  return d ? d->value.interval_mass(a, b) : 0;
}
double apf_distribution_moment(const apf_distribution_t* d, int n) { return d ? d->value.moment(n) : 0; }

apf_status apf_distribution_to_csv(const apf_distribution_t* d, const char* const* header_lines, size_t n_header,
                                   char** out) {
  return guard([&] {
    need(d, "distribution");
    need(out, "out");
    std::ostringstream os;
    apf::write_histogram_csv(os, d->value, header_vector(header_lines, header_lines ? n_header : 0));
    *out = dup_string(os.str());
  });
}

static void fill_tails(const apf::TailFit& fit, apf_tail_summary* summary, char** json) {
  if (summary) {
    summary->has_exponent = fit.exponent_hat.has_value();
    summary->exponent_hat = fit.exponent_hat.value_or(0);
    summary->has_predicted = fit.predicted_exponent.has_value();
    summary->predicted_exponent = fit.predicted_exponent.value_or(0);
    summary->compact_support = fit.compact_support;
    summary->predicted_compact = fit.predicted_compact;
  }
  if (json) *json = dup_string(apf::to_json(fit));
}

apf_status apf_fit_tails(const apf_distribution_t* d, const double* S_grid, size_t n_S, int has_beta, double beta,
                         apf_tail_summary* summary, char** json) {
  return guard([&] {
    need(d, "distribution");
    if (n_S > 0) need(S_grid, "S_grid");
    fill_tails(apf::fit_tails(d->value, std::span<const double>(S_grid, n_S),
                              has_beta ? std::optional<double>(beta) : std::nullopt),
               summary, json);
  });
}

apf_status apf_fit_tails_finite(const apf_distribution_t* d, const double* S_grid, size_t n_S,
                                const apf_spectrum_t* spec, apf_tail_summary* summary, char** json) {
  return guard([&] {
    need(d, "distribution");
    need(spec, "spec");
    if (n_S > 0) need(S_grid, "S_grid");
    fill_tails(apf::fit_tails(d->value, std::span<const double>(S_grid, n_S), spec->value), summary, json);
  });
}

int apf_predicted_tail_exponent(double beta, double* out) {
  const auto p = apf::predicted_tail_exponent(beta);
  if (!p) return 0;
  if (out) *out = *p;
  return 1;
}

apf_status apf_compare_moments(const apf_distribution_t* d, const apf_moment_report_t* const* reports,
                               size_t n_reports, double* gaps, char** json) {
  return guard([&] {
    need(d, "distribution");
    if (n_reports > 0) need(reports, "reports");
    std::vector<apf::MomentReport> list;
    for (size_t k = 0; k < n_reports; ++k) {
      need(reports[k], "report");
      list.push_back(reports[k]->value);
    }
    const auto rows = apf::compare_moments(d->value, list);
    if (gaps)
      for (size_t k = 0; k < rows.size(); ++k) gaps[k] = rows[k].gap;
    if (json) *json = dup_string(apf::to_json(std::span<const apf::MomentComparison>(rows)));
  });
}

/* hyperbolic plane */

apf_status apf_parse_point(const char* text, apf_hpoint* out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    const auto p = apf::hyp::parse_point(text);
    *out = {p.x, p.y};
  });
}

apf_status apf_distance(apf_hpoint z, apf_hpoint w, double* out) {
  return guard([&] {
    need(out, "out");
    *out = apf::hyp::distance(to_point(z), to_point(w));
  });
}

apf_status apf_apply_map(const double entries[4], apf_hpoint z, apf_hpoint* out) {
  return guard([&] {
    need(entries, "entries");
    need(out, "out");
    const auto g = apf::hyp::MoebiusMap::real(entries[0], entries[1], entries[2], entries[3]);
    const auto p = apf::hyp::apply_map(g, to_point(z));
    *out = {p.x, p.y};
  });
}

apf_status apf_spectral_data_default(apf_spectral_data_t** out) {
  return make(out, [] { return apf::hyp::SpectralData::modular_default(); });
}
apf_status apf_spectral_data_load(const char* path, apf_spectral_data_t** out) {
  return make(out, [&] {
    need(path, "path");
    return apf::hyp::SpectralData::load(path);
  });
}
apf_status apf_spectral_data_parse(const char* text, apf_spectral_data_t** out) {
  return make(out, [&] {
    need(text, "text");
    std::istringstream in(text);
    return apf::hyp::SpectralData::parse(in);
  });
}
void apf_spectral_data_free(apf_spectral_data_t* sd) { delete sd; }
double apf_spectral_data_volume(const apf_spectral_data_t* sd) { return sd ? sd->value.volume : 0; }

apf_status apf_main_term(const apf_spectral_data_t* sd, double s, double* out) {
  return guard([&] {
    need(sd, "spectral data");
    need(out, "out");
    *out = apf::hyp::main_term(sd->value, s);
  });
}
apf_status apf_main_term_integral(const apf_spectral_data_t* sd, double s, double* out) {
  return guard([&] {
    need(sd, "spectral data");
    need(out, "out");
    *out = apf::hyp::main_term_integral(sd->value, s);
  });
}
apf_status apf_main_term_smoothed(const apf_spectral_data_t* sd, double s, double delta, int sign, double* out) {
  return guard([&] {
    need(sd, "spectral data");
    need(out, "out");
    *out = apf::hyp::main_term_smoothed(sd->value, s, delta, sign_of(sign));
  });
}

apf_status apf_group_modular(apf_group_t** out) {
  return make(out, [] { return apf::hyp::GroupDescriptor::modular(); });
}

apf_status apf_group_from_generators(const int64_t* entries, size_t n, double prune_margin, apf_group_t** out) {
  return make(out, [&] {
    apf::require(n > 0, "at least one generator is required");
    need(entries, "entries");
    std::vector<apf::hyp::MoebiusMap> gens;
    for (size_t k = 0; k < n; ++k)
      gens.push_back(apf::hyp::MoebiusMap::integer(entries[4 * k], entries[4 * k + 1], entries[4 * k + 2],
                                                   entries[4 * k + 3]));
    return apf::hyp::GroupDescriptor::from_generators(std::move(gens), prune_margin);
  });
}
void apf_group_free(apf_group_t* g) { delete g; }

apf_status apf_count_orbit(const apf_group_t* group, double s, apf_hpoint z, apf_hpoint w, apf_orbit_t** out) {
  return make(out, [&] {
    need(group, "group");
    return apf::hyp::count_orbit(group->value, s, to_point(z), to_point(w));
  });
}
void apf_orbit_free(apf_orbit_t* o) { delete o; }
size_t apf_orbit_count(const apf_orbit_t* o) { return o ? o->value.count() : 0; }
size_t apf_orbit_count_within(const apf_orbit_t* o, double s) { return o ? o->value.count_within(s) : 0; }
double apf_orbit_radius(const apf_orbit_t* o) { return o ? o->value.radius : 0; }

apf_status apf_orbit_element(const apf_orbit_t* o, size_t index, double entries[4], double* distance) {
  return guard([&] {
    need(o, "orbit");
    if (index >= o->value.count()) apf::fail(apf::ErrorCode::kOutOfRange, "orbit index out of range");
    if (entries) {
      const auto e = o->value.maps[index].entries();
      for (int k = 0; k < 4; ++k) entries[k] = e[k];
    }
    if (distance) *distance = o->value.distances[index];
  });
}

int apf_orbit_complete(const apf_orbit_t* o, char** note) {
  if (o == nullptr) return 0;
  if (note) *note = dup_string(o->value.completeness_note);
  return o->value.complete;
}

apf_status apf_remainder_e(const apf_orbit_t* o, const apf_spectral_data_t* sd, double s, double* out) {
  return guard([&] {
    need(o, "orbit");
    need(sd, "spectral data");
    need(out, "out");
    *out = apf::hyp::remainder_e(o->value, sd->value, s);
  });
}
apf_status apf_variance_window(const apf_orbit_t* o, const apf_spectral_data_t* sd, double T, double max_piece,
                               double* out) {
  return guard([&] {
    need(o, "orbit");
    need(sd, "spectral data");
    need(out, "out");
    *out = apf::hyp::variance_window(o->value, sd->value, T, max_piece);
  });
}
apf_status apf_variance_window_fixed_step(const apf_orbit_t* o, const apf_spectral_data_t* sd, double T,
                                          double step, double* out) {
  return guard([&] {
    need(o, "orbit");
    need(sd, "spectral data");
    need(out, "out");
    *out = apf::hyp::variance_window_fixed_step(o->value, sd->value, T, step);
  });
}
apf_status apf_variance_fixed_step_bound(const apf_orbit_t* o, const apf_spectral_data_t* sd, double T, double step,
                                         double* out) {
  return guard([&] {
    need(o, "orbit");
    need(sd, "spectral data");
    need(out, "out");
    *out = apf::hyp::variance_fixed_step_bound(o->value, sd->value, T, step);
  });
}
apf_status apf_integrated_remainder_g3(const apf_orbit_t* o, const apf_spectral_data_t* sd, double s, double* out) {
  return guard([&] {
    need(o, "orbit");
    need(sd, "spectral data");
    need(out, "out");
    *out = apf::hyp::integrated_remainder_G3(o->value, sd->value, s);
  });
}
apf_status apf_integrated_remainder_g3_fixed_step(const apf_orbit_t* o, const apf_spectral_data_t* sd, double s,
                                                  double step, double* out) {
  return guard([&] {
    need(o, "orbit");
    need(sd, "spectral data");
    need(out, "out");
    *out = apf::hyp::integrated_remainder_G3_fixed_step(o->value, sd->value, s, step);
  });
}

/* transforms and kernels */

apf_status apf_shc_integral(double R, double t_re, double t_im, double* out_re, double* out_im) {
  return guard([&] {
    const auto v = apf::hyp::shc_integral(R, {t_re, t_im});
    if (out_re) *out_re = v.real();
    if (out_im) *out_im = v.imag();
  });
}
apf_status apf_shc_hypergeometric(double R, double t, double* out) {
  return guard([&] {
    need(out, "out");
    *out = apf::hyp::shc_hypergeometric(R, t);
  });
}
apf_status apf_shc_asymptotic(double R, double t, double* out) {
  return guard([&] {
    need(out, "out");
    *out = apf::hyp::shc_asymptotic(R, t);
  });
}
apf_status apf_shc_imag(double R, double tau, double* out) {
  return guard([&] {
    need(out, "out");
    *out = apf::hyp::shc_imag(R, tau);
  });
}
apf_status apf_shc_small_r(double R, double t_re, double t_im, double* out_re, double* out_im) {
  return guard([&] {
    const auto v = apf::hyp::shc_small_R(R, {t_re, t_im});
    if (out_re) *out_re = v.real();
    if (out_im) *out_im = v.imag();
  });
}
double apf_shc_at_i_half(double R) { return apf::hyp::shc_at_i_half(R); }
double apf_shc_at_zero_leading(double R) { return apf::hyp::shc_at_zero_leading(R); }

apf_status apf_g_transform(double R, double u, double* out) {
  return guard([&] {
    need(out, "out");
    *out = apf::hyp::g_transform(R, u);
  });
}
apf_status apf_h_pm(double s, double delta, double t_re, double t_im, int sign, double* out_re, double* out_im) {
  return guard([&] {
    const auto v = apf::hyp::h_pm(s, delta, {t_re, t_im}, sign_of(sign));
    if (out_re) *out_re = v.real();
    if (out_im) *out_im = v.imag();
  });
}
apf_status apf_h_pm_integral(double s, double delta, int sign, double* out) {
  return guard([&] {
    need(out, "out");
    *out = apf::hyp::h_pm_integral(s, delta, sign_of(sign));
  });
}
apf_status apf_smoothed_kernels(double s, double delta, const double* u_grid, size_t n, double* k_minus,
                                double* k_plus) {
  return guard([&] {
    if (n > 0) need(u_grid, "u_grid");
    const auto kp = apf::hyp::smoothed_kernels(s, delta, std::span<const double>(u_grid, n));
    for (size_t k = 0; k < n; ++k) {
      if (k_minus) k_minus[k] = kp.k_minus[k];
      if (k_plus) k_plus[k] = kp.k_plus[k];
    }
  });
}

}  // extern "C"
