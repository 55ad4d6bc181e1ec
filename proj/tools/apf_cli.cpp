// Command-line front end. Uses only the C interface in apf/apf.h.
#include <apf/apf.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifndef APF_DEFAULT_ZEROS
#define APF_DEFAULT_ZEROS "data/zeta_zeros.txt"
#endif

namespace {

// Computation failure carrying the library status.
struct Failure {
  apf_status status;
  std::string message;
};

void check(apf_status st) {
  if (st != APF_OK) throw Failure{st, apf_last_error()};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using SpectrumPtr = std::unique_ptr<apf_spectrum_t, Deleter<apf_spectrum_t, apf_spectrum_free>>;
using SampledPtr = std::unique_ptr<apf_sampled_t, Deleter<apf_sampled_t, apf_sampled_free>>;
using ReportPtr = std::unique_ptr<apf_moment_report_t, Deleter<apf_moment_report_t, apf_moment_report_free>>;
using DistPtr = std::unique_ptr<apf_distribution_t, Deleter<apf_distribution_t, apf_distribution_free>>;
using SpectralPtr = std::unique_ptr<apf_spectral_data_t, Deleter<apf_spectral_data_t, apf_spectral_data_free>>;
using GroupPtr = std::unique_ptr<apf_group_t, Deleter<apf_group_t, apf_group_free>>;
using OrbitPtr = std::unique_ptr<apf_orbit_t, Deleter<apf_orbit_t, apf_orbit_free>>;

std::string take(char* s) {
  std::string out = s ? s : "";
  apf_string_free(s);
  return out;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string hex(uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Header lines (without the "# " prefix) shared by every output.
class Header {
 public:
  Header(const std::string& command, const CLI::App& sub) {
    lines_.push_back("apf " + std::string(apf_version()));
    lines_.push_back("command: " + command);
    std::istringstream cfg(sub.config_to_str(true, false));
    for (std::string line; std::getline(cfg, line);)
      if (!line.empty()) lines_.push_back("config: " + line);
  }

  void input(const std::string& path) {
    uint64_t h = 0;
    check(apf_hash_file(path.c_str(), &h));
    lines_.push_back("input: " + path + " fnv1a64=" + hex(h));
  }
  void note(const std::string& line) { lines_.push_back(line); }

  const std::vector<std::string>& lines() const { return lines_; }

  std::string comment_block() const {
    std::string out;
    for (const auto& l : lines_) out += "# " + l + "\n";
    return out;
  }

  nlohmann::ordered_json json() const { return lines_; }

  // Pointer array for the C calls that take header lines.
  std::vector<const char*> c_lines() const {
    std::vector<const char*> out;
    for (const auto& l : lines_) out.push_back(l.c_str());
    return out;
  }

 private:
  std::vector<std::string> lines_;
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{APF_ERR_IO, "cannot write " + path};
  out << text;
  if (!out) throw Failure{APF_ERR_IO, "write failed for " + path};
}

// "i/2", "i", "-i", "2i", "1.5", "1+2i", "0.5-0.25i".
std::optional<std::pair<double, double>> parse_complex(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  if (s.empty()) return std::nullopt;
  auto number = [](const std::string& t, double& v) {
    if (t.empty()) return false;
    char* end = nullptr;
    v = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size();
  };
  if (s.rfind("i/", 0) == 0) {
    double d = 0;
    if (!number(s.substr(2), d) || d == 0) return std::nullopt;
    return std::make_pair(0.0, 1.0 / d);
  }
  if (s.back() != 'i') {
    double v = 0;
    if (!number(s, v)) return std::nullopt;
    return std::make_pair(v, 0.0);
  }
  const std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not an exponent sign or the leading sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;)
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  auto imag_part = [&](const std::string& t, double& v) {
    if (t.empty() || t == "+") return v = 1, true;
    if (t == "-") return v = -1, true;
    return number(t, v);
  };
  double re = 0, im = 0;
  if (split == std::string::npos) {
    if (!imag_part(body, im)) return std::nullopt;
    return std::make_pair(0.0, im);
  }
  if (!number(body.substr(0, split), re) || !imag_part(body.substr(split), im)) return std::nullopt;
  return std::make_pair(re, im);
}

apf_hpoint point(const std::string& text) {
  apf_hpoint p{};
  check(apf_parse_point(text.c_str(), &p));
  return p;
}

apf_schedule schedule_from(const std::string& kind, double x0) {
  if (kind == "exponential") return {APF_SCHEDULE_EXPONENTIAL, x0};
  if (kind == "linear") return {APF_SCHEDULE_LINEAR, x0};
  return {APF_SCHEDULE_CONSTANT, x0};
}

apf_moment_options moment_options(const std::string& mode, double tolerance, uint64_t max_terms) {
  auto o = apf_moment_options_default();
  o.mode = mode == "exact" ? APF_RESONANCE_EXACT : mode == "floating" ? APF_RESONANCE_FLOATING : APF_RESONANCE_AUTO;
  o.tolerance = tolerance;
  o.max_terms = max_terms;
  return o;
}

SpectrumPtr load_spectrum(const std::string& path, Header& header) {
  header.input(path);
  apf_spectrum_t* raw = nullptr;
  check(apf_spectrum_load(path.c_str(), &raw));
  const std::string warn = apf_last_warning();
  if (!warn.empty()) {
    std::cerr << "warning: " << warn << '\n';
    header.note("warning: " + warn);
  }
  return SpectrumPtr(raw);
}

std::vector<double> range_or_list(const std::vector<double>& list, double lo, double hi, double step) {
  if (!list.empty()) return list;
  if (!(step > 0) || hi < lo) throw Failure{APF_ERR_INVALID_ARGUMENT, "need --s values or a valid --s-min/--s-max/--s-step"};
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long k = 0; k <= n; ++k) out.push_back(lo + static_cast<double>(k) * step);
  return out;
}

std::vector<int64_t> load_generators(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{APF_ERR_IO, "cannot open " + path};
  std::vector<int64_t> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    int64_t e[4];
    if (!(ls >> e[0] >> e[1] >> e[2] >> e[3]))
      throw Failure{APF_ERR_PARSE, "parse error at line " + std::to_string(line_no) + " of " + path};
    out.insert(out.end(), e, e + 4);
  }
  return out;
}

struct HypInputs {
  std::string group = "pslz";
  std::string generators;
  double prune_margin = 2.0;
  std::string spectral;
};

void add_hyp_options(CLI::App* sub, HypInputs& h) {
  sub->add_option("--group", h.group, "pslz, or 'generators' with --generators")
      ->check(CLI::IsMember({"pslz", "generators"}))
      ->capture_default_str();
  sub->add_option("--generators", h.generators, "file of integer generators, one 'a b c d' per line")
      ->check(CLI::ExistingFile);
  sub->add_option("--prune-margin", h.prune_margin, "extra displacement allowed in generator search")
      ->capture_default_str();
  sub->add_option("--spectral", h.spectral, "spectral data file (default: PSL(2,Z) profile)")
      ->check(CLI::ExistingFile);
}

GroupPtr make_group(const HypInputs& h, Header& header) {
  apf_group_t* g = nullptr;
  if (h.group == "pslz") {
    check(apf_group_modular(&g));
  } else {
    if (h.generators.empty()) throw Failure{APF_ERR_INVALID_ARGUMENT, "--group generators needs --generators"};
    header.input(h.generators);
    const auto e = load_generators(h.generators);
    check(apf_group_from_generators(e.data(), e.size() / 4, h.prune_margin, &g));
  }
  return GroupPtr(g);
}

SpectralPtr make_spectral(const HypInputs& h, Header& header) {
  apf_spectral_data_t* sd = nullptr;
  if (h.spectral.empty()) {
    check(apf_spectral_data_default(&sd));
  } else {
    header.input(h.spectral);
    check(apf_spectral_data_load(h.spectral.c_str(), &sd));
  }
  return SpectralPtr(sd);
}

OrbitPtr make_orbit(const apf_group_t* g, double s, apf_hpoint z, apf_hpoint w, Header& header) {
  apf_orbit_t* o = nullptr;
  check(apf_count_orbit(g, s, z, w, &o));
  OrbitPtr orbit(o);
  char* note = nullptr;
  if (!apf_orbit_complete(orbit.get(), &note)) header.note("completeness: heuristic; " + take(note));
  else apf_string_free(note);
  return orbit;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Almost periodic remainders, resonant moments and the hyperbolic circle problem"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(apf_version()));

  unsigned threads = 0;
  app.add_option("--threads", threads, "worker cap (0 = all cores)");
  std::optional<uint64_t> sieve_limit, count_limit;
  app.add_option("--sieve-limit", sieve_limit, "largest x for psi(x) (env APF_SIEVE_LIMIT)");
  app.add_option("--count-limit", count_limit, "largest x for R(x), D(x) (env APF_COUNT_LIMIT)");
  std::string out_path;

  // spectrum
  auto* sp = app.add_subcommand("spectrum", "build or load a spectrum and write it as CSV");
  std::string sp_source = "file", sp_file, sp_zeros = APF_DEFAULT_ZEROS, sp_norm = "classical";
  double sp_X = 100, sp_fit_min = 0, sp_fit_max = 0;
  int64_t sp_nmax = 1000;
  sp->add_option("--source", sp_source)->check(CLI::IsMember({"file", "zeta", "gauss"}))->capture_default_str();
  sp->add_option("--spec", sp_file, "input CSV for --source file")->check(CLI::ExistingFile);
  sp->add_option("--zeros", sp_zeros, "zeta ordinate table")->capture_default_str();
  sp->add_option("--X", sp_X, "frequency cutoff for zeta")->capture_default_str();
  sp->add_option("--n-max", sp_nmax, "largest n for gauss")->capture_default_str();
  sp->add_option("--normalization", sp_norm)->check(CLI::IsMember({"classical", "alt"}))->capture_default_str();
  sp->add_option("--fit-min", sp_fit_min, "window-decay fit range start");
  sp->add_option("--fit-max", sp_fit_max, "window-decay fit range end (fit skipped when 0)");
  sp->add_option("--out", out_path);

  // eval
  auto* ev = app.add_subcommand("eval", "tabulate S(y, X) on a grid");
  std::string ev_spec, ev_schedule = "exponential";
  double ev_y0 = 0, ev_y1 = 10, ev_step = 0.01, ev_x0 = 1;
  bool ev_moving = false;
  ev->add_option("--spec", ev_spec)->required()->check(CLI::ExistingFile);
  ev->add_option("--y0", ev_y0)->capture_default_str();
  ev->add_option("--y1", ev_y1)->capture_default_str();
  ev->add_option("--step", ev_step)->capture_default_str();
  ev->add_option("--schedule", ev_schedule)
      ->check(CLI::IsMember({"exponential", "linear", "constant"}))
      ->capture_default_str();
  ev->add_option("--x0", ev_x0, "schedule floor, or the constant X")->capture_default_str();
  ev->add_flag("--moving-cutoff", ev_moving, "use X(y) at each sample instead of X(y1)");
  ev->add_option("--out", out_path);

  // moments
  auto* mo = app.add_subcommand("moments", "theoretical and empirical moments");
  std::string mo_spec, mo_mode = "auto", mo_schedule = "exponential";
  int mo_order = 2;
  std::vector<double> mo_Y;
  double mo_tol = -1, mo_step = 0.01, mo_x0 = 1;
  uint64_t mo_terms = apf_moment_options_default().max_terms;
  bool mo_no_theory = false;
  mo->add_option("--spec", mo_spec)->required()->check(CLI::ExistingFile);
  mo->add_option("--order", mo_order)->check(CLI::Range(1, 64))->capture_default_str();
  mo->add_option("--Y", mo_Y, "empirical horizons (none: theoretical only)");
  mo->add_option("--mode", mo_mode)->check(CLI::IsMember({"auto", "exact", "floating"}))->capture_default_str();
  mo->add_option("--tolerance", mo_tol, "floating resonance tolerance (<0: 1e-9 lambda_max)")->capture_default_str();
  mo->add_option("--max-terms", mo_terms)->capture_default_str();
  mo->add_option("--max-step", mo_step)->capture_default_str();
  mo->add_option("--schedule", mo_schedule)
      ->check(CLI::IsMember({"exponential", "linear", "constant"}))
      ->capture_default_str();
  mo->add_option("--x0", mo_x0)->capture_default_str();
  mo->add_flag("--no-theoretical", mo_no_theory);
  mo->add_option("--out", out_path);

  // dist and tails share their sampling inputs
  struct DistInputs {
    std::string source = "spec", spec;
    double T = -1, Y = 1000, y0 = 1, step = 0.01;
    int bins = 200;
  };
  DistInputs di;
  auto add_dist_options = [&](CLI::App* sub) {
    sub->add_option("--source", di.source)->check(CLI::IsMember({"spec", "pnt", "gauss", "divisor"}))->capture_default_str();
    sub->add_option("--spec", di.spec)->check(CLI::ExistingFile);
    sub->add_option("--T", di.T, "truncation: keep lambda <= T (<0: all)")->capture_default_str();
    sub->add_option("--Y", di.Y)->capture_default_str();
    sub->add_option("--y0", di.y0, "start of the sampled range for arithmetic sources")->capture_default_str();
    sub->add_option("--step", di.step, "grid step cap")->capture_default_str();
    sub->add_option("--bins", di.bins)->check(CLI::Range(10, 10'000'000))->capture_default_str();
    sub->add_option("--out", out_path);
  };
  auto* di_cmd = app.add_subcommand("dist", "occupation-time histogram");
  add_dist_options(di_cmd);
  auto* ta = app.add_subcommand("tails", "tail masses and fitted exponent");
  add_dist_options(ta);
  std::vector<double> ta_S;
  std::optional<double> ta_beta;
  ta->add_option("--S", ta_S, "thresholds (default 0.5, 1, ..., 4)");
  ta->add_option("--beta", ta_beta, "decay exponent for the predicted tail");

  // arithmetic remainders
  struct RemInputs {
    double y0 = 1, y1 = 10, step = 0.01;
  };
  RemInputs ri;
  auto add_rem = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--y0", ri.y0)->capture_default_str();
    sub->add_option("--y1", ri.y1)->capture_default_str();
    sub->add_option("--step", ri.step)->capture_default_str();
    sub->add_option("--out", out_path);
    return sub;
  };
  auto* pn = add_rem("pnt", "normalized prime remainder q(y) on a grid");
  auto* ga = add_rem("gauss", "normalized circle remainder u(y) on a grid");
  auto* dv = add_rem("divisor", "normalized divisor remainder v(y) on a grid");

  // hyperbolic
  HypInputs hi;
  std::string hz = "i", hw = "i";
  auto add_points = [&](CLI::App* sub, bool with_w) {
    sub->add_option("--z", hz)->capture_default_str();
    if (with_w) sub->add_option("--w", hw)->capture_default_str();
  };
  auto* hc = app.add_subcommand("hyp-count", "orbit counts N, main term M and remainder e");
  std::vector<double> hc_s;
  double hc_min = 0, hc_max = 0, hc_step = 0.5;
  bool hc_maps = false;
  add_hyp_options(hc, hi);
  add_points(hc, true);
  hc->add_option("--s", hc_s, "radii");
  hc->add_option("--s-min", hc_min);
  hc->add_option("--s-max", hc_max);
  hc->add_option("--s-step", hc_step)->capture_default_str();
  hc->add_flag("--list-maps", hc_maps, "append the maps of the largest ball");
  hc->add_option("--out", out_path);

  auto* hv = app.add_subcommand("hyp-variance", "windowed variance H(T)");
  std::vector<double> hv_T{3, 4, 5, 6};
  double hv_piece = 0.05, hv_check = 0;
  add_hyp_options(hv, hi);
  add_points(hv, true);
  hv->add_option("--T", hv_T)->capture_default_str();
  hv->add_option("--max-piece", hv_piece)->capture_default_str();
  hv->add_option("--check-step", hv_check, "also run the fixed-step rule with this step");
  hv->add_option("--out", out_path);

  auto* hg = app.add_subcommand("hyp-g3", "radially integrated remainder G_3(s, z)");
  std::vector<double> hg_s;
  double hg_min = 0, hg_max = 0, hg_step = 0.5, hg_check = 0;
  add_hyp_options(hg, hi);
  add_points(hg, false);
  hg->add_option("--s", hg_s, "radii");
  hg->add_option("--s-min", hg_min);
  hg->add_option("--s-max", hg_max);
  hg->add_option("--s-step", hg_step)->capture_default_str();
  hg->add_option("--check-step", hg_check, "also run the fixed-step rule with this step");
  hg->add_option("--out", out_path);

  auto* sh = app.add_subcommand("shc", "Selberg/Harish-Chandra transform h_R(t)");
  double sh_R = 1;
  std::string sh_t = "0", sh_regime = "integral";
  sh->add_option("--R", sh_R)->capture_default_str();
  sh->add_option("--t", sh_t, "complex argument: i/2, 2i, 1.5, 1+2i")->capture_default_str();
  sh->add_option("--regime", sh_regime)
      ->check(CLI::IsMember({"integral", "hypergeometric", "asymptotic", "imag", "small-R", "all"}))
      ->capture_default_str();
  sh->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    apf_set_threads(threads);
    uint64_t sieve = 0, count = 0;
    apf_get_budgets(&sieve, &count);
    if (const char* env = std::getenv("APF_SIEVE_LIMIT")) sieve = std::strtoull(env, nullptr, 10);
    if (const char* env = std::getenv("APF_COUNT_LIMIT")) count = std::strtoull(env, nullptr, 10);
    if (sieve_limit) sieve = *sieve_limit;
    if (count_limit) count = *count_limit;
    check(apf_set_budgets(sieve, count));

    CLI::App* sub = app.get_subcommands().front();
    Header header(sub->get_name(), *sub);

    if (sub == sp) {
      apf_spectrum_t* raw = nullptr;
      if (sp_source == "file") {
        if (sp_file.empty()) throw Failure{APF_ERR_INVALID_ARGUMENT, "--source file needs --spec"};
        SpectrumPtr spec = load_spectrum(sp_file, header);
        raw = spec.release();
      } else if (sp_source == "zeta") {
        header.input(sp_zeros);
        check(apf_spectrum_zeta(sp_zeros.c_str(), sp_X, &raw));
      } else {
        check(apf_spectrum_gauss(sp_nmax, sp_norm == "classical" ? 0 : 1, &raw));
      }
      SpectrumPtr spec(raw);
      header.note("size=" + std::to_string(apf_spectrum_size(spec.get())) + " digest=" + hex(apf_spectrum_digest(spec.get())));
      if (sp_fit_max > 0) {
        double beta = 0, r2 = 0;
        check(apf_spectrum_fit_beta(spec.get(), sp_fit_min, sp_fit_max, &beta, &r2, nullptr));
        header.note("beta_hat=" + num(beta) + " r_squared=" + num(r2));
      }
      char* csv = nullptr;
      check(apf_spectrum_to_csv(spec.get(), &csv));
      emit(out_path, header.comment_block() + take(csv));
    } else if (sub == ev) {
      SpectrumPtr spec = load_spectrum(ev_spec, header);
      apf_sampled_t* raw = nullptr;
      check(apf_eval_grid(spec.get(), ev_y0, ev_y1, ev_step, schedule_from(ev_schedule, ev_x0), !ev_moving, &raw));
      SampledPtr f(raw);
      const auto lines = header.c_lines();
      char* csv = nullptr;
      check(apf_sampled_to_csv(f.get(), lines.data(), lines.size(), &csv));
      emit(out_path, take(csv));
    } else if (sub == mo) {
      SpectrumPtr spec = load_spectrum(mo_spec, header);
      const auto opts = moment_options(mo_mode, mo_tol, mo_terms);
      apf_moment_report_t* raw = nullptr;
      if (mo_Y.empty())
        check(apf_theoretical_moment(spec.get(), mo_order, &opts, &raw));
      else
        check(apf_moment_convergence(spec.get(), mo_order, schedule_from(mo_schedule, mo_x0), mo_Y.data(), mo_Y.size(),
                                     mo_step, !mo_no_theory, &opts, &raw));
      ReportPtr report(raw);
      if (apf_moment_report_budget_exceeded(report.get()))
        std::cerr << "warning: resonance budget exceeded; theoretical value omitted\n";
      char* js = nullptr;
      check(apf_moment_report_to_json(report.get(), &js));
      nlohmann::ordered_json doc;
      doc["header"] = header.json();
      doc["report"] = nlohmann::ordered_json::parse(take(js));
      emit(out_path, doc.dump(2) + "\n");
    } else if (sub == di_cmd || sub == ta) {
      DistPtr dist;
      SpectrumPtr finite_spec;
      apf_distribution_t* raw = nullptr;
      if (di.source == "spec") {
        if (di.spec.empty()) throw Failure{APF_ERR_INVALID_ARGUMENT, "--source spec needs --spec"};
        finite_spec = load_spectrum(di.spec, header);
        double T = di.T;
        if (T < 0) {
          const size_t n = apf_spectrum_size(finite_spec.get());
          check(apf_spectrum_get(finite_spec.get(), n == 0 ? 0 : n - 1, &T, nullptr, nullptr));
        }
        check(apf_truncated_distribution(finite_spec.get(), T, di.Y, di.bins, di.step, &raw));
      } else {
        apf_sampled_t* f = nullptr;
        if (di.source == "pnt") check(apf_pnt_grid(di.y0, di.Y, di.step, &f));
        else if (di.source == "gauss") check(apf_gauss_grid(di.y0, di.Y, di.step, &f));
        else check(apf_divisor_grid(di.y0, di.Y, di.step, &f));
        SampledPtr grid(f);
        const double last = apf_sampled_y0(f) + static_cast<double>(apf_sampled_size(f) - 1) * apf_sampled_step(f);
        check(apf_estimate_distribution(f, last, di.bins, &raw));
      }
      dist.reset(raw);
      if (sub == di_cmd) {
        const auto lines = header.c_lines();
        char* csv = nullptr;
        check(apf_distribution_to_csv(dist.get(), lines.data(), lines.size(), &csv));
        emit(out_path, take(csv));
      } else {
        if (ta_S.empty())
          for (int k = 1; k <= 8; ++k) ta_S.push_back(0.5 * k);
        char* js = nullptr;
        if (finite_spec && !ta_beta)
          check(apf_fit_tails_finite(dist.get(), ta_S.data(), ta_S.size(), finite_spec.get(), nullptr, &js));
        else
          check(apf_fit_tails(dist.get(), ta_S.data(), ta_S.size(), ta_beta.has_value(), ta_beta.value_or(0), nullptr, &js));
        nlohmann::ordered_json doc;
        doc["header"] = header.json();
        doc["tails"] = nlohmann::ordered_json::parse(take(js));
        emit(out_path, doc.dump(2) + "\n");
      }
    } else if (sub == pn || sub == ga || sub == dv) {
      apf_sampled_t* raw = nullptr;
      if (sub == pn) check(apf_pnt_grid(ri.y0, ri.y1, ri.step, &raw));
      else if (sub == ga) check(apf_gauss_grid(ri.y0, ri.y1, ri.step, &raw));
      else check(apf_divisor_grid(ri.y0, ri.y1, ri.step, &raw));
      SampledPtr f(raw);
      const auto lines = header.c_lines();
      char* csv = nullptr;
      check(apf_sampled_to_csv(f.get(), lines.data(), lines.size(), &csv));
      emit(out_path, take(csv));
    } else if (sub == hc) {
      auto group = make_group(hi, header);
      auto sd = make_spectral(hi, header);
      const auto radii = range_or_list(hc_s, hc_min, hc_max, hc_step);
      double s_top = 0;
      for (double s : radii) s_top = std::max(s_top, s);
      const apf_hpoint z = point(hz), w = point(hw);
      auto orbit = make_orbit(group.get(), s_top, z, w, header);
      std::string body = "s,N,M,e\n";
      for (double s : radii) {
        double m = 0, e = 0;
        check(apf_main_term(sd.get(), s, &m));
        check(apf_remainder_e(orbit.get(), sd.get(), s, &e));
        body += num(s) + "," + std::to_string(apf_orbit_count_within(orbit.get(), s)) + "," + num(m) + "," + num(e) + "\n";
      }
      if (hc_maps) {
        body += "\na,b,c,d,distance\n";
        for (size_t k = 0; k < apf_orbit_count(orbit.get()); ++k) {
          double ent[4], d = 0;
          check(apf_orbit_element(orbit.get(), k, ent, &d));
          body += num(ent[0]) + "," + num(ent[1]) + "," + num(ent[2]) + "," + num(ent[3]) + "," + num(d) + "\n";
        }
      }
      emit(out_path, header.comment_block() + body);
    } else if (sub == hv) {
      auto group = make_group(hi, header);
      auto sd = make_spectral(hi, header);
      double T_top = 0;
      for (double T : hv_T) T_top = std::max(T_top, T);
      auto orbit = make_orbit(group.get(), T_top + 1, point(hz), point(hw), header);
      std::string body = hv_check > 0 ? "T,H,H_over_T,H_fixed_step,fixed_step_bound\n" : "T,H,H_over_T\n";
      for (double T : hv_T) {
        double H = 0;
        check(apf_variance_window(orbit.get(), sd.get(), T, hv_piece, &H));
        body += num(T) + "," + num(H) + "," + num(H / T);
        if (hv_check > 0) {
          double fixed = 0, bound = 0;
          check(apf_variance_window_fixed_step(orbit.get(), sd.get(), T, hv_check, &fixed));
          check(apf_variance_fixed_step_bound(orbit.get(), sd.get(), T, hv_check, &bound));
          body += "," + num(fixed) + "," + num(bound);
        }
        body += "\n";
      }
      emit(out_path, header.comment_block() + body);
    } else if (sub == hg) {
      auto group = make_group(hi, header);
      auto sd = make_spectral(hi, header);
      if (hi.group == "pslz")
        header.note("exploratory: boundedness of G_3 is proved for cocompact groups; PSL(2,Z) is only cofinite");
      const auto radii = range_or_list(hg_s, hg_min, hg_max, hg_step);
      double s_top = 0;
      for (double s : radii) s_top = std::max(s_top, s);
      const apf_hpoint z = point(hz);
      auto orbit = make_orbit(group.get(), s_top, z, z, header);
      std::string body = hg_check > 0 ? "s,G3,G3_fixed_step\n" : "s,G3\n";
      for (double s : radii) {
        double g = 0;
        check(apf_integrated_remainder_g3(orbit.get(), sd.get(), s, &g));
        body += num(s) + "," + num(g);
        if (hg_check > 0) {
          double fixed = 0;
          check(apf_integrated_remainder_g3_fixed_step(orbit.get(), sd.get(), s, hg_check, &fixed));
          body += "," + num(fixed);
        }
        body += "\n";
      }
      emit(out_path, header.comment_block() + body);
    } else if (sub == sh) {
      const auto t = parse_complex(sh_t);
      if (!t) {
        std::cerr << "error: cannot parse complex argument '" << sh_t << "'\n";
        return 2;
      }
      const auto [tr, ti] = *t;
      std::string body = "regime,R,t_re,t_im,re,im\n";
      auto row = [&](const std::string& name, double re, double im) {
        body += name + "," + num(sh_R) + "," + num(tr) + "," + num(ti) + "," + num(re) + "," + num(im) + "\n";
      };
      const bool all = sh_regime == "all";
      if (all || sh_regime == "integral") {
        double re = 0, im = 0;
        check(apf_shc_integral(sh_R, tr, ti, &re, &im));
        row("integral", re, im);
      }
      const bool real_t = ti == 0 && tr != 0;
      const bool imag_t = tr == 0 && ti != 0;
      auto single = [&](const std::string& name, apf_status (*fn)(double, double, double*), double arg) {
        double v = 0;
        const apf_status st = fn(sh_R, arg, &v);
        if (st == APF_OK) row(name, v, 0);
        else if (!all) check(st);
      };
      if (sh_regime == "hypergeometric" || (all && real_t)) {
        if (!real_t) throw Failure{APF_ERR_INVALID_ARGUMENT, "hypergeometric regime needs real nonzero t"};
        single("hypergeometric", apf_shc_hypergeometric, tr);
      }
      if (sh_regime == "asymptotic" || (all && real_t)) {
        if (!real_t) throw Failure{APF_ERR_INVALID_ARGUMENT, "asymptotic regime needs real nonzero t"};
        single("asymptotic", apf_shc_asymptotic, tr);
      }
      if (sh_regime == "imag" || (all && imag_t)) {
        if (!imag_t) throw Failure{APF_ERR_INVALID_ARGUMENT, "imag regime needs t = i tau"};
        single("imag", apf_shc_imag, std::abs(ti));
      }
      if (sh_regime == "small-R" || (all && sh_R <= 1)) {
        double re = 0, im = 0;
        const apf_status st = apf_shc_small_r(sh_R, tr, ti, &re, &im);
        if (st == APF_OK) row("small-R", re, im);
        else if (!all) check(st);
      }
      emit(out_path, header.comment_block() + body);
    }
    return 0;
  } catch (const Failure& f) {
    if (f.status == APF_ERR_BUDGET_EXCEEDED)
      std::cerr << "budget exceeded: " << f.message << '\n';
    else
      std::cerr << "error: " << f.message << '\n';
    return 1;
  }
}
