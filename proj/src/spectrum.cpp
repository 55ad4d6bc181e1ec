#include "apf/spectrum.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "apf/error.hpp"

namespace apf {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::string format17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Spectrum Spectrum::create(std::vector<double> frequencies, std::vector<Complex> coefficients) {
  if (frequencies.size() != coefficients.size())
    fail(ErrorCode::kInvalidArgument, "frequency and coefficient counts differ");
  for (std::size_t i = 0; i < frequencies.size(); ++i) {
    if (!std::isfinite(frequencies[i])) fail(ErrorCode::kInvalidArgument, "non-finite frequency");
    if (frequencies[i] <= 0) fail(ErrorCode::kNonPositiveFrequency, "non-positive frequency");
    if (i > 0 && frequencies[i] == frequencies[i - 1])
      fail(ErrorCode::kDuplicateFrequency, "duplicate frequency " + format17(frequencies[i]));
    if (i > 0 && frequencies[i] < frequencies[i - 1])
      fail(ErrorCode::kInvalidArgument, "frequencies not strictly increasing");
    if (!std::isfinite(coefficients[i].real()) || !std::isfinite(coefficients[i].imag()))
      fail(ErrorCode::kInvalidArgument, "non-finite coefficient");
  }
  Spectrum s;
  s.frequencies_ = std::move(frequencies);
  s.coefficients_ = std::move(coefficients);
  return s;
}

Spectrum Spectrum::from_one_sided(std::vector<double> frequencies, std::span<const Complex> r) {
  std::vector<Complex> c(r.begin(), r.end());
  for (auto& v : c) v *= 0.5;
  return create(std::move(frequencies), std::move(c));
}

std::size_t Spectrum::count_up_to(double cutoff) const {
  return static_cast<std::size_t>(
      std::upper_bound(frequencies_.begin(), frequencies_.end(), cutoff) - frequencies_.begin());
}

double Spectrum::abs_coefficient_sum(double cutoff) const {
  const std::size_t n = count_up_to(cutoff);
  double total = 0;
  for (std::size_t i = 0; i < n; ++i) total += std::abs(coefficients_[i]);
  return total;
}

std::uint64_t Spectrum::digest() const {
  std::ostringstream os;
  write_spectrum(os, *this, false);
  return fnv1a64(os.str());
}

double CutoffSchedule::operator()(double Y) const {
  switch (kind) {
    case Kind::kExponential: return std::max(x0, std::exp(Y));
    case Kind::kLinear: return std::max(x0, Y);
    case Kind::kConstant: return x0;
  }
  return x0;
}

std::string CutoffSchedule::describe() const {
  switch (kind) {
    case Kind::kExponential: return "exponential(x0=" + format17(x0) + ")";
    case Kind::kLinear: return "linear(x0=" + format17(x0) + ")";
    case Kind::kConstant: return "constant(" + format17(x0) + ")";
  }
  return "?";
}

Spectrum parse_spectrum(std::istream& in, LoadWarnings* warnings) {
  struct Row {
    double lambda;
    Complex c;
    std::size_t line;
  };
  std::vector<Row> rows;
  std::string line;
  std::size_t line_no = 0;
  bool seen_data = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = split_fields(body);
    double lambda = 0, re = 0, im = 0;
    const bool numeric = parse_double(fields[0], lambda);
    if (!numeric && !seen_data && trim(fields[0]) == "lambda") {
      seen_data = true;  // header row
      continue;
    }
    seen_data = true;
    if (fields.size() != 3 || !numeric || !parse_double(fields[1], re) || !parse_double(fields[2], im))
      fail(ErrorCode::kParse, "parse error at line " + std::to_string(line_no) + ": expected lambda,re_c,im_c");
    if (lambda <= 0)
      fail(ErrorCode::kNonPositiveFrequency, "non-positive frequency at line " + std::to_string(line_no));
    rows.push_back({lambda, {re, im}, line_no});
  }
  if (!std::is_sorted(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.lambda < b.lambda; })) {
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.lambda < b.lambda; });
    if (warnings) warnings->messages.push_back("rows were not sorted by frequency; sorted on load");
  }
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].lambda == rows[i - 1].lambda)
      fail(ErrorCode::kDuplicateFrequency, "duplicate frequency " + format17(rows[i].lambda) + " at line " +
                                               std::to_string(rows[i].line));
  }
  std::vector<double> freqs;
  std::vector<Complex> coeffs;
  freqs.reserve(rows.size());
  coeffs.reserve(rows.size());
  for (const auto& r : rows) {
    freqs.push_back(r.lambda);
    coeffs.push_back(r.c);
  }
  return Spectrum::create(std::move(freqs), std::move(coeffs));
}

Spectrum load_spectrum(const std::filesystem::path& path, LoadWarnings* warnings) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path.string());
  return parse_spectrum(in, warnings);
}

void write_spectrum(std::ostream& out, const Spectrum& spec, bool with_header) {
  if (with_header) out << "lambda,re_c,im_c\n";
  const auto f = spec.frequencies();
  const auto c = spec.coefficients();
  for (std::size_t i = 0; i < f.size(); ++i)
    out << format17(f[i]) << ',' << format17(c[i].real()) << ',' << format17(c[i].imag()) << '\n';
}

void save_spectrum(const std::filesystem::path& path, const Spectrum& spec) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, "cannot write " + path.string());
  write_spectrum(out, spec);
}

std::vector<Window> window_coefficient_sums(const Spectrum& spec, double t_min, double t_max) {
  if (spec.empty() || !(t_min < t_max)) fail(ErrorCode::kEmptyRange, "empty range");
  if (t_min < 1 || t_max > spec.max_frequency())
    fail(ErrorCode::kEmptyRange, "empty range: need 1 <= t_min < t_max <= max frequency");
  const auto f = spec.frequencies();
  const auto c = spec.coefficients();
  std::vector<Window> out;
  for (double T = std::ceil(t_min); T < t_max; T += 1) {
    auto it = std::lower_bound(f.begin(), f.end(), T);
    double sum = 0;
    for (auto i = static_cast<std::size_t>(it - f.begin()); i < f.size() && f[i] < T + 1; ++i)
      sum += 2 * std::abs(c[i]);
    out.push_back({T, sum});
  }
  if (out.empty()) fail(ErrorCode::kEmptyRange, "empty range");
  return out;
}

DecayFit fit_beta(std::span<const Window> windows) {
  DecayFit fit;
  fit.windows.assign(windows.begin(), windows.end());
  std::vector<double> xs, ys;
  for (const auto& w : windows) {
    if (w.sum > 0 && w.T > 0) {
      xs.push_back(std::log(w.T));
      ys.push_back(std::log(w.sum));
    } else {
      ++fit.excluded_zero;
    }
  }
  if (xs.size() < 5)
    fail(ErrorCode::kInsufficientData, "fewer than 5 usable windows (" + std::to_string(xs.size()) + ")");
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx <= 0) fail(ErrorCode::kInsufficientData, "windows span a single T");
  const double slope = sxy / sxx;
  fit.beta_hat = -slope;
  fit.r_squared = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

std::vector<double> parse_ordinates(std::istream& in) {
  std::vector<double> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    double v = 0;
    if (!parse_double(body, v)) fail(ErrorCode::kParse, "parse error at line " + std::to_string(line_no));
    if (v <= 0) fail(ErrorCode::kNonPositiveFrequency, "non-positive ordinate at line " + std::to_string(line_no));
    if (!out.empty() && v <= out.back())
      fail(ErrorCode::kParse, "ordinates not strictly increasing at line " + std::to_string(line_no));
    out.push_back(v);
  }
  return out;
}

std::vector<double> load_ordinates(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path.string());
  return parse_ordinates(in);
}

}  // namespace apf
