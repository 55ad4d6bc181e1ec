#include "apf/hyperbolic/main_term.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "apf/error.hpp"
#include "apf/hyperbolic/shc.hpp"

namespace apf::hyp {

namespace {

constexpr double kPi = std::numbers::pi;
const double kLog2Minus1 = std::log(2.0) - 1;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

// Plain decimal, or "pi", "pi/k", "k*pi".
double parse_scalar(const std::string& raw, std::size_t line) {
  const std::string s = trim(raw);
  try {
    if (s == "pi") return kPi;
    if (s.rfind("pi/", 0) == 0) return kPi / std::stod(s.substr(3));
    if (s.size() > 3 && s.compare(s.size() - 3, 3, "*pi") == 0) return std::stod(s.substr(0, s.size() - 3)) * kPi;
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::logic_error&) {
    fail(ErrorCode::kParse, "parse error at line " + std::to_string(line) + ": bad number '" + s + "'");
  }
}

std::vector<double> parse_list(const std::string& s, std::size_t line) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_scalar(item, line));
  return out;
}

double gamma_quotient(double tau) { return std::tgamma(tau) / std::tgamma(1.5 + tau); }

}  // namespace

void SpectralData::validate() const {
  if (!(volume > 0)) fail(ErrorCode::kInvalidArgument, "spectral data: volume must be > 0");
  for (const auto& e : small_eigs)
    if (!(e.t_abs > 0 && e.t_abs < 0.5)) fail(ErrorCode::kInvalidArgument, "spectral data: |t_j| must lie in (0, 1/2)");
}

SpectralData SpectralData::modular_default() {
  SpectralData sd;
  sd.volume = kPi / 3;
  return sd;
}

SpectralData SpectralData::parse(std::istream& in) {
  SpectralData sd;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::kParse, "parse error at line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(body.substr(0, eq));
    const auto values = parse_list(body.substr(eq + 1), line_no);
    auto complex_value = [&]() -> std::complex<double> {
      if (values.size() == 1) return values[0];
      if (values.size() == 2) return {values[0], values[1]};
      fail(ErrorCode::kParse, "parse error at line " + std::to_string(line_no) + ": expected re[,im]");
    };
    if (key == "volume") {
      if (values.size() != 1) fail(ErrorCode::kParse, "parse error at line " + std::to_string(line_no));
      sd.volume = values[0];
    } else if (key == "small_eig") {
      if (values.size() != 3)
        fail(ErrorCode::kParse, "parse error at line " + std::to_string(line_no) + ": expected t_abs,re,im");
      sd.small_eigs.push_back({values[0], {values[1], values[2]}});
    } else if (key == "quarter_sum") {
      sd.quarter_sum = complex_value();
    } else if (key == "eisenstein_const") {
      sd.eisenstein_const = complex_value();
    } else {
      fail(ErrorCode::kParse, "parse error at line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  sd.validate();
  return sd;
}

SpectralData SpectralData::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path.string());
  return parse(in);
}

double main_term(const SpectralData& sd, double s) {
  require(s >= 0, "main term needs s >= 0");
  sd.validate();
  double m = kPi * std::exp(s) / sd.volume;
  for (const auto& e : sd.small_eigs)
    m += std::sqrt(kPi) * gamma_quotient(e.t_abs) * std::exp(s * (0.5 + e.t_abs)) * e.phi_product.real();
  const double half = std::exp(s / 2);
  m += 4 * (s + 2 * kLog2Minus1) * half * sd.quarter_sum.real();
  m += half * sd.eisenstein_const.real();
  return m;
}

double main_term_integral(const SpectralData& sd, double s) {
  require(s >= 0, "main term needs s >= 0");
  sd.validate();
  double total = kPi * std::expm1(s) / sd.volume;
  for (const auto& e : sd.small_eigs) {
    const double rate = 0.5 + e.t_abs;
    total += std::sqrt(kPi) * gamma_quotient(e.t_abs) * std::expm1(s * rate) / rate * e.phi_product.real();
  }
  const double half = std::exp(s / 2);
  // int_0^s x e^{x/2} dx = 2 s e^{s/2} - 4 (e^{s/2} - 1)
  const double x_exp = 2 * s * half - 4 * std::expm1(s / 2);
  total += 4 * (x_exp + 2 * kLog2Minus1 * 2 * std::expm1(s / 2)) * sd.quarter_sum.real();
  total += 2 * std::expm1(s / 2) * sd.eisenstein_const.real();
  return total;
}

double main_term_smoothed(const SpectralData& sd, double s, double delta, int sign) {
  sd.validate();
  double m = h_pm(s, delta, Complex(0, 0.5), sign).real() / sd.volume;
  for (const auto& e : sd.small_eigs) m += h_pm(s, delta, Complex(0, e.t_abs), sign).real() * e.phi_product.real();
  if (sd.quarter_sum.real() != 0) m += h_pm(s, delta, Complex(0, 0), sign).real() * sd.quarter_sum.real();
  if (sd.eisenstein_const.real() != 0)
    m += h_pm_integral(s, delta, sign) * sd.eisenstein_const.real() / (4 * kPi);
  return m;
}

}  // namespace apf::hyp
