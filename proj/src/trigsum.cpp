#include "apf/trigsum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "apf/error.hpp"
#include "apf/parallel.hpp"

namespace apf {

namespace {

constexpr long double kTwoPiL = 6.283185307179586476925286766559005768L;

// lambda * y reduced modulo 2 pi in extended precision.
double reduced_phase(double lambda, double y) {
  const long double prod = static_cast<long double>(lambda) * static_cast<long double>(y);
  return static_cast<double>(std::fmod(prod, kTwoPiL));
}

struct Neumaier {
  double sum = 0, comp = 0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

double sum_prefix(const Spectrum& spec, double y, std::size_t n) {
  const auto f = spec.frequencies();
  const auto c = spec.coefficients();
  Neumaier acc;
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = reduced_phase(f[i], y);
    // Re(c e^{i theta})
    acc.add(c[i].real() * std::cos(theta) - c[i].imag() * std::sin(theta));
  }
  return 2 * acc.value();
}

}  // namespace

double eval_sum(const Spectrum& spec, double y, double X) {
  require(X > 0, "cutoff X must be positive");
  return sum_prefix(spec, y, spec.count_up_to(X));
}

Complex eval_sum_two_sided(const Spectrum& spec, double y, double X) {
  require(X > 0, "cutoff X must be positive");
  const auto f = spec.frequencies();
  const auto c = spec.coefficients();
  const std::size_t n = spec.count_up_to(X);
  Neumaier re, im;
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = reduced_phase(f[i], y);
    const Complex up = c[i] * Complex(std::cos(theta), std::sin(theta));
    const Complex down = std::conj(c[i]) * Complex(std::cos(-theta), std::sin(-theta));
    re.add(up.real());
    re.add(down.real());
    im.add(up.imag());
    im.add(down.imag());
  }
  return {re.value(), im.value()};
}

SampledFunction eval_grid(const Spectrum& spec, double y0, double y1, double step,
                          const CutoffSchedule& schedule, bool fixed_Y) {
  require(y0 < y1, "grid requires y0 < y1");
  require(step > 0, "grid step must be positive");
  const double x_max = schedule(y1);
  const std::size_t n_max = spec.count_up_to(x_max);
  const double lambda_max = n_max ? spec.frequencies()[n_max - 1] : 0.0;
  if (step * lambda_max > kAliasingLimit) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "aliasing guard: step %.6g exceeds %.6g = 0.5/lambda_max", step,
                  kAliasingLimit / lambda_max);
    fail(ErrorCode::kAliasing, buf);
  }
  SampledFunction out;
  out.y0 = y0;
  out.step = step;
  out.schedule = schedule;
  if (fixed_Y) out.cutoff = x_max;
  const auto count = static_cast<std::size_t>(std::floor((y1 - y0) / step + 1e-9)) + 1;
  out.values.assign(count, 0.0);
  // Each block starts from exactly reduced phases and advances by rotation. Block boundaries
  // are fixed, so the values do not depend on how blocks are shared among threads.
  constexpr std::size_t kBlock = 128;
  const auto freqs = spec.frequencies();
  const auto coeffs = spec.coefficients();
  const std::size_t blocks = (count + kBlock - 1) / kBlock;
  parallel_chunks(blocks, [&](std::size_t b_begin, std::size_t b_end) {
    std::array<double, kBlock> sum{}, comp{};
    std::array<std::size_t, kBlock> active{};
    for (std::size_t b = b_begin; b < b_end; ++b) {
      const std::size_t k0 = b * kBlock;
      const std::size_t len = std::min(kBlock, count - k0);
      std::size_t n_block = 0;
      for (std::size_t i = 0; i < len; ++i) {
        active[i] = fixed_Y ? n_max : spec.count_up_to(schedule(out.y_at(k0 + i)));
        n_block = std::max(n_block, active[i]);
      }
      sum.fill(0.0);
      comp.fill(0.0);
      const double y_start = out.y_at(k0);
      for (std::size_t j = 0; j < n_block; ++j) {
        const double theta0 = reduced_phase(freqs[j], y_start);
        const double dtheta = reduced_phase(freqs[j], step);
        Complex z = coeffs[j] * Complex(std::cos(theta0), std::sin(theta0));
        const Complex rot(std::cos(dtheta), std::sin(dtheta));
        for (std::size_t i = 0; i < len; ++i, z *= rot) {
          if (j >= active[i]) continue;
          const double v = z.real();
          const double t = sum[i] + v;
          if (std::abs(sum[i]) >= std::abs(v))
            comp[i] += (sum[i] - t) + v;
          else
            comp[i] += (v - t) + sum[i];
          sum[i] = t;
        }
      }
      for (std::size_t i = 0; i < len; ++i) out.values[k0 + i] = 2 * (sum[i] + comp[i]);
    }
  });
  return out;
}

std::pair<Spectrum, Spectrum> split_truncation(const Spectrum& spec, double T) {
  require(T > 0, "truncation point must be positive");
  const std::size_t n = spec.count_up_to(T);
  const auto f = spec.frequencies();
  const auto c = spec.coefficients();
  auto low = Spectrum::create({f.begin(), f.begin() + n}, {c.begin(), c.begin() + n});
  auto high = Spectrum::create({f.begin() + n, f.end()}, {c.begin() + n, c.end()});
  return {std::move(low), std::move(high)};
}

void write_sampled_csv(std::ostream& out, const SampledFunction& f, const std::vector<std::string>& header) {
  for (const auto& h : header) out << "# " << h << '\n';
  char buf[80];
  std::snprintf(buf, sizeof buf, "# step=%.17g", f.step);
  out << buf << '\n';
  if (f.cutoff) {
    std::snprintf(buf, sizeof buf, "# X=%.17g", *f.cutoff);
    out << buf << '\n';
  }
  if (f.schedule) out << "# schedule=" << f.schedule->describe() << '\n';
  out << "y,value\n";
  for (std::size_t k = 0; k < f.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g", f.y_at(k), f.values[k]);
    out << buf << '\n';
  }
}

}  // namespace apf
