#include "lwdist/lambert_exponential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lwdist {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kInvE = 0.36787944117144232159552377016146;

void check(const WExpParams& p) {
  if (!std::isfinite(p.lambda) || !std::isfinite(p.gamma) || p.lambda <= 0.0) {
    throw std::invalid_argument("WExpParams: need finite gamma and lambda > 0");
  }
}

double log_sum_two(double la, double lb) {
  if (la == -kInf) return lb;
  if (lb == -kInf) return la;
  const double hi = std::max(la, lb);
  return hi + std::log1p(std::exp(std::min(la, lb) - hi));
}

}  // namespace

Interval support(const WExpParams& p) {
  check(p);
  if (p.gamma >= 0.0) return Interval{0.0, kInf, true, false};
  return Interval{0.0, -1.0 / (M_E * p.gamma * p.lambda), false, false};
}

double cdf(const WExpParams& p, double y) {
  check(p);
  const double g = p.gamma;
  if (g == 0.0) return y <= 0.0 ? 0.0 : -std::expm1(-p.lambda * y);

  if (g > 0.0) {
    if (y <= 0.0) return 0.0;
    const double w = lambert_w0(g * p.lambda * y).value;
    return -std::expm1(-w / g);
  }

  const double b = -1.0 / (M_E * g * p.lambda);
  if (y <= 0.0) return 0.0;
  if (y >= b) return 1.0;
  const double arg = std::max(g * p.lambda * y, -kInvE);
  const double w0 = lambert_w0(arg).value;
  const double wm = lambert_wm1(arg).value;
  const double v = 1.0 - std::exp(-w0 / g) + std::exp(-wm / g);
  return std::clamp(v, 0.0, 1.0);
}

double pdf(const WExpParams& p, double y) {
  check(p);
  const double g = p.gamma;
  if (g == 0.0) return y < 0.0 ? 0.0 : p.lambda * std::exp(-p.lambda * y);

  if (g > 0.0) {
    if (y < 0.0) return 0.0;
    const double w = lambert_w0(g * p.lambda * y).value;
    if (w == -1.0) return kInf;
    return p.lambda * std::exp(-w / g - w) / (1.0 + w);
  }

  const double b = -1.0 / (M_E * g * p.lambda);
  if (y <= 0.0 || y > b) return 0.0;
  if (y == b) return kInf;
  const double arg = std::max(g * p.lambda * y, -kInvE);
  const double w0 = lambert_w0(arg).value;
  const double wm = lambert_wm1(arg).value;
  if (w0 == -1.0 || wm == -1.0) return kInf;
  const double t0 = p.lambda * std::exp(-w0 / g - w0) / (1.0 + w0);
  const double t1 = p.lambda * std::exp(-wm / g - wm) / (1.0 + wm);
  return t0 - t1;  // t1 <= 0
}

double log_pdf(const WExpParams& p, double y) {
  check(p);
  const double g = p.gamma;
  const double ll = std::log(p.lambda);
  if (g == 0.0) return y < 0.0 ? -kInf : ll - p.lambda * y;

  if (g > 0.0) {
    if (y < 0.0) return -kInf;
    const double w = lambert_w0(g * p.lambda * y).value;
    if (w == -1.0) return kInf;
    return ll - w / g - w - std::log1p(w);
  }

  const double b = -1.0 / (M_E * g * p.lambda);
  if (y <= 0.0 || y > b) return -kInf;
  if (y == b) return kInf;
  const double arg = std::max(g * p.lambda * y, -kInvE);
  const double w0 = lambert_w0(arg).value;
  const double wm = lambert_wm1(arg).value;
  if (w0 == -1.0 || wm == -1.0) return kInf;
  const double l0 = ll - w0 / g - w0 - std::log1p(w0);
  const double lm = ll - wm / g - wm - std::log(-(1.0 + wm));
  return log_sum_two(l0, lm);
}

double quantile(const WExpParams& p, double prob) {
  check(p);
  if (!(prob >= 0.0 && prob <= 1.0)) {
    throw std::domain_error("quantile: p must lie in [0, 1]");
  }
  const double g = p.gamma;
  if (g == 0.0) return -std::log1p(-prob) / p.lambda;
  if (g > 0.0) {
    // Invert 1 - exp(-W0(g lambda y)/g) in closed form.
    if (prob == 1.0) return kInf;
    const double w = -g * std::log1p(-prob);
    return w * std::exp(w) / (g * p.lambda);
  }
  return quantile(as_transform(p), prob);
}

std::vector<double> sample(const WExpParams& p, std::size_t n,
                           std::uint64_t seed) {
  check(p);
  return sample(as_transform(p), n, seed);
}

double kth_moment(const WExpParams& p, int k) {
  check(p);
  if (k < 1) throw std::invalid_argument("kth_moment: k must be >= 1");
  if (k * p.gamma >= 1.0) {
    throw std::domain_error("kth_moment: moment does not exist for k*gamma >= 1");
  }
  double fact = 1.0;
  for (int i = 2; i <= k; ++i) fact *= i;
  return fact / (std::pow(p.lambda, k) *
                 std::pow(1.0 - k * p.gamma, k + 1.0));
}

double mean(const WExpParams& p) { return kth_moment(p, 1); }

double variance(const WExpParams& p) {
  const double m1 = kth_moment(p, 1);
  const double m2 = kth_moment(p, 2);
  return m2 - m1 * m1;
}

double wexp_skewness_coefficient(double gamma) {
  if (!std::isfinite(gamma)) {
    throw std::invalid_argument(
        "wexp_skewness_coefficient: gamma must be finite");
  }
  if (gamma >= 1.0 / 3.0) {
    throw std::domain_error("wexp_skewness_coefficient: needs gamma < 1/3");
  }
  const double t1 = 1.0 - gamma;
  const double t2 = 1.0 - 2.0 * gamma;
  const double t3 = 1.0 - 3.0 * gamma;
  const double q = 2.0 * std::pow(gamma, 4.0) - 2.0 * gamma + 1.0;
  const double lead = 2.0 * std::sqrt(std::pow(t2, 9.0) / std::pow(q, 3.0));
  const double t1_4 = std::pow(t1, 4.0);
  const double inner =
      3.0 * t1_4 * (t1 * t1 * std::pow(t2, 3.0) - std::pow(t3, 4.0)) /
          (std::pow(t3, 4.0) * std::pow(t2, 3.0)) +
      1.0;
  return lead * inner;
}

double skewness(const WExpParams& p) {
  check(p);
  return wexp_skewness_coefficient(p.gamma);
}

double upper_bound(const WExpParams& p) {
  check(p);
  if (p.gamma >= 0.0) {
    throw std::invalid_argument("upper_bound: support is unbounded for gamma >= 0");
  }
  return -1.0 / (M_E * p.gamma * p.lambda);
}

LambertScale as_transform(const WExpParams& p) {
  check(p);
  return LambertScale(BaseDistribution::exponential(p.lambda), p.gamma);
}

}  // namespace lwdist
