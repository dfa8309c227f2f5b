#include "lwdist/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace lwdist {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kInvE = 0.36787944117144232159552377016146;

double log_sum_two(double la, double lb) {
  if (la == -kInf) return lb;
  if (lb == -kInf) return la;
  const double hi = std::max(la, lb);
  return hi + std::log1p(std::exp(std::min(la, lb) - hi));
}

// exp(-w)/(1+w), the Jacobian factor dW(gamma z)/dz / gamma of one branch.
double branch_factor(double w) { return std::exp(-w) / (1.0 + w); }

}  // namespace

LambertLocationScale::LambertLocationScale(BaseDistribution base_in,
                                           double gamma_in)
    : base(std::move(base_in)), gamma(gamma_in) {
  if (!base.is_location_scale()) {
    throw std::invalid_argument(
        "LambertLocationScale: base family is not location-scale");
  }
  if (!std::isfinite(gamma)) {
    throw std::invalid_argument("LambertLocationScale: gamma must be finite");
  }
}

LambertScale::LambertScale(BaseDistribution base_in, double gamma_in)
    : base(std::move(base_in)), gamma(gamma_in) {
  if (!base.is_nonneg_scale()) {
    throw std::invalid_argument(
        "LambertScale: base family is not a nonnegative scale family");
  }
  if (!std::isfinite(gamma)) {
    throw std::invalid_argument("LambertScale: gamma must be finite");
  }
}

double lw_forward(double u, double gamma) {
  const double e = gamma * u;
  if (e > 700.0) {
    throw std::overflow_error("lw_forward: gamma*u > 700 overflows exp");
  }
  return u * std::exp(e);
}

double lw_forward_ls(double x, double mu, double sigma, double gamma) {
  return sigma * lw_forward((x - mu) / sigma, gamma) + mu;
}

Interval support(const LambertLocationScale& m) {
  if (m.gamma == 0.0) return m.base.support();
  const double mu = m.base.location();
  const double sigma = m.base.scale();
  const double b = mu - sigma / (m.gamma * M_E);
  if (m.gamma > 0.0) return Interval{b, kInf, false, false};
  return Interval{-kInf, b, false, false};
}

Interval support(const LambertScale& m) {
  if (m.gamma == 0.0) return m.base.support();
  if (m.gamma > 0.0) return Interval{0.0, kInf, true, false};
  const double b = -m.base.scale() / (m.gamma * M_E);
  return Interval{0.0, b, false, false};
}

double cdf(const LambertLocationScale& m, double y) {
  const double g = m.gamma;
  if (g == 0.0) return m.base.cdf(y);
  const double mu = m.base.location();
  const double sigma = m.base.scale();
  const double z = (y - mu) / sigma;
  const double b = mu - sigma / (g * M_E);

  if (g > 0.0) {
    if (y <= b) return 0.0;
    if (y >= mu) {
      const double w0 = lambert_w0(g * z).value;
      return m.base.cdf(w0 * sigma / g + mu);
    }
    const double arg = std::max(g * z, -kInvE);
    const double w0 = lambert_w0(arg).value;
    const double wm = lambert_wm1(arg).value;
    const double v = m.base.cdf(w0 * sigma / g + mu) -
                     m.base.cdf(wm * sigma / g + mu);
    return std::clamp(v, 0.0, 1.0);
  }

  if (y >= b) return 1.0;
  if (y <= mu) {
    const double w0 = lambert_w0(g * z).value;
    return m.base.cdf(w0 * sigma / g + mu);
  }
  const double arg = std::max(g * z, -kInvE);
  const double w0 = lambert_w0(arg).value;
  const double wm = lambert_wm1(arg).value;
  const double v = 1.0 - m.base.cdf(wm * sigma / g + mu) +
                   m.base.cdf(w0 * sigma / g + mu);
  return std::clamp(v, 0.0, 1.0);
}

double cdf(const LambertScale& m, double y) {
  const double g = m.gamma;
  if (g == 0.0) return m.base.cdf(y);
  const double sigma = m.base.scale();

  if (g > 0.0) {
    if (y <= 0.0) return 0.0;
    const double w0 = lambert_w0(g * y / sigma).value;
    return m.base.cdf(w0 * sigma / g);
  }

  const double b = -sigma / (g * M_E);
  if (y <= 0.0) return 0.0;
  if (y >= b) return 1.0;
  const double arg = std::max(g * y / sigma, -kInvE);
  const double w0 = lambert_w0(arg).value;
  const double wm = lambert_wm1(arg).value;
  const double v = 1.0 - m.base.cdf(wm * sigma / g) +
                   m.base.cdf(w0 * sigma / g);
  return std::clamp(v, 0.0, 1.0);
}

double pdf(const LambertLocationScale& m, double y) {
  const double g = m.gamma;
  if (g == 0.0) return m.base.pdf(y);
  const double mu = m.base.location();
  const double sigma = m.base.scale();
  const double z = (y - mu) / sigma;
  const double b = mu - sigma / (g * M_E);

  if ((g > 0.0 && y < b) || (g < 0.0 && y > b)) return 0.0;
  if (y == b) return kInf;

  const bool single = (g > 0.0) ? (y >= mu) : (y <= mu);
  if (single) {
    const double w0 = lambert_w0(g * z).value;
    return m.base.pdf(w0 * sigma / g + mu) * branch_factor(w0);
  }
  const double arg = std::max(g * z, -kInvE);
  const double w0 = lambert_w0(arg).value;
  const double wm = lambert_wm1(arg).value;
  const double term0 = m.base.pdf(w0 * sigma / g + mu) * branch_factor(w0);
  const double term1 = m.base.pdf(wm * sigma / g + mu) * branch_factor(wm);
  return term0 - term1;  // term1 <= 0: both crossings add density
}

double pdf(const LambertScale& m, double y) {
  const double g = m.gamma;
  if (g == 0.0) return m.base.pdf(y);
  const double sigma = m.base.scale();

  if (g > 0.0) {
    if (y < 0.0) return 0.0;
    const double w0 = lambert_w0(g * y / sigma).value;
    return m.base.pdf(w0 * sigma / g) * branch_factor(w0);
  }

  const double b = -sigma / (g * M_E);
  if (y <= 0.0 || y > b) return 0.0;
  if (y == b) return kInf;
  const double arg = std::max(g * y / sigma, -kInvE);
  const double w0 = lambert_w0(arg).value;
  const double wm = lambert_wm1(arg).value;
  const double term0 = m.base.pdf(w0 * sigma / g) * branch_factor(w0);
  const double term1 = m.base.pdf(wm * sigma / g) * branch_factor(wm);
  return term0 - term1;
}

double log_pdf(const LambertLocationScale& m, double y) {
  const double g = m.gamma;
  if (g == 0.0) return m.base.log_pdf(y);
  const double mu = m.base.location();
  const double sigma = m.base.scale();
  const double z = (y - mu) / sigma;
  const double b = mu - sigma / (g * M_E);

  if ((g > 0.0 && y < b) || (g < 0.0 && y > b)) return -kInf;
  if (y == b) return kInf;

  const bool single = (g > 0.0) ? (y >= mu) : (y <= mu);
  if (single) {
    const double w0 = lambert_w0(g * z).value;
    return m.base.log_pdf(w0 * sigma / g + mu) - w0 - std::log1p(w0);
  }
  const double arg = std::max(g * z, -kInvE);
  const double w0 = lambert_w0(arg).value;
  const double wm = lambert_wm1(arg).value;
  const double l0 = m.base.log_pdf(w0 * sigma / g + mu) - w0 - std::log1p(w0);
  const double lm = m.base.log_pdf(wm * sigma / g + mu) - wm -
                    std::log(-(1.0 + wm));
  return log_sum_two(l0, lm);
}

double log_pdf(const LambertScale& m, double y) {
  const double g = m.gamma;
  if (g == 0.0) return m.base.log_pdf(y);
  const double sigma = m.base.scale();

  if (g > 0.0) {
    if (y < 0.0) return -kInf;
    const double w0 = lambert_w0(g * y / sigma).value;
    return m.base.log_pdf(w0 * sigma / g) - w0 - std::log1p(w0);
  }

  const double b = -sigma / (g * M_E);
  if (y <= 0.0 || y > b) return -kInf;
  if (y == b) return kInf;
  const double arg = std::max(g * y / sigma, -kInvE);
  const double w0 = lambert_w0(arg).value;
  const double wm = lambert_wm1(arg).value;
  const double l0 = m.base.log_pdf(w0 * sigma / g) - w0 - std::log1p(w0);
  const double lm = m.base.log_pdf(wm * sigma / g) - wm -
                    std::log(-(1.0 + wm));
  return log_sum_two(l0, lm);
}

namespace {

// Shared inverse-cdf machinery: cdf is monotone on the support, so bracket
// then bisect, with a short Newton polish where the density cooperates.
template <typename Model>
double invert_cdf(const Model& m, double p, double lo, double hi) {
  auto F = [&m](double y) { return cdf(m, y); };
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const double v = F(mid);
    if (std::abs(v - p) <= 1e-12) return mid;
    if (v < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double q = 0.5 * (lo + hi);
  for (int i = 0; i < 3; ++i) {
    const double f = pdf(m, q);
    if (!(f > 0.0) || !std::isfinite(f)) break;
    const double next = q - (F(q) - p) / f;
    if (!(next > lo && next < hi)) break;
    q = next;
  }
  return q;
}

template <typename Model>
double quantile_impl(const Model& m, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("quantile: p must lie in [0, 1]");
  }
  if (m.gamma == 0.0) return m.base.quantile(p);
  const Interval s = support(m);
  if (p == 0.0) return s.lo;
  if (p == 1.0) return s.hi;

  double lo = s.lo;
  double hi = s.hi;
  const double anchor =
      std::isfinite(s.lo)
          ? s.lo
          : (std::isfinite(s.hi) ? s.hi : m.base.location());
  double step = std::max(1.0, m.base.scale());
  if (!std::isfinite(hi)) {
    hi = anchor + step;
    while (cdf(m, hi) < p) {
      step *= 2.0;
      hi = anchor + step;
      if (step > 1e300) break;
    }
    lo = std::isfinite(s.lo) ? s.lo : hi - step;
  }
  if (!std::isfinite(lo)) {
    step = std::max(1.0, m.base.scale());
    lo = anchor - step;
    while (cdf(m, lo) > p) {
      step *= 2.0;
      lo = anchor - step;
      if (step > 1e300) break;
    }
  }
  return invert_cdf(m, p, lo, hi);
}

}  // namespace

double quantile(const LambertLocationScale& m, double p) {
  return quantile_impl(m, p);
}

double quantile(const LambertScale& m, double p) { return quantile_impl(m, p); }

std::vector<double> sample(const LambertLocationScale& m, std::size_t n,
                           std::uint64_t seed) {
  const double mu = m.base.location();
  const double sigma = m.base.scale();
  std::vector<double> out = m.base.sample(n, seed);
  for (double& v : out) v = lw_forward_ls(v, mu, sigma, m.gamma);
  return out;
}

std::vector<double> sample(const LambertScale& m, std::size_t n,
                           std::uint64_t seed) {
  const double sigma = m.base.scale();
  std::vector<double> out = m.base.sample(n, seed);
  for (double& v : out) v = sigma * lw_forward(v / sigma, m.gamma);
  return out;
}

}  // namespace lwdist
