#include "lwdist/lambert_normal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lwdist {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kInvE = 0.36787944117144232159552377016146;
constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438;
constexpr double kLogSqrt2Pi = 0.91893853320467274178032973640562;
constexpr double kSqrt2M1 = 0.41421356237309504880168872420970;  // sqrt(2)-1
constexpr double kSqrt2P1 = 2.41421356237309504880168872420970;  // sqrt(2)+1

void check(const WNormalParams& p) {
  if (!std::isfinite(p.mu) || !std::isfinite(p.sigma) ||
      !std::isfinite(p.gamma) || p.sigma <= 0.0) {
    throw std::invalid_argument("WNormalParams: need finite mu, gamma and sigma > 0");
  }
}

double phi_std(double u) { return kInvSqrt2Pi * std::exp(-0.5 * u * u); }
double Phi_std(double u) { return 0.5 * std::erfc(-u * M_SQRT1_2); }

// log of one branch term: -w^2/(2 g^2) - w - log|1+w| - log sqrt(2 pi)
double log_branch_mag(double w, double gamma) {
  return -0.5 * (w / gamma) * (w / gamma) - w - std::log(std::abs(1.0 + w)) -
         kLogSqrt2Pi;
}

}  // namespace

double branch_density_f0(double z, double gamma) {
  if (gamma == 0.0 || !std::isfinite(gamma)) {
    throw std::invalid_argument("branch_density_f0: gamma must be nonzero");
  }
  const double arg = gamma * z;
  const double w = lambert_w0(arg).value;  // domain errors propagate
  if (w == -1.0) return kInf;
  const double u = w / gamma;
  return phi_std(u) * std::exp(-w) / (1.0 + w);
}

double branch_density_fm1(double z, double gamma) {
  if (gamma == 0.0 || !std::isfinite(gamma)) {
    throw std::invalid_argument("branch_density_fm1: gamma must be nonzero");
  }
  const double arg = gamma * z;
  if (arg >= 0.0) {
    throw std::domain_error("branch_density_fm1: gamma*z must be negative");
  }
  const double w = lambert_wm1(arg).value;
  if (w == -1.0) return -kInf;
  const double u = w / gamma;
  return phi_std(u) * std::exp(-w) / (1.0 + w);  // 1 + w < 0: negative value
}

Interval support(const WNormalParams& p) {
  check(p);
  if (p.gamma == 0.0) return Interval{-kInf, kInf, false, false};
  const double b = p.mu - p.sigma / (p.gamma * M_E);
  if (p.gamma > 0.0) return Interval{b, kInf, false, false};
  return Interval{-kInf, b, false, false};
}

double pdf(const WNormalParams& p, double y) {
  check(p);
  const double g = p.gamma;
  const double z = (y - p.mu) / p.sigma;
  if (g == 0.0) return phi_std(z) / p.sigma;
  const double b = p.mu - p.sigma / (g * M_E);
  if ((g > 0.0 && y < b) || (g < 0.0 && y > b)) return 0.0;
  if (y == b) return kInf;
  const bool single = (g > 0.0) ? (y >= p.mu) : (y <= p.mu);
  if (single) return branch_density_f0(z, g) / p.sigma;
  const double arg = std::max(g * z, -kInvE);
  const double w0 = lambert_w0(arg).value;
  const double wm = lambert_wm1(arg).value;
  if (w0 == -1.0 || wm == -1.0) return kInf;
  const double f0 = phi_std(w0 / g) * std::exp(-w0) / (1.0 + w0);
  const double fm1 = phi_std(wm / g) * std::exp(-wm) / (1.0 + wm);
  return (f0 - fm1) / p.sigma;
}

double cdf(const WNormalParams& p, double y) {
  check(p);
  const double g = p.gamma;
  const double z = (y - p.mu) / p.sigma;
  if (g == 0.0) return Phi_std(z);
  const double b = p.mu - p.sigma / (g * M_E);

  if (g > 0.0) {
    if (y <= b) return 0.0;
    if (y >= p.mu) return Phi_std(lambert_w0(g * z).value / g);
    const double arg = std::max(g * z, -kInvE);
    const double v = Phi_std(lambert_w0(arg).value / g) -
                     Phi_std(lambert_wm1(arg).value / g);
    return std::clamp(v, 0.0, 1.0);
  }

  if (y >= b) return 1.0;
  if (y <= p.mu) return Phi_std(lambert_w0(g * z).value / g);
  const double arg = std::max(g * z, -kInvE);
  const double v = 1.0 - Phi_std(lambert_wm1(arg).value / g) +
                   Phi_std(lambert_w0(arg).value / g);
  return std::clamp(v, 0.0, 1.0);
}

double log_pdf(const WNormalParams& p, double y) {
  check(p);
  const double g = p.gamma;
  const double z = (y - p.mu) / p.sigma;
  const double ls = std::log(p.sigma);
  if (g == 0.0) return -0.5 * z * z - kLogSqrt2Pi - ls;
  const double b = p.mu - p.sigma / (g * M_E);
  if ((g > 0.0 && y < b) || (g < 0.0 && y > b)) return -kInf;
  if (y == b) return kInf;
  const bool single = (g > 0.0) ? (y >= p.mu) : (y <= p.mu);
  if (single) {
    const double w = lambert_w0(g * z).value;
    if (w == -1.0) return kInf;
    return log_branch_mag(w, g) - ls;
  }
  const double arg = std::max(g * z, -kInvE);
  const double w0 = lambert_w0(arg).value;
  const double wm = lambert_wm1(arg).value;
  if (w0 == -1.0 || wm == -1.0) return kInf;
  const double l0 = log_branch_mag(w0, g);
  const double lm = log_branch_mag(wm, g);
  const double hi = std::max(l0, lm);
  if (hi == -kInf) return -kInf;
  return hi + std::log1p(std::exp(std::min(l0, lm) - hi)) - ls;
}

double quantile(const WNormalParams& p, double prob) {
  check(p);
  return quantile(as_transform(p), prob);
}

std::vector<double> sample(const WNormalParams& p, std::size_t n,
                           std::uint64_t seed) {
  check(p);
  return sample(as_transform(p), n, seed);
}

double mean(const WNormalParams& p) {
  check(p);
  const double g = p.gamma;
  return p.mu + p.sigma * g * std::exp(0.5 * g * g);
}

double variance(const WNormalParams& p) {
  check(p);
  const double g2 = p.gamma * p.gamma;
  const double eg = std::exp(g2);
  return p.sigma * p.sigma * eg * (eg * (1.0 + 4.0 * g2) - g2);
}

double wnormal_skewness_coefficient(double gamma) {
  if (!std::isfinite(gamma)) {
    throw std::invalid_argument(
        "wnormal_skewness_coefficient: gamma must be finite");
  }
  const double g2 = gamma * gamma;
  if (std::abs(gamma) <= 2.0) {
    const double eg = std::exp(g2);
    const double num =
        std::exp(3.0 * g2) * (9.0 + 27.0 * g2) - eg * (3.0 + 12.0 * g2) +
        2.0 * g2;
    const double den = eg * (1.0 + 4.0 * g2) - g2;
    return gamma * num / std::pow(den, 1.5);
  }
  // Pull the exp(3 g^2) growth out of the ratio: the leading part is
  // gamma e^{1.5 g^2} (9 + 27 g^2) / (1 + 4 g^2)^{3/2}, with O(e^{-2 g^2})
  // corrections that stay well-scaled.
  const double a = 9.0 + 27.0 * g2;
  const double d = 1.0 + 4.0 * g2;
  const double corr_num =
      1.0 - std::exp(-2.0 * g2) * (3.0 + 12.0 * g2) / a +
      2.0 * g2 * std::exp(-3.0 * g2) / a;
  const double corr_den = 1.0 - g2 * std::exp(-g2) / d;
  return gamma * std::exp(1.5 * g2) * a / std::pow(d, 1.5) * corr_num /
         std::pow(corr_den, 1.5);
}

double skewness(const WNormalParams& p) {
  check(p);
  return wnormal_skewness_coefficient(p.gamma);
}

ShapeRegime shape_regime(double gamma) {
  if (gamma == 0.0 || !std::isfinite(gamma)) {
    throw std::invalid_argument("shape_regime: gamma must be nonzero");
  }
  const double g = std::abs(gamma);
  if (g < kSqrt2M1) return ShapeRegime::two_extrema_principal;
  if (g <= kSqrt2P1) return ShapeRegime::monotone_decreasing;
  return ShapeRegime::two_extrema_non_principal;
}

std::vector<double> extrema_locations(double gamma) {
  const ShapeRegime regime = shape_regime(gamma);  // validates gamma
  if (regime == ShapeRegime::monotone_decreasing) return {};
  const double g = std::abs(gamma);
  const double g2 = g * g;
  const double disc = std::max(g2 * g2 - 6.0 * g2 + 1.0, 0.0);
  const double root = std::sqrt(disc);
  // Stationary points solve the quadratic w^2 + (1 + g^2) w + g^2 = 0 in
  // w = W(gamma z); map back through z = w e^w / gamma.
  const double wa = 0.5 * (-(1.0 + g2) + root);
  const double wb = 0.5 * (-(1.0 + g2) - root);
  double za = wa * std::exp(wa) / g;
  double zb = wb * std::exp(wb) / g;
  if (gamma < 0.0) {  // density mirrors: f(z; -g) = f(-z; g)
    za = -za;
    zb = -zb;
  }
  if (za > zb) std::swap(za, zb);
  return {za, zb};
}

double asymptote_location(const WNormalParams& p) {
  check(p);
  if (p.gamma == 0.0) {
    throw std::invalid_argument("asymptote_location: gamma must be nonzero");
  }
  return p.mu - p.sigma / (p.gamma * M_E);
}

LambertLocationScale as_transform(const WNormalParams& p) {
  check(p);
  return LambertLocationScale(BaseDistribution::normal(p.mu, p.sigma),
                              p.gamma);
}

}  // namespace lwdist
