#include "lwdist/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace lwdist {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogSqrt2Pi = 0.91893853320467274178032973640562;

double normal_cdf(double z) { return 0.5 * std::erfc(-z * M_SQRT1_2); }

double normal_quantile_std(double p) {
  // Phi^{-1}(p) = -sqrt(2) erfc^{-1}(2p)
  return -M_SQRT2 * boost::math::erfc_inv(2.0 * p);
}

[[noreturn]] void bad_param(const char* what) {
  throw std::invalid_argument(std::string("distribution parameter: ") + what);
}

}  // namespace

bool ParamVector::has(std::string_view name) const {
  for (const Param& p : params_) {
    if (p.name == name) return true;
  }
  return false;
}

double ParamVector::value(std::string_view name) const {
  for (const Param& p : params_) {
    if (p.name == name) return p.value;
  }
  throw std::out_of_range("ParamVector: no parameter named " +
                          std::string(name));
}

std::vector<double> ParamVector::values() const {
  std::vector<double> out;
  out.reserve(params_.size());
  for (const Param& p : params_) out.push_back(p.value);
  return out;
}

void ParamVector::validate() const {
  for (const Param& p : params_) {
    if (!std::isfinite(p.value)) {
      throw std::invalid_argument("ParamVector: non-finite value for " +
                                  p.name);
    }
    if (p.constraint == Constraint::positive && p.value <= 0.0) {
      throw std::invalid_argument("ParamVector: " + p.name +
                                  " must be strictly positive");
    }
  }
}

BaseDistribution::BaseDistribution(Family family, ParamVector params)
    : family_(family), params_(std::move(params)) {
  params_.validate();
}

BaseDistribution BaseDistribution::make(Family family, ParamVector params) {
  return BaseDistribution(family, std::move(params));
}

BaseDistribution BaseDistribution::normal(double mu, double sigma) {
  return make(Family::normal, {{"mu", mu, Constraint::free},
                               {"sigma", sigma, Constraint::positive}});
}
BaseDistribution BaseDistribution::exponential(double rate) {
  return make(Family::exponential, {{"rate", rate, Constraint::positive}});
}
BaseDistribution BaseDistribution::gamma(double shape, double rate) {
  return make(Family::gamma, {{"shape", shape, Constraint::positive},
                              {"rate", rate, Constraint::positive}});
}
BaseDistribution BaseDistribution::log_normal(double mu_log, double sigma_log) {
  return make(Family::log_normal,
              {{"mu_log", mu_log, Constraint::free},
               {"sigma_log", sigma_log, Constraint::positive}});
}
BaseDistribution BaseDistribution::logistic(double location, double scale) {
  return make(Family::logistic, {{"location", location, Constraint::free},
                                 {"scale", scale, Constraint::positive}});
}
BaseDistribution BaseDistribution::weibull(double shape, double scale) {
  return make(Family::weibull, {{"shape", shape, Constraint::positive},
                                {"scale", scale, Constraint::positive}});
}
BaseDistribution BaseDistribution::cauchy(double location, double scale) {
  return make(Family::cauchy, {{"location", location, Constraint::free},
                               {"scale", scale, Constraint::positive}});
}
BaseDistribution BaseDistribution::pareto(double shape, double scale) {
  return make(Family::pareto, {{"shape", shape, Constraint::positive},
                               {"scale", scale, Constraint::positive}});
}

Interval BaseDistribution::support() const {
  switch (family_) {
    case Family::normal:
    case Family::logistic:
    case Family::cauchy:
      return Interval{-kInf, kInf, false, false};
    case Family::exponential:
    case Family::gamma:
    case Family::weibull:
      return Interval{0.0, kInf, true, false};
    case Family::log_normal:
      return Interval{0.0, kInf, false, false};
    case Family::pareto:
      return Interval{params_[1].value, kInf, true, false};
  }
  bad_param("unknown family");
}

double BaseDistribution::log_pdf(double x) const {
  switch (family_) {
    case Family::normal: {
      const double mu = params_[0].value, sigma = params_[1].value;
      const double z = (x - mu) / sigma;
      return -0.5 * z * z - std::log(sigma) - kLogSqrt2Pi;
    }
    case Family::exponential: {
      const double rate = params_[0].value;
      if (x < 0.0) return -kInf;
      return std::log(rate) - rate * x;
    }
    case Family::gamma: {
      const double shape = params_[0].value, rate = params_[1].value;
      if (x < 0.0) return -kInf;
      if (x == 0.0) {
        if (shape < 1.0) return kInf;
        if (shape == 1.0) return std::log(rate);
        return -kInf;
      }
      return shape * std::log(rate) + (shape - 1.0) * std::log(x) - rate * x -
             std::lgamma(shape);
    }
    case Family::log_normal: {
      const double mu = params_[0].value, sigma = params_[1].value;
      if (x <= 0.0) return -kInf;
      const double t = (std::log(x) - mu) / sigma;
      return -0.5 * t * t - std::log(x * sigma) - kLogSqrt2Pi;
    }
    case Family::logistic: {
      const double m = params_[0].value, s = params_[1].value;
      const double z = std::abs((x - m) / s);
      return -z - 2.0 * std::log1p(std::exp(-z)) - std::log(s);
    }
    case Family::weibull: {
      const double shape = params_[0].value, scale = params_[1].value;
      if (x < 0.0) return -kInf;
      if (x == 0.0) {
        if (shape < 1.0) return kInf;
        if (shape == 1.0) return -std::log(scale);
        return -kInf;
      }
      const double t = x / scale;
      return std::log(shape / scale) + (shape - 1.0) * std::log(t) -
             std::pow(t, shape);
    }
    case Family::cauchy: {
      const double m = params_[0].value, s = params_[1].value;
      const double z = (x - m) / s;
      return -std::log(M_PI * s) - std::log1p(z * z);
    }
    case Family::pareto: {
      const double shape = params_[0].value, xm = params_[1].value;
      if (x < xm) return -kInf;
      return std::log(shape) + shape * std::log(xm) -
             (shape + 1.0) * std::log(x);
    }
  }
  bad_param("unknown family");
}

double BaseDistribution::pdf(double x) const {
  const double lp = log_pdf(x);
  if (lp == kInf) return kInf;
  return std::exp(lp);
}

double BaseDistribution::cdf(double x) const {
  switch (family_) {
    case Family::normal: {
      const double mu = params_[0].value, sigma = params_[1].value;
      return normal_cdf((x - mu) / sigma);
    }
    case Family::exponential: {
      const double rate = params_[0].value;
      if (x <= 0.0) return 0.0;
      return -std::expm1(-rate * x);
    }
    case Family::gamma: {
      const double shape = params_[0].value, rate = params_[1].value;
      if (x <= 0.0) return 0.0;
      return boost::math::gamma_p(shape, rate * x);
    }
    case Family::log_normal: {
      const double mu = params_[0].value, sigma = params_[1].value;
      if (x <= 0.0) return 0.0;
      return normal_cdf((std::log(x) - mu) / sigma);
    }
    case Family::logistic: {
      const double m = params_[0].value, s = params_[1].value;
      const double z = (x - m) / s;
      if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
      const double ez = std::exp(z);
      return ez / (1.0 + ez);
    }
    case Family::weibull: {
      const double shape = params_[0].value, scale = params_[1].value;
      if (x <= 0.0) return 0.0;
      return -std::expm1(-std::pow(x / scale, shape));
    }
    case Family::cauchy: {
      const double m = params_[0].value, s = params_[1].value;
      return 0.5 + std::atan((x - m) / s) / M_PI;
    }
    case Family::pareto: {
      const double shape = params_[0].value, xm = params_[1].value;
      if (x <= xm) return 0.0;
      return -std::expm1(shape * std::log(xm / x));
    }
  }
  bad_param("unknown family");
}

double BaseDistribution::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("quantile: p must lie in [0, 1]");
  }
  const Interval s = support();
  if (p == 0.0) return s.lo;
  if (p == 1.0) return s.hi;
  switch (family_) {
    case Family::normal: {
      const double mu = params_[0].value, sigma = params_[1].value;
      return mu + sigma * normal_quantile_std(p);
    }
    case Family::exponential: {
      const double rate = params_[0].value;
      return -std::log1p(-p) / rate;
    }
    case Family::gamma: {
      const double shape = params_[0].value, rate = params_[1].value;
      return boost::math::gamma_p_inv(shape, p) / rate;
    }
    case Family::log_normal: {
      const double mu = params_[0].value, sigma = params_[1].value;
      return std::exp(mu + sigma * normal_quantile_std(p));
    }
    case Family::logistic: {
      const double m = params_[0].value, sc = params_[1].value;
      return m + sc * (std::log(p) - std::log1p(-p));
    }
    case Family::weibull: {
      const double shape = params_[0].value, scale = params_[1].value;
      return scale * std::pow(-std::log1p(-p), 1.0 / shape);
    }
    case Family::cauchy: {
      const double m = params_[0].value, sc = params_[1].value;
      return m + sc * std::tan(M_PI * (p - 0.5));
    }
    case Family::pareto: {
      const double shape = params_[0].value, xm = params_[1].value;
      return xm * std::pow(1.0 - p, -1.0 / shape);
    }
  }
  bad_param("unknown family");
}

bool BaseDistribution::is_location_scale() const {
  return family_ == Family::normal || family_ == Family::logistic ||
         family_ == Family::cauchy;
}

bool BaseDistribution::is_nonneg_scale() const {
  return family_ == Family::exponential || family_ == Family::gamma ||
         family_ == Family::weibull || family_ == Family::pareto ||
         family_ == Family::log_normal;
}

double BaseDistribution::location() const {
  switch (family_) {
    case Family::normal:
    case Family::logistic:
    case Family::cauchy:
      return params_[0].value;
    default:
      return 0.0;
  }
}

double BaseDistribution::scale() const {
  switch (family_) {
    case Family::normal:
    case Family::logistic:
    case Family::cauchy:
      return params_[1].value;
    case Family::exponential:
      return 1.0 / params_[0].value;
    case Family::gamma:
      return 1.0 / params_[1].value;
    case Family::weibull:
    case Family::pareto:
      return params_[1].value;
    case Family::log_normal:
      return std::exp(params_[0].value);
  }
  bad_param("unknown family");
}

double RandomSource::uniform() {
  return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomSource::standard_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  for (;;) {
    const double u = 2.0 * uniform() - 1.0;
    const double v = 2.0 * uniform() - 1.0;
    const double s = u * u + v * v;
    if (s >= 1.0 || s == 0.0) continue;
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }
}

double RandomSource::standard_gamma(double shape) {
  if (shape < 1.0) {
    const double g = standard_gamma(shape + 1.0);
    return g * std::pow(uniform(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = standard_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

std::vector<double> BaseDistribution::sample(std::size_t n,
                                             std::uint64_t seed) const {
  RandomSource rng(seed);
  std::vector<double> out;
  out.reserve(n);
  switch (family_) {
    case Family::normal: {
      const double mu = params_[0].value, sigma = params_[1].value;
      for (std::size_t i = 0; i < n; ++i)
        out.push_back(mu + sigma * rng.standard_normal());
      break;
    }
    case Family::exponential: {
      const double rate = params_[0].value;
      for (std::size_t i = 0; i < n; ++i)
        out.push_back(-std::log(rng.uniform()) / rate);
      break;
    }
    case Family::gamma: {
      const double shape = params_[0].value, rate = params_[1].value;
      for (std::size_t i = 0; i < n; ++i)
        out.push_back(rng.standard_gamma(shape) / rate);
      break;
    }
    case Family::log_normal: {
      const double mu = params_[0].value, sigma = params_[1].value;
      for (std::size_t i = 0; i < n; ++i)
        out.push_back(std::exp(mu + sigma * rng.standard_normal()));
      break;
    }
    case Family::logistic: {
      const double m = params_[0].value, s = params_[1].value;
      for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.uniform();
        out.push_back(m + s * (std::log(u) - std::log1p(-u)));
      }
      break;
    }
    case Family::weibull: {
      const double shape = params_[0].value, scale = params_[1].value;
      for (std::size_t i = 0; i < n; ++i)
        out.push_back(scale *
                      std::pow(-std::log(rng.uniform()), 1.0 / shape));
      break;
    }
    case Family::cauchy: {
      const double m = params_[0].value, s = params_[1].value;
      for (std::size_t i = 0; i < n; ++i)
        out.push_back(m + s * std::tan(M_PI * (rng.uniform() - 0.5)));
      break;
    }
    case Family::pareto: {
      const double shape = params_[0].value, xm = params_[1].value;
      for (std::size_t i = 0; i < n; ++i)
        out.push_back(xm * std::pow(rng.uniform(), -1.0 / shape));
      break;
    }
  }
  return out;
}

}  // namespace lwdist
