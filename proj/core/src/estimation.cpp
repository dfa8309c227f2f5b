#include "lwdist/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "lwdist/lambert_exponential.hpp"
#include "lwdist/lambert_normal.hpp"
#include "lwdist/nelder_mead.hpp"

namespace lwdist {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const std::vector<std::string> kModelIds = {
    "wexp",     "wnormal", "exponential", "gamma", "lognormal",
    "logistic", "normal",  "weibull",     "cauchy", "pareto"};

[[noreturn]] void unknown_model(const std::string& id) {
  throw std::invalid_argument("unknown model id: " + id);
}

WNormalParams to_wnormal(const ParamVector& p) {
  return WNormalParams{p.value("mu"), p.value("sigma"), p.value("gamma")};
}

WExpParams to_wexp(const ParamVector& p) {
  return WExpParams{p.value("lambda"), p.value("gamma")};
}

BaseDistribution to_base(const std::string& id, const ParamVector& p) {
  if (id == "exponential") return BaseDistribution::exponential(p.value("rate"));
  if (id == "gamma") {
    return BaseDistribution::gamma(p.value("shape"), p.value("rate"));
  }
  if (id == "lognormal") {
    return BaseDistribution::log_normal(p.value("mu_log"), p.value("sigma_log"));
  }
  if (id == "logistic") {
    return BaseDistribution::logistic(p.value("location"), p.value("scale"));
  }
  if (id == "normal") {
    return BaseDistribution::normal(p.value("mu"), p.value("sigma"));
  }
  if (id == "weibull") {
    return BaseDistribution::weibull(p.value("shape"), p.value("scale"));
  }
  if (id == "cauchy") {
    return BaseDistribution::cauchy(p.value("location"), p.value("scale"));
  }
  if (id == "pareto") {
    return BaseDistribution::pareto(p.value("shape"), p.value("scale"));
  }
  unknown_model(id);
}

// Verifies params carries exactly the names the model expects.
void check_shape(const std::string& id, const ParamVector& params) {
  const ParamVector shape = model_param_shape(id);
  if (params.size() != shape.size()) {
    throw std::invalid_argument("parameter count mismatch for model " + id);
  }
  for (const Param& q : shape) {
    if (!params.has(q.name)) {
      throw std::invalid_argument("model " + id + " needs parameter " + q.name);
    }
  }
}

std::function<double(double)> make_logpdf(const std::string& id,
                                          const ParamVector& p) {
  if (id == "wnormal") {
    const WNormalParams wp = to_wnormal(p);
    return [wp](double y) { return log_pdf(wp, y); };
  }
  if (id == "wexp") {
    const WExpParams wp = to_wexp(p);
    return [wp](double y) { return log_pdf(wp, y); };
  }
  const BaseDistribution d = to_base(id, p);
  return [d](double y) { return d.log_pdf(y); };
}

// Bisect h on a sign-change bracket down to a ~1e-13 wide interval.
double bisect_root(const std::function<double(double)>& h, double lo,
                   double hi) {
  double flo = h(lo);
  if (flo == 0.0) return lo;
  if (h(hi) == 0.0) return hi;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double fm = h(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-13) break;
  }
  return 0.5 * (lo + hi);
}

ParamVector wnormal_from_gamma(const SampleStats& s, double g) {
  const double g2 = g * g;
  const double eg = std::exp(g2);
  const double var_factor = eg * (eg * (1.0 + 4.0 * g2) - g2);
  const double sigma0 = std::sqrt(s.variance / var_factor);
  const double mu0 = s.mean - sigma0 * g * std::exp(0.5 * g2);
  return ParamVector{{"mu", mu0, Constraint::free},
                     {"sigma", sigma0, Constraint::positive},
                     {"gamma", g, Constraint::free}};
}

double data_mean(const std::vector<double>& data) {
  double m = 0.0;
  for (double y : data) m += y;
  return m / static_cast<double>(data.size());
}

void check_finite_data(const std::vector<double>& data) {
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!std::isfinite(data[i])) {
      throw std::invalid_argument("data: non-finite value at index " +
                                  std::to_string(i));
    }
  }
}

// Moment-matched baseline starts. Data that violates a family's support makes
// the subsequent feasibility check throw, so these only need to return
// well-formed values, not feasible ones.
ParamVector baseline_start(const std::string& id, const SampleStats& s) {
  const double sd = std::sqrt(s.variance);
  if (id == "exponential") {
    const double rate = s.mean > 0.0 ? 1.0 / s.mean : 1.0;
    return ParamVector{{"rate", rate, Constraint::positive}};
  }
  if (id == "normal") {
    return ParamVector{{"mu", s.mean, Constraint::free},
                       {"sigma", sd, Constraint::positive}};
  }
  if (id == "gamma") {
    double shape = 1.0, rate = 1.0;
    if (s.mean > 0.0) {
      shape = std::clamp(s.mean * s.mean / s.variance, 1e-3, 1e6);
      rate = shape / s.mean;
    }
    return ParamVector{{"shape", shape, Constraint::positive},
                       {"rate", rate, Constraint::positive}};
  }
  if (id == "lognormal") {
    double mu_log = 0.0, sigma_log = 1.0;
    if (s.mean > 0.0) {
      const double s2 = std::log1p(s.variance / (s.mean * s.mean));
      sigma_log = std::max(std::sqrt(s2), 1e-3);
      mu_log = std::log(s.mean) - 0.5 * s2;
    }
    return ParamVector{{"mu_log", mu_log, Constraint::free},
                       {"sigma_log", sigma_log, Constraint::positive}};
  }
  if (id == "logistic") {
    const double scale = std::max(sd * std::sqrt(3.0) / M_PI, 1e-12);
    return ParamVector{{"location", s.mean, Constraint::free},
                       {"scale", scale, Constraint::positive}};
  }
  if (id == "weibull") {
    double shape = 1.0, scale = 1.0;
    if (s.mean > 0.0) {
      const double cv = sd / s.mean;
      // Justus' power-law inversion of the coefficient of variation.
      shape = std::clamp(std::pow(cv, -1.086), 0.1, 50.0);
      scale = s.mean / std::tgamma(1.0 + 1.0 / shape);
    }
    return ParamVector{{"shape", shape, Constraint::positive},
                       {"scale", scale, Constraint::positive}};
  }
  if (id == "cauchy") {
    // The sample moments are unstable under Cauchy tails; this is only a
    // simplex seed and the optimizer moves freely from it.
    const double scale = std::max(0.5 * sd, 1e-12);
    return ParamVector{{"location", s.mean, Constraint::free},
                       {"scale", scale, Constraint::positive}};
  }
  if (id == "pareto") {
    double xm = s.min > 0.0 ? s.min * (1.0 - 1e-6) : 1e-3;
    double shape = 1.0;
    if (s.mean > xm && xm > 0.0) {
      shape = std::clamp(s.mean / (s.mean - xm), 0.05, 1e4);
    }
    return ParamVector{{"shape", shape, Constraint::positive},
                       {"scale", xm, Constraint::positive}};
  }
  unknown_model(id);
}

}  // namespace

SampleStats sample_stats(const std::vector<double>& data) {
  if (data.size() < 3) {
    throw std::invalid_argument("sample_stats: need at least 3 observations");
  }
  check_finite_data(data);
  const double n = static_cast<double>(data.size());
  SampleStats s;
  s.n = data.size();
  s.mean = data_mean(data);
  s.min = *std::min_element(data.begin(), data.end());
  s.max = *std::max_element(data.begin(), data.end());
  double m2 = 0.0, m3 = 0.0;
  for (double y : data) {
    const double d = y - s.mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  s.variance = m2 / (n - 1.0);
  m2 /= n;
  m3 /= n;
  if (m2 <= 0.0) {
    throw std::invalid_argument("sample_stats: zero variance, skewness undefined");
  }
  s.skewness_coeff = m3 / std::pow(m2, 1.5);
  return s;
}

ParamVector mom_start_wnormal(const SampleStats& s) {
  if (s.n < 3 || !(s.variance > 0.0)) {
    throw std::invalid_argument("mom_start_wnormal: invalid sample stats");
  }
  const double target = s.skewness_coeff;
  if (target == 0.0) return wnormal_from_gamma(s, 0.0);

  const auto h = [target](double g) {
    return wnormal_skewness_coefficient(g) - target;
  };
  // The map gamma -> skewness is odd and strictly increasing, so one scan
  // bracket is enough.
  const double lo = -6.0, hi = 6.0, step = 0.01;
  double g0 = std::numeric_limits<double>::quiet_NaN();
  double prev_x = lo, prev_h = h(lo);
  for (int i = 1; prev_x < hi; ++i) {
    const double x = std::min(lo + step * i, hi);
    const double hx = h(x);
    if (prev_h == 0.0) {
      g0 = prev_x;
      break;
    }
    if ((prev_h < 0.0) != (hx < 0.0)) {
      g0 = bisect_root(h, prev_x, x);
      break;
    }
    prev_x = x;
    prev_h = hx;
  }
  if (std::isnan(g0)) {
    throw std::domain_error(
        "mom_start_wnormal: sample skewness outside the gamma search range");
  }
  if (std::abs(h(g0)) > 1e-8 * std::max(1.0, std::abs(target))) {
    throw std::domain_error("mom_start_wnormal: skewness root not resolved");
  }
  return wnormal_from_gamma(s, g0);
}

ParamVector mom_start_wexp(const SampleStats& s) {
  if (s.n < 3 || !(s.variance > 0.0)) {
    throw std::invalid_argument("mom_start_wexp: invalid sample stats");
  }
  if (!(s.mean > 0.0)) {
    throw std::invalid_argument("mom_start_wexp: needs a positive sample mean");
  }
  const double target = s.skewness_coeff;
  const auto h = [target](double g) {
    return wexp_skewness_coefficient(g) - target;
  };
  // Restricted to (-1, 1/3); stronger truncation has no moment solution. The
  // map is not monotone in general, so collect every bracketed root and keep
  // the one closest to 0.
  const double lo = -1.0 + 1e-6;
  const double hi = 1.0 / 3.0 - 1e-6;
  const double step = 0.01;
  std::vector<double> roots;
  double prev_x = lo, prev_h = h(lo);
  if (prev_h == 0.0) roots.push_back(prev_x);
  for (int i = 1; prev_x < hi; ++i) {
    const double x = std::min(lo + step * i, hi);
    const double hx = h(x);
    if (hx == 0.0) {
      roots.push_back(x);
    } else if (prev_h != 0.0 && (prev_h < 0.0) != (hx < 0.0)) {
      roots.push_back(bisect_root(h, prev_x, x));
    }
    prev_x = x;
    prev_h = hx;
  }
  if (roots.empty()) {
    throw std::domain_error(
        "mom_start_wexp: sample skewness unattainable on (-1, 1/3)");
  }
  const double g0 = *std::min_element(
      roots.begin(), roots.end(),
      [](double a, double b) { return std::abs(a) < std::abs(b); });
  const double t1 = 1.0 - g0;
  const double lambda0 = 1.0 / (s.mean * t1 * t1);
  return ParamVector{{"lambda", lambda0, Constraint::positive},
                     {"gamma", g0, Constraint::free}};
}

const std::vector<std::string>& model_ids() { return kModelIds; }

bool is_known_model(const std::string& model_id) {
  return std::find(kModelIds.begin(), kModelIds.end(), model_id) !=
         kModelIds.end();
}

std::size_t model_n_params(const std::string& model_id) {
  return model_param_shape(model_id).size();
}

ParamVector model_param_shape(const std::string& model_id) {
  if (model_id == "wnormal") {
    return ParamVector{{"mu", 0.0, Constraint::free},
                       {"sigma", 1.0, Constraint::positive},
                       {"gamma", 0.0, Constraint::free}};
  }
  if (model_id == "wexp") {
    return ParamVector{{"lambda", 1.0, Constraint::positive},
                       {"gamma", 0.0, Constraint::free}};
  }
  if (model_id == "exponential") {
    return ParamVector{{"rate", 1.0, Constraint::positive}};
  }
  if (model_id == "gamma") {
    return ParamVector{{"shape", 1.0, Constraint::positive},
                       {"rate", 1.0, Constraint::positive}};
  }
  if (model_id == "lognormal") {
    return ParamVector{{"mu_log", 0.0, Constraint::free},
                       {"sigma_log", 1.0, Constraint::positive}};
  }
  if (model_id == "logistic") {
    return ParamVector{{"location", 0.0, Constraint::free},
                       {"scale", 1.0, Constraint::positive}};
  }
  if (model_id == "normal") {
    return ParamVector{{"mu", 0.0, Constraint::free},
                       {"sigma", 1.0, Constraint::positive}};
  }
  if (model_id == "weibull") {
    return ParamVector{{"shape", 1.0, Constraint::positive},
                       {"scale", 1.0, Constraint::positive}};
  }
  if (model_id == "cauchy") {
    return ParamVector{{"location", 0.0, Constraint::free},
                       {"scale", 1.0, Constraint::positive}};
  }
  if (model_id == "pareto") {
    return ParamVector{{"shape", 1.0, Constraint::positive},
                       {"scale", 1.0, Constraint::positive}};
  }
  unknown_model(model_id);
}

Interval model_support(const std::string& model_id, const ParamVector& params) {
  if (model_id == "wnormal") return support(to_wnormal(params));
  if (model_id == "wexp") return support(to_wexp(params));
  return to_base(model_id, params).support();
}

double model_pdf(const std::string& model_id, const ParamVector& params,
                 double y) {
  check_shape(model_id, params);
  if (model_id == "wnormal") return pdf(to_wnormal(params), y);
  if (model_id == "wexp") return pdf(to_wexp(params), y);
  return to_base(model_id, params).pdf(y);
}

double model_cdf(const std::string& model_id, const ParamVector& params,
                 double y) {
  check_shape(model_id, params);
  if (model_id == "wnormal") return cdf(to_wnormal(params), y);
  if (model_id == "wexp") return cdf(to_wexp(params), y);
  return to_base(model_id, params).cdf(y);
}

std::vector<double> model_sample(const std::string& model_id,
                                 const ParamVector& params, std::size_t n,
                                 std::uint64_t seed) {
  check_shape(model_id, params);
  if (model_id == "wnormal") return sample(to_wnormal(params), n, seed);
  if (model_id == "wexp") return sample(to_wexp(params), n, seed);
  return to_base(model_id, params).sample(n, seed);
}

ParamVector default_start(const std::string& model_id, const SampleStats& s) {
  if (model_id == "wnormal") {
    try {
      return mom_start_wnormal(s);
    } catch (const std::domain_error&) {
      // Skewness beyond the search range; seed at the range edge instead.
      return wnormal_from_gamma(s, s.skewness_coeff >= 0.0 ? 2.0 : -2.0);
    }
  }
  if (model_id == "wexp") {
    try {
      return mom_start_wexp(s);
    } catch (const std::domain_error&) {
      // Sample skewness below the attainable minimum; seed deep in the
      // left-truncation regime.
      const double g0 = -0.9;
      const double lambda0 =
          s.mean > 0.0 ? 1.0 / (s.mean * (1.0 - g0) * (1.0 - g0)) : 1.0;
      return ParamVector{{"lambda", lambda0, Constraint::positive},
                         {"gamma", g0, Constraint::free}};
    }
  }
  return baseline_start(model_id, s);
}

LogLikResult log_likelihood(const std::string& model_id,
                            const ParamVector& params,
                            const std::vector<double>& data) {
  if (!is_known_model(model_id)) unknown_model(model_id);
  check_shape(model_id, params);
  params.validate();
  const Interval sup = model_support(model_id, params);
  const auto lp = make_logpdf(model_id, params);
  LogLikResult r;
  double sum = 0.0;
  for (double y : data) {
    // Boundary or exterior observations contribute -inf without ever
    // touching the pdf (the density may pole there).
    if (!sup.interior_contains(y)) {
      ++r.n_violations;
      continue;
    }
    sum += lp(y);
  }
  r.value = r.n_violations > 0 ? -kInf : sum;
  return r;
}

FitResult mle_fit(const std::string& model_id, const std::vector<double>& data,
                  const std::optional<ParamVector>& start) {
  if (!is_known_model(model_id)) unknown_model(model_id);
  check_finite_data(data);
  const ParamVector shape = model_param_shape(model_id);
  const std::size_t k = shape.size();
  if (data.size() < k + 1) {
    throw std::invalid_argument("mle_fit: need at least n_params + 1 observations");
  }
  const double dmin = *std::min_element(data.begin(), data.end());
  const double dmax = *std::max_element(data.begin(), data.end());
  const double dspread = dmax - dmin;

  // One observed spacing between an extreme and its nearest distinct
  // neighbor is the finest support-bound resolution the sample carries. The
  // Lambert likelihoods grow without bound as a fitted bound closes on a
  // data extreme (a single observation rides the density pole), so the
  // optimizer's feasible set stops one spacing short and fits report the
  // interior maximum instead of that degenerate supremum.
  double min2 = kInf, max2 = -kInf;
  for (double y : data) {
    if (y > dmin) min2 = std::min(min2, y);
    if (y < dmax) max2 = std::max(max2, y);
  }
  double floor_lo = std::isfinite(min2) ? min2 - dmin : 0.0;
  double floor_hi = std::isfinite(max2) ? dmax - max2 : 0.0;

  // The Lambert densities pole at their parameter-dependent support bound,
  // and the W evaluator snaps arguments within 1e-15 of the branch point,
  // so an interior density overflows to +inf once the bound comes within
  // about scale * 1e-15 / |gamma| of a data extreme. Keep the optimizer a
  // hundred snap-widths clear of that sliver.
  const auto pole_guard = [&](const ParamVector& p) -> double {
    if (model_id == "wnormal") {
      const double g = std::abs(p[2].value);
      return g > 0.0 ? 1e-13 * p[1].value / g : 0.0;
    }
    if (model_id == "wexp") {
      const double g = std::abs(p[1].value);
      return g > 0.0 ? 1e-13 / (g * p[0].value) : 0.0;
    }
    return 0.0;
  };

  // Signed clearance of the data inside the support, after subtracting the
  // pole guard at any finite bound that carries a density pole. Positive
  // clearance is required for a usable likelihood.
  const auto clearance = [&](const ParamVector& p) -> double {
    const Interval sup = model_support(model_id, p);
    double c = kInf;
    if (std::isfinite(sup.lo)) {
      const double guard =
          model_id == "wnormal" ? std::max(pole_guard(p), floor_lo) : 0.0;
      c = std::min(c, dmin - sup.lo - guard);
    }
    if (std::isfinite(sup.hi)) {
      const double guard = model_id == "wnormal" || model_id == "wexp"
                               ? std::max(pole_guard(p), floor_hi)
                               : 0.0;
      c = std::min(c, sup.hi - dmax - guard);
    }
    return c;
  };
  const auto feasible = [&](const ParamVector& p) {
    return clearance(p) > 0.0;
  };

  FitResult res;
  res.model_id = model_id;
  res.n_params = k;
  res.n_obs = data.size();

  // Validate or build the starting point.
  ParamVector p0 = shape;
  if (start.has_value()) {
    check_shape(model_id, *start);
    start->validate();
    for (std::size_t i = 0; i < k; ++i) p0[i].value = start->value(p0[i].name);
    if ((model_id == "wnormal" || model_id == "wexp") && !feasible(p0)) {
      // Honor an explicit start closer to its bound than one spacing as
      // long as it clears the numeric pole guard; halve the floor so a
      // local search around the start stays meaningful.
      const Interval sup = model_support(model_id, p0);
      if (std::isfinite(sup.lo)) {
        floor_lo = std::max(0.0, 0.5 * (dmin - sup.lo));
      }
      if (std::isfinite(sup.hi)) {
        floor_hi = std::max(0.0, 0.5 * (sup.hi - dmax));
      }
    }
  } else if (model_id == "exponential") {
    // Closed-form MLE, no optimizer needed.
    if (!(dmin > 0.0)) {
      throw std::invalid_argument("mle_fit: data outside the exponential support");
    }
    const double rate = 1.0 / data_mean(data);
    res.params = ParamVector{{"rate", rate, Constraint::positive}};
    res.start_params = res.params;
    res.loglik = log_likelihood(model_id, res.params, data).value;
    res.converged = true;
    res.iterations = 0;
    return res;
  } else {
    const SampleStats stats = sample_stats(data);
    p0 = default_start(model_id, stats);
    // A scale-moment start can land outside the data-dependent feasible set
    // (finite Lambert bound below max(data)); walk gamma toward 0 until the
    // bound clears the data.
    if ((model_id == "wexp" || model_id == "wnormal") && !feasible(p0)) {
      const std::size_t gi = model_id == "wexp" ? 1 : 2;
      for (int a = 0; a < 60 && !feasible(p0); ++a) p0[gi].value *= 0.5;
    }
  }
  if (!feasible(p0)) {
    throw std::invalid_argument(
        "mle_fit: starting point infeasible for the data");
  }
  res.start_params = p0;

  // Positivity-constrained coordinates move on log scale.
  const auto to_opt = [&](const ParamVector& p) {
    std::vector<double> th(k);
    for (std::size_t i = 0; i < k; ++i) {
      th[i] = p[i].constraint == Constraint::positive ? std::log(p[i].value)
                                                      : p[i].value;
    }
    return th;
  };
  const auto from_opt = [&](const std::vector<double>& th) {
    ParamVector p = shape;
    for (std::size_t i = 0; i < k; ++i) {
      p[i].value = p[i].constraint == Constraint::positive ? std::exp(th[i])
                                                           : th[i];
    }
    return p;
  };

  // Infeasible evaluations return a graded penalty instead of a hard +inf:
  // the likelihood pulls the fitted bound toward a data extreme (the pole
  // makes it genuinely increase that way), and against a flat infinite wall
  // the simplex loses rank and stalls. A penalty that deepens with the
  // violation lets it reorient and slide along the feasible boundary.
  constexpr double kBarrier = 1e15;
  const auto eval_params = [&](const ParamVector& p) -> double {
    for (std::size_t i = 0; i < k; ++i) {
      if (!std::isfinite(p[i].value)) return kInf;
      if (p[i].constraint == Constraint::positive && p[i].value <= 0.0) {
        return kInf;
      }
    }
    try {
      const double c = clearance(p);
      if (!(c > 0.0)) {
        const double denom = std::max(dspread, 1e-300);
        const double depth = std::min(-c / denom, 1e12);
        return kBarrier * (1.0 + depth);
      }
      const double ll = log_likelihood(model_id, p, data).value;
      // Backstop: a log density that still rounds to +inf at an interior
      // point marks the degenerate pole ridge, not a maximum.
      return ll < kInf ? -ll : kInf;
    } catch (const std::exception&) {
      return kInf;
    }
  };
  const auto objective = [&](const std::vector<double>& th) -> double {
    return eval_params(from_opt(th));
  };

  const std::vector<double> th0 = to_opt(p0);
  NmOptions opts;
  std::size_t total_iterations = 0;

  // Polish by re-seeding a small fresh simplex at the incumbent until the
  // objective stops improving. A simplex that collapsed against the boundary
  // penalty reports convergence while still off the optimum, and a capped run
  // leaves the flag unset; a polish run that converges back onto the
  // incumbent value certifies the point either way.
  NmOptions polish_opts = opts;
  polish_opts.initial_step = 0.02;
  const auto polish =
      [&](const std::function<double(const std::vector<double>&)>& fn,
          NmResult& inc, bool& certified) -> bool {
    bool stable = false;
    for (int round = 0; round < 12 && !stable; ++round) {
      NmResult run = nelder_mead(fn, inc.x, polish_opts);
      total_iterations += run.iterations;
      const bool run_conv = run.converged;
      stable = inc.f - run.f <= opts.f_tol * std::max(1.0, std::abs(run.f));
      if (run.f < inc.f) {
        inc = std::move(run);
        certified = run_conv;
      }
      if (stable && run_conv) certified = true;
    }
    return stable;
  };

  // Three deterministic perturbed restarts around the start point to step off
  // bad local structure; keep the lowest objective.
  RandomSource rng(0x9e3779b97f4a7c15ULL);
  const auto restarts =
      [&](const std::function<double(const std::vector<double>&)>& fn,
          const std::vector<double>& center, NmResult& inc, bool& certified) {
    for (int r = 0; r < 3; ++r) {
      std::vector<double> th(center.size());
      bool ok = false;
      for (int attempt = 0; attempt < 20 && !ok; ++attempt) {
        for (std::size_t i = 0; i < th.size(); ++i) {
          const double u = 2.0 * rng.uniform() - 1.0;
          th[i] = center[i] + 0.25 * u * std::max(1.0, std::abs(center[i]));
        }
        ok = fn(th) < kBarrier;
      }
      if (!ok) continue;
      NmResult run = nelder_mead(fn, th, opts);
      total_iterations += run.iterations;
      if (run.f < inc.f) {
        inc = std::move(run);
        certified = inc.converged;
      }
    }
  };

  // Bound-distance coordinates for the pole-bounded Lambert fits. Near the
  // bound the raw coordinates are hopeless: the bound moves by
  // sigma/(gamma^2 e) per unit of gamma, so the region where the pole term
  // varies is a slab thinner than the simplex can resolve and the optimizer
  // crawls or stalls against the feasibility wall. With beta = log(distance
  // from the pinned data extreme to the bound) that direction becomes its own
  // smooth coordinate, and the location (or rate) is recovered from the
  // bound. The anchor side is frozen by the gamma sign at entry, so each
  // beta run explores a single support orientation; sign crossings decode to
  // invalid or infeasible parameters and land on the penalty.
  const auto make_from_beta = [&](bool lower_side) {
    return [&, lower_side](const std::vector<double>& th) -> ParamVector {
      ParamVector p = shape;
      if (model_id == "wnormal") {
        const double sigma = std::exp(th[1]);
        const double gamma = th[2];
        const double b =
            lower_side ? dmin - std::exp(th[0]) : dmax + std::exp(th[0]);
        p[0].value = gamma != 0.0 ? b + sigma / (gamma * M_E)
                                  : std::numeric_limits<double>::quiet_NaN();
        p[1].value = sigma;
        p[2].value = gamma;
      } else {
        const double gamma = th[1];
        const double b = dmax + std::exp(th[0]);
        p[0].value = gamma < 0.0 ? -1.0 / (M_E * gamma * b)
                                 : std::numeric_limits<double>::quiet_NaN();
        p[1].value = gamma;
      }
      return p;
    };
  };
  struct BetaEntry {
    bool usable = false;
    bool lower_side = false;
    std::vector<double> th;
  };
  const auto beta_entry = [&](const ParamVector& p) -> BetaEntry {
    BetaEntry e;
    const bool pole_bounded =
        (model_id == "wnormal" && p[2].value != 0.0) ||
        (model_id == "wexp" && p[1].value < 0.0);
    if (!pole_bounded) return e;
    const Interval sup = model_support(model_id, p);
    e.lower_side = std::isfinite(sup.lo);
    const double delta = e.lower_side ? dmin - sup.lo : sup.hi - dmax;
    // A bound many data ranges away has no pole influence; stay in raw
    // coordinates.
    if (!(delta > 0.0) || !(delta < 1e3 * std::max(dspread, 1.0))) return e;
    if (model_id == "wnormal") {
      e.th = {std::log(delta), std::log(p[1].value), p[2].value};
    } else {
      e.th = {std::log(delta), p[1].value};
    }
    e.usable = true;
    return e;
  };

  NmResult best;
  bool best_converged = false;
  bool stable = false;
  bool beta_searched = false;
  ParamVector best_params;

  const BetaEntry entry = beta_entry(p0);
  if (entry.usable) {
    const auto from_beta = make_from_beta(entry.lower_side);
    const auto objective_beta = [&](const std::vector<double>& th) -> double {
      return eval_params(from_beta(th));
    };
    NmResult bb = nelder_mead(objective_beta, entry.th, opts);
    total_iterations += bb.iterations;
    bool bconv = bb.converged;
    restarts(objective_beta, entry.th, bb, bconv);
    const bool bstable = polish(objective_beta, bb, bconv);

    // Follow up in raw coordinates: the beta anchor froze the gamma sign and
    // the support side, and only a raw run can leave them.
    const ParamVector decoded = from_beta(bb.x);
    const std::vector<double> th_raw = to_opt(decoded);
    NmResult rr = nelder_mead(objective, th_raw, opts);
    total_iterations += rr.iterations;
    const double tol = opts.f_tol * std::max(1.0, std::abs(bb.f));
    if (rr.f < bb.f - tol) {
      best = std::move(rr);
      best_converged = best.converged;
      stable = polish(objective, best, best_converged);
      best_params = from_opt(best.x);
    } else {
      best.x = th_raw;
      best.f = bb.f;
      best_converged = bconv || (rr.converged && rr.f <= bb.f + tol);
      stable = bstable;
      best_params = decoded;
      beta_searched = true;
    }
  } else {
    best = nelder_mead(objective, th0, opts);
    total_iterations += best.iterations;
    best_converged = best.converged;
    restarts(objective, th0, best, best_converged);
    stable = polish(objective, best, best_converged);
    best_params = from_opt(best.x);
  }

  double best_f = best.f;
  bool conv = best_converged && stable;

  // A raw-coordinate search can run back into the pole slab (the likelihood
  // genuinely increases toward a data-pinned bound), so finish with a
  // beta-coordinate stage from the fitted point unless one already ran there.
  if (!beta_searched && best_f < kBarrier) {
    const BetaEntry fin = beta_entry(best_params);
    if (fin.usable) {
      const auto from_beta = make_from_beta(fin.lower_side);
      const auto objective_beta =
          [&](const std::vector<double>& th) -> double {
        return eval_params(from_beta(th));
      };
      NmResult bb = nelder_mead(objective_beta, fin.th, opts);
      total_iterations += bb.iterations;
      bool bconv = bb.converged;
      const bool bstable = polish(objective_beta, bb, bconv);
      if (bb.f < best_f) {
        best_params = from_beta(bb.x);
        best_f = bb.f;
        conv = bconv && bstable;
      } else if (bconv && bstable &&
                 bb.f - best_f <=
                     opts.f_tol * std::max(1.0, std::abs(best_f))) {
        // Independent coordinates converged onto the same value; that
        // certifies the raw point even if its own runs hit the cap.
        conv = true;
      }
    }
  }

  res.params = best_params;
  if (best_f < kBarrier) {
    res.loglik = -best_f;
    res.converged = conv;
  } else {
    // Every run ended on the penalty surface; there is no usable fit.
    res.loglik = -kInf;
    res.converged = false;
  }
  res.iterations = total_iterations;
  return res;
}

}  // namespace lwdist
