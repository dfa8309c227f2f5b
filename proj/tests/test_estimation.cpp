#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "lwdist/estimation.hpp"
#include "lwdist/lambert_exponential.hpp"
#include "lwdist/lambert_normal.hpp"

using lwdist::Constraint;
using lwdist::FitResult;
using lwdist::ParamVector;
using lwdist::SampleStats;
using lwdist::WExpParams;
using lwdist::WNormalParams;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ParamVector wn_params(double mu, double sigma, double gamma) {
  return ParamVector{{"mu", mu, Constraint::free},
                     {"sigma", sigma, Constraint::positive},
                     {"gamma", gamma, Constraint::free}};
}

ParamVector wexp_params(double lambda, double gamma) {
  return ParamVector{{"lambda", lambda, Constraint::positive},
                     {"gamma", gamma, Constraint::free}};
}

SampleStats stats_of(double mean, double variance, double skew) {
  SampleStats s;
  s.n = 1000;
  s.mean = mean;
  s.variance = variance;
  s.skewness_coeff = skew;
  s.min = mean - 3.0 * std::sqrt(variance);
  s.max = mean + 3.0 * std::sqrt(variance);
  return s;
}

}  // namespace

TEST_CASE("sample_stats on small hand-checked vectors") {
  const auto s = lwdist::sample_stats({-1.0, 0.0, 1.0});
  CHECK(s.n == 3);
  CHECK(s.mean == doctest::Approx(0.0).epsilon(0.0));
  CHECK(s.variance == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.skewness_coeff == doctest::Approx(0.0).epsilon(0.0));
  CHECK(s.min == -1.0);
  CHECK(s.max == 1.0);

  // Three zeros and a three: mean 3/4, unbiased variance 9/4, and the
  // Bernoulli-pattern skewness 2/sqrt(3).
  const auto t = lwdist::sample_stats({0.0, 0.0, 0.0, 3.0});
  CHECK(t.mean == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(t.variance == doctest::Approx(2.25).epsilon(1e-15));
  CHECK(t.skewness_coeff ==
        doctest::Approx(1.1547005383792515).epsilon(1e-13));
  CHECK(t.min == 0.0);
  CHECK(t.max == 3.0);
}

TEST_CASE("sample_stats rejects degenerate input") {
  CHECK_THROWS_AS(lwdist::sample_stats({1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(lwdist::sample_stats({2.0, 2.0, 2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      lwdist::sample_stats({1.0, std::nan(""), 3.0}), std::invalid_argument);
  CHECK_THROWS_AS(lwdist::sample_stats({1.0, kInf, 3.0}),
                  std::invalid_argument);
}

TEST_CASE("moment-matched start recovers wnormal parameters") {
  // Population moments of the target laws, computed independently and frozen.
  struct Case {
    double mean, var, skew;
    double mu, sigma, gamma;
  };
  const Case cases[] = {
      {1.8666296541399668, 8.2829111766091199, 2.7427605534248612,
       1.0, 2.0, 0.4},
      {-1.5774956268096291, 10.117841500641068, -4.8968048956576619,
       -0.5, 1.5, -0.6},
  };
  for (const Case& c : cases) {
    const ParamVector p = lwdist::mom_start_wnormal(
        stats_of(c.mean, c.var, c.skew));
    CHECK(p.value("mu") == doctest::Approx(c.mu).epsilon(1e-6));
    CHECK(p.value("sigma") == doctest::Approx(c.sigma).epsilon(1e-6));
    CHECK(p.value("gamma") == doctest::Approx(c.gamma).epsilon(1e-6));
  }
  // Symmetric sample pins gamma to zero and reduces to plain normal moments.
  const ParamVector q = lwdist::mom_start_wnormal(stats_of(2.0, 9.0, 0.0));
  CHECK(q.value("gamma") == 0.0);
  CHECK(q.value("mu") == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(q.value("sigma") == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("moment-matched start recovers wexp parameters") {
  struct Case {
    double mean, var, skew;
    double lambda, gamma;
  };
  const Case cases[] = {
      {1.9772614928324271, 7.9902406422018034, 6.0230831636144738,
       0.7, 0.15},
      {0.34188034188034188, 0.03104682591862079, -0.34532507628702543,
       1.3, -0.5},
  };
  for (const Case& c : cases) {
    const ParamVector p =
        lwdist::mom_start_wexp(stats_of(c.mean, c.var, c.skew));
    CHECK(p.value("lambda") == doctest::Approx(c.lambda).epsilon(1e-6));
    CHECK(p.value("gamma") == doctest::Approx(c.gamma).epsilon(1e-6));
  }
}

TEST_CASE("moment-matched start domain errors") {
  // wexp skewness on (-1, 1/3) never reaches -5.
  CHECK_THROWS_AS(lwdist::mom_start_wexp(stats_of(1.0, 1.0, -5.0)),
                  std::domain_error);
  CHECK_THROWS_AS(lwdist::mom_start_wexp(stats_of(-1.0, 1.0, 2.0)),
                  std::invalid_argument);
  // wnormal search range [-6, 6] covers any realistic skewness but not this.
  CHECK_THROWS_AS(lwdist::mom_start_wnormal(stats_of(1.0, 1.0, 1e30)),
                  std::domain_error);
  SampleStats bad = stats_of(1.0, 1.0, 0.5);
  bad.n = 2;
  CHECK_THROWS_AS(lwdist::mom_start_wnormal(bad), std::invalid_argument);
}

TEST_CASE("default_start falls back when the skewness equation has no root") {
  const ParamVector w = lwdist::default_start("wexp", stats_of(1.0, 1.0, -5.0));
  CHECK(w.value("gamma") == doctest::Approx(-0.9).epsilon(0.0));
  CHECK(w.value("lambda") ==
        doctest::Approx(1.0 / (1.0 * 1.9 * 1.9)).epsilon(1e-12));

  const ParamVector n =
      lwdist::default_start("wnormal", stats_of(1.0, 1.0, 1e30));
  CHECK(n.value("gamma") == doctest::Approx(2.0).epsilon(0.0));
  const ParamVector m =
      lwdist::default_start("wnormal", stats_of(1.0, 1.0, -1e30));
  CHECK(m.value("gamma") == doctest::Approx(-2.0).epsilon(0.0));

  // Baselines moment-match directly.
  const ParamVector b = lwdist::default_start("normal", stats_of(2.0, 9.0, 0.3));
  CHECK(b.value("mu") == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(b.value("sigma") == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("model registry") {
  const auto& ids = lwdist::model_ids();
  const std::vector<std::string> expected = {
      "wexp",     "wnormal",  "exponential", "gamma",  "lognormal",
      "logistic", "normal",   "weibull",     "cauchy", "pareto"};
  CHECK(std::vector<std::string>(ids.begin(), ids.end()) == expected);
  CHECK(lwdist::is_known_model("wexp"));
  CHECK_FALSE(lwdist::is_known_model("wexpp"));
  CHECK(lwdist::model_n_params("wnormal") == 3);
  CHECK(lwdist::model_n_params("wexp") == 2);
  CHECK(lwdist::model_n_params("exponential") == 1);
  CHECK(lwdist::model_param_shape("wexp")[0].name == "lambda");
  CHECK(lwdist::model_param_shape("wexp")[1].name == "gamma");
  CHECK_THROWS_AS(lwdist::model_n_params("nope"), std::invalid_argument);
}

TEST_CASE("generic model evaluation dispatches to the right law") {
  const ParamVector wn = wn_params(0.5, 1.2, 0.3);
  CHECK(lwdist::model_pdf("wnormal", wn, 1.0) ==
        lwdist::pdf(WNormalParams{0.5, 1.2, 0.3}, 1.0));
  CHECK(lwdist::model_cdf("wnormal", wn, 1.0) ==
        lwdist::cdf(WNormalParams{0.5, 1.2, 0.3}, 1.0));

  const ParamVector we = wexp_params(1.1, -0.2);
  CHECK(lwdist::model_pdf("wexp", we, 0.7) ==
        lwdist::pdf(WExpParams{1.1, -0.2}, 0.7));
  CHECK(lwdist::model_cdf("wexp", we, 0.7) ==
        lwdist::cdf(WExpParams{1.1, -0.2}, 0.7));

  const ParamVector ex{{"rate", 2.0, Constraint::positive}};
  CHECK(lwdist::model_pdf("exponential", ex, 1.0) ==
        doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-14));

  const auto a = lwdist::model_sample("wexp", we, 64, 99);
  const auto b = lwdist::model_sample("wexp", we, 64, 99);
  CHECK(a == b);
  CHECK(a.size() == 64);
}

TEST_CASE("log_likelihood sums log densities") {
  const ParamVector ex{{"rate", 1.0, Constraint::positive}};
  const auto r = lwdist::log_likelihood("exponential", ex, {1.0, 1.0});
  CHECK(r.value == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(r.n_violations == 0);

  // At y = mu the transformed normal density is phi(0)/sigma.
  const auto w =
      lwdist::log_likelihood("wnormal", wn_params(0.0, 1.0, 0.2), {0.0});
  CHECK(w.value == doctest::Approx(-0.9189385332046727).epsilon(1e-13));

  const auto w2 =
      lwdist::log_likelihood("wnormal", wn_params(0.0, 2.5, 0.2), {0.0});
  CHECK(w2.value ==
        doctest::Approx(-0.9189385332046727 - std::log(2.5)).epsilon(1e-13));
}

TEST_CASE("log_likelihood flags support violations") {
  // Upper bound of wexp(1.176, -0.04) is about 7.82; y = 8 lies outside.
  const ParamVector we = wexp_params(1.176, -0.04);
  const auto bad = lwdist::log_likelihood("wexp", we, {1.0, 8.0});
  CHECK(bad.value == -kInf);
  CHECK(bad.n_violations == 1);

  const auto ok = lwdist::log_likelihood("wexp", we, {1.0, 2.0});
  CHECK(std::isfinite(ok.value));
  CHECK(ok.n_violations == 0);

  // Boundary points count as violations, not poles.
  const auto at_zero = lwdist::log_likelihood(
      "exponential", ParamVector{{"rate", 1.0, Constraint::positive}},
      {0.0, 1.0});
  CHECK(at_zero.n_violations == 1);
  CHECK(at_zero.value == -kInf);

  CHECK_THROWS_AS(lwdist::log_likelihood("nope", we, {1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      lwdist::log_likelihood("wnormal", we, {1.0}), std::invalid_argument);
}

TEST_CASE("exponential MLE uses the closed form") {
  const std::vector<double> data = {1.0, 2.0, 3.0};
  const FitResult r = lwdist::mle_fit("exponential", data);
  CHECK(r.params.value("rate") == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r.iterations == 0);
  CHECK(r.converged);
  CHECK(r.loglik == doctest::Approx(3.0 * std::log(0.5) - 3.0).epsilon(1e-13));
  CHECK(r.n_params == 1);
  CHECK(r.n_obs == 3);
  CHECK(r.model_id == "exponential");

  // An explicit start routes through the optimizer instead.
  const FitResult s = lwdist::mle_fit(
      "exponential", data, ParamVector{{"rate", 1.0, Constraint::positive}});
  CHECK(s.iterations > 0);
  CHECK(s.params.value("rate") == doctest::Approx(0.5).epsilon(1e-5));
  CHECK(s.converged);

  CHECK_THROWS_AS(lwdist::mle_fit("exponential", {0.0, 1.0, 2.0}),
                  std::invalid_argument);
}

TEST_CASE("normal MLE matches the closed-form estimator") {
  const auto data = lwdist::model_sample(
      "normal",
      ParamVector{{"mu", 2.0, Constraint::free},
                  {"sigma", 3.0, Constraint::positive}},
      4000, 7);
  const FitResult r = lwdist::mle_fit("normal", data);
  REQUIRE(r.converged);
  double mean = 0.0;
  for (double y : data) mean += y;
  mean /= static_cast<double>(data.size());
  double m2 = 0.0;
  for (double y : data) m2 += (y - mean) * (y - mean);
  m2 /= static_cast<double>(data.size());
  CHECK(r.params.value("mu") == doctest::Approx(mean).epsilon(1e-5));
  CHECK(r.params.value("sigma") ==
        doctest::Approx(std::sqrt(m2)).epsilon(1e-5));
}

TEST_CASE("mle_fit argument validation") {
  CHECK_THROWS_AS(lwdist::mle_fit("nope", {1.0, 2.0, 3.0}),
                  std::invalid_argument);
  // Fewer observations than parameters plus one.
  CHECK_THROWS_AS(lwdist::mle_fit("wnormal", {1.0, 2.0, 3.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      lwdist::mle_fit("normal", {1.0, std::nan(""), 2.0, 3.0}),
      std::invalid_argument);
  // Explicit start whose support excludes part of the data.
  const ParamVector pareto_start{{"shape", 1.0, Constraint::positive},
                                 {"scale", 1.0, Constraint::positive}};
  CHECK_THROWS_AS(lwdist::mle_fit("pareto", {0.5, 1.0, 2.0}, pareto_start),
                  std::invalid_argument);
}

TEST_CASE("wnormal MLE improves on the generating parameters") {
  const WNormalParams truth{0.0, 1.0, 0.2};
  const auto data = lwdist::sample(truth, 3000, 5);
  const FitResult r = lwdist::mle_fit("wnormal", data);
  REQUIRE(r.converged);
  // The optimizer keeps the support bound one extreme spacing away from the
  // sample, so when the truth's bound falls inside that band the fit gives
  // up a bounded slice of the extreme observation's pole term. Outside that
  // margin the maximized likelihood dominates the value at the truth.
  const double at_truth =
      lwdist::log_likelihood("wnormal", wn_params(0.0, 1.0, 0.2), data).value;
  CHECK(r.loglik >= at_truth - 5.0);
  CHECK(std::abs(r.params.value("mu")) < 0.1);
  CHECK(std::abs(r.params.value("sigma") - 1.0) < 0.1);
  CHECK(std::abs(r.params.value("gamma") - 0.2) < 0.1);
  CHECK(r.start_params.size() == 3);
  CHECK(r.iterations > 0);
}

TEST_CASE("wexp MLE keeps the truncation bound beyond the data") {
  const WExpParams truth{1.3, -0.5};
  const auto data = lwdist::sample(truth, 2000, 3);
  const double dmax = *std::max_element(data.begin(), data.end());
  const FitResult r = lwdist::mle_fit("wexp", data);
  REQUIRE(r.converged);
  const auto sup = lwdist::model_support("wexp", r.params);
  CHECK(sup.hi > dmax);
  // Same feasibility-floor margin as the wnormal case above: the bound stays
  // one extreme spacing beyond the data, which can cost a few nats against
  // the generating parameters.
  const double at_truth =
      lwdist::log_likelihood("wexp", wexp_params(1.3, -0.5), data).value;
  CHECK(r.loglik >= at_truth - 5.0);
  CHECK(std::abs(r.params.value("lambda") - 1.3) < 0.2);
  CHECK(std::abs(r.params.value("gamma") + 0.5) < 0.1);
}
