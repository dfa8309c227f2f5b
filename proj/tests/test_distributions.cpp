#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "lwdist/distributions.hpp"

using lwdist::BaseDistribution;
using lwdist::Constraint;
using lwdist::Family;
using lwdist::Param;
using lwdist::ParamVector;

namespace {
constexpr double kTol = 1e-13;

void check3(const BaseDistribution& d, double x, double pdf_ref,
            double cdf_ref) {
  CHECK(d.pdf(x) == doctest::Approx(pdf_ref).epsilon(kTol));
  CHECK(d.cdf(x) == doctest::Approx(cdf_ref).epsilon(kTol));
  CHECK(d.log_pdf(x) == doctest::Approx(std::log(pdf_ref)).epsilon(kTol));
}
}  // namespace

TEST_CASE("normal pdf cdf quantile") {
  const auto d = BaseDistribution::normal(0.0, 1.0);
  check3(d, 1.0, 0.241970724519143, 0.841344746068543);
  CHECK(d.quantile(0.975) == doctest::Approx(1.95996398454005).epsilon(1e-12));
  const auto d2 = BaseDistribution::normal(2.0, 3.0);
  CHECK(d2.pdf(4.0) == doctest::Approx(0.106482668507451).epsilon(kTol));
  CHECK(d2.cdf(-1.0) == doctest::Approx(0.158655253931457).epsilon(kTol));
  CHECK(d2.quantile(d2.cdf(4.0)) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("exponential pdf cdf quantile") {
  const auto d = BaseDistribution::exponential(0.5);
  check3(d, 3.0, 0.111565080074215, 0.77686983985157);
  CHECK(d.quantile(0.5) == doctest::Approx(1.38629436111989).epsilon(1e-12));
  CHECK(d.pdf(-1.0) == 0.0);
  CHECK(d.cdf(-1.0) == 0.0);
}

TEST_CASE("gamma pdf cdf quantile") {
  const auto d = BaseDistribution::gamma(2.0, 1.0);
  check3(d, 1.0, 0.367879441171442, 0.264241117657115);
  CHECK(d.cdf(2.0) == doctest::Approx(0.593994150290162).epsilon(kTol));
  const auto d2 = BaseDistribution::gamma(0.5, 2.0);
  CHECK(d2.pdf(0.3) == doctest::Approx(0.799471055606933).epsilon(kTol));
  CHECK(d2.cdf(0.3) == doctest::Approx(0.726678321707702).epsilon(kTol));
  CHECK(d2.quantile(0.9) == doctest::Approx(0.676385863523851).epsilon(1e-10));
}

TEST_CASE("lognormal pdf cdf") {
  const auto d = BaseDistribution::log_normal(0.0, 1.0);
  check3(d, 2.0, 0.156874019278981, 0.755891404214417);
  const auto d2 = BaseDistribution::log_normal(0.5, 0.8);
  CHECK(d2.pdf(1.2) == doctest::Approx(0.384058662577693).epsilon(kTol));
  CHECK(d2.cdf(1.2) == doctest::Approx(0.345647577448224).epsilon(kTol));
}

TEST_CASE("logistic pdf cdf quantile") {
  const auto d = BaseDistribution::logistic(0.0, 1.0);
  CHECK(d.pdf(2.0) == doctest::Approx(0.104993585403507).epsilon(kTol));
  CHECK(d.quantile(0.75) == doctest::Approx(1.09861228866811).epsilon(1e-12));
  const auto d2 = BaseDistribution::logistic(1.0, 2.0);
  CHECK(d2.cdf(0.0) == doctest::Approx(0.377540668798145).epsilon(kTol));
}

TEST_CASE("weibull pdf cdf") {
  const auto d = BaseDistribution::weibull(2.0, 1.5);
  check3(d, 1.0, 0.569938123048848, 0.358819611570045);
  const auto d2 = BaseDistribution::weibull(0.8, 1.0);
  CHECK(d2.pdf(0.5) == doctest::Approx(0.51743917721551).epsilon(kTol));
  CHECK(d2.cdf(0.5) == doctest::Approx(0.436928791004443).epsilon(kTol));
}

TEST_CASE("cauchy pdf cdf quantile") {
  const auto d = BaseDistribution::cauchy(0.0, 1.0);
  CHECK(d.cdf(1.0) == doctest::Approx(0.75).epsilon(kTol));
  CHECK(d.pdf(0.0) == doctest::Approx(0.318309886183791).epsilon(kTol));
  const auto d2 = BaseDistribution::cauchy(1.0, 0.5);
  CHECK(d2.quantile(0.9) == doctest::Approx(2.53884176858763).epsilon(1e-12));
}

TEST_CASE("pareto pdf cdf quantile") {
  const auto d = BaseDistribution::pareto(2.0, 1.0);
  check3(d, 2.0, 0.25, 0.75);
  CHECK(d.quantile(0.75) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(d.pdf(0.5) == 0.0);
  const auto d2 = BaseDistribution::pareto(1.5, 2.0);
  CHECK(d2.pdf(3.0) == doctest::Approx(0.272165526975909).epsilon(kTol));
  CHECK(d2.cdf(3.0) == doctest::Approx(0.455668946048183).epsilon(kTol));
}

TEST_CASE("quantile and cdf are inverse on the interior") {
  for (const auto& d :
       {BaseDistribution::normal(0.3, 1.7), BaseDistribution::gamma(2.5, 0.7),
        BaseDistribution::weibull(1.3, 2.0), BaseDistribution::logistic(-1.0, 0.6),
        BaseDistribution::log_normal(0.2, 0.9), BaseDistribution::cauchy(0.0, 2.0),
        BaseDistribution::pareto(2.5, 1.2),
        BaseDistribution::exponential(1.3)}) {
    for (double p : {0.001, 0.05, 0.3, 0.5, 0.7, 0.95, 0.999}) {
      CHECK(d.cdf(d.quantile(p)) == doctest::Approx(p).epsilon(1e-9));
    }
  }
}

TEST_CASE("quantile endpoints map to support endpoints") {
  const auto n = BaseDistribution::normal(0.0, 1.0);
  CHECK(n.quantile(0.0) == -std::numeric_limits<double>::infinity());
  CHECK(n.quantile(1.0) == std::numeric_limits<double>::infinity());
  const auto e = BaseDistribution::exponential(1.0);
  CHECK(e.quantile(0.0) == 0.0);
  CHECK_THROWS_AS(n.quantile(-0.1), std::domain_error);
  CHECK_THROWS_AS(n.quantile(1.5), std::domain_error);
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(BaseDistribution::normal(0.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(BaseDistribution::exponential(0.0), std::invalid_argument);
  CHECK_THROWS_AS(BaseDistribution::gamma(1.0, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(BaseDistribution::weibull(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(
      BaseDistribution::normal(std::nan(""), 1.0), std::invalid_argument);
}

TEST_CASE("make dispatches by family and param names") {
  const ParamVector p{{"mu", 1.0, Constraint::free},
                      {"sigma", 2.0, Constraint::positive}};
  const auto d = BaseDistribution::make(Family::normal, p);
  CHECK(d.pdf(1.0) == doctest::Approx(BaseDistribution::normal(1.0, 2.0).pdf(1.0)));
}

TEST_CASE("sampling is deterministic and matches the law") {
  const auto d = BaseDistribution::gamma(2.0, 1.5);
  const auto a = d.sample(1000, 99);
  const auto b = d.sample(1000, 99);
  REQUIRE(a.size() == 1000);
  CHECK(a == b);
  const auto c = d.sample(1000, 100);
  CHECK(a != c);

  // Moment sanity at Monte Carlo resolution.
  double mean = 0.0;
  for (double v : a) mean += v;
  mean /= 1000.0;
  CHECK(mean == doctest::Approx(2.0 / 1.5).epsilon(0.15));
}

TEST_CASE("location scale structure is exposed") {
  const auto n = BaseDistribution::normal(2.0, 3.0);
  CHECK(n.is_location_scale());
  CHECK(n.location() == 2.0);
  CHECK(n.scale() == 3.0);
  const auto e = BaseDistribution::exponential(2.0);
  CHECK(!e.is_location_scale());
  CHECK(e.is_nonneg_scale());
  CHECK(e.location() == 0.0);
  CHECK(e.scale() == doctest::Approx(0.5));
}

TEST_CASE("normal log likelihood reference") {
  const auto d = BaseDistribution::normal(0.0, 1.0);
  const double ll = d.log_pdf(-1.0) + d.log_pdf(0.0) + d.log_pdf(1.0);
  CHECK(ll == doctest::Approx(-3.75681559961401823).epsilon(1e-14));
}

TEST_CASE("param vector lookup and validation") {
  const ParamVector p{{"a", 1.0, Constraint::free},
                      {"b", 2.0, Constraint::positive}};
  CHECK(p.has("a"));
  CHECK(!p.has("c"));
  CHECK(p.value("b") == 2.0);
  CHECK_THROWS_AS(p.value("zzz"), std::out_of_range);
  ParamVector bad{{"b", -2.0, Constraint::positive}};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
