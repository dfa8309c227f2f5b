#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "lwdist/lambert_normal.hpp"

using lwdist::asymptote_location;
using lwdist::branch_density_f0;
using lwdist::branch_density_fm1;
using lwdist::extrema_locations;
using lwdist::LambertLocationScale;
using lwdist::shape_regime;
using lwdist::ShapeRegime;
using lwdist::WNormalParams;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("moments match closed forms") {
  const WNormalParams p{13.444, 28.829, 0.789};
  CHECK(lwdist::mean(p) == doctest::Approx(44.4956940858).epsilon(1e-10));
  CHECK(lwdist::variance(p) == doctest::Approx(9109.97693541).epsilon(1e-10));

  const WNormalParams q{0.0, 1.0, 0.2};
  CHECK(lwdist::mean(q) == doctest::Approx(0.204040268005).epsilon(1e-10));
  CHECK(lwdist::variance(q) == doctest::Approx(1.21498056754).epsilon(1e-10));

  const WNormalParams base{1.5, 2.5, 0.0};
  CHECK(lwdist::mean(base) == 1.5);
  CHECK(lwdist::variance(base) == doctest::Approx(6.25));
  CHECK(lwdist::skewness(base) == 0.0);
}

TEST_CASE("skewness coefficient matches frozen references") {
  using lwdist::wnormal_skewness_coefficient;
  CHECK(wnormal_skewness_coefficient(0.2) ==
        doctest::Approx(1.24055249033).epsilon(1e-10));
  CHECK(wnormal_skewness_coefficient(0.5) ==
        doctest::Approx(3.70312060529).epsilon(1e-10));
  CHECK(wnormal_skewness_coefficient(-0.5) ==
        doctest::Approx(-3.70312060529).epsilon(1e-10));
  CHECK(wnormal_skewness_coefficient(0.789) ==
        doctest::Approx(8.22918336072).epsilon(1e-10));
  CHECK(wnormal_skewness_coefficient(std::sqrt(2.0) - 1.0) ==
        doctest::Approx(2.86819557166).epsilon(1e-10));
  // Large gamma runs through the log-scaled evaluation.
  CHECK(wnormal_skewness_coefficient(3.0) ==
        doctest::Approx(2450271.83415).epsilon(1e-8));
  CHECK(wnormal_skewness_coefficient(-3.0) ==
        doctest::Approx(-2450271.83415).epsilon(1e-8));
  CHECK(wnormal_skewness_coefficient(0.0) == 0.0);
  // Odd function, spot checked.
  CHECK(wnormal_skewness_coefficient(-0.2) ==
        doctest::Approx(-wnormal_skewness_coefficient(0.2)).epsilon(1e-13));
}

TEST_CASE("skewness is monotone increasing in gamma near zero") {
  using lwdist::wnormal_skewness_coefficient;
  double prev = -kInf;
  for (double g = -1.0; g <= 1.0; g += 0.05) {
    const double s = wnormal_skewness_coefficient(g);
    CHECK(s > prev);
    prev = s;
  }
}

TEST_CASE("pdf agrees with branch components") {
  // In the two-branch region the density is (f0 - fm1) / sigma.
  const WNormalParams p{0.0, 1.0, 0.5};
  for (double z : {-0.6, -0.69, -0.3, -0.1}) {
    const double direct = lwdist::pdf(p, z);
    const double assembled =
        branch_density_f0(z, 0.5) - branch_density_fm1(z, 0.5);
    CHECK(direct == doctest::Approx(assembled).epsilon(1e-13));
  }
  // Frozen anchors for both components.
  CHECK(branch_density_f0(-0.05, 0.5) ==
        doctest::Approx(0.4195298582).epsilon(1e-9));
  CHECK(branch_density_fm1(-0.05, 0.5) ==
        doctest::Approx(-1.77178486742e-24).epsilon(1e-9));
  CHECK(branch_density_fm1(-0.6, 0.5) ==
        doctest::Approx(-0.0053152459).epsilon(1e-7));
}

TEST_CASE("pdf matches frozen two branch values") {
  const WNormalParams p{0.0, 1.0, 0.5};
  CHECK(lwdist::pdf(p, -0.6) == doctest::Approx(0.79478619).epsilon(1e-7));
  CHECK(lwdist::pdf(p, -0.7) == doctest::Approx(1.1471824).epsilon(1e-7));
}

TEST_CASE("negative gamma mirrors positive gamma") {
  const WNormalParams p{0.0, 1.0, -0.3};
  CHECK(lwdist::cdf(p, 0.5) == doctest::Approx(0.7251815219).epsilon(1e-9));
  CHECK(lwdist::cdf(p, 1.2) == doctest::Approx(0.9964175064).epsilon(1e-9));
  CHECK(lwdist::cdf(p, -1.0) == doctest::Approx(0.2150021281).epsilon(1e-9));
  CHECK(lwdist::pdf(p, 0.5) ==
        doctest::Approx(0.486460042780175).epsilon(1e-11));

  // Mirror identity against the positive-gamma law.
  const WNormalParams q{0.0, 1.0, 0.3};
  for (double y : {-1.0, -0.2, 0.4, 1.1}) {
    CHECK(lwdist::pdf(p, y) == doctest::Approx(lwdist::pdf(q, -y)).epsilon(1e-12));
    CHECK(lwdist::cdf(p, y) ==
          doctest::Approx(1.0 - lwdist::cdf(q, -y)).epsilon(1e-12));
  }
}

TEST_CASE("cdf anchors at the location, bound and tails") {
  const WNormalParams p{2.0, 1.5, 0.6};
  // y = mu maps to u = 0: exactly the base median.
  CHECK(lwdist::cdf(p, 2.0) == doctest::Approx(0.5).epsilon(1e-12));
  const double b = asymptote_location(p);
  CHECK(lwdist::cdf(p, b) == 0.0);
  CHECK(lwdist::pdf(p, b) == kInf);
  CHECK(lwdist::pdf(p, b - 1e-9) == 0.0);
  CHECK(lwdist::cdf(p, 1e9) == doctest::Approx(1.0));
  CHECK(lwdist::support(p).lo == doctest::Approx(b).epsilon(1e-15));
}

TEST_CASE("density diverges approaching the bound from inside") {
  for (double gamma : {0.3, 1.0}) {
    const WNormalParams p{0.0, 1.0, gamma};
    const double b = asymptote_location(p);
    const double f8 = lwdist::pdf(p, b + 1e-8);
    const double f6 = lwdist::pdf(p, b + 1e-6);
    const double f4 = lwdist::pdf(p, b + 1e-4);
    CHECK(f8 > f6);
    CHECK(f6 > f4);
    CHECK(std::isfinite(f8));
  }
  // Frozen divergence magnitudes: the pole grows like 1/sqrt(y - b).
  CHECK(lwdist::pdf(WNormalParams{0.0, 1.0, 0.3}, asymptote_location({0.0, 1.0, 0.3}) + 1e-8) ==
        doctest::Approx(65.65455741).epsilon(1e-4));
  CHECK(lwdist::pdf(WNormalParams{0.0, 1.0, 1.0}, asymptote_location({0.0, 1.0, 1.0}) + 1e-8) ==
        doctest::Approx(5641.895669).epsilon(1e-4));
  CHECK(lwdist::pdf(WNormalParams{0.0, 1.0, 0.3}, asymptote_location({0.0, 1.0, 0.3}) + 1e-6) ==
        doctest::Approx(6.565938299).epsilon(1e-5));
  CHECK(lwdist::pdf(WNormalParams{0.0, 1.0, 1.0}, asymptote_location({0.0, 1.0, 1.0}) + 1e-6) ==
        doctest::Approx(564.1879221).epsilon(1e-5));
}

TEST_CASE("log pdf stays finite where pdf underflows") {
  const WNormalParams p{0.0, 1.0, 0.2};
  // Far right tail: density underflows but the log form is informative.
  const double lp = lwdist::log_pdf(p, 500.0);
  CHECK(std::isfinite(lp));
  CHECK(lp < -100.0);
  // Two-branch region agreement with log of the direct density.
  for (double y : {-0.5, -1.0, -1.5}) {
    CHECK(lwdist::log_pdf(p, y) ==
          doctest::Approx(std::log(lwdist::pdf(p, y))).epsilon(1e-10));
  }
}

TEST_CASE("shape regimes split at sqrt2 boundaries") {
  const double lo = std::sqrt(2.0) - 1.0;
  const double hi = std::sqrt(2.0) + 1.0;
  CHECK(shape_regime(0.2) == ShapeRegime::two_extrema_principal);
  CHECK(shape_regime(-0.2) == ShapeRegime::two_extrema_principal);
  CHECK(shape_regime(lo) == ShapeRegime::monotone_decreasing);
  CHECK(shape_regime(1.0) == ShapeRegime::monotone_decreasing);
  CHECK(shape_regime(hi) == ShapeRegime::monotone_decreasing);
  CHECK(shape_regime(2.45) == ShapeRegime::two_extrema_non_principal);
  CHECK(shape_regime(-3.0) == ShapeRegime::two_extrema_non_principal);
  CHECK_THROWS_AS(shape_regime(0.0), std::invalid_argument);
}

TEST_CASE("extrema locations match frozen roots") {
  auto check_pair = [](double gamma, double z0, double z1) {
    const auto zs = extrema_locations(gamma);
    REQUIRE(zs.size() == 2);
    CHECK(zs[0] == doctest::Approx(z0).epsilon(1e-10));
    CHECK(zs[1] == doctest::Approx(z1).epsilon(1e-10));
  };
  check_pair(0.2, -1.8375929192401226, -0.38469312572769376);
  check_pair(0.4, -0.8719748591293434, -0.7190257324520057);
  check_pair(3.0, -0.07452360716533556, -0.0012184039793393818);
  check_pair(2.45, -0.06106492206659173, -0.029791411406588905);
  CHECK(extrema_locations(1.0).empty());
  CHECK(extrema_locations(std::sqrt(2.0) - 1.0).empty());
}

TEST_CASE("extrema are genuine stationary points of the density") {
  for (double gamma : {0.2, 0.4}) {
    const WNormalParams p{0.0, 1.0, gamma};
    for (double z : extrema_locations(gamma)) {
      const double h = 1e-6;
      const double d = (lwdist::pdf(p, z + h) - lwdist::pdf(p, z - h)) / (2.0 * h);
      // Scale against the local density to make the check dimensionless.
      CHECK(std::abs(d) <= 1e-3 * std::max(1.0, lwdist::pdf(p, z)));
    }
  }
}

TEST_CASE("quantile inverts cdf") {
  const WNormalParams p{13.444, 28.829, 0.789};
  for (double prob : {0.001, 0.1, 0.5, 0.9, 0.999}) {
    CHECK(std::abs(lwdist::cdf(p, lwdist::quantile(p, prob)) - prob) <= 1e-10);
  }
}

TEST_CASE("sampling matches the analytic cdf") {
  const WNormalParams p{1.0, 2.0, 0.4};
  const auto ys = lwdist::sample(p, 20000, 123);
  const auto ys2 = lwdist::sample(p, 20000, 123);
  CHECK(ys == ys2);
  for (double q : {0.25, 0.5, 0.75}) {
    const double yq = lwdist::quantile(p, q);
    std::size_t below = 0;
    for (double v : ys) below += v <= yq;
    CHECK(static_cast<double>(below) / ys.size() ==
          doctest::Approx(q).epsilon(0.03));
  }
}

TEST_CASE("direct forms agree with the generic transform") {
  const WNormalParams p{0.7, 1.3, -0.45};
  const LambertLocationScale t = as_transform(p);
  for (double y : {-2.0, 0.0, 0.7, 1.5, 2.0}) {
    CHECK(lwdist::pdf(p, y) == doctest::Approx(lwdist::pdf(t, y)).epsilon(1e-12));
    CHECK(lwdist::cdf(p, y) == doctest::Approx(lwdist::cdf(t, y)).epsilon(1e-12));
  }
}

TEST_CASE("invalid parameters throw") {
  CHECK_THROWS_AS(lwdist::pdf(WNormalParams{0.0, -1.0, 0.2}, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(lwdist::mean(WNormalParams{0.0, 1.0, std::nan("")}),
                  std::invalid_argument);
}
