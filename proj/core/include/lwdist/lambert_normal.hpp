#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lwdist/transform.hpp"

// Lambert W x Normal(mu, sigma): Y = { U exp(gamma U) } sigma + mu with
// U standard normal. Direct density/cdf expressions (fast, allocation-free)
// that agree with the generic transform machinery to floating accuracy; the
// closed-form moments; and the density shape classification.

namespace lwdist {

struct WNormalParams {
  double mu = 0.0;
  double sigma = 1.0;
  double gamma = 0.0;
};

// Shape of the standardized density, classified by |gamma| against
// sqrt(2) -+ 1; the boundary values themselves fall in the monotone class.
enum class ShapeRegime {
  two_extrema_principal,      // |gamma| < sqrt(2) - 1
  monotone_decreasing,        // sqrt(2) - 1 <= |gamma| <= sqrt(2) + 1
  two_extrema_non_principal,  // |gamma| > sqrt(2) + 1
};

// Branch components of the standardized density (mu = 0, sigma = 1):
//   f_k(z) = phi(W_k(gamma z) / gamma) exp(-W_k(gamma z)) / (1 + W_k(gamma z))
// f0 is the principal-branch term (positive); fm1 the non-principal one
// (negative; it is subtracted, so both crossings add probability). fm1 needs
// gamma*z in [-1/e, 0); f0 needs gamma*z >= -1/e. At gamma*z = -1/e they
// return +inf / -inf.
double branch_density_f0(double z, double gamma);
double branch_density_fm1(double z, double gamma);

Interval support(const WNormalParams& p);
double pdf(const WNormalParams& p, double y);
double cdf(const WNormalParams& p, double y);
double log_pdf(const WNormalParams& p, double y);
double quantile(const WNormalParams& p, double prob);
std::vector<double> sample(const WNormalParams& p, std::size_t n,
                           std::uint64_t seed);

double mean(const WNormalParams& p);
double variance(const WNormalParams& p);
double skewness(const WNormalParams& p);
// Skewness depends on gamma alone; |gamma| > 2 switches to log-scaled
// intermediates so the exp(3 gamma^2) growth cannot overflow prematurely.
double wnormal_skewness_coefficient(double gamma);

// Classification and stationary points require gamma != 0 (gamma = 0 is the
// plain normal); both throw std::invalid_argument otherwise.
ShapeRegime shape_regime(double gamma);
// Standardized z locations of the two stationary points, ascending; empty in
// the monotone regime.
std::vector<double> extrema_locations(double gamma);
double asymptote_location(const WNormalParams& p);  // mu - sigma/(gamma e)

LambertLocationScale as_transform(const WNormalParams& p);

}  // namespace lwdist
