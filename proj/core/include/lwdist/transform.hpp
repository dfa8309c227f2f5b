#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lwdist/distributions.hpp"
#include "lwdist/wfun.hpp"

// Heavy-tail Lambert W transforms of a base law X.
//
// Location-scale form:  Y = { U exp(gamma U) } sigma + mu,  U = (X - mu)/sigma
// Scale form:           Y = X exp(gamma X / sigma),         X >= 0
//
// gamma > 0 fattens the right tail, gamma < 0 the left (a finite bound
// appears on the opposite side at mu - sigma/(gamma e), resp. -sigma/(gamma e),
// where the density has an integrable inverse-square-root pole). gamma = 0 is
// the identity. Inverting y -> u needs both real branches of Lambert W on the
// inner region, which is where the two-branch cdf/pdf expressions below come
// from.

namespace lwdist {

struct LambertLocationScale {
  // base must satisfy is_location_scale(); gamma must be finite.
  LambertLocationScale(BaseDistribution base_in, double gamma_in);
  BaseDistribution base;
  double gamma;
};

struct LambertScale {
  // base must satisfy is_nonneg_scale(); gamma must be finite.
  LambertScale(BaseDistribution base_in, double gamma_in);
  BaseDistribution base;
  double gamma;
};

// u exp(gamma u); throws std::overflow_error when gamma*u > 700 (exp would
// overflow double range).
double lw_forward(double u, double gamma);

// Forward transform in original units: {(x-mu)/sigma e^{gamma (x-mu)/sigma}} sigma + mu.
double lw_forward_ls(double x, double mu, double sigma, double gamma);

Interval support(const LambertLocationScale& m);
Interval support(const LambertScale& m);

double cdf(const LambertLocationScale& m, double y);
double cdf(const LambertScale& m, double y);

// Densities return +inf exactly at the finite support bound (the pole) and 0
// outside the support.
double pdf(const LambertLocationScale& m, double y);
double pdf(const LambertScale& m, double y);

double log_pdf(const LambertLocationScale& m, double y);
double log_pdf(const LambertScale& m, double y);

// Numeric inverse cdf: bisection to a tight bracket plus a Newton polish;
// |cdf(quantile(p)) - p| <= 1e-10 on the open unit interval.
double quantile(const LambertLocationScale& m, double p);
double quantile(const LambertScale& m, double p);

// Transform samples of the base law drawn with the given seed.
std::vector<double> sample(const LambertLocationScale& m, std::size_t n,
                           std::uint64_t seed);
std::vector<double> sample(const LambertScale& m, std::size_t n,
                           std::uint64_t seed);

}  // namespace lwdist
