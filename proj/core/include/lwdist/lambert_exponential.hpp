#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lwdist/transform.hpp"

// Lambert W x Exponential(lambda): Y = X exp(gamma lambda X), X ~ Exp(lambda)
// (the scale form with sigma = 1/lambda). gamma > 0 thickens the right tail
// until the k-th moment blows up at gamma = 1/k; gamma < 0 folds the law onto
// the bounded interval (0, -1/(e gamma lambda)).

namespace lwdist {

struct WExpParams {
  double lambda = 1.0;
  double gamma = 0.0;
};

Interval support(const WExpParams& p);
double pdf(const WExpParams& p, double y);
double cdf(const WExpParams& p, double y);
double log_pdf(const WExpParams& p, double y);
double quantile(const WExpParams& p, double prob);
std::vector<double> sample(const WExpParams& p, std::size_t n,
                           std::uint64_t seed);

// E[Y^k] = k! / (lambda^k (1 - k gamma)^{k+1}) for k >= 1; throws
// std::domain_error when k*gamma >= 1 (the moment does not exist).
double kth_moment(const WExpParams& p, int k);

double mean(const WExpParams& p);      // first moment
double variance(const WExpParams& p);  // needs gamma < 1/2

// Standardized skewness; defined for gamma < 1/3, blowing up toward 1/3 and
// attaining its global minimum -9 sqrt(15)/50 at gamma = -1.
double wexp_skewness_coefficient(double gamma);
double skewness(const WExpParams& p);

// Finite right endpoint -1/(e gamma lambda) of the support; gamma < 0 only.
double upper_bound(const WExpParams& p);

LambertScale as_transform(const WExpParams& p);

}  // namespace lwdist
