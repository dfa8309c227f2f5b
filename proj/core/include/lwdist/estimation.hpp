#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lwdist/distributions.hpp"

// Loss-data fitting: sample moments, method-of-moments starting values for
// the Lambert models, pole-guarded log-likelihood, and derivative-free MLE
// over a fixed registry of model ids.

namespace lwdist {

struct SampleStats {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;        // unbiased, n - 1 denominator
  double skewness_coeff = 0.0;  // m3 / m2^{3/2}, biased central moments
  double min = 0.0;
  double max = 0.0;
};

// Requires n >= 3 finite values with nonzero variance; throws
// std::invalid_argument otherwise.
SampleStats sample_stats(const std::vector<double>& data);

// Moment-matched starting values. Both solve "model skewness(gamma) = sample
// skewness" numerically, then recover the remaining parameters in closed form.
// wnormal searches gamma in [-6, 6] (the map is monotone there); wexp is
// restricted to (-1, 1/3) and, the map being non-monotone, takes the root
// closest to 0 when more than one exists. Throws std::domain_error when the
// sample skewness is unattainable on the search range.
ParamVector mom_start_wnormal(const SampleStats& s);
ParamVector mom_start_wexp(const SampleStats& s);

struct LogLikResult {
  double value = 0.0;
  // Observations at or outside the support boundary; each contributes -inf
  // to value rather than being dropped.
  std::size_t n_violations = 0;
};

// Model registry, canonical order: wexp, wnormal, exponential, gamma,
// lognormal, logistic, normal, weibull, cauchy, pareto.
const std::vector<std::string>& model_ids();
bool is_known_model(const std::string& model_id);
std::size_t model_n_params(const std::string& model_id);
// Support of the fitted law at the given parameter values.
Interval model_support(const std::string& model_id, const ParamVector& params);
// Parameter order and names expected by log_likelihood / mle_fit, with
// placeholder values.
ParamVector model_param_shape(const std::string& model_id);
// Starting values from sample moments. Lambert models defer to the
// mom_start_* operations with a deterministic fallback when the skewness
// equation has no root in range; baselines moment-match per family.
ParamVector default_start(const std::string& model_id, const SampleStats& s);

// Generic evaluation for any registry model at explicit parameter values;
// the CLI builds its curve and sample outputs from these.
double model_pdf(const std::string& model_id, const ParamVector& params,
                 double y);
double model_cdf(const std::string& model_id, const ParamVector& params,
                 double y);
std::vector<double> model_sample(const std::string& model_id,
                                 const ParamVector& params, std::size_t n,
                                 std::uint64_t seed);

// Sum of log pdf over data. Throws std::invalid_argument for unknown model
// ids or malformed parameter vectors.
LogLikResult log_likelihood(const std::string& model_id,
                            const ParamVector& params,
                            const std::vector<double>& data);

struct FitResult {
  std::string model_id;
  ParamVector params;
  double loglik = 0.0;
  std::size_t n_params = 0;
  std::size_t n_obs = 0;
  bool converged = false;
  ParamVector start_params;
  std::size_t iterations = 0;
};

// Maximum likelihood via Nelder-Mead on a log-reparameterized space
// (positivity-constrained parameters move on log scale). Starting point
// defaults to default_start(model_id, stats). Non-convergence is flagged in
// the result, not thrown; an infeasible explicit start (data outside the
// support closure at the start) throws std::invalid_argument.
FitResult mle_fit(const std::string& model_id, const std::vector<double>& data,
                  const std::optional<ParamVector>& start = std::nullopt);

}  // namespace lwdist
