#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lwdist/estimation.hpp"

// Information criteria, the log-shift preprocessing for heavy-tailed loss
// data, and ranked model comparison tables.

namespace lwdist {

double aic(double loglik, std::size_t k);
double bic(double loglik, std::size_t k, std::size_t n);

struct LogShiftResult {
  std::vector<double> values;
  // Subtracted constant c = min(ln y) - 1e-10; invert with exp(v + c). The
  // smallest transformed value is exactly 1e-10.
  double shift = 0.0;
};

// ln(y_i) - min_j ln(y_j) + 1e-10; throws std::invalid_argument on
// nonpositive input.
LogShiftResult log_shift(const std::vector<double>& data);

struct ComparisonRow {
  std::string model_id;
  std::size_t n_params = 0;
  double loglik = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  std::size_t rank_aic = 0;  // 1-based
  std::size_t rank_bic = 0;
  bool converged = false;
  ParamVector params;  // fitted values; empty when the fit failed outright
};

struct ComparisonTable {
  std::string dataset_id;
  std::size_t n_obs = 0;
  std::vector<ComparisonRow> rows;
};

// Fits every requested model and ranks by ascending AIC and BIC; ties break
// by fewer parameters, then model_id. Failed fits stay in the table with
// converged = false and +inf criteria. Rows follow the canonical registry
// order regardless of the order ids are given in. Throws
// std::invalid_argument for empty data, an empty or unknown model list.
ComparisonTable compare(const std::string& dataset_id,
                        const std::vector<double>& data,
                        const std::vector<std::string>& ids);

// Header "dataset,model,npar,loglik,aic,bic,rank_aic,rank_bic,converged" with
// the given delimiter. Floats use 2 decimals by default, shortest round-trip
// form when full_precision is set.
std::string to_delimited(const ComparisonTable& table, char delim,
                         bool full_precision = false);

}  // namespace lwdist
