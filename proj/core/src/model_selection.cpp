#include "lwdist/model_selection.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace lwdist {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_double(double v, bool full_precision) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  char buf[64];
  if (full_precision) {
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
  }
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

// 1-based ranks ascending by (key, n_params, model_id).
void assign_ranks(std::vector<ComparisonRow>& rows, double ComparisonRow::*key,
                  std::size_t ComparisonRow::*rank) {
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const ComparisonRow& ra = rows[a];
    const ComparisonRow& rb = rows[b];
    if (ra.*key != rb.*key) return ra.*key < rb.*key;
    if (ra.n_params != rb.n_params) return ra.n_params < rb.n_params;
    return ra.model_id < rb.model_id;
  });
  for (std::size_t i = 0; i < order.size(); ++i) {
    rows[order[i]].*rank = i + 1;
  }
}

}  // namespace

double aic(double loglik, std::size_t k) {
  return 2.0 * static_cast<double>(k) - 2.0 * loglik;
}

double bic(double loglik, std::size_t k, std::size_t n) {
  return static_cast<double>(k) * std::log(static_cast<double>(n)) -
         2.0 * loglik;
}

LogShiftResult log_shift(const std::vector<double>& data) {
  if (data.empty()) throw std::invalid_argument("log_shift: empty data");
  for (double y : data) {
    if (!(y > 0.0) || !std::isfinite(y)) {
      throw std::invalid_argument("log_shift: values must be positive");
    }
  }
  LogShiftResult r;
  r.values.reserve(data.size());
  double min_log = kInf;
  for (double y : data) {
    r.values.push_back(std::log(y));
    min_log = std::min(min_log, r.values.back());
  }
  for (double& v : r.values) v = v - min_log + 1e-10;
  r.shift = min_log - 1e-10;
  return r;
}

ComparisonTable compare(const std::string& dataset_id,
                        const std::vector<double>& data,
                        const std::vector<std::string>& ids) {
  if (data.empty()) throw std::invalid_argument("compare: empty data");
  if (ids.empty()) throw std::invalid_argument("compare: empty model list");
  for (const std::string& id : ids) {
    if (!is_known_model(id)) {
      throw std::invalid_argument("compare: unknown model id: " + id);
    }
  }
  // Canonical registry order, duplicates collapsed.
  std::vector<std::string> selected;
  for (const std::string& id : model_ids()) {
    if (std::find(ids.begin(), ids.end(), id) != ids.end()) {
      selected.push_back(id);
    }
  }

  ComparisonTable table;
  table.dataset_id = dataset_id;
  table.n_obs = data.size();
  for (const std::string& id : selected) {
    ComparisonRow row;
    row.model_id = id;
    row.n_params = model_n_params(id);
    try {
      const FitResult fit = mle_fit(id, data);
      row.loglik = fit.loglik;
      row.converged = fit.converged;
      row.params = fit.params;
    } catch (const std::exception&) {
      row.loglik = -kInf;
      row.converged = false;
    }
    row.aic = aic(row.loglik, row.n_params);
    row.bic = bic(row.loglik, row.n_params, table.n_obs);
    table.rows.push_back(std::move(row));
  }
  assign_ranks(table.rows, &ComparisonRow::aic, &ComparisonRow::rank_aic);
  assign_ranks(table.rows, &ComparisonRow::bic, &ComparisonRow::rank_bic);
  return table;
}

std::string to_delimited(const ComparisonTable& table, char delim,
                         bool full_precision) {
  std::string out;
  const char d = delim;
  const auto add = [&](const std::string& cell, bool last = false) {
    out += cell;
    out += last ? '\n' : d;
  };
  add("dataset");
  add("model");
  add("npar");
  add("loglik");
  add("aic");
  add("bic");
  add("rank_aic");
  add("rank_bic");
  add("converged", true);
  for (const ComparisonRow& r : table.rows) {
    add(table.dataset_id);
    add(r.model_id);
    add(std::to_string(r.n_params));
    add(format_double(r.loglik, full_precision));
    add(format_double(r.aic, full_precision));
    add(format_double(r.bic, full_precision));
    add(std::to_string(r.rank_aic));
    add(std::to_string(r.rank_bic));
    add(r.converged ? "true" : "false", true);
  }
  return out;
}

}  // namespace lwdist
