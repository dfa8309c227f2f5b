#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace lwdist {

struct NmOptions {
  double f_tol = 1e-8;       // spread of simplex function values
  double x_tol = 1e-8;       // max vertex distance from the best vertex
  std::size_t max_iter = 2000;
  double initial_step = 0.1;  // per-coordinate displacement for the simplex
};

struct NmResult {
  std::vector<double> x;
  double f = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

// Downhill simplex minimizer. The objective may return +inf to mark
// infeasible points; the simplex contracts away from them.
NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                     std::vector<double> start, const NmOptions& opts = {});

}  // namespace lwdist
