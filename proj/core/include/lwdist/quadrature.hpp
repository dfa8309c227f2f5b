#pragma once

#include <cstddef>
#include <functional>

// Adaptive Gauss-Kronrod 7-15 quadrature with two extensions needed by the
// density checks: half-infinite tails via doubling panels, and integrable
// inverse-square-root endpoint singularities via geometric epsilon-shrinking
// with Richardson extrapolation (shrink factor 4 halves the truncated tail of
// a C/sqrt(d) pole, so R = 2 T_{k+1} - T_k cancels the leading term).

namespace lwdist {

struct QuadOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_depth = 48;            // adaptive bisection depth per panel
  int max_tail_panels = 80;      // doubling panels toward an infinite end
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t n_evals = 0;
  bool converged = false;
};

using Integrand = std::function<double(double)>;

// Finite interval [a, b].
QuadResult integrate(const Integrand& f, double a, double b,
                     const QuadOptions& opts = {});

// [a, inf): panels [a, a+L], [a+L, a+2L], ... with doubling width, stopping
// when consecutive panel contributions are negligible against the total.
QuadResult integrate_to_inf(const Integrand& f, double a,
                            const QuadOptions& opts = {});

// (-inf, b], by reflection.
QuadResult integrate_from_minus_inf(const Integrand& f, double b,
                                    const QuadOptions& opts = {});

// [a, b] where f has an integrable pole at one endpoint (pole_at == a or b).
// Integrates [pole+eps_k, b] (or mirrored) with eps_k = eps_0 / 4^k and
// extrapolates R_k = 2 T_{k+1} - T_k until the extrapolants settle.
QuadResult integrate_with_endpoint_pole(const Integrand& f, double a, double b,
                                        double pole_at,
                                        const QuadOptions& opts = {});

}  // namespace lwdist
