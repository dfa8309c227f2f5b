#pragma once

// Real branches of the Lambert W function, the inverse of w -> w e^w.
//
// The principal branch W0 maps [-1/e, inf) onto [-1, inf); the non-principal
// branch W-1 maps [-1/e, 0) onto (-inf, -1]. Both meet at the branch point
// x = -1/e where W = -1. For x -> 0- the non-principal branch behaves like
// ln(-x), and for x -> inf the principal branch behaves like ln(x); the
// ratios W-1(x)/ln(-x) and W0(x)/ln(x) tend to 1 even though the differences
// |W - ln| grow without bound (they are ~ -ln|ln x|).

namespace lwdist {

enum class Branch { principal, non_principal };

struct WEval {
  double value = 0.0;
  Branch branch = Branch::principal;
  double residual = 0.0;  // |value * exp(value) - x| at the returned point
};

// Principal branch W0(x) for x >= -1/e.
// Throws std::domain_error for x < -1/e (beyond rounding slack at the branch
// point) and std::runtime_error if the iteration fails to meet the residual
// contract |w e^w - x| <= 1e-12 * max(1, |x|) within 50 iterations.
WEval lambert_w0(double x);

// Non-principal branch W-1(x) for -1/e <= x < 0. Same error contract.
WEval lambert_wm1(double x);

// d/dz W(gamma z) = gamma exp(-W(gamma z)) / (1 + W(gamma z)).
// Throws std::domain_error when gamma*z is outside the branch domain and
// std::range_error when 1 + W(gamma z) vanishes (the branch point, where the
// derivative has a pole).
double lambert_w_deriv(Branch branch, double gamma, double z);

}  // namespace lwdist
