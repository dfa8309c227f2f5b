#include "lwdist/wfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lwdist {
namespace {

constexpr double kInvE = 0.36787944117144232159552377016146;
constexpr double kBranchSnap = 1e-15;   // |x + 1/e| below this returns -1 exactly
constexpr int kMaxIter = 50;

// Series around the branch point in p = +-sqrt(2 (1 + e x)); p > 0 selects the
// principal branch, p < 0 the non-principal one.
double branch_point_series(double p) {
  return -1.0 +
         p * (1.0 +
              p * (-1.0 / 3.0 +
                   p * (11.0 / 72.0 +
                        p * (-43.0 / 540.0 +
                             p * (769.0 / 17280.0 + p * (-221.0 / 8505.0))))));
}

double guess_w0(double x) {
  if (x < -0.30) {
    return branch_point_series(std::sqrt(2.0 * (1.0 + M_E * x)));
  }
  if (x <= 10.0) {
    // Winitzki-style approximation, good to a few percent on this range.
    const double l = std::log1p(x);
    return l * (1.0 - std::log1p(l) / (2.0 + l));
  }
  const double l1 = std::log(x);
  const double l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

double guess_wm1(double x) {
  if (x <= -0.25) {
    return branch_point_series(-std::sqrt(2.0 * (1.0 + M_E * x)));
  }
  const double l1 = std::log(-x);
  const double l2 = std::log(-l1);
  return l1 - l2 + l2 / l1;
}

// Bracket-safeguarded Halley iteration on f(w) = w e^w - x, restricted to one
// branch (w >= -1 or w <= -1). The residual target aims two orders below the
// contract so the reported residual has slack.
WEval halley(double x, double w, Branch branch) {
  const bool principal = (branch == Branch::principal);
  double lo = 0.0, hi = 0.0;
  bool has_lo = false, has_hi = false;
  if (principal) {
    lo = -1.0;
    has_lo = true;  // f(-1) = -1/e - x <= 0 on the branch domain
  } else {
    hi = -1.0;
    has_hi = true;
  }

  const double f_target = 1e-14 * std::abs(x);
  const double eps = std::numeric_limits<double>::epsilon();
  double f = 0.0;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    const double ew = std::exp(w);
    f = w * ew - x;
    if (std::abs(f) <= f_target) break;

    // f is increasing in w on the principal branch, decreasing on the other;
    // keep a sign-change bracket either way.
    const bool below = principal ? (f < 0.0) : (f > 0.0);
    if (below) {
      lo = w;
      has_lo = true;
    } else {
      hi = w;
      has_hi = true;
    }

    const double fp = ew * (1.0 + w);
    const double step = f / (fp - f * (w + 2.0) / (2.0 * (w + 1.0)));
    double next = w - step;
    const bool inside = std::isfinite(next) &&
                        (!has_lo || next > lo) && (!has_hi || next < hi) &&
                        (principal ? next > -1.0 : next < -1.0);
    if (!inside) {
      if (has_lo && has_hi) {
        next = 0.5 * (lo + hi);
      } else if (has_lo) {
        next = lo + std::max(1.0, std::abs(lo));
      } else {
        next = hi - std::max(1.0, std::abs(hi));
      }
    }
    if (std::abs(next - w) <= 4.0 * eps * std::abs(w)) {
      w = next;
      f = w * std::exp(w) - x;
      break;
    }
    w = next;
  }

  const double residual = std::abs(f);
  if (residual > 1e-12 * std::max(1.0, std::abs(x))) {
    throw std::runtime_error("lambert_w: iteration did not converge");
  }
  return WEval{w, branch, residual};
}

// For x very close to 0-, W-1 is large and negative and w e^w underflows badly
// in intermediate steps; iterate on the logarithmic form
// g(w) = w + ln(-w) - ln(-x) instead (Newton, well conditioned away from -1).
WEval wm1_log_form(double x) {
  const double lx = std::log(-x);
  double w = guess_wm1(x);
  for (int iter = 0; iter < kMaxIter; ++iter) {
    const double g = w + std::log(-w) - lx;
    const double step = g * w / (w + 1.0);
    const double next = w - step;
    if (std::abs(next - w) <=
        4.0 * std::numeric_limits<double>::epsilon() * std::abs(w)) {
      w = next;
      break;
    }
    w = next;
  }
  const double residual = std::abs(w * std::exp(w) - x);
  if (residual > 1e-12 * std::max(1.0, std::abs(x))) {
    throw std::runtime_error("lambert_w: iteration did not converge");
  }
  return WEval{w, Branch::non_principal, residual};
}

}  // namespace

WEval lambert_w0(double x) {
  if (std::isnan(x)) throw std::domain_error("lambert_w0: nan argument");
  if (x < -kInvE) {
    if (x + kInvE >= -kBranchSnap) {
      return WEval{-1.0, Branch::principal, std::abs(-kInvE - x)};
    }
    throw std::domain_error("lambert_w0: argument below -1/e");
  }
  if (x == 0.0) return WEval{0.0, Branch::principal, 0.0};
  if (std::isinf(x)) {
    return WEval{std::numeric_limits<double>::infinity(), Branch::principal,
                 0.0};
  }
  if (std::abs(x + kInvE) <= kBranchSnap) {
    return WEval{-1.0, Branch::principal, std::abs(-kInvE - x)};
  }
  const double d = 1.0 + M_E * x;
  if (d < 5e-9) {
    // So close to the branch point that the series is already exact to double
    // precision (error ~ p^7 < 1e-28) and Halley would divide by ~0.
    const double w = branch_point_series(std::sqrt(2.0 * d));
    return WEval{w, Branch::principal, std::abs(w * std::exp(w) - x)};
  }
  return halley(x, guess_w0(x), Branch::principal);
}

WEval lambert_wm1(double x) {
  if (std::isnan(x)) throw std::domain_error("lambert_wm1: nan argument");
  if (x >= 0.0) throw std::domain_error("lambert_wm1: argument must be < 0");
  if (x < -kInvE) {
    if (x + kInvE >= -kBranchSnap) {
      return WEval{-1.0, Branch::non_principal, std::abs(-kInvE - x)};
    }
    throw std::domain_error("lambert_wm1: argument below -1/e");
  }
  if (std::abs(x + kInvE) <= kBranchSnap) {
    return WEval{-1.0, Branch::non_principal, std::abs(-kInvE - x)};
  }
  const double d = 1.0 + M_E * x;
  if (d < 5e-9) {
    const double w = branch_point_series(-std::sqrt(2.0 * d));
    return WEval{w, Branch::non_principal, std::abs(w * std::exp(w) - x)};
  }
  if (x > -1e-5) return wm1_log_form(x);
  return halley(x, guess_wm1(x), Branch::non_principal);
}

double lambert_w_deriv(Branch branch, double gamma, double z) {
  const double arg = gamma * z;
  const WEval w =
      branch == Branch::principal ? lambert_w0(arg) : lambert_wm1(arg);
  const double s = 1.0 + w.value;
  if (std::abs(s) < 1e-12) {
    throw std::range_error("lambert_w_deriv: derivative pole at the branch point");
  }
  return std::exp(-w.value) * gamma / s;
}

}  // namespace lwdist
