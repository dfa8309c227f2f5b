#include "lwdist/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace lwdist {
namespace {

constexpr double kAlpha = 1.0;  // reflection
constexpr double kBeta = 2.0;   // expansion
constexpr double kGammaC = 0.5; // contraction
constexpr double kDelta = 0.5;  // shrink

}  // namespace

NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                     std::vector<double> start, const NmOptions& opts) {
  const std::size_t n = start.size();
  if (n == 0) throw std::invalid_argument("nelder_mead: empty start point");

  std::vector<std::vector<double>> verts(n + 1, start);
  for (std::size_t i = 0; i < n; ++i) {
    double& c = verts[i + 1][i];
    const double step = opts.initial_step * std::max(1.0, std::abs(c));
    c += step;
  }
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i <= n; ++i) fv[i] = f(verts[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);

  NmResult res;
  for (res.iterations = 0; res.iterations < opts.max_iter; ++res.iterations) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order[0];
    const std::size_t worst = order[n];
    const std::size_t second_worst = order[n - 1];

    double spread = 0.0;
    if (std::isfinite(fv[worst])) {
      spread = fv[worst] - fv[best];
    } else {
      spread = std::numeric_limits<double>::infinity();
    }
    double max_dist = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      double d = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        d = std::max(d, std::abs(verts[i][j] - verts[best][j]));
      }
      max_dist = std::max(max_dist, d);
    }
    // A non-finite incumbent would inflate the tolerance to +inf and fake
    // convergence; hold the scale at 1 so such a simplex never converges.
    const double f_scale =
        std::isfinite(fv[best]) ? std::max(1.0, std::abs(fv[best])) : 1.0;
    const double x_scale = 1.0;  // parameters are pre-scaled by the caller
    if (spread <= opts.f_tol * f_scale && max_dist <= opts.x_tol * x_scale) {
      res.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < n; ++j) centroid[j] += verts[i][j];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    for (std::size_t j = 0; j < n; ++j) {
      xr[j] = centroid[j] + kAlpha * (centroid[j] - verts[worst][j]);
    }
    const double fr = f(xr);

    if (fr < fv[order[0]]) {
      for (std::size_t j = 0; j < n; ++j) {
        xe[j] = centroid[j] + kBeta * (xr[j] - centroid[j]);
      }
      const double fe = f(xe);
      if (fe < fr) {
        verts[worst] = xe;
        fv[worst] = fe;
      } else {
        verts[worst] = xr;
        fv[worst] = fr;
      }
      continue;
    }
    if (fr < fv[second_worst]) {
      verts[worst] = xr;
      fv[worst] = fr;
      continue;
    }

    if (fr < fv[worst]) {
      // Outside contraction.
      for (std::size_t j = 0; j < n; ++j) {
        xc[j] = centroid[j] + kGammaC * (xr[j] - centroid[j]);
      }
      const double fc = f(xc);
      if (fc <= fr) {
        verts[worst] = xc;
        fv[worst] = fc;
        continue;
      }
    } else {
      // Inside contraction.
      for (std::size_t j = 0; j < n; ++j) {
        xc[j] = centroid[j] - kGammaC * (centroid[j] - verts[worst][j]);
      }
      const double fc = f(xc);
      if (fc < fv[worst]) {
        verts[worst] = xc;
        fv[worst] = fc;
        continue;
      }
    }

    // Shrink toward the best vertex.
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < n; ++j) {
        verts[i][j] = verts[best][j] + kDelta * (verts[i][j] - verts[best][j]);
      }
      fv[i] = f(verts[i]);
    }
  }

  const std::size_t best =
      static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) -
                               fv.begin());
  res.x = verts[best];
  res.f = fv[best];
  return res;
}

}  // namespace lwdist
