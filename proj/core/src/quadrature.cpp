#include "lwdist/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace lwdist {
namespace {

// 15-point Kronrod abscissae/weights with the embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEval {
  double k15;
  double err;
};

PanelEval g7k15(const Integrand& f, double a, double b, std::size_t& n_evals) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resg = kWg[3] * fc;
  double resk = kWgk[7] * fc;
  double resabs = std::abs(resk);
  n_evals += 1;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    n_evals += 2;
    const double fsum = f1 + f2;
    if (i % 2 == 1) resg += kWg[i / 2] * fsum;
    resk += kWgk[i] * fsum;
    resabs += kWgk[i] * (std::abs(f1) + std::abs(f2));
  }
  const double diff = std::abs(resk - resg) * std::abs(h);
  double err = diff;
  if (resabs > 0.0) {
    const double scaled = 200.0 * diff / (resabs * std::abs(h));
    if (scaled < 1.0) err = resabs * std::abs(h) * std::pow(scaled, 1.5) / 200.0;
  }
  return PanelEval{resk * h, err};
}

void adapt(const Integrand& f, double a, double b, int depth,
           const QuadOptions& opts, double tol, QuadResult& out) {
  const PanelEval p = g7k15(f, a, b, out.n_evals);
  if (p.err <= tol || depth >= opts.max_depth ||
      !(std::isfinite(p.k15))) {
    out.value += p.k15;
    out.error_estimate += p.err;
    if (depth >= opts.max_depth && p.err > tol) out.converged = false;
    if (!std::isfinite(p.k15)) out.converged = false;
    return;
  }
  const double mid = 0.5 * (a + b);
  if (!(mid > a && mid < b)) {  // interval no longer splittable in doubles
    out.value += p.k15;
    out.error_estimate += p.err;
    return;
  }
  adapt(f, a, mid, depth + 1, opts, 0.5 * tol, out);
  adapt(f, mid, b, depth + 1, opts, 0.5 * tol, out);
}

}  // namespace

QuadResult integrate(const Integrand& f, double a, double b,
                     const QuadOptions& opts) {
  QuadResult out;
  out.converged = true;
  if (a == b) return out;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  // First pass estimates scale; reuse it for the relative tolerance target.
  const PanelEval coarse = g7k15(f, a, b, out.n_evals);
  const double tol =
      std::max(opts.abs_tol, opts.rel_tol * std::abs(coarse.k15));
  adapt(f, a, b, 0, opts, tol, out);
  out.value *= sign;
  return out;
}

QuadResult integrate_to_inf(const Integrand& f, double a,
                            const QuadOptions& opts) {
  QuadResult out;
  out.converged = true;
  double width = std::max(1.0, 0.5 * std::abs(a));
  double lo = a;
  int quiet = 0;
  for (int k = 0; k < opts.max_tail_panels; ++k) {
    const double hi = lo + width;
    const QuadResult piece = integrate(f, lo, hi, opts);
    out.value += piece.value;
    out.error_estimate += piece.error_estimate;
    out.n_evals += piece.n_evals;
    out.converged = out.converged && piece.converged;
    const double scale = std::max(std::abs(out.value), 1e-300);
    if (std::abs(piece.value) <= opts.abs_tol + 0.1 * opts.rel_tol * scale) {
      if (++quiet >= 2) return out;
    } else {
      quiet = 0;
    }
    lo = hi;
    width *= 2.0;
  }
  out.converged = false;  // tail never went quiet
  return out;
}

QuadResult integrate_from_minus_inf(const Integrand& f, double b,
                                    const QuadOptions& opts) {
  QuadResult r = integrate_to_inf([&f, b](double t) { return f(b - t); }, 0.0,
                                  opts);
  return r;
}

QuadResult integrate_with_endpoint_pole(const Integrand& f, double a, double b,
                                        double pole_at,
                                        const QuadOptions& opts) {
  if (a >= b) throw std::invalid_argument("integrate_with_endpoint_pole: a >= b");
  const bool pole_left = (pole_at == a);
  if (!pole_left && pole_at != b) {
    throw std::invalid_argument(
        "integrate_with_endpoint_pole: pole must sit at an endpoint");
  }
  QuadResult out;
  out.converged = true;

  double eps = 1e-3 * (b - a);
  auto shrunk = [&](double e) {
    return pole_left ? integrate(f, a + e, b, opts)
                     : integrate(f, a, b - e, opts);
  };

  QuadResult t_prev = shrunk(eps);
  out.n_evals += t_prev.n_evals;
  double r_prev = t_prev.value;  // zeroth extrapolant
  for (int k = 0; k < 24; ++k) {
    eps *= 0.25;
    const double edge = pole_left ? a + eps : b - eps;
    if (edge == pole_at) break;  // epsilon underflowed the representable gap
    const QuadResult t_next = shrunk(eps);
    out.n_evals += t_next.n_evals;
    const double r_next = 2.0 * t_next.value - t_prev.value;
    const double scale = std::max(std::abs(r_next), 1e-300);
    if (std::abs(r_next - r_prev) <=
        std::max(opts.abs_tol, opts.rel_tol * scale)) {
      out.value = r_next;
      out.error_estimate = std::abs(r_next - r_prev);
      return out;
    }
    t_prev = t_next;
    r_prev = r_next;
  }
  out.value = r_prev;
  out.error_estimate = std::abs(r_prev);
  out.converged = false;
  return out;
}

}  // namespace lwdist
