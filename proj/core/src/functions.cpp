#include "levylab/functions.hpp"

#include <cmath>
#include <stdexcept>

namespace levylab {

PairFunction pair_sum(const SmoothFunction& f, const SmoothFunction& g) {
  PairFunction h;
  h.value = [f, g](const Vec& x, const Vec& y) { return f.value(x) + g.value(y); };
  h.grad_x = [f](const Vec& x, const Vec&) { return f.gradient(x); };
  h.grad_y = [g](const Vec&, const Vec& y) { return g.gradient(y); };
  h.hessian_form = [f, g](const Vec& x, const Vec& y, const Vec& dx, const Vec& dy) {
    return f.hessian_form(x, dx) + g.hessian_form(y, dy);
  };
  h.sup_norm = f.sup_norm + g.sup_norm;
  h.hessian_bound = std::max(f.hessian_bound, g.hessian_bound);
  h.hessian_bound_radius = 0.0;
  return h;
}

PairFunction pair_left(const SmoothFunction& f) {
  PairFunction h;
  h.value = [f](const Vec& x, const Vec&) { return f.value(x); };
  h.grad_x = [f](const Vec& x, const Vec&) { return f.gradient(x); };
  h.grad_y = [](const Vec& x, const Vec&) { return zero_vec(x.dim); };
  h.hessian_form = [f](const Vec& x, const Vec&, const Vec& dx, const Vec&) {
    return f.hessian_form(x, dx);
  };
  h.sup_norm = f.sup_norm;
  h.hessian_bound = f.hessian_bound;
  return h;
}

PairFunction pair_right(const SmoothFunction& g) {
  PairFunction h;
  h.value = [g](const Vec&, const Vec& y) { return g.value(y); };
  h.grad_x = [](const Vec& x, const Vec&) { return zero_vec(x.dim); };
  h.grad_y = [g](const Vec&, const Vec& y) { return g.gradient(y); };
  h.hessian_form = [g](const Vec&, const Vec& y, const Vec&, const Vec& dy) {
    return g.hessian_form(y, dy);
  };
  h.sup_norm = g.sup_norm;
  h.hessian_bound = g.hessian_bound;
  return h;
}

DistanceProfile::DistanceProfile(const ModulusFunction& psi, double cap) : psi_(psi), cap_(cap) {
  if (!(cap > 0 && cap <= psi.valid_radius()))
    throw std::invalid_argument("DistanceProfile: cap must lie in (0, valid_radius]");
  sup_ = psi_.eval(cap_, 0);
}

double DistanceProfile::eval(double r, int order) const {
  if (order < 0 || order > 2) throw std::invalid_argument("DistanceProfile: order must be 0..2");
  if (r <= 0) return 0.0;
  if (r >= cap_) return order == 0 ? sup_ : 0.0;
  return psi_.eval(r, order);
}

PairFunction distance_pair(const DistanceProfile& f, double base_distance) {
  if (!(base_distance > 0))
    throw std::invalid_argument("distance_pair: base distance must be positive");
  PairFunction h;
  h.value = [f](const Vec& x, const Vec& y) { return f(norm(x - y)); };
  h.grad_x = [f](const Vec& x, const Vec& y) {
    const Vec w = x - y;
    const double r = norm(w);
    if (r == 0.0) return zero_vec(x.dim);
    return (f.eval(r, 1) / r) * w;
  };
  h.grad_y = [f](const Vec& x, const Vec& y) {
    const Vec w = x - y;
    const double r = norm(w);
    if (r == 0.0) return zero_vec(x.dim);
    return (-f.eval(r, 1) / r) * w;
  };
  // Second derivative of t -> f(|w + t v|) at t = 0 with v = dx - dy:
  //   f''(r) <w^, v>^2 + f'(r)(|v|^2 - <w^, v>^2)/r.
  h.hessian_form = [f](const Vec& x, const Vec& y, const Vec& dx, const Vec& dy) {
    const Vec w = x - y;
    const Vec v = dx - dy;
    const double r = norm(w);
    const double v2 = norm2(v);
    if (v2 == 0.0) return 0.0;
    if (r == 0.0) return 0.0;  // profile cusp; excluded by anchor handling
    const double proj = dot(w, v) / r;
    return f.eval(r, 2) * proj * proj + f.eval(r, 1) * (v2 - proj * proj) / r;
  };
  h.value_displaced = [f](const Vec& x, const Vec& y, const Vec&, const Vec&,
                          const Vec& delta) { return f(norm((x - y) + delta)); };
  h.sup_norm = f.sup_norm();
  // Both |f''| and f'(r)/r are nonincreasing (f''' >= 0, f'' <= 0), so their
  // values at r0/2 bound the pair Hessian for displacements up to r0/4.
  const double rlo = base_distance / 2.0;
  const double hess = 2.0 * std::max(std::abs(f.eval(rlo, 2)), f.eval(rlo, 1) / rlo);
  h.hessian_bound = hess;
  h.hessian_bound_radius = base_distance / 4.0;
  return h;
}

SmoothFunction gaussian_bump(int dim) {
  SmoothFunction f;
  f.value = [](const Vec& x) { return std::exp(-norm2(x)); };
  f.gradient = [](const Vec& x) { return (-2.0 * std::exp(-norm2(x))) * x; };
  f.hessian_form = [](const Vec& x, const Vec& v) {
    return (4.0 * dot(x, v) * dot(x, v) - 2.0 * norm2(v)) * std::exp(-norm2(x));
  };
  f.sup_norm = 1.0;
  f.hessian_bound = 2.0;
  (void)dim;
  return f;
}

SmoothFunction cauchy_bump(int dim) {
  SmoothFunction f;
  f.value = [](const Vec& x) { return 1.0 / (1.0 + norm2(x)); };
  f.gradient = [](const Vec& x) {
    const double d = 1.0 + norm2(x);
    return (-2.0 / (d * d)) * x;
  };
  f.hessian_form = [](const Vec& x, const Vec& v) {
    const double d = 1.0 + norm2(x);
    const double xv = dot(x, v);
    return -2.0 * norm2(v) / (d * d) + 8.0 * xv * xv / (d * d * d);
  };
  f.sup_norm = 1.0;
  f.hessian_bound = 2.0;
  (void)dim;
  return f;
}

SmoothFunction cosine_wave(int dim) {
  SmoothFunction f;
  f.value = [](const Vec& x) { return std::cos(x[0]); };
  f.gradient = [dim](const Vec& x) {
    Vec g(dim);
    g[0] = -std::sin(x[0]);
    return g;
  };
  f.hessian_form = [](const Vec& x, const Vec& v) { return -std::cos(x[0]) * v[0] * v[0]; };
  f.sup_norm = 1.0;
  f.hessian_bound = 1.0;
  return f;
}

SmoothFunction constant_fn(int dim, double c) {
  SmoothFunction f;
  f.value = [c](const Vec&) { return c; };
  f.gradient = [dim](const Vec&) { return zero_vec(dim); };
  f.hessian_form = [](const Vec&, const Vec&) { return 0.0; };
  f.sup_norm = std::abs(c);
  f.hessian_bound = 0.0;
  return f;
}

}  // namespace levylab
