#pragma once

#include <functional>

#include "levylab/modulus_function.hpp"
#include "levylab/vec.hpp"

namespace levylab {

// Scalar test function with the declared bounds the operator quadrature
// needs: sup |f| for tail bounds and sup ||Hess f|| for the small-jump
// Taylor remainder.  hessian_form(p, v) = <v, Hess f(p) v>; it lets the
// compensated difference f(x+z) - f(x) - <grad f(x), z> be evaluated through
//   |z|^2 int_0^1 (1-t) <z^, Hess f(x+tz) z^> dt,
// which is free of the floating-point cancellation that otherwise drowns
// the integrand against a |z|^{-d-alpha} density.
struct SmoothFunction {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;
  std::function<double(const Vec&, const Vec&)> hessian_form;
  double sup_norm = 1.0;
  double hessian_bound = 1.0;
};

// Function on pairs (x, y) in R^d x R^d.  hessian_bound is a bound for the
// full 2d-by-2d Hessian norm, valid for displacements of size up to
// hessian_bound_radius around the evaluation pair (0 = global).
// hessian_form(x, y, dx, dy) is the quadratic form of the pair Hessian on
// the displacement (dx, dy).
struct PairFunction {
  std::function<double(const Vec&, const Vec&)> value;
  std::function<Vec(const Vec&, const Vec&)> grad_x;
  std::function<Vec(const Vec&, const Vec&)> grad_y;
  std::function<double(const Vec&, const Vec&, const Vec&, const Vec&)> hessian_form;
  // Optional: h(x+dx, y+dy) given the exact pair-difference displacement
  // delta = dx - dy.  Distance functions depend on x - y only; evaluating
  // them through |(x-y) + delta| instead of |(x+dx) - (y+dy)| removes the
  // rounding noise that a cusp at zero distance would otherwise amplify.
  std::function<double(const Vec& x, const Vec& y, const Vec& dx, const Vec& dy,
                       const Vec& delta)>
      value_displaced;
  double sup_norm = 1.0;
  double hessian_bound = 1.0;
  double hessian_bound_radius = 0.0;
};

PairFunction pair_sum(const SmoothFunction& f, const SmoothFunction& g);
PairFunction pair_left(const SmoothFunction& f);
PairFunction pair_right(const SmoothFunction& g);

// Concave distance profile f(r), capped to a constant beyond `cap` so that
// it is bounded on [0, inf) while keeping f' >= 0 and f'' <= 0.
class DistanceProfile {
 public:
  DistanceProfile(const ModulusFunction& psi, double cap);

  double operator()(double r) const { return eval(r, 0); }
  double eval(double r, int order) const;  // order 0..2
  double cap() const { return cap_; }
  double sup_norm() const { return sup_; }

 private:
  ModulusFunction psi_;
  double cap_;
  double sup_;
};

// h(x, y) = f(|x - y|) with gradients f'(r) (x-y)/r.  base_distance is the
// pair separation at which the operator will be evaluated; it determines a
// valid Hessian bound and its radius.
PairFunction distance_pair(const DistanceProfile& f, double base_distance);

// Ready-made bounded test functions for experiments and checks.
SmoothFunction gaussian_bump(int dim);    // exp(-|x|^2)
SmoothFunction cauchy_bump(int dim);      // 1/(1+|x|^2)
SmoothFunction cosine_wave(int dim);      // cos(x_1)
SmoothFunction constant_fn(int dim, double c);

}  // namespace levylab
