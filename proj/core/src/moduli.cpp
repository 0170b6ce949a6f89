#include "levylab/moduli.hpp"

#include <cmath>
#include <stdexcept>

namespace levylab {

namespace {

AnchorSet measure_anchors(const LevyMeasureSpec& spec) {
  AnchorSet a;
  if (spec.bounded_support()) a.add_radius(spec.support_radius());
  if (spec.cone_spec()) a.add_cone(zero_vec(spec.dim()), spec.cone_spec()->xi,
                                   spec.cone_spec()->delta);
  return a;
}

void require_p(int p) {
  if (p != 1 && p != 2) throw std::invalid_argument("modulus: p must be 1 or 2");
}

// integral over |z| <= rmax of W(z) |z|^p q(z) dz for a bounded weight W.
// The radial integrand behaves like rho^{p-alpha-1} at the origin, which
// plain bisection cannot resolve for alpha near 2; the substitution
// rho = rmax s^k with k ~ 3/(p-alpha) makes it polynomially flat instead.
IntegralResult weighted_radial_moment(const LevyMeasureSpec& spec,
                                      const std::function<double(const Vec&)>& weight, double p,
                                      double r, const QuadratureConfig& cfg) {
  if (!(p > spec.alpha()))
    throw std::domain_error("radial moment: diverges unless p > alpha");
  const double rmax = std::min(r, spec.support_radius());
  const int dim = spec.dim();
  const double expo = p - spec.alpha();
  const int k = std::max(1, static_cast<int>(std::ceil(3.0 / expo)));

  const auto line = [&](const Vec& e) {
    const auto g = [&](double s) {
      const double rho = rmax * std::pow(s, k);
      const Vec z = rho * e;
      const double base = weight(z) * std::pow(rho, p) * spec.density(z);
      double jac = rmax * k * std::pow(s, k - 1);
      if (dim == 2) jac *= rho;
      return base * jac;
    };
    return adaptive_line(g, 0.0, 1.0, {}, cfg.rel_tol, cfg.abs_tol / 4.0, cfg.inner_max_panels);
  };

  IntegralResult total;
  if (dim == 1) {
    for (double sign : {1.0, -1.0}) {
      const IntegralResult rr = line(Vec{sign});
      total.value += rr.value;
      total.error += rr.error;
      total.evals += rr.evals;
      total.converged = total.converged && rr.converged;
    }
    return total;
  }
  if (dim != 2) throw std::invalid_argument("radial moment: needs d in {1,2}");

  double inner_error = 0.0;
  long inner_evals = 0;
  bool inner_ok = true;
  const auto slice = [&](double phi) {
    const IntegralResult rr = line(Vec{std::cos(phi), std::sin(phi)});
    inner_error = std::max(inner_error, rr.error);
    inner_evals += rr.evals;
    inner_ok = inner_ok && rr.converged;
    return rr.value;
  };
  const IntegralResult outer =
      adaptive_line(slice, 0.0, 2.0 * M_PI, measure_anchors(spec).angular_anchors(), cfg.rel_tol,
                    cfg.abs_tol / 2.0, cfg.max_panels);
  total.value = outer.value;
  total.error = outer.error + 2.0 * M_PI * inner_error;
  total.evals = outer.evals + inner_evals;
  total.converged = outer.converged && inner_ok;
  return total;
}

}  // namespace

IntegralResult radial_abs_moment(const LevyMeasureSpec& spec, double p, double r,
                                 const QuadratureConfig& cfg) {
  IntegralResult res =
      weighted_radial_moment(spec, [](const Vec&) { return 1.0; }, p, r, cfg);
  if (!res.converged) throw ToleranceNotMet("radial_abs_moment: quadrature budget exhausted");
  return res;
}

ModulusResult coefficient_modulus(const LevyMeasureSpec& spec, const CoefficientField& field,
                                  double r, int p, const QuadratureConfig& cfg) {
  require_p(p);
  if (p == 1 && spec.alpha() >= 1.0)
    throw std::domain_error("coefficient_modulus: p = 1 needs alpha < 1");
  ModulusResult out;
  double osc;
  if (auto exact = field.oscillation(r)) {
    osc = *exact;
  } else {
    osc = field.sampled_oscillation(r);
    out.exact_oscillation = false;
  }
  if (osc == 0.0) return out;
  const IntegralResult moment = radial_abs_moment(spec, p, 1.0, cfg);
  out.value = osc * moment.value;
  out.quad_error = osc * moment.error;
  return out;
}

ModulusResult perturbation_modulus(const PerturbationKernel& pert, double r, int p,
                                   const QuadratureConfig& cfg) {
  require_p(p);
  ModulusResult out;
  if (pert.is_null() || !pert.state_dependent()) return out;
  if (p == 1 && !pert.has_first_moment())
    throw std::domain_error("perturbation_modulus: p = 1 needs the first-moment certificate");
  const double osc = pert.oscillation(r);
  if (osc == 0.0) return out;
  const IntegralResult moment = radial_abs_moment(pert.radial_part(), p, 1.0, cfg);
  out.value = osc * moment.value;
  out.quad_error = osc * moment.error;
  return out;
}

ModulusResult combined_modulus(const LevyMeasureSpec& spec, const CoefficientField& field,
                               const PerturbationKernel& pert, double r, int p,
                               const QuadratureConfig& cfg) {
  const ModulusResult w = coefficient_modulus(spec, field, r, p, cfg);
  const ModulusResult wm = perturbation_modulus(pert, r, p, cfg);
  ModulusResult out;
  out.value = w.value + wm.value;
  out.quad_error = w.quad_error + wm.quad_error;
  out.exact_oscillation = w.exact_oscillation && wm.exact_oscillation;
  return out;
}

IntegralResult pair_coefficient_moment(const LevyMeasureSpec& spec, const CoefficientField& field,
                                       const Vec& x, const Vec& y, int p,
                                       const QuadratureConfig& cfg) {
  require_p(p);
  if (p == 1 && spec.alpha() >= 1.0)
    throw std::domain_error("pair_coefficient_moment: p = 1 needs alpha < 1");
  const auto weight = [&](const Vec& z) { return std::abs(field(x, z) - field(y, z)); };
  IntegralResult res = weighted_radial_moment(spec, weight, p, 1.0, cfg);
  if (!res.converged)
    throw ToleranceNotMet("pair_coefficient_moment: quadrature budget exhausted");
  return res;
}

}  // namespace levylab
