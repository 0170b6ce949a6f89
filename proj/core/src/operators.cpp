#include "levylab/operators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <vector>

namespace levylab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_quadrature_dim(int d) {
  if (d != 1 && d != 2)
    throw std::invalid_argument("operator quadrature supports d in {1,2} only");
}

void add_measure_edges(AnchorSet& a, const LevyMeasureSpec& spec, const Vec& shift) {
  if (spec.bounded_support()) a.add_sphere(shift, spec.support_radius());
  if (spec.cone_spec()) a.add_cone(shift, spec.cone_spec()->xi, spec.cone_spec()->delta);
}

// Shell radius such that sum_i mult_i * ball_abs_moment(2, eps) <= target.
double solve_shell_radius(const std::vector<std::pair<double, const LevyMeasureSpec*>>& parts,
                          double target, double eps_cap) {
  const auto bound = [&](double eps) {
    double s = 0.0;
    for (const auto& [mult, spec] : parts) s += mult * spec->ball_abs_moment(2.0, eps);
    return s;
  };
  if (bound(eps_cap) <= target) return eps_cap;
  double lo = 1e-40, hi = eps_cap;
  if (bound(lo) > target) return lo;
  for (int i = 0; i < 200; ++i) {
    const double mid = std::sqrt(lo * hi);
    (bound(mid) <= target ? lo : hi) = mid;
  }
  return lo;
}

double shell_bound_at(const std::vector<std::pair<double, const LevyMeasureSpec*>>& parts,
                      double eps) {
  double s = 0.0;
  for (const auto& [mult, spec] : parts) s += mult * spec->ball_abs_moment(2.0, eps);
  return s;
}

// Cut radius such that sum_i coeff_i * tail_mass(T) <= target (unbounded
// supports only); may saturate at cap, in which case the caller reports the
// achieved bound.
double solve_tail_radius(const std::vector<std::pair<double, const LevyMeasureSpec*>>& parts,
                         double target, double floor_radius, double cap) {
  const auto bound = [&](double t) {
    double s = 0.0;
    for (const auto& [coeff, spec] : parts) s += coeff * spec->tail_mass(t);
    return s;
  };
  double t = std::max(floor_radius, 2.0);
  while (t < cap && bound(t) > target) t *= 4.0;
  return std::min(t, cap);
}

double tail_bound_at(const std::vector<std::pair<double, const LevyMeasureSpec*>>& parts,
                     double t) {
  double s = 0.0;
  for (const auto& [coeff, spec] : parts) s += coeff * spec->tail_mass(t);
  return s;
}

struct GeneratorPart {
  std::function<double(const Vec&)> density;
  const LevyMeasureSpec* radial;
  double coeff_upper;  // sup of the state factor multiplying the radial law
};

// Below this displacement size the compensated difference is evaluated via
// the exact identity
//   f(x+z) - f(x) - <grad f(x), z> = int_0^1 (1-t) <z, Hess f(x+tz) z> dt,
// whose integrand is cancellation-free.  Direct evaluation carries an
// absolute rounding error of order eps_mach ||f||, which a |z|^{-d-alpha}
// density near the origin would amplify without bound.
constexpr double kTaylorCrossover = 1e-3;

double compensated_small(const SmoothFunction& f, const Vec& x, const Vec& z) {
  return fixed_gk15_unit(
      [&](double t) { return (1.0 - t) * f.hessian_form(x + t * z, z); });
}

double compensated_small_pair(const PairFunction& h, const Vec& x, const Vec& y, const Vec& dx,
                              const Vec& dy) {
  return fixed_gk15_unit([&](double t) {
    return (1.0 - t) * h.hessian_form(x + t * dx, y + t * dy, dx, dy);
  });
}

// h(x+dx, y+dy), preferring the exact-difference route when available.
double pair_value_at(const PairFunction& h, const Vec& x, const Vec& y, const Vec& dx,
                     const Vec& dy, const Vec& delta) {
  if (h.value_displaced) return h.value_displaced(x, y, dx, dy, delta);
  return h.value(x + dx, y + dy);
}

OperatorResult generator_quadrature(int dim, const SmoothFunction& f, const Vec& x,
                                    const std::vector<GeneratorPart>& parts,
                                    const QuadratureConfig& cfg) {
  require_quadrature_dim(dim);
  const double f0 = f.value(x);
  const Vec g0 = f.gradient(x);

  AnchorSet anchors;
  anchors.add_radius(1.0);
  std::vector<std::pair<double, const LevyMeasureSpec*>> shell_parts;
  std::vector<std::pair<double, const LevyMeasureSpec*>> tail_parts;
  double rmax = 0.0;
  bool unbounded = false;
  for (const auto& p : parts) {
    add_measure_edges(anchors, *p.radial, zero_vec(dim));
    shell_parts.push_back({0.5 * f.hessian_bound * p.coeff_upper, p.radial});
    if (p.radial->bounded_support()) {
      rmax = std::max(rmax, p.radial->support_radius());
    } else {
      unbounded = true;
      tail_parts.push_back({2.0 * f.sup_norm * p.coeff_upper, p.radial});
    }
  }

  double eps = cfg.shell_radius;
  if (eps <= 0.0)
    eps = solve_shell_radius(shell_parts, cfg.abs_tol / 10.0, 0.5);
  const double shell_bound = shell_bound_at(shell_parts, eps);

  double tail_bound = 0.0;
  if (unbounded) {
    const double t = solve_tail_radius(tail_parts, cfg.abs_tol / 2.0, std::max(rmax, 2.0),
                                       cfg.tail_cap);
    tail_bound = tail_bound_at(tail_parts, t);
    rmax = std::max(rmax, t);
  }

  const double crossover = f.hessian_form ? kTaylorCrossover : 0.0;
  if (crossover > 0.0) anchors.add_radius(crossover);
  const auto integrand = [&](const Vec& z) {
    double dens = 0.0;
    for (const auto& p : parts) dens += p.density(z);
    if (dens == 0.0) return 0.0;
    const double rho = norm(z);
    double g;
    if (rho <= crossover) {
      g = compensated_small(f, x, z);
    } else {
      g = f.value(x + z) - f0;
      if (rho <= 1.0) g -= dot(g0, z);
    }
    return g * dens;
  };

  IntegralResult res = integrate_shell(dim, integrand, eps, rmax, anchors, cfg, cfg.abs_tol);
  if (!res.converged) throw ToleranceNotMet("generator quadrature: subdivision budget exhausted");

  OperatorResult out;
  out.value = res.value;
  out.error_estimate = res.error + tail_bound;
  out.shell_remainder_bound = shell_bound;
  return out;
}

}  // namespace

OperatorResult apply_generator(const LevyMeasureSpec& spec, const CoefficientField& field,
                               const SmoothFunction& f, const Vec& x,
                               const QuadratureConfig& cfg) {
  GeneratorPart part{
      [&spec, &field, x](const Vec& z) { return field(x, z) * spec.density(z); }, &spec,
      field.upper()};
  return generator_quadrature(spec.dim(), f, x, {part}, cfg);
}

OperatorResult apply_generator_perturbation(const PerturbationKernel& pert,
                                            const SmoothFunction& f, const Vec& x,
                                            const QuadratureConfig& cfg) {
  if (pert.is_null()) return {};
  GeneratorPart part{[&pert, x](const Vec& z) { return pert.density(x, z); },
                     &pert.radial_part(), pert.state_factor_max()};
  return generator_quadrature(pert.dim(), f, x, {part}, cfg);
}

OperatorResult apply_generator_perturbed(const LevyMeasureSpec& spec,
                                         const CoefficientField& field,
                                         const PerturbationKernel& pert, const SmoothFunction& f,
                                         const Vec& x, const QuadratureConfig& cfg) {
  std::vector<GeneratorPart> parts;
  parts.push_back({[&spec, &field, x](const Vec& z) { return field(x, z) * spec.density(z); },
                   &spec, field.upper()});
  if (!pert.is_null())
    parts.push_back({[&pert, x](const Vec& z) { return pert.density(x, z); },
                     &pert.radial_part(), pert.state_factor_max()});
  return generator_quadrature(spec.dim(), f, x, parts, cfg);
}

OperatorResult apply_coupling(const LevyMeasureSpec& spec, const CoefficientField& field,
                              const PairFunction& h, const Vec& x, const Vec& y, double kappa,
                              const QuadratureConfig& cfg, unsigned mask,
                              const AnchorSet* extra_anchors) {
  require_quadrature_dim(spec.dim());
  if (x == y) throw std::invalid_argument("apply_coupling: needs x != y");
  const int dim = spec.dim();
  const KernelBundle bundle(spec, field, x, y, kappa);
  const Vec u_to = bundle.u_toward();
  const Vec u_aw = bundle.u_away();

  const double h0 = h.value(x, y);
  const Vec gx0 = h.grad_x(x, y);
  const Vec gy0 = h.grad_y(x, y);

  const int n_branches = std::popcount(mask & coupling_branch::kAll);
  if (n_branches == 0) return {};
  const double abs_branch = cfg.abs_tol / n_branches;

  // Shell radius shared by the singular branches 3-5.
  std::vector<std::pair<double, const LevyMeasureSpec*>> shell_parts;
  if (mask & coupling_branch::kSynchronous)
    shell_parts.push_back({h.hessian_bound * field.upper(), &spec});
  if (mask & coupling_branch::kFirstAlone)
    shell_parts.push_back({0.5 * h.hessian_bound * (field.upper() - field.lower()), &spec});
  if (mask & coupling_branch::kSecondAlone)
    shell_parts.push_back({0.5 * h.hessian_bound * (field.upper() - field.lower()), &spec});

  double eps = cfg.shell_radius;
  if (eps <= 0.0 && !shell_parts.empty()) {
    double cap = 0.5;
    if (h.hessian_bound_radius > 0.0) cap = std::min(cap, h.hessian_bound_radius);
    if (spec.bounded_support()) cap = std::min(cap, 0.5 * spec.support_radius());
    eps = solve_shell_radius(shell_parts, cfg.abs_tol / 10.0, cap);
  }
  const double shell_bound = shell_parts.empty() ? 0.0 : shell_bound_at(shell_parts, eps);

  // Tail cut for unbounded supports; branch integrands are bounded by
  // 2||h|| c_upper q beyond |z| >= 2.
  double rmax = spec.support_radius();
  double tail_bound = 0.0;
  if (!spec.bounded_support()) {
    double coeff = 0.0;
    if (mask & coupling_branch::kMergeToward) coeff += h.sup_norm * field.upper();
    if (mask & coupling_branch::kReflect) coeff += h.sup_norm * field.upper();
    if (mask & coupling_branch::kSynchronous) coeff += 2.0 * h.sup_norm * field.upper();
    if (mask & coupling_branch::kFirstAlone)
      coeff += 2.0 * h.sup_norm * (field.upper() - field.lower());
    if (mask & coupling_branch::kSecondAlone)
      coeff += 2.0 * h.sup_norm * (field.upper() - field.lower());
    std::vector<std::pair<double, const LevyMeasureSpec*>> tail_parts{{coeff, &spec}};
    const double t = coeff > 0 ? solve_tail_radius(tail_parts, cfg.abs_tol / 2.0, 4.0,
                                                   cfg.tail_cap)
                               : 4.0;
    tail_bound = tail_bound_at(tail_parts, t);
    rmax = t;
  }

  OperatorResult out;
  out.shell_remainder_bound = shell_bound;

  double crossover = h.hessian_form ? kTaylorCrossover : 0.0;
  if (h.hessian_bound_radius > 0.0) crossover = std::min(crossover, h.hessian_bound_radius);

  const auto run_branch = [&](const std::function<double(const Vec&)>& f, double rmin,
                              AnchorSet anchors) {
    if (extra_anchors) {
      anchors.spheres.insert(anchors.spheres.end(), extra_anchors->spheres.begin(),
                             extra_anchors->spheres.end());
      anchors.cones.insert(anchors.cones.end(), extra_anchors->cones.begin(),
                           extra_anchors->cones.end());
      anchors.bisectors.insert(anchors.bisectors.end(), extra_anchors->bisectors.begin(),
                               extra_anchors->bisectors.end());
      anchors.radii.insert(anchors.radii.end(), extra_anchors->radii.begin(),
                           extra_anchors->radii.end());
    }
    IntegralResult r = integrate_shell(dim, f, rmin, rmax, anchors, cfg, abs_branch);
    if (!r.converged) throw ToleranceNotMet("apply_coupling: subdivision budget exhausted");
    out.value += r.value;
    out.error_estimate += r.error;
  };

  AnchorSet base;
  base.add_radius(1.0);
  add_measure_edges(base, spec, zero_vec(dim));

  if (mask & (coupling_branch::kMergeToward | coupling_branch::kReflect)) {
    const auto paired = [&](const Vec& u, const Vec& w) {
      AnchorSet a = base;
      a.add_bisector(u);
      add_measure_edges(a, spec, u);
      a.add_sphere(-w, 1.0);
      // The pair difference moves by the constant -w on this branch.
      const Vec delta = -1.0 * w;
      const auto f = [&bundle, &h, x, y, gx0, gy0, h0, u, w, delta](const Vec& z) {
        const double dens = 0.5 * bundle.coupling_jump_density(u, z);
        if (dens == 0.0) return 0.0;
        double g = pair_value_at(h, x, y, z, z + w, delta) - h0;
        if (norm(z) <= 1.0) g -= dot(gx0, z);
        const Vec zw = z + w;
        if (norm(zw) <= 1.0) g -= dot(gy0, zw);
        return g * dens;
      };
      run_branch(f, 0.0, a);
    };
    if (mask & coupling_branch::kMergeToward) paired(u_to, u_aw);
    if (mask & coupling_branch::kReflect) paired(u_aw, u_to);
  }

  if (mask & coupling_branch::kSynchronous) {
    AnchorSet a = base;
    a.add_bisector(u_to);
    a.add_bisector(u_aw);
    add_measure_edges(a, spec, u_to);
    add_measure_edges(a, spec, u_aw);
    if (crossover > 0.0) a.add_radius(crossover);
    const Vec zero_delta = zero_vec(dim);
    const auto f = [&](const Vec& z) {
      double dens = bundle.sync_density(z) - 0.5 * bundle.coupling_jump_density(u_to, z) -
                    0.5 * bundle.coupling_jump_density(u_aw, z);
      if (dens <= 0.0) return 0.0;
      const double rho = norm(z);
      double g;
      if (rho <= crossover) {
        g = compensated_small_pair(h, x, y, z, z);
      } else {
        g = pair_value_at(h, x, y, z, z, zero_delta) - h0;
        if (rho <= 1.0) g -= dot(gx0, z) + dot(gy0, z);
      }
      return g * dens;
    };
    run_branch(f, eps, a);
  }

  const auto lone = [&](bool first) {
    AnchorSet a = base;
    if (crossover > 0.0) a.add_radius(crossover);
    const Vec zvec = zero_vec(dim);
    const auto f = [&, first, zvec](const Vec& z) {
      const double ct = bundle.residual_coeff(first, z);
      if (ct == 0.0) return 0.0;
      const double dens = ct * spec.density(z);
      const double rho = norm(z);
      double g;
      if (rho <= crossover) {
        g = first ? compensated_small_pair(h, x, y, z, zvec)
                  : compensated_small_pair(h, x, y, zvec, z);
      } else if (first) {
        g = pair_value_at(h, x, y, z, zvec, z) - h0;
        if (rho <= 1.0) g -= dot(gx0, z);
      } else {
        g = pair_value_at(h, x, y, zvec, z, -1.0 * z) - h0;
        if (rho <= 1.0) g -= dot(gy0, z);
      }
      return g * dens;
    };
    run_branch(f, eps, a);
  };
  if (mask & coupling_branch::kFirstAlone) lone(true);
  if (mask & coupling_branch::kSecondAlone) lone(false);

  out.error_estimate += tail_bound;
  return out;
}

namespace {

AnchorSet distance_extra_anchors(const Vec& x, const Vec& y, double cap) {
  AnchorSet a;
  const Vec d = y - x;
  a.add_sphere(d, 0.0);
  a.add_sphere(-1.0 * d, 0.0);
  a.add_sphere(d, cap);
  a.add_sphere(-1.0 * d, cap);
  return a;
}

}  // namespace

OperatorResult apply_coupling_distance(const LevyMeasureSpec& spec, const CoefficientField& field,
                                       const DistanceProfile& f, const Vec& x, const Vec& y,
                                       double kappa, const QuadratureConfig& cfg, unsigned mask) {
  const PairFunction h = distance_pair(f, norm(x - y));
  const AnchorSet extra = distance_extra_anchors(x, y, f.cap());
  return apply_coupling(spec, field, h, x, y, kappa, cfg, mask, &extra);
}

OperatorResult apply_coupling_paired(const LevyMeasureSpec& spec, const CoefficientField& field,
                                     const DistanceProfile& f, const Vec& x, const Vec& y,
                                     double kappa, const QuadratureConfig& cfg) {
  return apply_coupling_distance(spec, field, f, x, y, kappa, cfg, coupling_branch::kPaired);
}

OperatorResult apply_coupling_residual(const LevyMeasureSpec& spec, const CoefficientField& field,
                                       const DistanceProfile& f, const Vec& x, const Vec& y,
                                       double kappa, const QuadratureConfig& cfg) {
  return apply_coupling_distance(spec, field, f, x, y, kappa, cfg, coupling_branch::kResidual);
}

OperatorResult paired_distance_form(const LevyMeasureSpec& spec, const CoefficientField& field,
                                    const DistanceProfile& f, const Vec& x, const Vec& y,
                                    double kappa, const QuadratureConfig& cfg) {
  if (x == y) throw std::invalid_argument("paired_distance_form: needs x != y");
  const double r = norm(x - y);
  const double step = std::min(kappa, r);
  const Vec u = clip_to_norm(x - y, kappa);
  const OperatorResult mass = coupling_pair_mass(spec, field, x, y, u, cfg);
  const double combo = f(r + step) + f(r - step) - 2.0 * f(r);
  OperatorResult out;
  out.value = 0.5 * mass.value * combo;
  out.error_estimate = 0.5 * mass.error_estimate * std::abs(combo);
  return out;
}

OperatorResult apply_coupling_perturbation(const PerturbationKernel& pert, const PairFunction& h,
                                           const Vec& x, const Vec& y,
                                           const QuadratureConfig& cfg, unsigned mask) {
  if (pert.is_null()) return {};
  const int dim = pert.dim();
  require_quadrature_dim(dim);
  const LevyMeasureSpec& radial = pert.radial_part();
  const double h0 = h.value(x, y);
  const Vec gx0 = h.grad_x(x, y);
  const Vec gy0 = h.grad_y(x, y);

  const int n_branches = std::popcount(mask & perturbation_branch::kAll);
  if (n_branches == 0) return {};
  const double abs_branch = cfg.abs_tol / n_branches;

  std::vector<std::pair<double, const LevyMeasureSpec*>> shell_parts;
  const double spread = pert.state_factor_max() - pert.state_factor_min();
  if (mask & perturbation_branch::kSynchronous)
    shell_parts.push_back({h.hessian_bound * pert.state_factor_max(), &radial});
  if (mask & perturbation_branch::kFirstAlone)
    shell_parts.push_back({0.5 * h.hessian_bound * spread, &radial});
  if (mask & perturbation_branch::kSecondAlone)
    shell_parts.push_back({0.5 * h.hessian_bound * spread, &radial});

  double eps = cfg.shell_radius;
  if (eps <= 0.0) {
    double cap = 0.5 * radial.support_radius();
    if (h.hessian_bound_radius > 0.0) cap = std::min(cap, h.hessian_bound_radius);
    eps = solve_shell_radius(shell_parts, cfg.abs_tol / 10.0, cap);
  }

  OperatorResult out;
  out.shell_remainder_bound = shell_bound_at(shell_parts, eps);
  const double rmax = radial.support_radius();

  double crossover = h.hessian_form ? kTaylorCrossover : 0.0;
  if (h.hessian_bound_radius > 0.0) crossover = std::min(crossover, h.hessian_bound_radius);

  AnchorSet anchors;
  anchors.add_radius(1.0);
  add_measure_edges(anchors, radial, zero_vec(dim));
  if (crossover > 0.0) anchors.add_radius(crossover);

  const auto run = [&](const std::function<double(const Vec&)>& f) {
    IntegralResult r = integrate_shell(dim, f, eps, rmax, anchors, cfg, abs_branch);
    if (!r.converged)
      throw ToleranceNotMet("apply_coupling_perturbation: subdivision budget exhausted");
    out.value += r.value;
    out.error_estimate += r.error;
  };

  const Vec zvec = zero_vec(dim);
  if (mask & perturbation_branch::kSynchronous) {
    run([&](const Vec& z) {
      const double dens = std::min(pert.density(x, z), pert.density(y, z));
      if (dens == 0.0) return 0.0;
      const double rho = norm(z);
      double g;
      if (rho <= crossover) {
        g = compensated_small_pair(h, x, y, z, z);
      } else {
        g = h.value(x + z, y + z) - h0;
        if (rho <= 1.0) g -= dot(gx0, z) + dot(gy0, z);
      }
      return g * dens;
    });
  }
  if (mask & perturbation_branch::kFirstAlone) {
    run([&](const Vec& z) {
      const double dens = pert.density(x, z) - std::min(pert.density(x, z), pert.density(y, z));
      if (dens == 0.0) return 0.0;
      const double rho = norm(z);
      double g;
      if (rho <= crossover) {
        g = compensated_small_pair(h, x, y, z, zvec);
      } else {
        g = h.value(x + z, y) - h0;
        if (rho <= 1.0) g -= dot(gx0, z);
      }
      return g * dens;
    });
  }
  if (mask & perturbation_branch::kSecondAlone) {
    run([&](const Vec& z) {
      const double dens = pert.density(y, z) - std::min(pert.density(x, z), pert.density(y, z));
      if (dens == 0.0) return 0.0;
      const double rho = norm(z);
      double g;
      if (rho <= crossover) {
        g = compensated_small_pair(h, x, y, zvec, z);
      } else {
        g = h.value(x, y + z) - h0;
        if (rho <= 1.0) g -= dot(gy0, z);
      }
      return g * dens;
    });
  }
  return out;
}

namespace {

// Shared machinery for the two kernel masses.  The integrand is bounded, so
// integration starts at 0; unbounded supports are extended until the
// analytic tail bracket is negligible, with its midpoint added to the value
// and its half-width to the error.
OperatorResult bounded_min_mass(const LevyMeasureSpec& spec, const Vec& u,
                                const std::function<double(const Vec&)>& weight,
                                double weight_lo, double weight_hi,
                                const QuadratureConfig& cfg) {
  if (!(norm(u) > 0)) throw std::invalid_argument("kernel mass: u must be nonzero");
  require_quadrature_dim(spec.dim());

  AnchorSet anchors;
  anchors.add_bisector(u);
  add_measure_edges(anchors, spec, zero_vec(spec.dim()));
  add_measure_edges(anchors, spec, u);
  anchors.add_radius(norm(u));

  const auto f = [&](const Vec& z) {
    const double m = std::min(spec.density(z), spec.density(z - u));
    if (m == 0.0) return 0.0;
    return weight(z) * m;
  };

  OperatorResult out;
  if (spec.bounded_support()) {
    IntegralResult r = integrate_shell(spec.dim(), f, 0.0, spec.support_radius(), anchors, cfg,
                                       cfg.abs_tol);
    if (!r.converged) throw ToleranceNotMet("kernel mass: subdivision budget exhausted");
    out.value = r.value;
    out.error_estimate = r.error;
    return out;
  }

  const double ru = norm(u);
  double t_prev = 0.0;
  double t = std::max(64.0 * std::max(1.0, ru), 8.0 * ru);
  double quad_value = 0.0, quad_error = 0.0;
  for (int round = 0; round < 10; ++round) {
    IntegralResult r = integrate_shell(spec.dim(), f, t_prev, t, anchors, cfg, cfg.abs_tol / 4.0);
    if (!r.converged) throw ToleranceNotMet("kernel mass: subdivision budget exhausted");
    quad_value += r.value;
    quad_error += r.error;
    // min(q(z), q(z-u)) <= q(z) and >= amplitude (|z|+|u|)^{-d-alpha} outside
    // |z| > t >= 2|u|.
    const double upper = weight_hi * spec.tail_mass(t);
    const double shrink = std::pow(t / (t + ru), spec.dim() - 1);
    const double lower = weight_lo * shrink * spec.amplitude() * spec.surface_weight() *
                         std::pow(t + ru, -spec.alpha()) / spec.alpha();
    const double mid = 0.5 * (upper + lower);
    const double half = 0.5 * (upper - lower);
    const double scale = std::abs(quad_value + mid);
    if (half <= 0.25 * std::max(cfg.abs_tol, cfg.rel_tol * scale) || t >= cfg.tail_cap) {
      out.value = quad_value + mid;
      out.error_estimate = quad_error + half;
      return out;
    }
    t_prev = t;
    t *= 8.0;
  }
  throw ToleranceNotMet("kernel mass: tail bracket did not converge");
}

}  // namespace

OperatorResult displaced_min_mass(const LevyMeasureSpec& spec, const Vec& u,
                                  const QuadratureConfig& cfg) {
  return bounded_min_mass(spec, u, [](const Vec&) { return 1.0; }, 1.0, 1.0, cfg);
}

OperatorResult coupling_pair_mass(const LevyMeasureSpec& spec, const CoefficientField& field,
                                  const Vec& x, const Vec& y, const Vec& u,
                                  const QuadratureConfig& cfg) {
  double w_lo = field.lower(), w_hi = field.upper();
  if (field.state_only()) {
    // coeff4 is constant in z for state-only coefficients.
    const double c = std::min(field.eval_state(x), field.eval_state(y));
    w_lo = w_hi = c;
  }
  return bounded_min_mass(
      spec, u, [&](const Vec& z) { return coeff4(field, x, y, u, z); }, w_lo, w_hi, cfg);
}

double min_displaced_mass(const LevyMeasureSpec& spec, double r, const QuadratureConfig& cfg) {
  if (!(r > 0)) throw std::invalid_argument("min_displaced_mass: r must be positive");
  std::vector<Vec> dirs;
  if (spec.isotropic())
    dirs.push_back(axis_vec(spec.dim(), 0));
  else
    dirs = spec.direction_grid(cfg.direction_grid);
  double best = kInf;
  for (const Vec& e : dirs) best = std::min(best, displaced_min_mass(spec, r * e, cfg).value);
  return best;
}

double min_coupling_mass(const LevyMeasureSpec& spec, const CoefficientField& field, double r,
                         double kappa, const QuadratureConfig& cfg, int pair_samples,
                         const std::optional<std::pair<Vec, Vec>>& include) {
  if (!(r > 0)) throw std::invalid_argument("min_coupling_mass: r must be positive");
  const int dim = spec.dim();
  std::vector<Vec> dirs =
      spec.isotropic() && field.family() == CoeffFamily::kConstant
          ? std::vector<Vec>{axis_vec(dim, 0)}
          : spec.direction_grid(std::min(cfg.direction_grid, std::max(1, pair_samples)));
  if (!(kappa > 0 && kappa <= 1))
    throw std::invalid_argument("min_coupling_mass: kappa must lie in (0,1]");
  // The infimum is taken over the raw pair displacement x - y; the clipped
  // displacement coincides with it in the r <= kappa regime where this
  // quantity feeds the drift bounds.
  constexpr double kGolden = 0.61803398874989484820;
  double best = kInf;
  for (int i = 0; i < pair_samples; ++i) {
    Vec x(dim);
    x[0] = -3.14159265358979 + 6.28318530717959 * std::fmod(kGolden * (i + 1), 1.0);
    const Vec& e = dirs[static_cast<std::size_t>(i) % dirs.size()];
    const Vec y = x + r * e;
    best = std::min(best, coupling_pair_mass(spec, field, x, y, x - y, cfg).value);
  }
  if (include) {
    const Vec u = include->first - include->second;
    best = std::min(best,
                    coupling_pair_mass(spec, field, include->first, include->second, u, cfg).value);
  }
  return best;
}

double drift_margin(const LevyMeasureSpec& spec, const CoefficientField& field,
                    const ModulusFunction& psi, double r, double c1, double c2, int p,
                    const QuadratureConfig& cfg) {
  if (!(2.0 * r <= psi.valid_radius()))
    throw std::domain_error("drift_margin: needs 2r inside the validity radius of psi");
  const double j = min_displaced_mass(spec, r, cfg);
  const double curvature = j * r * r * psi.eval(2.0 * r, 2);
  const double w = coefficient_modulus(spec, field, r, p, cfg).value;
  const double slope =
      p == 2 ? c1 * w * psi.eval(r, 1) / r : c1 * w * psi.eval(r, 1);
  return curvature + slope + c2;
}

double contraction_rate(const LevyMeasureSpec& spec, const ModulusFunction& psi, double eps,
                        int grid_size, const QuadratureConfig& cfg) {
  if (!(2.0 * eps <= psi.valid_radius()))
    throw std::domain_error("contraction_rate: needs 2*eps inside the validity radius of psi");
  const double lo = eps * 1e-4;
  double sup = -kInf;
  for (int i = 0; i < grid_size; ++i) {
    const double r = lo * std::pow(eps / lo, static_cast<double>(i) / (grid_size - 1));
    const double j = min_displaced_mass(spec, r, cfg);
    sup = std::max(sup, j * r * r * psi.eval(2.0 * r, 2));
  }
  return -sup;
}

double drift_tail_constant(const LevyMeasureSpec& spec, const CoefficientField& field,
                           double f_sup) {
  return 2.0 * spec.tail_mass(1.0) * field.upper() * f_sup;
}

double coupling_bound_margin(const LevyMeasureSpec& spec, const CoefficientField& field,
                             const DistanceProfile& f, const Vec& x, const Vec& y, double kappa,
                             double eps0, BoundVariant variant, const QuadratureConfig& cfg) {
  const double r = norm(x - y);
  if (!(r > 0 && r <= eps0 && eps0 <= kappa && kappa <= 1.0))
    throw std::invalid_argument("coupling_bound_margin: needs 0 < |x-y| <= eps0 <= kappa <= 1");
  if (variant == BoundVariant::kFirstMoment && !(spec.alpha() < 1.0))
    throw std::domain_error("coupling_bound_margin: first-moment variant needs alpha < 1");

  const double lhs = apply_coupling_distance(spec, field, f, x, y, kappa, cfg).value;

  const double j =
      min_coupling_mass(spec, field, r, kappa, cfg, 8, std::make_pair(x, y));
  const double core = 0.5 * j * (f(2.0 * r) - 2.0 * f(r));

  const int p = variant == BoundVariant::kSecondMoment ? 2 : 1;
  const double pair_mom = pair_coefficient_moment(spec, field, x, y, p, cfg).value;
  const double mid = variant == BoundVariant::kSecondMoment
                         ? pair_mom * f.eval(r, 1) / r
                         : 4.0 * pair_mom * f.eval(r, 1);

  const double tail = drift_tail_constant(spec, field, f.sup_norm());
  return core + mid + tail - lhs;
}

}  // namespace levylab
