#pragma once

#include <optional>
#include <utility>

#include "levylab/functions.hpp"
#include "levylab/kernel_bundle.hpp"
#include "levylab/moduli.hpp"
#include "levylab/perturbation.hpp"
#include "levylab/quadrature.hpp"

namespace levylab {

// ---------------------------------------------------------------------------
// Generator evaluation
//
//   (A f)(x) = int ( f(x+z) - f(x) - <grad f(x), z> 1_{|z|<=1} ) k(x, dz)
//
// with k = c(x,z) q(z) dz, k = m(x,dz), or their sum.  The |z| < eps core is
// not integrated; a rigorous Taylor remainder bound
//   1/2 sup||Hess f|| * int_{|z|<eps} |z|^2 k(x,dz)
// is returned as shell_remainder_bound, and eps is picked so this stays
// below abs_tol/10.  Unbounded supports are cut at a radius whose discarded
// tail bound is folded into error_estimate.
// ---------------------------------------------------------------------------

OperatorResult apply_generator(const LevyMeasureSpec& spec, const CoefficientField& field,
                               const SmoothFunction& f, const Vec& x,
                               const QuadratureConfig& cfg);

OperatorResult apply_generator_perturbation(const PerturbationKernel& pert,
                                            const SmoothFunction& f, const Vec& x,
                                            const QuadratureConfig& cfg);

// Single quadrature pass over the combined kernel c(x,z) q(z) dz + m(x,dz).
OperatorResult apply_generator_perturbed(const LevyMeasureSpec& spec,
                                         const CoefficientField& field,
                                         const PerturbationKernel& pert, const SmoothFunction& f,
                                         const Vec& x, const QuadratureConfig& cfg);

// ---------------------------------------------------------------------------
// Coupling operator on pair functions: five branch integrals driven by the
// jump system in KernelBundle.  Branches 1-2 use the finite displaced-minimum
// measures and carry the asymmetric cutoff 1_{|z + w| <= 1} on the
// y-compensator; branches 3-5 carry the singular core and get the shell
// treatment.
// ---------------------------------------------------------------------------

namespace coupling_branch {
inline constexpr unsigned kMergeToward = 1u << 0;  // (x+z, y+z+(x-y)_k)
inline constexpr unsigned kReflect = 1u << 1;      // (x+z, y+z+(y-x)_k)
inline constexpr unsigned kSynchronous = 1u << 2;  // (x+z, y+z)
inline constexpr unsigned kFirstAlone = 1u << 3;   // (x+z, y)
inline constexpr unsigned kSecondAlone = 1u << 4;  // (x,   y+z)
inline constexpr unsigned kPaired = kMergeToward | kReflect | kSynchronous;
inline constexpr unsigned kResidual = kFirstAlone | kSecondAlone;
inline constexpr unsigned kAll = kPaired | kResidual;
}  // namespace coupling_branch

OperatorResult apply_coupling(const LevyMeasureSpec& spec, const CoefficientField& field,
                              const PairFunction& h, const Vec& x, const Vec& y, double kappa,
                              const QuadratureConfig& cfg,
                              unsigned mask = coupling_branch::kAll,
                              const AnchorSet* extra_anchors = nullptr);

// The part of the coupling operator that moves both components (branches
// 1-3); on distance functions it reduces to the two-point formula checked by
// paired_distance_form.
OperatorResult apply_coupling_paired(const LevyMeasureSpec& spec, const CoefficientField& field,
                                     const DistanceProfile& f, const Vec& x, const Vec& y,
                                     double kappa, const QuadratureConfig& cfg);

// Single-component branches 4-5 on a distance profile.
OperatorResult apply_coupling_residual(const LevyMeasureSpec& spec, const CoefficientField& field,
                                       const DistanceProfile& f, const Vec& x, const Vec& y,
                                       double kappa, const QuadratureConfig& cfg);

OperatorResult apply_coupling_distance(const LevyMeasureSpec& spec, const CoefficientField& field,
                                       const DistanceProfile& f, const Vec& x, const Vec& y,
                                       double kappa, const QuadratureConfig& cfg,
                                       unsigned mask = coupling_branch::kAll);

// Closed form of the paired part on distance profiles:
//   1/2 mu_{x,y,(x-y)_k}(R^d) [ f(r + k^r) + f(r - k^r) - 2 f(r) ],  r = |x-y|.
OperatorResult paired_distance_form(const LevyMeasureSpec& spec, const CoefficientField& field,
                                    const DistanceProfile& f, const Vec& x, const Vec& y,
                                    double kappa, const QuadratureConfig& cfg);

// Coupling operator of the perturbation part: synchronous branch with
// density m(x,.) ^ m(y,.), plus the two marginal remainders.
namespace perturbation_branch {
inline constexpr unsigned kSynchronous = 1u << 0;
inline constexpr unsigned kFirstAlone = 1u << 1;
inline constexpr unsigned kSecondAlone = 1u << 2;
inline constexpr unsigned kAll = kSynchronous | kFirstAlone | kSecondAlone;
}  // namespace perturbation_branch

OperatorResult apply_coupling_perturbation(const PerturbationKernel& pert, const PairFunction& h,
                                           const Vec& x, const Vec& y,
                                           const QuadratureConfig& cfg,
                                           unsigned mask = perturbation_branch::kAll);

// ---------------------------------------------------------------------------
// Kernel masses and direction infima
// ---------------------------------------------------------------------------

// nu_u(R^d) = int min(q(z), q(z-u)) dz.
OperatorResult displaced_min_mass(const LevyMeasureSpec& spec, const Vec& u,
                                  const QuadratureConfig& cfg);

// mu_{x,y,u}(R^d) = int coeff4(x,y,u,z) min(q(z), q(z-u)) dz.
OperatorResult coupling_pair_mass(const LevyMeasureSpec& spec, const CoefficientField& field,
                                  const Vec& x, const Vec& y, const Vec& u,
                                  const QuadratureConfig& cfg);

// inf over |u| = r of nu_u(R^d), over a deterministic direction panel
// (a single direction when the measure is rotation invariant).
double min_displaced_mass(const LevyMeasureSpec& spec, double r, const QuadratureConfig& cfg);

// Approximate inf over pairs at distance r of mu_{x,y,(x-y)_k}(R^d), taken
// over a deterministic pair panel; `include` forces one extra pair into the
// panel so the result lower-bounds that pair's mass.
double min_coupling_mass(const LevyMeasureSpec& spec, const CoefficientField& field, double r,
                         double kappa, const QuadratureConfig& cfg, int pair_samples = 8,
                         const std::optional<std::pair<Vec, Vec>>& include = std::nullopt);

// ---------------------------------------------------------------------------
// Distance drift condition
// ---------------------------------------------------------------------------

// J(r) r^2 psi''(2r) + c1 w(r) psi'(r)/r + c2     (second-moment form), or
// J(r) r^2 psi''(2r) + c1 w(r) psi'(r)   + c2     (first-moment form, p = 1).
double drift_margin(const LevyMeasureSpec& spec, const CoefficientField& field,
                    const ModulusFunction& psi, double r, double c1, double c2, int p,
                    const QuadratureConfig& cfg);

// lambda_psi(eps) = -sup over a log grid of r in (0, eps] of J(r) r^2 psi''(2r).
double contraction_rate(const LevyMeasureSpec& spec, const ModulusFunction& psi, double eps,
                        int grid_size, const QuadratureConfig& cfg);

// Default tail constant 2 nu(|z| > 1) c_upper ||f||_inf.
double drift_tail_constant(const LevyMeasureSpec& spec, const CoefficientField& field,
                           double f_sup);

// ---------------------------------------------------------------------------
// Coupling-operator upper bound margin
//
//   RHS - (coupling operator applied to f(|x-y|)), with
//   RHS = 1/2 J(r) (f(2r) - 2 f(r)) + W_pair * f-term + 2 nu(|z|>1) c* ||f||,
// where the f-term is f'(r)/r against the |z|^2 pair moment, or 4 f'(r)
// against the |z| pair moment in the first-moment variant.  Nonnegative up
// to quadrature error whenever 0 < |x-y| <= eps0 <= kappa <= 1.
// ---------------------------------------------------------------------------

enum class BoundVariant { kSecondMoment, kFirstMoment };

double coupling_bound_margin(const LevyMeasureSpec& spec, const CoefficientField& field,
                             const DistanceProfile& f, const Vec& x, const Vec& y, double kappa,
                             double eps0, BoundVariant variant, const QuadratureConfig& cfg);

}  // namespace levylab
