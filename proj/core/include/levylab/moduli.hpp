#pragma once

#include "levylab/coefficient_field.hpp"
#include "levylab/levy_measure.hpp"
#include "levylab/perturbation.hpp"
#include "levylab/quadrature.hpp"

namespace levylab {

struct ModulusResult {
  double value = 0.0;
  // Quadrature error of the radial moment factor.
  double quad_error = 0.0;
  // False when the pair supremum had to be sampled (table coefficients);
  // the value is then a lower bound of the modulus.
  bool exact_oscillation = true;
};

// integral_{|z| <= r} |z|^p q(z) dz by adaptive quadrature (the closed form
// lives in LevyMeasureSpec::ball_abs_moment and serves as its oracle).
IntegralResult radial_abs_moment(const LevyMeasureSpec& spec, double p, double r,
                                 const QuadratureConfig& cfg);

// w(r) = sup_{|x-y|=r} integral_{|z|<=1} |z|^p |c(x,z)-c(y,z)| q(z) dz.
// The shipped coefficient families factor the integrand, so the supremum is
// the exact oscillation of the state factor times the radial moment.
// p = 1 needs alpha < 1.
ModulusResult coefficient_modulus(const LevyMeasureSpec& spec, const CoefficientField& field,
                                  double r, int p, const QuadratureConfig& cfg);

// Same quantity against |m(x,z)-m(y,z)| dz; p = 1 additionally requires the
// kernel's first-moment certificate.
ModulusResult perturbation_modulus(const PerturbationKernel& pert, double r, int p,
                                   const QuadratureConfig& cfg);

ModulusResult combined_modulus(const LevyMeasureSpec& spec, const CoefficientField& field,
                               const PerturbationKernel& pert, double r, int p,
                               const QuadratureConfig& cfg);

// integral_{|z|<=1} |c(x,z)-c(y,z)| |z|^p q(z) dz for one fixed pair.
IntegralResult pair_coefficient_moment(const LevyMeasureSpec& spec, const CoefficientField& field,
                                       const Vec& x, const Vec& y, int p,
                                       const QuadratureConfig& cfg);

}  // namespace levylab
