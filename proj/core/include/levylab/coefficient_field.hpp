#pragma once

#include <optional>
#include <vector>

#include "levylab/vec.hpp"

namespace levylab {

enum class CoeffFamily { kConstant, kSinusoidal, kHolder, kTable };

// Bounded continuous jump coefficient c(x, z) with declared bounds
// c_lower <= c <= c_upper.  The shipped families depend on x only through
// the first coordinate s = <e1, x>:
//
//   constant     c = c0
//   sinusoidal   c = base + swing * sin(s)
//   holder       c = base + swing * |sin(s)|^beta          (beta in (0,1])
//   table        c = piecewise-linear interpolation of (s_k, c_k), clamped
//
// The sinusoidal and holder families have an exact oscillation modulus
//   osc(r) = sup_{|x-y| = r} |c(x,.) - c(y,.)|,
// which is what makes the coefficient modulus w(r) computable exactly.
class CoefficientField {
 public:
  static CoefficientField constant(int dim, double c0);
  static CoefficientField sinusoidal(int dim, double base, double swing);
  static CoefficientField holder(int dim, double base, double swing, double beta);
  static CoefficientField table(int dim, std::vector<double> knots, std::vector<double> values);

  CoeffFamily family() const { return family_; }
  int dim() const { return dim_; }
  double lower() const { return lower_; }
  double upper() const { return upper_; }

  // True when c(x, z) does not depend on z (all shipped families).
  bool state_only() const { return true; }

  double operator()(const Vec& x, const Vec& z) const {
    (void)z;
    return eval_state(x);
  }
  double eval_state(const Vec& x) const;

  // Exact oscillation modulus when the family admits one.
  std::optional<double> oscillation(double r) const;
  // Deterministic sampled lower bound of the oscillation (used for table
  // coefficients and as a cross-check for the exact ones).
  double sampled_oscillation(double r, int samples = 512) const;

  const std::vector<double>& params() const { return params_; }

 private:
  CoefficientField() = default;

  CoeffFamily family_ = CoeffFamily::kConstant;
  int dim_ = 1;
  double lower_ = 1.0;
  double upper_ = 1.0;
  std::vector<double> params_;         // family-specific
  std::vector<double> table_knots_;    // table family only
  std::vector<double> table_values_;
};

// c(x,z) ^ c(y,z) ^ c(x,z-u) ^ c(y,z-u); satisfies
// coeff4(x,y,u,z) == coeff4(x,y,-u,z-u) identically.
double coeff4(const CoefficientField& c, const Vec& x, const Vec& y, const Vec& u, const Vec& z);

}  // namespace levylab
