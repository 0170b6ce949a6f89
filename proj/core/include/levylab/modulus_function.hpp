#pragma once

#include <string>

namespace levylab {

enum class ModulusFamily { kPower, kLogWeighted, kLipLog };

struct ShapeReport {
  bool pass = false;
  // Worst (most violating) values over the grid; sign conventions are
  // value >= 0 for psi, psi', psi''' and the doubling margin, <= 0 for psi''.
  double worst_psi = 0.0;
  double worst_d1 = 0.0;
  double worst_d2 = 0.0;
  double worst_d3 = 0.0;
  // min over the grid of 2 psi(r) - psi(2r) + psi''(2r) r^2 (must be >= 0).
  double worst_doubling = 0.0;
  std::string failure;
};

// Concave distance test functions used for drift conditions and coupling
// bounds.  Writing l = log(1/r):
//
//   power        psi(r) = r^theta,                theta in (0,1)
//   log-weighted psi(r) = r l^theta,              theta > 0
//   lip-log      psi(r) = r (1 - l^{-theta}),     theta > 0
//
// All satisfy psi(0+) = 0, psi' >= 0, psi'' <= 0, psi''' >= 0 on
// (0, valid_radius].  For the log families the sign of psi''' pins the
// default validity radius:
//   log-weighted:  l^2 >= (theta-1)(theta-2)  and l >= theta
//   lip-log:       l^2 >= (theta+1)(theta+2)
// together with the floor l >= 2.
class ModulusFunction {
 public:
  static ModulusFunction power(double theta);
  static ModulusFunction log_weighted(double theta);
  static ModulusFunction lip_log(double theta);
  // No parameter validation; exists so that shape_check can demonstrate
  // rejections.
  static ModulusFunction make_unchecked(ModulusFamily family, double theta, double valid_radius);

  ModulusFamily family() const { return family_; }
  double theta() const { return theta_; }
  double valid_radius() const { return valid_radius_; }

  // order-th derivative (0..3), closed form.  Throws outside
  // (0, valid_radius] or for an unsupported order.
  double eval(double r, int order) const;

  // Sign conditions plus the doubling inequality
  //   2 psi(r) - psi(2r) >= -psi''(2r) r^2
  // on a log grid over (0, valid_radius].
  ShapeReport shape_check(int grid_size = 200) const;

 private:
  ModulusFunction(ModulusFamily family, double theta, double valid_radius)
      : family_(family), theta_(theta), valid_radius_(valid_radius) {}
  double eval_unchecked(double r, int order) const;

  ModulusFamily family_;
  double theta_;
  double valid_radius_;
};

// Picks the test-function family matching the regularity regime of the
// stable index pair and validates theta; at alpha1 == 1 the log-weighted
// family needs theta > 1.
ModulusFunction modulus_for_regime(double alpha1, double alpha2, double theta);

const char* to_string(ModulusFamily f);

}  // namespace levylab
