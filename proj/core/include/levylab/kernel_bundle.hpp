#pragma once

#include <array>

#include "levylab/coefficient_field.hpp"
#include "levylab/levy_measure.hpp"
#include "levylab/vec.hpp"

namespace levylab {

// (1 ^ kappa/|v|) v : clip v to norm kappa, keeping its direction.
Vec clip_to_norm(const Vec& v, double kappa);

// min(q(z), q(z-u)) -- the density of nu ^ (delta_u * nu).  Bounded and
// integrable for u != 0 even though q itself blows up at the origin; its
// only non-smooth set is { |z| = |z-u| } plus the support edges.
// Throws at the removable pole points z in {0, u}.
double displaced_min_density(const LevyMeasureSpec& spec, const Vec& u, const Vec& z);

// Derived kernels for one pair (x, y) at clipping radius kappa.  The jump
// system has five branches; with u+ = (y-x)_kappa, u- = (x-y)_kappa and
// writing mu_u(z) = coeff4(x,y,u,z) min(q(z), q(z-u)):
//
//   1: (x+z, y+z+u-)   density  1/2 mu_{u+}(z)
//   2: (x+z, y+z+u+)   density  1/2 mu_{u-}(z)
//   3: (x+z, y+z)      density  (c(x,z)^c(y,z)) q(z) - 1/2 mu_{u+} - 1/2 mu_{u-}
//   4: (x+z, y)        density  (c(x,z) - c(x,z)^c(y,z)) q(z)
//   5: (x,   y+z)      density  (c(y,z) - c(x,z)^c(y,z)) q(z)
//
// Branch 1 merges the pair whenever |x-y| <= kappa; branch 2 reflects the
// distance to 2|x-y| in that regime.  The branch densities satisfy
//   d1+d2+d3+d4 = c(x,z) q(z)     (first-marginal identity)
//   d1+...+d5   = (c(x,z) v c(y,z)) q(z) <= c_upper q(z).
class KernelBundle {
 public:
  KernelBundle(const LevyMeasureSpec& spec, const CoefficientField& field, Vec x, Vec y,
               double kappa);

  const Vec& x() const { return x_; }
  const Vec& y() const { return y_; }
  double kappa() const { return kappa_; }
  bool merged() const { return merged_; }
  const Vec& u_toward() const { return u_toward_; }  // (y-x)_kappa
  const Vec& u_away() const { return u_away_; }      // (x-y)_kappa

  double coupling_jump_density(const Vec& u, const Vec& z) const;
  double sync_density(const Vec& z) const;
  // c~(x,y,z) = c(x,z) - c(x,z)^c(y,z) when first, mirrored otherwise.
  double residual_coeff(bool first, const Vec& z) const;

  std::array<double, 5> branch_densities(const Vec& z) const;
  // d_i(z) / (c_upper q(z)), computed from density ratios so it stays finite
  // arbitrarily close to the poles of q.  Sums to at most 1.
  std::array<double, 5> branch_ratios(const Vec& z) const;

  const LevyMeasureSpec& spec() const { return *spec_; }
  const CoefficientField& field() const { return *field_; }

 private:
  const LevyMeasureSpec* spec_;
  const CoefficientField* field_;
  Vec x_, y_;
  double kappa_;
  bool merged_;
  Vec u_toward_, u_away_;
};

}  // namespace levylab
