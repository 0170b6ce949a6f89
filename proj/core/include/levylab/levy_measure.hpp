#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "levylab/rng.hpp"
#include "levylab/vec.hpp"

namespace levylab {

enum class LevyFamily { kHomogeneousStable, kTruncatedStable, kConeStable };

// Axis and half-aperture of the cone V = { |z| <= 1, <z, xi> >= delta |z| }.
struct ConeSpec {
  Vec xi;
  double delta = 0.5;
};

// Stable-like jump measure nu(dz) = q(z) dz with
//   q(z) = amplitude * |z|^{-d-alpha}  on the support, 0 outside.
// Support is all of R^d \ {0} (homogeneous), the ball |z| <= R (truncated),
// or the cone V above (cone family; support radius is fixed at 1).
//
// The radial power law gives every moment used elsewhere in closed form;
// those closed forms are the reference values the adaptive quadrature is
// tested against.
class LevyMeasureSpec {
 public:
  static LevyMeasureSpec homogeneous(int dim, double alpha, double amplitude);
  static LevyMeasureSpec truncated(int dim, double alpha, double amplitude, double radius);
  static LevyMeasureSpec cone(int dim, double alpha, double amplitude, Vec xi, double delta);

  LevyFamily family() const { return family_; }
  int dim() const { return dim_; }
  double alpha() const { return alpha_; }
  double amplitude() const { return amplitude_; }
  double truncation_radius() const { return radius_; }
  const std::optional<ConeSpec>& cone_spec() const { return cone_; }

  bool isotropic() const { return family_ != LevyFamily::kConeStable; }
  bool bounded_support() const { return std::isfinite(radius_); }
  // Largest |z| in the support (may be +inf).
  double support_radius() const { return radius_; }

  bool in_support(const Vec& z) const;
  double density(const Vec& z) const;
  // log q(z); -inf outside the support, +inf at z = 0.
  double log_density(const Vec& z) const;

  // Surface measure of the direction set (full sphere or spherical cap).
  double surface_weight() const { return surface_weight_; }
  // Integral of the direction vector over the direction set; zero when
  // isotropic.
  Vec direction_moment() const { return direction_moment_; }

  // integral_{|z| <= r} |z|^p q(z) dz; needs p > alpha.
  double ball_abs_moment(double p, double r) const;
  // nu(|z| > r).
  double tail_mass(double r) const;
  // integral_{a <= |z| <= b} z q(z) dz.
  Vec first_moment_annulus(double a, double b) const;

  // Exact sampling of q restricted to |z| >= eps (normalised).  Radius by
  // inverse transform of the power law, direction uniform on the sphere/cap.
  Vec sample_restricted(Philox4x32& rng, double eps) const;
  double sample_radius(double eps, double u01) const;
  Vec sample_direction(Philox4x32& rng) const;

  // Deterministic unit-vector panel; collapses to {e1} for isotropic specs
  // when callers ask for it, and to {+1,-1} in d = 1.
  std::vector<Vec> direction_grid(int n) const;

 private:
  LevyMeasureSpec() = default;
  void finalize();

  LevyFamily family_ = LevyFamily::kHomogeneousStable;
  int dim_ = 1;
  double alpha_ = 1.5;
  double amplitude_ = 1.0;
  double radius_ = std::numeric_limits<double>::infinity();
  std::optional<ConeSpec> cone_;
  double surface_weight_ = 2.0;
  Vec direction_moment_{0.0};
};

struct BoundsCheckReport {
  bool pass_lower = false;
  bool pass_upper = false;
  // min over sampled z in V of q(z) / (c1 |z|^{-d-a1}); pass iff >= 1.
  double worst_lower_ratio = 0.0;
  // max over sampled z of q(z) / (c2 |z|^{-d-a2}); pass iff <= 1.
  double worst_upper_ratio = 0.0;
  bool pass() const { return pass_lower && pass_upper; }
};

// Samples q on a log-spaced radius grid times a direction panel and checks
//   c1 |z|^{-d-a1} 1_V(z) <= q(z) <= c2 |z|^{-d-a2}.
BoundsCheckReport stable_bounds_check(const LevyMeasureSpec& spec, double alpha1, double alpha2,
                                      double c1, double c2, const ConeSpec& lower_cone,
                                      int radii = 40, int directions = 16);

}  // namespace levylab
