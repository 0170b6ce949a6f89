#pragma once

#include <optional>

#include "levylab/levy_measure.hpp"
#include "levylab/vec.hpp"

namespace levylab {

enum class PerturbationFamily { kNone, kCosineSeparable, kStateIndependent };

// Additive perturbation kernel with density m(x, z) = g(x) * rho(z), where
// rho is a truncated stable-like radial density and
//   g(x) = base + swing * cos(<e1, x>)   (cosine family, base >= |swing|)
//   g(x) = base                          (state-independent family)
//   m = 0                                (none).
//
// has_first_moment() certifies sup_x int_{|z|<=1} |z| m(x,z) dz < inf, which
// for the power-law radial part means alpha < 1.
class PerturbationKernel {
 public:
  static PerturbationKernel none(int dim);
  static PerturbationKernel cosine(int dim, double base, double swing, double alpha,
                                   double amplitude, double truncation);
  static PerturbationKernel state_independent(int dim, double g, double alpha, double amplitude,
                                              double truncation);

  PerturbationFamily family() const { return family_; }
  int dim() const { return dim_; }
  bool is_null() const { return family_ == PerturbationFamily::kNone; }
  bool has_first_moment() const;
  bool state_dependent() const { return family_ == PerturbationFamily::kCosineSeparable; }

  double density(const Vec& x, const Vec& z) const;
  double state_factor(const Vec& x) const;
  double state_factor_max() const { return g_max_; }
  double state_factor_min() const { return g_min_; }

  // Exact oscillation of g at distance r.
  double oscillation(double r) const;

  // Radial part rho as a measure spec (closed-form moments, anchors).
  const LevyMeasureSpec& radial_part() const;

 private:
  PerturbationKernel() = default;

  PerturbationFamily family_ = PerturbationFamily::kNone;
  int dim_ = 1;
  double g_base_ = 0.0;
  double g_swing_ = 0.0;
  double g_min_ = 0.0;
  double g_max_ = 0.0;
  std::optional<LevyMeasureSpec> radial_;
};

}  // namespace levylab
