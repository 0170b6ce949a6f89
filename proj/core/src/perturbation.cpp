#include "levylab/perturbation.hpp"

#include <cmath>
#include <stdexcept>

namespace levylab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

PerturbationKernel PerturbationKernel::none(int dim) {
  PerturbationKernel p;
  p.family_ = PerturbationFamily::kNone;
  p.dim_ = dim;
  return p;
}

PerturbationKernel PerturbationKernel::cosine(int dim, double base, double swing, double alpha,
                                              double amplitude, double truncation) {
  if (!(base >= std::abs(swing)))
    throw std::invalid_argument("perturbation: cosine family needs base >= |swing|");
  PerturbationKernel p;
  p.family_ = PerturbationFamily::kCosineSeparable;
  p.dim_ = dim;
  p.g_base_ = base;
  p.g_swing_ = swing;
  p.g_min_ = base - std::abs(swing);
  p.g_max_ = base + std::abs(swing);
  p.radial_ = LevyMeasureSpec::truncated(dim, alpha, amplitude, truncation);
  return p;
}

PerturbationKernel PerturbationKernel::state_independent(int dim, double g, double alpha,
                                                         double amplitude, double truncation) {
  if (!(g > 0)) throw std::invalid_argument("perturbation: factor must be positive");
  PerturbationKernel p;
  p.family_ = PerturbationFamily::kStateIndependent;
  p.dim_ = dim;
  p.g_base_ = g;
  p.g_min_ = p.g_max_ = g;
  p.radial_ = LevyMeasureSpec::truncated(dim, alpha, amplitude, truncation);
  return p;
}

bool PerturbationKernel::has_first_moment() const {
  if (is_null()) return true;
  return radial_->alpha() < 1.0;
}

double PerturbationKernel::state_factor(const Vec& x) const {
  switch (family_) {
    case PerturbationFamily::kNone:
      return 0.0;
    case PerturbationFamily::kCosineSeparable:
      return g_base_ + g_swing_ * std::cos(x[0]);
    case PerturbationFamily::kStateIndependent:
      return g_base_;
  }
  return 0.0;
}

double PerturbationKernel::density(const Vec& x, const Vec& z) const {
  if (is_null()) return 0.0;
  return state_factor(x) * radial_->density(z);
}

double PerturbationKernel::oscillation(double r) const {
  if (family_ != PerturbationFamily::kCosineSeparable) return 0.0;
  return std::abs(g_swing_) * (r >= kPi ? 2.0 : 2.0 * std::sin(r / 2.0));
}

const LevyMeasureSpec& PerturbationKernel::radial_part() const {
  if (!radial_) throw std::logic_error("perturbation: null kernel has no radial part");
  return *radial_;
}

}  // namespace levylab
