#include "levylab/kernel_bundle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace levylab {

Vec clip_to_norm(const Vec& v, double kappa) {
  if (!(kappa > 0)) throw std::invalid_argument("clip_to_norm: kappa must be positive");
  const double n = norm(v);
  if (n <= kappa) return v;
  return (kappa / n) * v;
}

double displaced_min_density(const LevyMeasureSpec& spec, const Vec& u, const Vec& z) {
  if (norm(u) == 0.0) throw std::invalid_argument("displaced_min_density: u must be nonzero");
  if (z == zero_vec(z.dim) || z == u)
    throw std::domain_error("displaced_min_density: z at a pole of q");
  return std::min(spec.density(z), spec.density(z - u));
}

KernelBundle::KernelBundle(const LevyMeasureSpec& spec, const CoefficientField& field, Vec x,
                           Vec y, double kappa)
    : spec_(&spec), field_(&field), x_(x), y_(y), kappa_(kappa) {
  if (!(kappa > 0 && kappa <= 1))
    throw std::invalid_argument("KernelBundle: kappa must lie in (0,1]");
  merged_ = (x_ == y_);
  u_toward_ = merged_ ? zero_vec(x.dim) : clip_to_norm(y_ - x_, kappa_);
  u_away_ = merged_ ? zero_vec(x.dim) : clip_to_norm(x_ - y_, kappa_);
}

double KernelBundle::coupling_jump_density(const Vec& u, const Vec& z) const {
  const double m = std::min(spec_->density(z), spec_->density(z - u));
  if (m == 0.0) return 0.0;
  return coeff4(*field_, x_, y_, u, z) * m;
}

double KernelBundle::sync_density(const Vec& z) const {
  return std::min((*field_)(x_, z), (*field_)(y_, z)) * spec_->density(z);
}

double KernelBundle::residual_coeff(bool first, const Vec& z) const {
  const double cx = (*field_)(x_, z);
  const double cy = (*field_)(y_, z);
  return (first ? cx : cy) - std::min(cx, cy);
}

std::array<double, 5> KernelBundle::branch_densities(const Vec& z) const {
  const double q = spec_->density(z);
  if (merged_) return {0.0, 0.0, sync_density(z), 0.0, 0.0};
  const double d1 = 0.5 * coupling_jump_density(u_toward_, z);
  const double d2 = 0.5 * coupling_jump_density(u_away_, z);
  const double cx = (*field_)(x_, z);
  const double cy = (*field_)(y_, z);
  const double cmin = std::min(cx, cy);
  double d3 = cmin * q - d1 - d2;
  if (d3 < 0) {
    if (d3 < -1e-12 * (cmin * q + 1.0))
      throw std::logic_error("branch_densities: synchronous density went negative");
    d3 = 0.0;
  }
  return {d1, d2, d3, (cx - cmin) * q, (cy - cmin) * q};
}

std::array<double, 5> KernelBundle::branch_ratios(const Vec& z) const {
  const double cstar = field_->upper();
  const double logq = spec_->log_density(z);
  if (logq == -std::numeric_limits<double>::infinity()) return {0.0, 0.0, 0.0, 0.0, 0.0};
  const double cx = (*field_)(x_, z);
  const double cy = (*field_)(y_, z);
  const double cmin = std::min(cx, cy);
  if (merged_) return {0.0, 0.0, cmin / cstar, 0.0, 0.0};

  // q(z-u)/q(z) via log densities; exp(-inf) = 0 covers the off-support case.
  const auto shifted_ratio = [&](const Vec& u) {
    const double lr = spec_->log_density(z - u) - logq;
    return std::min(1.0, std::exp(lr));
  };
  const double r1 = 0.5 * coeff4(*field_, x_, y_, u_toward_, z) * shifted_ratio(u_toward_) / cstar;
  const double r2 = 0.5 * coeff4(*field_, x_, y_, u_away_, z) * shifted_ratio(u_away_) / cstar;
  double r3 = cmin / cstar - r1 - r2;
  if (r3 < 0) {
    if (r3 < -1e-12) throw std::logic_error("branch_ratios: synchronous ratio went negative");
    r3 = 0.0;
  }
  return {r1, r2, r3, (cx - cmin) / cstar, (cy - cmin) / cstar};
}

}  // namespace levylab
