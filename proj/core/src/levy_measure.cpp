#include "levylab/levy_measure.hpp"

#include <cmath>
#include <stdexcept>

namespace levylab {

namespace {

constexpr double kPi = 3.14159265358979323846;

double full_sphere_area(int d) {
  switch (d) {
    case 1: return 2.0;
    case 2: return 2.0 * kPi;
    case 3: return 4.0 * kPi;
    default: return 2.0 * std::pow(kPi, d / 2.0) / std::tgamma(d / 2.0);
  }
}

double cap_area(int d, double delta) {
  // Surface measure of { e in S^{d-1} : <e, xi> >= delta }.
  switch (d) {
    case 1: return 1.0;
    case 2: return 2.0 * std::acos(delta);
    case 3: return 2.0 * kPi * (1.0 - delta);
    default: throw std::invalid_argument("cone measure: dimension > 3 not supported");
  }
}

Vec cap_direction_moment(int d, const Vec& xi, double delta) {
  double scale = 0.0;
  switch (d) {
    case 1: scale = 1.0; break;
    case 2: scale = 2.0 * std::sqrt(1.0 - delta * delta); break;
    case 3: scale = kPi * (1.0 - delta * delta); break;
    default: throw std::invalid_argument("cone measure: dimension > 3 not supported");
  }
  return scale * xi;
}

// Orthonormal completion of a unit vector (d = 2, 3).
void frame(const Vec& xi, Vec& p1, Vec& p2) {
  const int d = xi.dim;
  if (d == 2) {
    p1 = Vec{-xi[1], xi[0]};
    return;
  }
  Vec t = std::abs(xi[0]) < 0.9 ? axis_vec(3, 0) : axis_vec(3, 1);
  // p1 = normalize(t - <t,xi> xi)
  p1 = t - dot(t, xi) * xi;
  p1 *= 1.0 / norm(p1);
  // p2 = xi x p1
  p2 = Vec{xi[1] * p1[2] - xi[2] * p1[1], xi[2] * p1[0] - xi[0] * p1[2],
           xi[0] * p1[1] - xi[1] * p1[0]};
}

}  // namespace

LevyMeasureSpec LevyMeasureSpec::homogeneous(int dim, double alpha, double amplitude) {
  LevyMeasureSpec s;
  s.family_ = LevyFamily::kHomogeneousStable;
  s.dim_ = dim;
  s.alpha_ = alpha;
  s.amplitude_ = amplitude;
  s.radius_ = std::numeric_limits<double>::infinity();
  s.finalize();
  return s;
}

LevyMeasureSpec LevyMeasureSpec::truncated(int dim, double alpha, double amplitude,
                                           double radius) {
  if (!(radius > 0) || !std::isfinite(radius))
    throw std::invalid_argument("truncated measure: radius must be positive and finite");
  LevyMeasureSpec s;
  s.family_ = LevyFamily::kTruncatedStable;
  s.dim_ = dim;
  s.alpha_ = alpha;
  s.amplitude_ = amplitude;
  s.radius_ = radius;
  s.finalize();
  return s;
}

LevyMeasureSpec LevyMeasureSpec::cone(int dim, double alpha, double amplitude, Vec xi,
                                      double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("cone measure: delta must lie in (0,1)");
  if (xi.dim != dim) throw std::invalid_argument("cone measure: axis dimension mismatch");
  const double n = norm(xi);
  if (!(n > 0)) throw std::invalid_argument("cone measure: axis must be nonzero");
  xi *= 1.0 / n;
  LevyMeasureSpec s;
  s.family_ = LevyFamily::kConeStable;
  s.dim_ = dim;
  s.alpha_ = alpha;
  s.amplitude_ = amplitude;
  s.radius_ = 1.0;
  s.cone_ = ConeSpec{xi, delta};
  s.finalize();
  return s;
}

void LevyMeasureSpec::finalize() {
  if (dim_ < 1 || dim_ > kMaxDim) throw std::invalid_argument("measure: dimension out of range");
  if (!(alpha_ > 0.0 && alpha_ < 2.0))
    throw std::invalid_argument("measure: alpha must lie in (0,2)");
  if (!(amplitude_ > 0.0)) throw std::invalid_argument("measure: amplitude must be positive");
  if (cone_) {
    surface_weight_ = cap_area(dim_, cone_->delta);
    direction_moment_ = cap_direction_moment(dim_, cone_->xi, cone_->delta);
  } else {
    surface_weight_ = full_sphere_area(dim_);
    direction_moment_ = zero_vec(dim_);
  }
}

bool LevyMeasureSpec::in_support(const Vec& z) const {
  const double r = norm(z);
  if (r == 0.0 || r > radius_) return false;
  if (cone_) return dot(z, cone_->xi) >= cone_->delta * r;
  return true;
}

double LevyMeasureSpec::density(const Vec& z) const {
  if (!in_support(z)) return norm(z) == 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return amplitude_ * std::pow(norm(z), -(dim_ + alpha_));
}

double LevyMeasureSpec::log_density(const Vec& z) const {
  const double r = norm(z);
  if (r == 0.0) return std::numeric_limits<double>::infinity();
  if (!in_support(z)) return -std::numeric_limits<double>::infinity();
  return std::log(amplitude_) - (dim_ + alpha_) * std::log(r);
}

double LevyMeasureSpec::ball_abs_moment(double p, double r) const {
  if (!(p > alpha_)) throw std::invalid_argument("ball_abs_moment: needs p > alpha");
  const double b = std::min(r, radius_);
  if (!(b > 0)) return 0.0;
  return amplitude_ * surface_weight_ * std::pow(b, p - alpha_) / (p - alpha_);
}

double LevyMeasureSpec::tail_mass(double r) const {
  if (r >= radius_) return 0.0;
  if (!(r > 0)) return std::numeric_limits<double>::infinity();
  const double outer = std::isfinite(radius_) ? std::pow(radius_, -alpha_) : 0.0;
  return amplitude_ * surface_weight_ * (std::pow(r, -alpha_) - outer) / alpha_;
}

Vec LevyMeasureSpec::first_moment_annulus(double a, double b) const {
  if (isotropic()) return zero_vec(dim_);
  const double hi = std::min(b, radius_);
  if (!(hi > a)) return zero_vec(dim_);
  double radial;
  if (alpha_ == 1.0)
    radial = std::log(hi / a);
  else
    radial = (std::pow(hi, 1.0 - alpha_) - std::pow(a, 1.0 - alpha_)) / (1.0 - alpha_);
  return (amplitude_ * radial) * direction_moment_;
}

double LevyMeasureSpec::sample_radius(double eps, double u01) const {
  // Inverse transform of rho^{-1-alpha} on [eps, R].
  const double lo = std::pow(eps, -alpha_);
  const double hi = std::isfinite(radius_) ? std::pow(radius_, -alpha_) : 0.0;
  return std::pow(lo - u01 * (lo - hi), -1.0 / alpha_);
}

Vec LevyMeasureSpec::sample_direction(Philox4x32& rng) const {
  if (cone_) {
    const ConeSpec& c = *cone_;
    if (dim_ == 1) return c.xi;
    if (dim_ == 2) {
      const double ap = std::acos(c.delta);
      const double phi = (2.0 * uniform01(rng) - 1.0) * ap;
      Vec p1{}, p2{};
      frame(c.xi, p1, p2);
      return std::cos(phi) * c.xi + std::sin(phi) * p1;
    }
    // d = 3: <e, xi> uniform on [delta, 1], azimuth uniform.
    const double mu = c.delta + (1.0 - c.delta) * uniform01(rng);
    const double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
    const double phi = 2.0 * kPi * uniform01(rng);
    Vec p1{}, p2{};
    frame(c.xi, p1, p2);
    return mu * c.xi + (s * std::cos(phi)) * p1 + (s * std::sin(phi)) * p2;
  }
  if (dim_ == 1) return uniform01(rng) < 0.5 ? Vec{1.0} : Vec{-1.0};
  if (dim_ == 2) {
    const double phi = 2.0 * kPi * uniform01(rng);
    return Vec{std::cos(phi), std::sin(phi)};
  }
  // Gaussian direction; Box-Muller keeps the draw count fixed per call.
  Vec g(dim_);
  for (int i = 0; i < dim_; i += 2) {
    const double u1 = uniform01_open_left(rng);
    const double u2 = uniform01(rng);
    const double m = std::sqrt(-2.0 * std::log(u1));
    g[i] = m * std::cos(2.0 * kPi * u2);
    if (i + 1 < dim_) g[i + 1] = m * std::sin(2.0 * kPi * u2);
  }
  const double n = norm(g);
  if (n == 0.0) return axis_vec(dim_, 0);
  return (1.0 / n) * g;
}

Vec LevyMeasureSpec::sample_restricted(Philox4x32& rng, double eps) const {
  const double rho = sample_radius(eps, uniform01(rng));
  return rho * sample_direction(rng);
}

std::vector<Vec> LevyMeasureSpec::direction_grid(int n) const {
  std::vector<Vec> grid;
  if (dim_ == 1) {
    grid.push_back(Vec{1.0});
    if (n > 1) grid.push_back(Vec{-1.0});
    return grid;
  }
  if (dim_ == 2) {
    for (int k = 0; k < n; ++k) {
      const double phi = 2.0 * kPi * (k + 0.5) / n;
      grid.push_back(Vec{std::cos(phi), std::sin(phi)});
    }
    return grid;
  }
  // d = 3: deterministic Fibonacci-style panel.
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  for (int k = 0; k < n; ++k) {
    const double mu = 1.0 - 2.0 * (k + 0.5) / n;
    const double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
    const double phi = 2.0 * kPi * k / golden;
    grid.push_back(Vec{s * std::cos(phi), s * std::sin(phi), mu});
  }
  return grid;
}

BoundsCheckReport stable_bounds_check(const LevyMeasureSpec& spec, double alpha1, double alpha2,
                                      double c1, double c2, const ConeSpec& lower_cone,
                                      int radii, int directions) {
  if (!(alpha1 > 0 && alpha1 <= alpha2 && alpha2 < 2))
    throw std::invalid_argument("stable_bounds_check: need 0 < alpha1 <= alpha2 < 2");
  BoundsCheckReport rep;
  rep.worst_lower_ratio = std::numeric_limits<double>::infinity();
  rep.worst_upper_ratio = 0.0;
  const int d = spec.dim();
  const double r_hi = std::isfinite(spec.support_radius())
                          ? std::max(1.0, spec.support_radius())
                          : 2.0;

  const auto dirs = spec.dim() == 1 ? std::vector<Vec>{Vec{1.0}, Vec{-1.0}}
                                    : LevyMeasureSpec::homogeneous(d, 1.0, 1.0).direction_grid(
                                          directions);
  for (int i = 0; i < radii; ++i) {
    const double t = static_cast<double>(i) / (radii - 1);
    const double rho = 1e-6 * std::pow(r_hi / 1e-6, t);
    for (const Vec& e : dirs) {
      const Vec z = rho * e;
      const double q = spec.density(z);
      // Upper bound is global.
      const double upper = c2 * std::pow(rho, -(d + alpha2));
      rep.worst_upper_ratio = std::max(rep.worst_upper_ratio, q / upper);
      // Lower bound only inside V.
      const bool in_v = rho <= 1.0 && dot(z, lower_cone.xi) >= lower_cone.delta * rho;
      if (in_v) {
        const double lower = c1 * std::pow(rho, -(d + alpha1));
        rep.worst_lower_ratio = std::min(rep.worst_lower_ratio, q / lower);
      }
    }
  }
  rep.pass_lower = rep.worst_lower_ratio >= 1.0 - 1e-12;
  rep.pass_upper = rep.worst_upper_ratio <= 1.0 + 1e-12;
  return rep;
}

}  // namespace levylab
