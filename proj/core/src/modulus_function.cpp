#include "levylab/modulus_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace levylab {

namespace {

double log_family_radius(ModulusFamily family, double theta) {
  double need = 2.0;
  if (family == ModulusFamily::kLogWeighted) {
    need = std::max(need, theta);
    const double c = (theta - 1.0) * (theta - 2.0);
    if (c > 0) need = std::max(need, std::sqrt(c));
  } else if (family == ModulusFamily::kLipLog) {
    need = std::max(need, std::sqrt((theta + 1.0) * (theta + 2.0)));
  }
  return std::exp(-need);
}

}  // namespace

ModulusFunction ModulusFunction::power(double theta) {
  if (!(theta > 0 && theta < 1))
    throw std::invalid_argument("modulus: power family needs theta in (0,1)");
  return ModulusFunction(ModulusFamily::kPower, theta, 1.0);
}

ModulusFunction ModulusFunction::log_weighted(double theta) {
  if (!(theta > 0)) throw std::invalid_argument("modulus: log-weighted family needs theta > 0");
  return ModulusFunction(ModulusFamily::kLogWeighted, theta,
                         log_family_radius(ModulusFamily::kLogWeighted, theta));
}

ModulusFunction ModulusFunction::lip_log(double theta) {
  if (!(theta > 0)) throw std::invalid_argument("modulus: lip-log family needs theta > 0");
  return ModulusFunction(ModulusFamily::kLipLog, theta,
                         log_family_radius(ModulusFamily::kLipLog, theta));
}

ModulusFunction ModulusFunction::make_unchecked(ModulusFamily family, double theta,
                                                double valid_radius) {
  return ModulusFunction(family, theta, valid_radius);
}

double ModulusFunction::eval(double r, int order) const {
  if (!(r > 0 && r <= valid_radius_))
    throw std::domain_error("modulus: r outside (0, valid_radius]");
  if (order < 0 || order > 3) throw std::invalid_argument("modulus: order must be 0..3");
  return eval_unchecked(r, order);
}

double ModulusFunction::eval_unchecked(double r, int order) const {
  const double t = theta_;
  switch (family_) {
    case ModulusFamily::kPower:
      switch (order) {
        case 0: return std::pow(r, t);
        case 1: return t * std::pow(r, t - 1.0);
        case 2: return t * (t - 1.0) * std::pow(r, t - 2.0);
        default: return t * (t - 1.0) * (t - 2.0) * std::pow(r, t - 3.0);
      }
    case ModulusFamily::kLogWeighted: {
      const double l = std::log(1.0 / r);
      switch (order) {
        case 0: return r * std::pow(l, t);
        case 1: return std::pow(l, t - 1.0) * (l - t);
        case 2: return -(t / r) * std::pow(l, t - 2.0) * (l - (t - 1.0));
        default: return (t / (r * r)) * std::pow(l, t - 3.0) * (l * l - (t - 1.0) * (t - 2.0));
      }
    }
    case ModulusFamily::kLipLog: {
      const double l = std::log(1.0 / r);
      switch (order) {
        case 0: return r * (1.0 - std::pow(l, -t));
        case 1: return 1.0 - std::pow(l, -t) - t * std::pow(l, -t - 1.0);
        case 2: return -(t / r) * (std::pow(l, -t - 1.0) + (t + 1.0) * std::pow(l, -t - 2.0));
        default:
          return (t / (r * r)) *
                 (std::pow(l, -t - 1.0) - (t + 1.0) * (t + 2.0) * std::pow(l, -t - 3.0));
      }
    }
  }
  return 0.0;
}

ShapeReport ModulusFunction::shape_check(int grid_size) const {
  ShapeReport rep;
  rep.worst_psi = rep.worst_d1 = rep.worst_d3 = std::numeric_limits<double>::infinity();
  rep.worst_d2 = -std::numeric_limits<double>::infinity();
  rep.worst_doubling = std::numeric_limits<double>::infinity();

  const double hi = valid_radius_;
  const double lo = hi * 1e-6;
  for (int i = 0; i < grid_size; ++i) {
    const double r = lo * std::pow(hi / lo, static_cast<double>(i) / (grid_size - 1));
    rep.worst_psi = std::min(rep.worst_psi, eval_unchecked(r, 0));
    rep.worst_d1 = std::min(rep.worst_d1, eval_unchecked(r, 1));
    rep.worst_d2 = std::max(rep.worst_d2, eval_unchecked(r, 2));
    rep.worst_d3 = std::min(rep.worst_d3, eval_unchecked(r, 3));
    if (2.0 * r <= hi) {
      const double doubling =
          2.0 * eval_unchecked(r, 0) - eval_unchecked(2.0 * r, 0) +
          eval_unchecked(2.0 * r, 2) * r * r;
      rep.worst_doubling = std::min(rep.worst_doubling, doubling);
    }
  }
  const double tol = 1e-13;
  rep.pass = rep.worst_psi >= -tol && rep.worst_d1 >= -tol && rep.worst_d2 <= tol &&
             rep.worst_d3 >= -tol && rep.worst_doubling >= -tol;
  if (!rep.pass) {
    if (rep.worst_d1 < -tol) rep.failure = "psi' < 0";
    else if (rep.worst_d2 > tol) rep.failure = "psi'' > 0";
    else if (rep.worst_d3 < -tol) rep.failure = "psi''' < 0";
    else if (rep.worst_doubling < -tol) rep.failure = "doubling inequality";
    else rep.failure = "psi < 0";
  }
  return rep;
}

ModulusFunction modulus_for_regime(double alpha1, double alpha2, double theta) {
  if (alpha2 < 1.0) return ModulusFunction::power(theta);
  if (alpha1 > 1.0) return ModulusFunction::lip_log(theta);
  if (alpha1 == 1.0 && !(theta > 1.0))
    throw std::invalid_argument("modulus: log-weighted regime at alpha1 == 1 needs theta > 1");
  return ModulusFunction::log_weighted(theta);
}

const char* to_string(ModulusFamily f) {
  switch (f) {
    case ModulusFamily::kPower: return "power";
    case ModulusFamily::kLogWeighted: return "log-weighted";
    case ModulusFamily::kLipLog: return "lip-log";
  }
  return "?";
}

}  // namespace levylab
