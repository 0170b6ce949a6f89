#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "levylab/vec.hpp"

namespace levylab {

struct QuadratureConfig {
  // Convergence target per integral: total error <= max(abs_tol, rel_tol*|I|).
  double rel_tol = 1e-8;
  double abs_tol = 1e-8;
  // Radius of the central shell excluded from singular operator integrals;
  // 0 selects it automatically so the Taylor remainder bound stays below
  // abs_tol/10.
  double shell_radius = 0.0;
  int max_panels = 60000;
  int inner_max_panels = 6000;
  // Hard cap for the radial cut of measures with unbounded support; the
  // discarded tail is always accounted for in the error estimate.
  double tail_cap = 1e8;
  // Sphere panel size for direction infima (J-type quantities).
  int direction_grid = 16;
};

struct IntegralResult {
  double value = 0.0;
  double error = 0.0;
  long evals = 0;
  bool converged = true;
};

struct OperatorResult {
  double value = 0.0;
  double error_estimate = 0.0;
  double shell_remainder_bound = 0.0;
};

class ToleranceNotMet : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Globally adaptive Gauss-Kronrod 7-15 on [a, b].  `anchors` lists interior
// points where the integrand has kinks or integrable endpoint-type
// singularities; every anchor becomes an initial panel boundary so the error
// estimator never straddles one.
IntegralResult adaptive_line(const std::function<double(double)>& f, double a, double b,
                             const std::vector<double>& anchors, double rel_tol, double abs_tol,
                             int max_panels);

// Single fixed 15-point Kronrod pass over [0, 1]; used for the smooth
// Taylor-path line integrals inside operator integrands.
double fixed_gk15_unit(const std::function<double(double)>& g);

// Geometric loci where piecewise-smooth kernel integrands change analytic
// form.  Radial anchors along a ray z = rho*e are the positive roots of the
// corresponding quadratics; angular anchors (d = 2) are the directions where
// a ray meets a locus tangentially or through its center.
struct AnchorSet {
  struct Sphere {
    Vec center;
    double radius;
  };
  struct ConeEdge {
    Vec shift;  // cone apex; the locus is <z-shift, axis> = delta |z-shift|
    Vec axis;
    double delta;
  };
  struct Bisector {
    Vec u;  // locus |z| = |z-u|
  };

  std::vector<Sphere> spheres;
  std::vector<ConeEdge> cones;
  std::vector<Bisector> bisectors;
  std::vector<double> radii;  // direction-independent radii

  void add_sphere(const Vec& center, double radius) { spheres.push_back({center, radius}); }
  void add_cone(const Vec& shift, const Vec& axis, double delta) {
    cones.push_back({shift, axis, delta});
  }
  void add_bisector(const Vec& u) { bisectors.push_back({u}); }
  void add_radius(double r) { radii.push_back(r); }

  std::vector<double> radial_anchors(const Vec& e, double rmin, double rmax) const;
  std::vector<double> angular_anchors() const;  // d = 2
};

// integral over { rmin <= |z| <= rmax } of f(z) dz, written in polar form.
// d = 1 integrates the two rays; d = 2 nests an adaptive angular pass over
// adaptive radial passes.  abs_target is distributed across the pieces.
IntegralResult integrate_shell(int dim, const std::function<double(const Vec&)>& f, double rmin,
                               double rmax, const AnchorSet& anchors,
                               const QuadratureConfig& cfg, double abs_target);

}  // namespace levylab
