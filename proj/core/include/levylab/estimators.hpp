#pragma once

#include <functional>
#include <vector>

#include "levylab/functions.hpp"
#include "levylab/simulate.hpp"

namespace levylab {

// Runs fn(0..n-1) on `workers` threads in fixed blocks; results must be
// written to per-index slots so the outcome is scheduling-independent.
void parallel_for(int n, int workers, const std::function<void(int)>& fn);

struct EstimatorValue {
  double value = 0.0;
  double std_error = 0.0;
};

// Monte Carlo semigroup value E^x f(X_t) over n independent trajectories.
EstimatorValue estimate_semigroup(const LevyMeasureSpec& spec, const CoefficientField& field,
                                  const SmoothFunction& f, const Vec& x, double t, int n_paths,
                                  const SimParams& params, std::uint64_t stream_offset = 0);

struct GradientPoint {
  double t = 0.0;
  double value = 0.0;       // |mean f(X_t) - f(Y_t)| / |x - y|
  double std_error = 0.0;   // of the mean difference, scaled by 1/|x-y|
  double survival = 0.0;    // fraction of pairs with T > t
  double survival_std_error = 0.0;
  // 2 ||f|| (survival + 3 se) / |x-y|; holds pathwise for the same batch.
  double coupling_bound = 0.0;
};

// Coupled finite-difference estimator of |P_t f(x) - P_t f(y)| / |x-y| on a
// time grid, together with the empirical coupling survival of the same
// batch.  Differences vanish identically after the coupling time, which is
// the built-in variance reduction of the scheme.
std::vector<GradientPoint> estimate_gradient_curve(const LevyMeasureSpec& spec,
                                                   const CoefficientField& field,
                                                   const SmoothFunction& f, const Vec& x,
                                                   const Vec& y, std::vector<double> t_grid,
                                                   int n_paths, const SimParams& params,
                                                   std::uint64_t stream_offset = 0);

EstimatorValue estimate_gradient_modulus(const LevyMeasureSpec& spec,
                                         const CoefficientField& field, const SmoothFunction& f,
                                         const Vec& x, const Vec& y, double t, int n_paths,
                                         const SimParams& params,
                                         std::uint64_t stream_offset = 0);

struct SurvivalPoint {
  double t = 0.0;
  double survival = 0.0;
  double std_error = 0.0;
};

std::vector<SurvivalPoint> coupling_survival(const LevyMeasureSpec& spec,
                                             const CoefficientField& field, const Vec& x,
                                             const Vec& y, std::vector<double> t_grid,
                                             int n_paths, const SimParams& params,
                                             std::uint64_t stream_offset = 0);

struct RatePoint {
  double t = 0.0;
  double value = 0.0;
  double std_error = 0.0;
};

struct RateFit {
  double slope = 0.0;
  double half_width = 0.0;        // 1.96 * SE of the slope
  double intercept = 0.0;         // log-log intercept
  double predicted_exponent = 0.0;
  int points_used = 0;
  bool matches(double tol) const { return std::abs(slope - predicted_exponent) <= tol; }
};

// OLS on (log t, log value) over the points with value > 3 * std_error;
// needs at least four usable points.
RateFit fit_rate(const std::vector<RatePoint>& points, double predicted_exponent);

// Classical two-sample Kolmogorov-Smirnov statistic; both samples need at
// least 100 entries.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// Coordinate projection helper for multi-d endpoint samples.
std::vector<double> project(const std::vector<Vec>& states, const Vec& direction);

}  // namespace levylab
