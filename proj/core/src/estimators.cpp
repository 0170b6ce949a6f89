#include "levylab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace levylab {

void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const int block = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int lo = w * block;
    const int hi = std::min(n, lo + block);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (int i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

namespace {

EstimatorValue mean_and_stderr(const std::vector<double>& xs) {
  const int n = static_cast<int>(xs.size());
  double mean = 0.0;
  for (double v : xs) mean += v;
  mean /= n;
  if (n < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : xs) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

}  // namespace

EstimatorValue estimate_semigroup(const LevyMeasureSpec& spec, const CoefficientField& field,
                                  const SmoothFunction& f, const Vec& x, double t, int n_paths,
                                  const SimParams& params, std::uint64_t stream_offset) {
  if (n_paths < 1) throw std::invalid_argument("estimate_semigroup: needs n_paths >= 1");
  if (t == 0.0) return {f.value(x), 0.0};
  SimParams p = params;
  p.horizon = t;
  p.log_events = false;
  std::vector<double> vals(static_cast<std::size_t>(n_paths));
  parallel_for(n_paths, params.threads, [&](int i) {
    const SinglePath path =
        simulate_single(spec, field, x, p, stream_offset + static_cast<std::uint64_t>(i));
    vals[static_cast<std::size_t>(i)] = f.value(path.endpoint);
  });
  return mean_and_stderr(vals);
}

std::vector<GradientPoint> estimate_gradient_curve(const LevyMeasureSpec& spec,
                                                   const CoefficientField& field,
                                                   const SmoothFunction& f, const Vec& x,
                                                   const Vec& y, std::vector<double> t_grid,
                                                   int n_paths, const SimParams& params,
                                                   std::uint64_t stream_offset) {
  if (x == y) throw std::invalid_argument("estimate_gradient_curve: needs x != y");
  if (n_paths < 2) throw std::invalid_argument("estimate_gradient_curve: needs n_paths >= 2");
  std::sort(t_grid.begin(), t_grid.end());
  const double r = norm(x - y);
  const int nt = static_cast<int>(t_grid.size());

  SimParams p = params;
  p.horizon = t_grid.back();
  p.log_events = false;

  std::vector<std::vector<double>> diffs(static_cast<std::size_t>(nt));
  for (auto& d : diffs) d.resize(static_cast<std::size_t>(n_paths));
  std::vector<double> coupling_times(static_cast<std::size_t>(n_paths));

  parallel_for(n_paths, params.threads, [&](int i) {
    const CoupledPath path = simulate_coupled(
        spec, field, x, y, p, stream_offset + static_cast<std::uint64_t>(i), t_grid, true);
    coupling_times[static_cast<std::size_t>(i)] =
        path.coupling_time ? *path.coupling_time : std::numeric_limits<double>::infinity();
    for (int k = 0; k < nt; ++k) {
      const auto& [tk, states] = path.snapshots[static_cast<std::size_t>(k)];
      (void)tk;
      diffs[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] =
          f.value(states.first) - f.value(states.second);
    }
  });

  std::vector<GradientPoint> curve(static_cast<std::size_t>(nt));
  for (int k = 0; k < nt; ++k) {
    GradientPoint& pt = curve[static_cast<std::size_t>(k)];
    pt.t = t_grid[static_cast<std::size_t>(k)];
    const EstimatorValue m = mean_and_stderr(diffs[static_cast<std::size_t>(k)]);
    pt.value = std::abs(m.value) / r;
    pt.std_error = m.std_error / r;
    int alive = 0;
    for (double ct : coupling_times)
      if (ct > pt.t) ++alive;
    pt.survival = static_cast<double>(alive) / n_paths;
    pt.survival_std_error = std::sqrt(pt.survival * (1.0 - pt.survival) / n_paths);
    pt.coupling_bound =
        2.0 * f.sup_norm * (pt.survival + 3.0 * pt.survival_std_error) / r;
  }
  return curve;
}

EstimatorValue estimate_gradient_modulus(const LevyMeasureSpec& spec,
                                         const CoefficientField& field, const SmoothFunction& f,
                                         const Vec& x, const Vec& y, double t, int n_paths,
                                         const SimParams& params, std::uint64_t stream_offset) {
  if (t == 0.0) {
    const double r = norm(x - y);
    if (!(r > 0)) throw std::invalid_argument("estimate_gradient_modulus: needs x != y");
    return {std::abs(f.value(x) - f.value(y)) / r, 0.0};
  }
  const auto curve =
      estimate_gradient_curve(spec, field, f, x, y, {t}, n_paths, params, stream_offset);
  return {curve[0].value, curve[0].std_error};
}

std::vector<SurvivalPoint> coupling_survival(const LevyMeasureSpec& spec,
                                             const CoefficientField& field, const Vec& x,
                                             const Vec& y, std::vector<double> t_grid,
                                             int n_paths, const SimParams& params,
                                             std::uint64_t stream_offset) {
  if (n_paths < 1) throw std::invalid_argument("coupling_survival: needs n_paths >= 1");
  if (!std::is_sorted(t_grid.begin(), t_grid.end()))
    throw std::invalid_argument("coupling_survival: time grid must be increasing");
  SimParams p = params;
  p.horizon = t_grid.back();
  p.log_events = false;
  std::vector<double> coupling_times(static_cast<std::size_t>(n_paths));
  parallel_for(n_paths, params.threads, [&](int i) {
    const CoupledPath path = simulate_coupled(
        spec, field, x, y, p, stream_offset + static_cast<std::uint64_t>(i), {}, true);
    coupling_times[static_cast<std::size_t>(i)] =
        path.coupling_time ? *path.coupling_time : std::numeric_limits<double>::infinity();
  });
  std::vector<SurvivalPoint> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    int alive = 0;
    for (double ct : coupling_times)
      if (ct > t) ++alive;
    SurvivalPoint pt;
    pt.t = t;
    pt.survival = static_cast<double>(alive) / n_paths;
    pt.std_error = std::sqrt(pt.survival * (1.0 - pt.survival) / n_paths);
    out.push_back(pt);
  }
  return out;
}

RateFit fit_rate(const std::vector<RatePoint>& points, double predicted_exponent) {
  std::vector<std::pair<double, double>> usable;
  for (const auto& p : points)
    if (p.value > 3.0 * p.std_error && p.value > 0 && p.t > 0)
      usable.emplace_back(std::log(p.t), std::log(p.value));
  const int n = static_cast<int>(usable.size());
  if (n < 4) throw std::invalid_argument("fit_rate: fewer than 4 usable points");

  double sx = 0, sy = 0;
  for (const auto& [lx, ly] : usable) {
    sx += lx;
    sy += ly;
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, sse = 0;
  for (const auto& [lx, ly] : usable) {
    sxx += (lx - mx) * (lx - mx);
    sxy += (lx - mx) * (ly - my);
  }
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (const auto& [lx, ly] : usable) {
    const double e = ly - (fit.intercept + fit.slope * lx);
    sse += e * e;
  }
  const double dof = std::max(1, n - 2);
  fit.half_width = 1.96 * std::sqrt(sse / dof / sxx);
  fit.predicted_exponent = predicted_exponent;
  fit.points_used = n;
  return fit;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.size() < 100 || b.size() < 100)
    throw std::invalid_argument("ks_two_sample: both samples need at least 100 entries");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

std::vector<double> project(const std::vector<Vec>& states, const Vec& direction) {
  std::vector<double> out;
  out.reserve(states.size());
  for (const Vec& s : states) out.push_back(dot(s, direction));
  return out;
}

}  // namespace levylab
