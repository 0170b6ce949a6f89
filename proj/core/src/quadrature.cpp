#include "levylab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace levylab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1] (QUADPACK dqk15).
constexpr double kXgk[8] = {0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
                            0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
                            0.2077849550078985, 0.0};
constexpr double kWgk[8] = {0.02293532201052922, 0.06309209262997855, 0.1047900103222502,
                            0.1406532597155259,  0.1690047266392679,  0.1903505780647854,
                            0.2044329400752989,  0.2094821410847278};
constexpr double kWg[4] = {0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
                           0.4179591836734694};

struct Panel {
  double a, b;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b, long& evals) {
  const double mid = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  // Layout: fv[0..6] = mid +- h*xgk[0..6] pairs flattened, fv[14] = center.
  double resk = kWgk[7] * f(mid);
  double resg = kWg[3] * f(mid);
  fv[14] = f(mid);
  evals += 1;
  double resk_abs = std::abs(resk);
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = f(mid - dx);
    const double f2 = f(mid + dx);
    evals += 2;
    fv[2 * j] = f1;
    fv[2 * j + 1] = f2;
    resk += kWgk[j] * (f1 + f2);
    resk_abs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fv[14] - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(fv[2 * j] - reskh) + std::abs(fv[2 * j + 1] - reskh));
  resasc *= std::abs(h);
  resk_abs *= std::abs(h);

  Panel p;
  p.a = a;
  p.b = b;
  p.value = resk * h;
  double err = std::abs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double round_floor = 50.0 * std::numeric_limits<double>::epsilon() * resk_abs;
  p.error = std::max(err, round_floor);
  return p;
}

}  // namespace

IntegralResult adaptive_line(const std::function<double(double)>& f, double a, double b,
                             const std::vector<double>& anchors, double rel_tol, double abs_tol,
                             int max_panels) {
  IntegralResult res;
  if (!(b > a)) return res;

  std::vector<double> cuts{a, b};
  for (double x : anchors)
    if (x > a && x < b) cuts.push_back(x);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Panel> heap;
  double total_value = 0.0;
  double total_error = 0.0;
  int n_panels = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Panel p = gk15(f, cuts[i], cuts[i + 1], res.evals);
    total_value += p.value;
    total_error += p.error;
    heap.push(p);
    ++n_panels;
  }

  const auto width_floor = [](const Panel& p) {
    const double scale = std::max({std::abs(p.a), std::abs(p.b), 1e-12});
    return (p.b - p.a) <= 64.0 * std::numeric_limits<double>::epsilon() * scale;
  };

  // Panels too narrow to split are retired; their error stays in the total.
  double retired_error = 0.0;
  while (total_error > std::max(abs_tol, rel_tol * std::abs(total_value))) {
    if (n_panels >= max_panels || heap.empty()) {
      res.converged = heap.empty() && retired_error <=
                          std::max(abs_tol, rel_tol * std::abs(total_value));
      if (!heap.empty()) res.converged = false;
      break;
    }
    Panel worst = heap.top();
    heap.pop();
    if (width_floor(worst)) {
      retired_error += worst.error;
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = gk15(f, worst.a, mid, res.evals);
    Panel right = gk15(f, mid, worst.b, res.evals);
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++n_panels;
  }
  if (total_error > std::max(abs_tol, rel_tol * std::abs(total_value)) && heap.empty() &&
      retired_error > 0)
    res.converged = false;

  res.value = total_value;
  res.error = total_error;
  return res;
}

double fixed_gk15_unit(const std::function<double(double)>& g) {
  double s = 0.5 * kWgk[7] * g(0.5);
  for (int j = 0; j < 7; ++j) {
    const double dx = 0.5 * kXgk[j];
    s += 0.5 * kWgk[j] * (g(0.5 - dx) + g(0.5 + dx));
  }
  return s;
}

std::vector<double> AnchorSet::radial_anchors(const Vec& e, double rmin, double rmax) const {
  std::vector<double> out;
  const auto keep = [&](double rho) {
    if (rho > rmin && rho < rmax && std::isfinite(rho)) out.push_back(rho);
  };
  for (double r : radii) keep(r);
  for (const Sphere& s : spheres) {
    // |rho e - c| = R  ->  rho^2 - 2 rho <e,c> + |c|^2 - R^2 = 0
    const double bq = dot(e, s.center);
    const double cq = norm2(s.center) - s.radius * s.radius;
    const double disc = bq * bq - cq;
    if (disc < 0) continue;
    const double sq = std::sqrt(disc);
    keep(bq - sq);
    keep(bq + sq);
  }
  for (const Bisector& bi : bisectors) {
    const double eu = dot(e, bi.u);
    if (eu > 0) keep(0.5 * norm2(bi.u) / eu);
  }
  for (const ConeEdge& c : cones) {
    // <rho e - b, xi> = delta |rho e - b|, squared into a quadratic in rho.
    const double exi = dot(e, c.axis);
    const double bxi = dot(c.shift, c.axis);
    const double eb = dot(e, c.shift);
    const double A = exi * exi - c.delta * c.delta;
    const double B = 2.0 * (c.delta * c.delta * eb - exi * bxi);
    const double C = bxi * bxi - c.delta * c.delta * norm2(c.shift);
    const auto admissible = [&](double rho) {
      return rho * exi - bxi >= -1e-14 * (1.0 + std::abs(rho));
    };
    if (std::abs(A) < 1e-15) {
      if (std::abs(B) > 1e-300) {
        const double rho = -C / B;
        if (admissible(rho)) keep(rho);
      }
      continue;
    }
    const double disc = B * B - 4.0 * A * C;
    if (disc < 0) continue;
    const double sq = std::sqrt(disc);
    for (double rho : {(-B - sq) / (2.0 * A), (-B + sq) / (2.0 * A)})
      if (admissible(rho)) keep(rho);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> AnchorSet::angular_anchors() const {
  std::vector<double> out;
  const auto keep = [&](double phi) {
    phi = std::fmod(phi, 2.0 * kPi);
    if (phi < 0) phi += 2.0 * kPi;
    out.push_back(phi);
  };
  for (const Sphere& s : spheres) {
    const double n = norm(s.center);
    if (n == 0.0) continue;
    const double phi_c = std::atan2(s.center[1], s.center[0]);
    keep(phi_c);
    keep(phi_c + kPi);
    if (n > s.radius && s.radius > 0) {
      const double t = std::asin(std::min(1.0, s.radius / n));
      keep(phi_c - t);
      keep(phi_c + t);
    }
  }
  for (const Bisector& b : bisectors) {
    const double phi_u = std::atan2(b.u[1], b.u[0]);
    keep(phi_u);
    keep(phi_u + kPi / 2.0);
    keep(phi_u - kPi / 2.0);
  }
  for (const ConeEdge& c : cones) {
    const double phi_axis = std::atan2(c.axis[1], c.axis[0]);
    const double ap = std::acos(std::clamp(c.delta, -1.0, 1.0));
    keep(phi_axis - ap);
    keep(phi_axis + ap);
    if (norm(c.shift) > 0) {
      const double phi_b = std::atan2(c.shift[1], c.shift[0]);
      keep(phi_b);
      keep(phi_b + kPi);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Power-law kernels concentrate their mass at panel edges; a panel spanning
// many decades can then sample as flat zero on every Kronrod node and fool
// the error estimate.  Grade the initial panels geometrically so no panel
// exceeds a fixed width ratio.
void append_graded_cuts(std::vector<double>& cuts, double rmin, double rmax) {
  constexpr double kRatio = 8.0;
  const double pivot = std::clamp(1.0, rmin, rmax);
  for (double s = pivot; s * kRatio < rmax; s *= kRatio) cuts.push_back(s * kRatio);
  const double floor_scale = std::max(rmin, rmax * 1e-30);
  for (double s = pivot; s / kRatio > floor_scale; s /= kRatio) cuts.push_back(s / kRatio);
}

}  // namespace

IntegralResult integrate_shell(int dim, const std::function<double(const Vec&)>& f, double rmin,
                               double rmax, const AnchorSet& anchors,
                               const QuadratureConfig& cfg, double abs_target) {
  IntegralResult total;
  if (!(rmax > rmin)) return total;

  if (dim == 1) {
    for (double sign : {1.0, -1.0}) {
      const Vec e{sign};
      const auto ray = [&](double rho) { return f(rho * e); };
      auto cuts = anchors.radial_anchors(e, rmin, rmax);
      append_graded_cuts(cuts, rmin, rmax);
      IntegralResult r = adaptive_line(ray, rmin, rmax, cuts, cfg.rel_tol, abs_target / 2.0,
                                       cfg.max_panels);
      total.value += r.value;
      total.error += r.error;
      total.evals += r.evals;
      total.converged = total.converged && r.converged;
    }
    return total;
  }

  if (dim != 2) throw std::invalid_argument("integrate_shell: deterministic quadrature needs d in {1,2}");

  // Nested adaptive: angular outer pass over radial inner passes.  The inner
  // absolute tolerance is fixed up front so the accumulated inner error can
  // be accounted for exactly.
  const double inner_abs = abs_target / (16.0 * kPi);
  double inner_error_rate = 0.0;  // max inner error per unit angle seen
  long inner_evals = 0;
  bool inner_ok = true;

  const auto slice = [&](double phi) {
    const Vec e{std::cos(phi), std::sin(phi)};
    const auto ray = [&](double rho) { return f(rho * e) * rho; };
    auto cuts = anchors.radial_anchors(e, rmin, rmax);
    append_graded_cuts(cuts, rmin, rmax);
    IntegralResult r =
        adaptive_line(ray, rmin, rmax, cuts, cfg.rel_tol * 0.5, inner_abs, cfg.inner_max_panels);
    inner_evals += r.evals;
    inner_ok = inner_ok && r.converged;
    inner_error_rate = std::max(inner_error_rate, r.error);
    return r.value;
  };

  const auto phi_cuts = anchors.angular_anchors();
  IntegralResult outer = adaptive_line(slice, 0.0, 2.0 * kPi, phi_cuts, cfg.rel_tol,
                                       abs_target / 2.0, cfg.max_panels);
  total.value = outer.value;
  total.error = outer.error + 2.0 * kPi * inner_error_rate;
  total.evals = outer.evals + inner_evals;
  total.converged = outer.converged && inner_ok;
  return total;
}

}  // namespace levylab
