#include "cli/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "levylab/estimators.hpp"
#include "levylab/functions.hpp"
#include "levylab/moduli.hpp"
#include "levylab/operators.hpp"
#include "levylab/rng.hpp"

namespace levylab::cli {

namespace {

SmoothFunction test_function(const std::string& name, int dim) {
  if (name == "gaussian") return gaussian_bump(dim);
  if (name == "cauchy") return cauchy_bump(dim);
  return cosine_wave(dim);
}

ModulusFunction profile_from(const std::string& family, double theta) {
  if (family == "power") return ModulusFunction::power(theta);
  if (family == "log-weighted") return ModulusFunction::log_weighted(theta);
  return ModulusFunction::lip_log(theta);
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  if (n == 1) {
    g.push_back(hi);
    return g;
  }
  for (int i = 0; i < n; ++i)
    g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return g;
}

void require_dim12(const Config& c) {
  if (c.integer("dimension") > 2)
    throw ConfigError("dimension: deterministic quadrature supports d in {1,2}");
}

// ---------------------------------------------------------------------------

ExperimentReport check_operator_identity(const Config& c) {
  require_dim12(c);
  const auto spec = make_measure(c);
  const auto field = make_field(c);
  const auto cfg = make_quad(c);
  const int dim = spec.dim();
  const auto f = gaussian_bump(dim);
  const auto g = cauchy_bump(dim);
  const int pairs = static_cast<int>(c.integer("exp.pairs"));
  const double rtol = c.real("exp.rtol");

  ExperimentReport rep;
  rep.command = "check operator-identity";
  CsvTable t;
  t.columns = {"pair", "x", "y", "coupled_value", "lf", "lg", "residual", "scale", "pass"};

  Philox4x32 rng(static_cast<std::uint64_t>(c.integer("seed")), 0);
  double worst = 0.0;
  for (int i = 0; i < pairs; ++i) {
    Vec x(dim), y(dim);
    do {
      for (int k = 0; k < dim; ++k) {
        x[k] = 4.0 * (uniform01(rng) - 0.5);
        y[k] = 4.0 * (uniform01(rng) - 0.5);
      }
    } while (norm(x - y) < 1e-3);
    const double lf = apply_generator(spec, field, f, x, cfg).value;
    const double lg = apply_generator(spec, field, g, y, cfg).value;
    const double both = apply_coupling(spec, field, pair_sum(f, g), x, y, 1.0, cfg).value;
    const double scale = 1.0 + std::abs(lf) + std::abs(lg);
    const double residual = std::abs(both - lf - lg);
    worst = std::max(worst, residual / scale);
    const bool ok = residual <= rtol * scale;
    rep.pass = rep.pass && ok;
    t.add_row({std::to_string(i), csv_vec(x), csv_vec(y), csv_num(both), csv_num(lf),
               csv_num(lg), csv_num(residual), csv_num(scale), ok ? "1" : "0"});
  }
  rep.tables.push_back(std::move(t));
  rep.summary["worst_relative_residual"] = worst;
  rep.summary["tolerance"] = rtol;
  rep.summary["pairs"] = pairs;
  return rep;
}

ExperimentReport check_lc_form(const Config& c) {
  const auto cfg = make_quad(c);
  const double rtol = c.real("exp.rtol");

  struct Case {
    LevyMeasureSpec spec;
    CoefficientField field;
    ModulusFunction psi;
    double r, kappa;
  };
  const std::vector<Case> cases = {
      {LevyMeasureSpec::truncated(1, 1.5, 1.0, 1.0), CoefficientField::sinusoidal(1, 2.0, 1.0),
       ModulusFunction::power(0.5), 0.05, 1.0},
      {LevyMeasureSpec::truncated(1, 0.5, 1.0, 1.0), CoefficientField::holder(1, 2.0, 0.8, 0.6),
       ModulusFunction::lip_log(1.0), 0.02, 0.5},
      {LevyMeasureSpec::homogeneous(1, 1.5, 1.0), CoefficientField::constant(1, 1.5),
       ModulusFunction::log_weighted(1.0), 0.01, 1.0},
      {LevyMeasureSpec::cone(1, 0.8, 1.0, Vec{1.0}, 0.3),
       CoefficientField::sinusoidal(1, 2.0, 0.5), ModulusFunction::power(0.4), 0.03, 1.0},
      {LevyMeasureSpec::truncated(2, 1.2, 1.0, 1.0), CoefficientField::sinusoidal(2, 2.0, 1.0),
       ModulusFunction::power(0.5), 0.05, 1.0},
      {LevyMeasureSpec::cone(2, 1.5, 1.0, Vec{1.0, 0.0}, 0.4), CoefficientField::constant(2, 2.0),
       ModulusFunction::power(0.6), 0.02, 0.7},
      {LevyMeasureSpec::truncated(1, 1.9, 1.0, 1.0), CoefficientField::holder(1, 2.0, 0.5, 0.8),
       ModulusFunction::log_weighted(2.0), 0.04, 1.0},
      {LevyMeasureSpec::truncated(1, 1.5, 1.0, 1.0),
       CoefficientField::table(1, {-1.0, 0.0, 1.0}, {1.0, 2.0, 1.5}),
       ModulusFunction::power(0.5), 0.5, 0.3},
      {LevyMeasureSpec::homogeneous(2, 1.0, 1.0), CoefficientField::constant(2, 1.0),
       ModulusFunction::power(0.5), 0.1, 1.0},
      {LevyMeasureSpec::truncated(1, 1.5, 1.0, 1.0), CoefficientField::sinusoidal(1, 2.0, 1.0),
       ModulusFunction::lip_log(0.5), 1e-3, 1.0},
  };

  ExperimentReport rep;
  rep.command = "check lc-form";
  CsvTable t;
  t.columns = {"case", "dim", "alpha", "psi", "theta", "r", "kappa",
               "quad", "closed", "rel_err", "pass"};
  double worst = 0.0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Case& cs = cases[i];
    const DistanceProfile f(cs.psi, cs.psi.valid_radius());
    Vec x(cs.spec.dim()), y(cs.spec.dim());
    x[0] = 0.2;
    y = x;
    y[0] += cs.r;
    const auto quad = apply_coupling_paired(cs.spec, cs.field, f, x, y, cs.kappa, cfg);
    const auto form = paired_distance_form(cs.spec, cs.field, f, x, y, cs.kappa, cfg);
    const double rel = std::abs(quad.value - form.value) / (std::abs(form.value) + 1e-12);
    worst = std::max(worst, rel);
    const bool ok = rel <= rtol;
    rep.pass = rep.pass && ok;
    t.add_row({std::to_string(i), std::to_string(cs.spec.dim()), csv_num(cs.spec.alpha()),
               to_string(cs.psi.family()), csv_num(cs.psi.theta()), csv_num(cs.r),
               csv_num(cs.kappa), csv_num(quad.value), csv_num(form.value), csv_num(rel),
               ok ? "1" : "0"});
  }
  rep.tables.push_back(std::move(t));
  rep.summary["worst_relative_error"] = worst;
  rep.summary["tolerance"] = rtol;
  return rep;
}

ExperimentReport check_prop32(const Config& c) {
  const auto cfg = make_quad(c);
  const double tol = c.real("exp.rtol");
  const double eps0 = c.real("exp.eps0");
  const double kappa = c.real("sim.kappa");
  const int states = static_cast<int>(c.integer("exp.pairs"));

  const auto spec_p2 = LevyMeasureSpec::truncated(1, 1.5, 1.0, 1.0);
  const auto spec_p1 = LevyMeasureSpec::truncated(1, 0.5, 1.0, 1.0);
  const auto field = CoefficientField::sinusoidal(1, 2.0, 1.0);
  const std::vector<ModulusFunction> psis = {
      ModulusFunction::power(0.5), ModulusFunction::lip_log(1.0),
      ModulusFunction::log_weighted(1.0)};

  ExperimentReport rep;
  rep.command = "check prop32";
  CsvTable t;
  t.columns = {"state", "variant", "psi", "theta", "r", "x", "margin", "pass"};
  double worst = std::numeric_limits<double>::infinity();
  constexpr double kGolden = 0.61803398874989484820;
  for (int i = 0; i < states; ++i) {
    const bool second = (i % 2 == 0);
    const auto& spec = second ? spec_p2 : spec_p1;
    const auto variant = second ? BoundVariant::kSecondMoment : BoundVariant::kFirstMoment;
    const auto& psi = psis[static_cast<std::size_t>(i) % psis.size()];
    const DistanceProfile f(psi, psi.valid_radius());
    const double r = 1e-3 * std::pow(eps0 / 1e-3, (i + 0.5) / states);
    Vec x{-3.14159265 + 6.2831853 * std::fmod(kGolden * (i + 1), 1.0)};
    const Vec y{x[0] + r};
    const double margin =
        coupling_bound_margin(spec, field, f, x, y, kappa, eps0, variant, cfg);
    worst = std::min(worst, margin);
    const bool ok = margin >= -tol;
    rep.pass = rep.pass && ok;
    t.add_row({std::to_string(i), second ? "p2" : "p1", to_string(psi.family()),
               csv_num(psi.theta()), csv_num(r), csv_vec(x), csv_num(margin), ok ? "1" : "0"});
  }
  rep.tables.push_back(std::move(t));
  rep.summary["worst_margin"] = worst;
  rep.summary["tolerance"] = tol;
  return rep;
}

ExperimentReport check_drift(const Config& c) {
  require_dim12(c);
  const auto spec = make_measure(c);
  const auto field = make_field(c);
  const auto cfg = make_quad(c);
  const auto psi = profile_from(c.str("exp.psi"), c.real("exp.theta"));
  const int p = static_cast<int>(c.integer("exp.p"));
  const double c1 = c.real("exp.c1");
  double c2 = c.real("exp.c2");
  if (c2 < 0) c2 = drift_tail_constant(spec, field, psi.eval(psi.valid_radius(), 0));

  ExperimentReport rep;
  rep.command = "check drift";
  CsvTable t;
  t.columns = {"r", "margin", "pass"};
  const auto grid = log_grid(c.real("exp.r-min"), c.real("exp.r-max"),
                             static_cast<int>(c.integer("exp.grid")));
  double worst = -std::numeric_limits<double>::infinity();
  for (double r : grid) {
    const double m = drift_margin(spec, field, psi, r, c1, c2, p, cfg);
    worst = std::max(worst, m);
    const bool ok = m < 0.0;
    rep.pass = rep.pass && ok;
    t.add_row({csv_num(r), csv_num(m), ok ? "1" : "0"});
  }
  rep.tables.push_back(std::move(t));
  rep.summary["worst_margin"] = worst;
  rep.summary["c1"] = c1;
  rep.summary["c2"] = c2;

  // Contraction-rate cross-check on the closed-form configuration:
  // J(r) = 4 sqrt2 r^{-1/2} and psi = r^theta give
  // lambda(eps) = 4 sqrt2 theta(1-theta) 2^{theta-2} eps^{theta-1/2}.
  const double theta = 0.3;
  const double eps = c.real("exp.eps");
  const auto href = LevyMeasureSpec::homogeneous(1, 0.5, 1.0);
  const double lam = contraction_rate(href, ModulusFunction::power(theta), eps, 50, cfg);
  const double closed = 4.0 * std::sqrt(2.0) * theta * (1.0 - theta) *
                        std::pow(2.0, theta - 2.0) * std::pow(eps, theta - 0.5);
  const double rel = std::abs(lam - closed) / closed;
  const bool lam_ok = rel <= 1e-4;
  rep.pass = rep.pass && lam_ok;
  rep.summary["contraction_rate"] = {{"computed", lam},
                                     {"closed_form", closed},
                                     {"rel_err", rel},
                                     {"pass", lam_ok}};
  return rep;
}

ExperimentReport kernel_mass(const Config& c) {
  require_dim12(c);
  const auto spec = make_measure(c);
  const auto field = make_field(c);
  const auto cfg = make_quad(c);
  const int dim = spec.dim();
  const Vec x0 = c.vec_dim("sim.x0", dim);

  ExperimentReport rep;
  rep.command = "kernel mass";
  CsvTable t;
  t.columns = {"op", "u", "value", "error_estimate", "shell_remainder_bound"};

  const auto radii = log_grid(c.real("exp.r-min"), c.real("exp.r-max"), 4);
  const auto dirs = spec.dim() == 1 ? std::vector<Vec>{Vec{1.0}, Vec{-1.0}}
                                    : spec.direction_grid(4);
  double worst_flip = 0.0;
  for (double r : radii) {
    for (const Vec& e : dirs) {
      const Vec u = r * e;
      const auto nu = displaced_min_mass(spec, u, cfg);
      t.add_row({"nu", csv_vec(u), csv_num(nu.value), csv_num(nu.error_estimate), "0"});
      const auto nu_flip = displaced_min_mass(spec, -1.0 * u, cfg);
      worst_flip = std::max(worst_flip, std::abs(nu.value - nu_flip.value) /
                                            (std::abs(nu.value) + 1e-300));
      const Vec y = x0 + u;
      const auto mu = coupling_pair_mass(spec, field, x0, y, u, cfg);
      t.add_row({"mu", csv_vec(u), csv_num(mu.value), csv_num(mu.error_estimate), "0"});
    }
  }
  rep.tables.push_back(std::move(t));
  rep.summary["worst_flip_asymmetry"] = worst_flip;
  rep.pass = worst_flip <= c.real("exp.rtol");
  return rep;
}

ExperimentReport kernel_jnu(const Config& c) {
  require_dim12(c);
  const auto spec = make_measure(c);
  const auto cfg = make_quad(c);

  ExperimentReport rep;
  rep.command = "kernel jnu";
  CsvTable t;
  t.columns = {"r", "value", "directions"};
  const int dirs = spec.isotropic() ? 1 : cfg.direction_grid;
  std::vector<RatePoint> pts;
  double prefactor = std::numeric_limits<double>::infinity();
  for (double r :
       log_grid(c.real("exp.r-min"), c.real("exp.r-max"),
                static_cast<int>(c.integer("exp.points")))) {
    const double j = min_displaced_mass(spec, r, cfg);
    pts.push_back({r, j, 0.0});
    prefactor = std::min(prefactor, j * std::pow(r, spec.alpha()));
    t.add_row({csv_num(r), csv_num(j), std::to_string(dirs)});
  }
  rep.tables.push_back(std::move(t));
  const auto fit = fit_rate(pts, -spec.alpha());
  const double slope_tol = c.real("exp.slope-tol");
  const bool slope_ok = std::abs(fit.slope + spec.alpha()) <= slope_tol;
  const bool pref_ok = prefactor > 0.0;
  rep.pass = spec.isotropic() ? slope_ok : (pref_ok && prefactor > 0.0);
  rep.summary["slope"] = fit.slope;
  rep.summary["predicted"] = -spec.alpha();
  rep.summary["slope_tolerance"] = slope_tol;
  rep.summary["slope_within_tolerance"] = slope_ok;
  rep.summary["prefactor"] = prefactor;
  rep.summary["isotropic"] = spec.isotropic();
  return rep;
}

ExperimentReport modulus_w(const Config& c) {
  require_dim12(c);
  const auto spec = make_measure(c);
  const auto field = make_field(c);
  const auto pert = make_perturbation(c);
  const auto cfg = make_quad(c);
  const int p = static_cast<int>(c.integer("exp.p"));

  ExperimentReport rep;
  rep.command = "modulus w";
  CsvTable t;
  t.columns = {"r", "p", "w", "w_exact", "w_mu", "w_star"};
  for (double r : log_grid(c.real("exp.r-min"), c.real("exp.r-max"),
                           static_cast<int>(c.integer("exp.points")))) {
    const auto w = coefficient_modulus(spec, field, r, p, cfg);
    const auto wm = perturbation_modulus(pert, r, p, cfg);
    t.add_row({csv_num(r), std::to_string(p), csv_num(w.value),
               w.exact_oscillation ? "1" : "0", csv_num(wm.value),
               csv_num(w.value + wm.value)});
  }
  rep.tables.push_back(std::move(t));
  rep.summary["p"] = p;
  return rep;
}

void append_event_rows(CsvTable& t, std::uint64_t stream, const std::vector<JumpEvent>& events,
                       int dim) {
  for (const auto& e : events) {
    std::vector<std::string> row{std::to_string(stream), csv_num(e.time),
                                 std::to_string(static_cast<int>(e.kind))};
    for (int k = 0; k < dim; ++k) row.push_back(csv_num(e.z[k]));
    for (int k = 0; k < dim; ++k) row.push_back(csv_num(e.x_post[k]));
    for (int k = 0; k < dim; ++k) row.push_back(csv_num(e.y_post[k]));
    t.add_row(std::move(row));
  }
}

std::vector<std::string> event_columns(int dim) {
  std::vector<std::string> cols{"stream", "time", "branch"};
  for (const char* base : {"z", "x", "y"})
    for (int k = 0; k < dim; ++k) cols.push_back(std::string(base) + std::to_string(k));
  return cols;
}

ExperimentReport simulate_single_cmd(const Config& c) {
  const auto spec = make_measure(c);
  const auto field = make_field(c);
  const auto params = make_sim(c);
  const int dim = spec.dim();
  const Vec x0 = c.vec_dim("sim.x0", dim);
  const int n = static_cast<int>(c.integer("sim.n"));

  std::vector<SinglePath> paths(static_cast<std::size_t>(n));
  parallel_for(n, params.threads, [&](int i) {
    paths[static_cast<std::size_t>(i)] =
        simulate_single(spec, field, x0, params, static_cast<std::uint64_t>(i));
  });

  ExperimentReport rep;
  rep.command = "simulate single";
  CsvTable ends;
  ends.name = "endpoints";
  ends.columns = {"stream"};
  for (int k = 0; k < dim; ++k) ends.columns.push_back("x" + std::to_string(k));
  double mean = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto& p = paths[static_cast<std::size_t>(i)];
    std::vector<std::string> row{std::to_string(i)};
    for (int k = 0; k < dim; ++k) row.push_back(csv_num(p.endpoint[k]));
    ends.add_row(std::move(row));
    mean += p.endpoint[0];
  }
  rep.tables.push_back(std::move(ends));
  if (params.log_events) {
    CsvTable ev;
    ev.name = "events";
    ev.columns = event_columns(dim);
    for (int i = 0; i < n; ++i)
      append_event_rows(ev, static_cast<std::uint64_t>(i),
                        paths[static_cast<std::size_t>(i)].events, dim);
    rep.tables.push_back(std::move(ev));
  }
  rep.summary["event_rate"] = event_rate(spec, field, params.jump_cutoff);
  rep.summary["truncation_bias_proxy"] =
      truncation_bias_proxy(spec, field, params.jump_cutoff);
  rep.summary["endpoint_mean_first_coordinate"] = mean / n;
  rep.summary["paths"] = n;
  return rep;
}

ExperimentReport simulate_couple_cmd(const Config& c) {
  const auto spec = make_measure(c);
  const auto field = make_field(c);
  const auto params = make_sim(c);
  const int dim = spec.dim();
  const Vec x0 = c.vec_dim("sim.x0", dim);
  const Vec y0 = c.vec_dim("sim.y0", dim);
  const int n = static_cast<int>(c.integer("sim.n"));

  std::vector<CoupledPath> paths(static_cast<std::size_t>(n));
  parallel_for(n, params.threads, [&](int i) {
    paths[static_cast<std::size_t>(i)] =
        simulate_coupled(spec, field, x0, y0, params, static_cast<std::uint64_t>(i));
  });

  ExperimentReport rep;
  rep.command = "simulate couple";
  CsvTable ends;
  ends.name = "endpoints";
  ends.columns = {"stream", "coupling_time"};
  for (int k = 0; k < dim; ++k) ends.columns.push_back("x" + std::to_string(k));
  for (int k = 0; k < dim; ++k) ends.columns.push_back("y" + std::to_string(k));
  int coupled = 0;
  double t_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto& p = paths[static_cast<std::size_t>(i)];
    std::vector<std::string> row{std::to_string(i)};
    if (p.coupling_time) {
      row.push_back(csv_num(*p.coupling_time));
      ++coupled;
      t_sum += *p.coupling_time;
    } else {
      row.push_back("inf");
    }
    for (int k = 0; k < dim; ++k) row.push_back(csv_num(p.x_end[k]));
    for (int k = 0; k < dim; ++k) row.push_back(csv_num(p.y_end[k]));
    ends.add_row(std::move(row));
  }
  rep.tables.push_back(std::move(ends));
  if (params.log_events) {
    CsvTable ev;
    ev.name = "events";
    ev.columns = event_columns(dim);
    for (int i = 0; i < n; ++i)
      append_event_rows(ev, static_cast<std::uint64_t>(i),
                        paths[static_cast<std::size_t>(i)].events, dim);
    rep.tables.push_back(std::move(ev));
  }
  rep.summary["event_rate"] = event_rate(spec, field, params.jump_cutoff);
  rep.summary["truncation_bias_proxy"] =
      truncation_bias_proxy(spec, field, params.jump_cutoff);
  rep.summary["coupled_fraction"] = static_cast<double>(coupled) / n;
  rep.summary["mean_coupling_time_given_coupled"] = coupled ? t_sum / coupled : 0.0;
  return rep;
}

ExperimentReport estimate_semigroup_cmd(const Config& c) {
  const auto spec = make_measure(c);
  const auto field = make_field(c);
  const auto params = make_sim(c);
  const auto f = test_function(c.str("exp.f"), spec.dim());
  const Vec x0 = c.vec_dim("sim.x0", spec.dim());
  const auto r = estimate_semigroup(spec, field, f, x0, c.real("sim.t"),
                                    static_cast<int>(c.integer("sim.n")), params);
  ExperimentReport rep;
  rep.command = "estimate semigroup";
  CsvTable t;
  t.columns = {"t", "value", "stderr"};
  t.add_row({csv_num(c.real("sim.t")), csv_num(r.value), csv_num(r.std_error)});
  rep.tables.push_back(std::move(t));
  const bool contraction = std::abs(r.value) <= f.sup_norm + 3.0 * r.std_error;
  rep.pass = contraction;
  rep.summary["value"] = r.value;
  rep.summary["stderr"] = r.std_error;
  rep.summary["contraction_bound_holds"] = contraction;
  return rep;
}

ExperimentReport estimate_gradient_cmd(const Config& c, bool fit_slope) {
  const auto spec = make_measure(c);
  const auto field = make_field(c);
  const auto params = make_sim(c);
  const auto f = test_function(c.str("exp.f"), spec.dim());
  const Vec x0 = c.vec_dim("sim.x0", spec.dim());
  const Vec y0 = c.vec_dim("sim.y0", spec.dim());
  const auto grid = c.vec("exp.t-grid");
  const double alpha1 = c.real("exp.alpha1") > 0 ? c.real("exp.alpha1") : spec.alpha();

  const auto curve = estimate_gradient_curve(spec, field, f, x0, y0, grid,
                                             static_cast<int>(c.integer("sim.n")), params);
  ExperimentReport rep;
  rep.command = fit_slope ? "estimate rate" : "estimate gradient";
  CsvTable t;
  t.columns = {"t",        "value",          "stderr", "bound",
               "survival", "survival_stderr", "log_factor", "pass"};
  std::vector<RatePoint> pts;
  bool bounds_ok = true;
  std::vector<double> log_factor;
  for (const auto& pt : curve) {
    const bool ok = pt.value <= pt.coupling_bound + 1e-12;
    bounds_ok = bounds_ok && ok;
    pts.push_back({pt.t, pt.value, pt.std_error});
    const double lf = pt.value * std::pow(pt.t, 1.0 / alpha1);
    log_factor.push_back(lf);
    t.add_row({csv_num(pt.t), csv_num(pt.value), csv_num(pt.std_error),
               csv_num(pt.coupling_bound), csv_num(pt.survival),
               csv_num(pt.survival_std_error), csv_num(lf), ok ? "1" : "0"});
  }
  rep.tables.push_back(std::move(t));
  rep.summary["coupling_bound_holds"] = bounds_ok;
  rep.pass = bounds_ok;

  bool monotone = true;
  for (std::size_t i = 1; i < log_factor.size(); ++i)
    monotone = monotone && log_factor[i] <= log_factor[i - 1] * 1.05;
  rep.summary["log_factor_trend_nonincreasing"] = monotone;

  if (fit_slope) {
    const auto fit = fit_rate(pts, -1.0 / alpha1);
    const bool slope_ok = fit.matches(c.real("exp.slope-tol"));
    rep.summary["fit"] = {{"slope", fit.slope},
                          {"half_width", fit.half_width},
                          {"predicted", fit.predicted_exponent},
                          {"points_used", fit.points_used},
                          {"pass", slope_ok}};
    rep.pass = rep.pass && slope_ok;
  }
  return rep;
}

ExperimentReport estimate_survival_cmd(const Config& c) {
  const auto spec = make_measure(c);
  const auto field = make_field(c);
  const auto params = make_sim(c);
  const Vec x0 = c.vec_dim("sim.x0", spec.dim());
  const Vec y0 = c.vec_dim("sim.y0", spec.dim());
  const auto curve = coupling_survival(spec, field, x0, y0, c.vec("exp.t-grid"),
                                       static_cast<int>(c.integer("sim.n")), params);
  ExperimentReport rep;
  rep.command = "estimate survival";
  CsvTable t;
  t.columns = {"t", "survival", "stderr"};
  for (const auto& pt : curve)
    t.add_row({csv_num(pt.t), csv_num(pt.survival), csv_num(pt.std_error)});
  rep.tables.push_back(std::move(t));
  rep.summary["final_survival"] = curve.back().survival;
  return rep;
}

}  // namespace

ExperimentReport run_experiment(const std::vector<std::string>& words, const Config& c) {
  const std::string cmd = words.empty() ? "" : words[0];
  const std::string sub = words.size() > 1 ? words[1] : "";
  if (cmd == "check") {
    if (sub == "operator-identity") return check_operator_identity(c);
    if (sub == "lc-form") return check_lc_form(c);
    if (sub == "prop32") return check_prop32(c);
    if (sub == "drift") return check_drift(c);
  } else if (cmd == "kernel") {
    if (sub == "mass") return kernel_mass(c);
    if (sub == "jnu") return kernel_jnu(c);
  } else if (cmd == "modulus") {
    if (sub == "w") return modulus_w(c);
  } else if (cmd == "simulate") {
    if (sub == "single") return simulate_single_cmd(c);
    if (sub == "couple") return simulate_couple_cmd(c);
  } else if (cmd == "estimate") {
    if (sub == "semigroup") return estimate_semigroup_cmd(c);
    if (sub == "gradient") return estimate_gradient_cmd(c, false);
    if (sub == "rate") return estimate_gradient_cmd(c, true);
    if (sub == "survival") return estimate_survival_cmd(c);
  }
  throw ConfigError("unknown subcommand '" + cmd + (sub.empty() ? "" : " " + sub) + "'");
}

std::string usage_text() {
  std::string u =
      "levy-coupling-lab <subcommand> [--config FILE] [--out DIR] [--key value ...]\n"
      "\n"
      "Subcommands:\n"
      "  check operator-identity   coupled operator vs marginal generators\n"
      "                            csv: pair,x,y,coupled_value,lf,lg,residual,scale,pass\n"
      "  check lc-form             paired branch quadrature vs two-point closed form\n"
      "                            csv: case,dim,alpha,psi,theta,r,kappa,quad,closed,rel_err,pass\n"
      "  check prop32              coupling-operator upper bound margins\n"
      "                            csv: state,variant,psi,theta,r,x,margin,pass\n"
      "  check drift               distance drift margins + contraction-rate closed form\n"
      "                            csv: r,margin,pass\n"
      "  kernel mass               displaced-minimum and pair jump masses\n"
      "                            csv: op,u,value,error_estimate,shell_remainder_bound\n"
      "  kernel jnu                direction infimum of the displaced mass, slope fit\n"
      "                            csv: r,value,directions\n"
      "  modulus w                 coefficient/perturbation moduli on a radius grid\n"
      "                            csv: r,p,w,w_exact,w_mu,w_star\n"
      "  simulate single|couple    thinning simulation; endpoints (+ events with\n"
      "                            --log-events): stream,time,branch,z*,x*,y*\n"
      "  estimate semigroup        Monte Carlo semigroup value: t,value,stderr\n"
      "  estimate gradient         coupled finite-difference curve:\n"
      "                            t,value,stderr,bound,survival,survival_stderr,log_factor,pass\n"
      "  estimate survival         empirical coupling survival: t,survival,stderr\n"
      "  estimate rate             gradient curve + log-log slope fit vs -1/alpha1\n"
      "\n"
      "Common flags: --x0 --y0 --t --eps-sim --dt --kappa --n --seed --log-events\n"
      "              --threads --psi --theta (aliases for sim.*/exp.* keys)\n"
      "Any configuration key can be overridden as --key value.  Exit codes:\n"
      "  0 pass, 1 verdict failure, 2 usage/config error, 3 numeric budget exhausted.\n"
      "\n"
      "Configuration keys (key = default  # doc):\n";
  for (const auto& k : Config::registry()) {
    u += "  " + k.name + " = " + (k.default_text.empty() ? "\"\"" : k.default_text) + "  # " +
         k.doc + "\n";
  }
  return u;
}

}  // namespace levylab::cli
