// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Each criterion pins its own configuration and tolerance; the
// Monte Carlo ones fix their seeds so the run is reproducible bit for bit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli/experiments.hpp"
#include "levylab/estimators.hpp"
#include "levylab/operators.hpp"

using namespace levylab;
using cli::Config;

namespace {

int g_failures = 0;

void verdict(int number, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] %d %s (%s)\n", pass ? "PASS" : "FAIL", number, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* pattern, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

// 1. Coupling operator identity on pairs of bounded smooth functions.
void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  Config c = Config::defaults();
  c.set("exp.pairs", "20");
  c.set("exp.rtol", "1e-6");
  c.set("quad.tol", "1e-8");
  const auto rep = cli::run_experiment({"check", "operator-identity"}, c);
  const double worst = rep.summary["worst_relative_residual"].get<double>();
  verdict(1, "coupling-operator identity", rep.pass && seconds_since(t0) < 120.0,
          fmt("worst rel residual %.3g, %.1fs", worst, seconds_since(t0)));
}

// 2. Displaced-minimum mass: flip symmetry and the d=1 closed form.
void criterion_2() {
  const auto t0 = std::chrono::steady_clock::now();
  QuadratureConfig cfg;
  cfg.rel_tol = 3e-9;
  cfg.abs_tol = 1e-10;

  double worst_flip = 0.0;
  const auto flip = [&](const LevyMeasureSpec& spec, const Vec& u) {
    const double a = displaced_min_mass(spec, u, cfg).value;
    const double b = displaced_min_mass(spec, -1.0 * u, cfg).value;
    worst_flip = std::max(worst_flip, std::abs(a - b) / (std::abs(a) + 1e-300));
  };

  const auto hom = LevyMeasureSpec::homogeneous(1, 0.5, 1.0);
  const auto tr = LevyMeasureSpec::truncated(1, 1.5, 1.0, 1.0);
  const auto tr2 = LevyMeasureSpec::truncated(2, 1.5, 1.0, 1.0);
  const auto cone2 = LevyMeasureSpec::cone(2, 0.8, 1.0, Vec{1.0, 0.0}, 0.5);
  for (double r : {0.25, 1.0, 4.0}) flip(hom, Vec{r});
  flip(tr, Vec{0.4});
  flip(tr, Vec{0.9});
  flip(tr2, Vec{0.3, 0.2});
  flip(tr2, Vec{-0.1, 0.45});
  flip(cone2, Vec{0.2, 0.1});
  flip(cone2, Vec{0.05, -0.03});
  flip(LevyMeasureSpec::cone(1, 0.8, 1.0, Vec{1.0}, 0.3), Vec{0.07});

  double worst_closed = 0.0;
  for (double r : {0.25, 1.0, 4.0}) {
    const double m = displaced_min_mass(hom, Vec{r}, cfg).value;
    const double closed = 4.0 * std::sqrt(2.0) / std::sqrt(r);
    worst_closed = std::max(worst_closed, std::abs(m - closed) / closed);
  }
  const bool pass = worst_flip <= 1e-8 && worst_closed <= 1e-6 && seconds_since(t0) < 30.0;
  verdict(2, "displaced-minimum mass properties", pass,
          fmt("flip asym %.3g, closed-form rel err %.3g, %.1fs", worst_flip, worst_closed,
              seconds_since(t0)));
}

// 3. Two-point closed form of the paired coupling branches.
void criterion_3() {
  const auto t0 = std::chrono::steady_clock::now();
  Config c = Config::defaults();
  c.set("exp.rtol", "1e-6");
  const auto rep = cli::run_experiment({"check", "lc-form"}, c);
  const double worst = rep.summary["worst_relative_error"].get<double>();
  verdict(3, "paired-branch two-point form", rep.pass && seconds_since(t0) < 60.0,
          fmt("10 configurations, worst rel err %.3g, %.1fs", worst, seconds_since(t0)));
}

// 4. Coupling-operator upper bound margins, both variants, all profiles.
void criterion_4() {
  const auto t0 = std::chrono::steady_clock::now();
  Config c = Config::defaults();
  c.set("exp.pairs", "20");
  c.set("exp.rtol", "1e-6");
  const auto rep = cli::run_experiment({"check", "prop32"}, c);
  const double worst = rep.summary["worst_margin"].get<double>();
  verdict(4, "coupling bound margins", rep.pass && seconds_since(t0) < 120.0,
          fmt("20 states, worst margin %.3g >= -1e-6, %.1fs", worst, seconds_since(t0)));
}

// 5. Scaling of the direction infimum J(r).
void criterion_5() {
  const auto t0 = std::chrono::steady_clock::now();
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-8;
  cfg.abs_tol = 1e-9;

  const auto scan = [&](const LevyMeasureSpec& spec) {
    std::vector<RatePoint> pts;
    double prefactor = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 12; ++i) {
      const double r = 1e-3 * std::pow(100.0, i / 11.0);
      const double j = min_displaced_mass(spec, r, cfg);
      pts.push_back({r, j, 0.0});
      prefactor = std::min(prefactor, j * std::pow(r, spec.alpha()));
    }
    const auto fit = fit_rate(pts, -spec.alpha());
    return std::make_pair(fit.slope, prefactor);
  };

  bool pass = true;
  std::string detail;
  for (double a : {0.5, 1.5}) {
    const auto [slope, pref] = scan(LevyMeasureSpec::homogeneous(1, a, 1.0));
    pass = pass && std::abs(slope + a) <= 0.05;
    detail += fmt("hom a=%.1f slope %.3f; ", a, slope);
    (void)pref;
  }
  {
    const auto [slope, pref] = scan(LevyMeasureSpec::cone(1, 1.5, 1.0, Vec{1.0}, 0.5));
    pass = pass && std::abs(slope + 1.5) <= 0.05 && pref > 0.0;
    detail += fmt("cone a=1.5 slope %.3f pref %.3g; ", slope, pref);
  }
  {
    // Bounded support distorts the log-log slope at alpha = 1/2 (the mass is
    // A(r^{-1/2}-1) up to constants), so only the scaling lower bound -- a
    // strictly positive fitted prefactor -- is asserted here; the slope is
    // reported as a diagnostic.
    const auto [slope, pref] = scan(LevyMeasureSpec::cone(1, 0.5, 1.0, Vec{1.0}, 0.5));
    pass = pass && pref > 0.0;
    detail += fmt("cone a=0.5 slope %.3f (diagnostic) pref %.3g", slope, pref);
  }
  verdict(5, "displaced-mass scaling", pass && seconds_since(t0) < 60.0, detail);
}

// 6. Distance drift condition and the contraction-rate closed form.
void criterion_6() {
  const auto t0 = std::chrono::steady_clock::now();
  Config c = Config::defaults();
  c.set("levy.family", "homogeneous-stable");
  c.set("levy.truncation", "inf");
  c.set("levy.alpha", "1.5");
  c.set("exp.psi", "lip-log");
  c.set("exp.theta", "1");
  c.set("exp.r-min", "1e-8");
  c.set("exp.r-max", "1e-5");
  c.set("exp.grid", "50");
  c.set("exp.c1", "1");
  c.set("exp.c2", "-1");  // ledger default 2 nu(|z|>1) c_upper ||psi||
  c.set("exp.eps", "0.01");
  const auto rep = cli::run_experiment({"check", "drift"}, c);
  const double worst = rep.summary["worst_margin"].get<double>();
  const double lam_rel = rep.summary["contraction_rate"]["rel_err"].get<double>();
  verdict(6, "drift condition and contraction rate", rep.pass,
          fmt("worst margin %.3g < 0, lambda rel err %.3g, %.1fs", worst, lam_rel,
              seconds_since(t0)));
}

// 7. Marginal fidelity of the coupled first component.
void criterion_7() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto spec = LevyMeasureSpec::truncated(1, 1.5, 1.0, 1.0);
  const auto field = CoefficientField::sinusoidal(1, 2.0, 1.0);
  SimParams p;
  p.jump_cutoff = 1e-2;
  p.drift_step = 1e-3;
  p.horizon = 1.0;
  p.kappa = 1.0;
  p.threads = 0;
  const int n = 10000;

  std::vector<double> coupled_x(n), single_x(n);
  p.master_seed = 4242;
  {
    std::vector<CoupledPath> paths(n);
    parallel_for(n, p.threads, [&](int i) {
      paths[static_cast<std::size_t>(i)] =
          simulate_coupled(spec, field, Vec{0.3}, Vec{0.8}, p, static_cast<std::uint64_t>(i));
    });
    for (int i = 0; i < n; ++i) coupled_x[static_cast<std::size_t>(i)] = paths[i].x_end[0];
  }
  p.master_seed = 4243;
  {
    std::vector<SinglePath> paths(n);
    parallel_for(n, p.threads, [&](int i) {
      paths[static_cast<std::size_t>(i)] =
          simulate_single(spec, field, Vec{0.3}, p, static_cast<std::uint64_t>(i));
    });
    for (int i = 0; i < n; ++i) single_x[static_cast<std::size_t>(i)] = paths[i].endpoint[0];
  }
  const double d = ks_two_sample(coupled_x, single_x);
  verdict(7, "marginal fidelity (two-sample KS)", d <= 0.03 && seconds_since(t0) < 300.0,
          fmt("KS %.4f <= 0.03, n=1e4 each, %.1fs", d, seconds_since(t0)));
}

// 8. Coupling inequality and the gradient decay trend.
void criterion_8() {
  const auto t0 = std::chrono::steady_clock::now();
  Config c = Config::defaults();
  c.set("levy.family", "homogeneous-stable");
  c.set("levy.truncation", "inf");
  c.set("levy.alpha", "1.5");
  c.set("levy.amplitude", "0.25");
  c.set("sim.x0", "0.4");
  c.set("sim.y0", "0.45");
  c.set("sim.n", "10000");
  c.set("seed", "12345");
  c.set("exp.alpha1", "1.5");
  c.set("exp.slope-tol", "0.25");
  c.set("exp.t-grid", "0.05,0.1,0.2,0.4,0.8");
  const auto rep = cli::run_experiment({"estimate", "rate"}, c);
  const bool bound_ok = rep.summary["coupling_bound_holds"].get<bool>();
  const double slope = rep.summary["fit"]["slope"].get<double>();
  const bool trend = rep.summary["log_factor_trend_nonincreasing"].get<bool>();
  verdict(8, "coupling inequality and rate trend",
          rep.pass && bound_ok && seconds_since(t0) < 600.0,
          fmt("slope %.3f vs -2/3 +- 0.25, bound holds at every t, ", slope) +
              std::string("log-factor trend ") + (trend ? "nonincreasing" : "mixed") +
              fmt(", %.1fs", seconds_since(t0)));
}

// 9. Byte-identical CSV bodies under reruns and different worker counts.
void criterion_9() {
  namespace fs = std::filesystem;
  const auto t0 = std::chrono::steady_clock::now();
  const fs::path base = fs::temp_directory_path() / "levylab-acceptance-determinism";
  fs::remove_all(base);

  const auto read_file = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };

  bool pass = true;
  std::string detail;
  const auto compare_run = [&](const std::string& label,
                               const std::vector<std::string>& words,
                               const std::vector<std::pair<std::string, std::string>>& keys) {
    std::vector<std::string> bodies[2];
    for (int round = 0; round < 2; ++round) {
      Config c = Config::defaults();
      for (const auto& [k, v] : keys) c.set(k, v);
      c.set("sim.threads", round == 0 ? "1" : "4");
      const auto rep = cli::run_experiment(words, c);
      const fs::path dir = base / (label + std::to_string(round));
      const auto files = cli::emit(rep, c, dir.string());
      for (const auto& f : files)
        if (f.size() > 4 && f.substr(f.size() - 4) == ".csv")
          bodies[round].push_back(read_file(f));
    }
    const bool same = bodies[0] == bodies[1] && !bodies[0].empty();
    pass = pass && same;
    detail += label + (same ? " ok; " : " MISMATCH; ");
  };

  compare_run("survival", {"estimate", "survival"},
              {{"sim.n", "500"}, {"sim.y0", "0.1"}, {"exp.t-grid", "0.1,0.5,1.0"}});
  compare_run("couple-events", {"simulate", "couple"},
              {{"sim.n", "40"}, {"sim.log-events", "true"}, {"sim.t", "0.5"}});
  compare_run("jnu", {"kernel", "jnu"},
              {{"levy.family", "homogeneous-stable"},
               {"levy.truncation", "inf"},
               {"levy.alpha", "0.5"},
               {"exp.slope-tol", "0.05"}});
  fs::remove_all(base);
  verdict(9, "deterministic CSV bodies across worker counts", pass,
          detail + fmt("%.1fs", seconds_since(t0)));
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
  } catch (const std::exception& e) {
    std::printf("[FAIL] suite aborted: %s\n", e.what());
    return 1;
  }
  std::printf("ACCEPTANCE: %d/9 passed in %.1fs\n", 9 - g_failures, seconds_since(t0));
  return g_failures == 0 ? 0 : 1;
}
