#include <doctest.h>

#include <cmath>

#include "levylab/estimators.hpp"
#include "levylab/rng.hpp"

using namespace levylab;

namespace {
SimParams quick() {
  SimParams p;
  p.jump_cutoff = 0.05;
  p.drift_step = 1e-3;
  p.horizon = 1.0;
  p.kappa = 1.0;
  p.master_seed = 77;
  p.threads = 2;
  return p;
}
}  // namespace

TEST_CASE("semigroup estimator basics") {
  const auto spec = LevyMeasureSpec::truncated(1, 1.5, 1.0, 1.0);
  const auto c = CoefficientField::sinusoidal(1, 2.0, 1.0);
  const auto p = quick();

  SUBCASE("f == 1 gives exactly one with zero spread") {
    const auto r = estimate_semigroup(spec, c, constant_fn(1, 1.0), Vec{0.3}, 0.5, 200, p);
    CHECK(r.value == 1.0);
    CHECK(r.std_error == 0.0);
  }
  SUBCASE("t = 0 returns f(x) exactly") {
    const auto r = estimate_semigroup(spec, c, gaussian_bump(1), Vec{0.3}, 0.0, 100, p);
    CHECK(r.value == std::exp(-0.09));
    CHECK(r.std_error == 0.0);
  }
  SUBCASE("odd function under symmetric dynamics is centred") {
    const auto cc = CoefficientField::constant(1, 1.0);
    SmoothFunction odd;
    odd.value = [](const Vec& x) { return std::tanh(x[0]); };
    odd.gradient = [](const Vec& x) {
      const double t = std::tanh(x[0]);
      return Vec{1.0 - t * t};
    };
    odd.sup_norm = 1.0;
    odd.hessian_bound = 1.0;
    const auto r = estimate_semigroup(spec, cc, odd, Vec{0.0}, 1.0, 2000, p);
    CHECK(std::abs(r.value) <= 3.0 * r.std_error);
  }
  SUBCASE("contraction: |estimate| <= ||f|| + 3 se") {
    const auto r = estimate_semigroup(spec, c, gaussian_bump(1), Vec{0.1}, 1.0, 500, p);
    CHECK(std::abs(r.value) <= 1.0 + 3.0 * r.std_error);
  }
  SUBCASE("deterministic across worker counts") {
    SimParams p1 = p;
    p1.threads = 1;
    SimParams p4 = p;
    p4.threads = 4;
    const auto a = estimate_semigroup(spec, c, gaussian_bump(1), Vec{0.3}, 0.5, 300, p1);
    const auto b = estimate_semigroup(spec, c, gaussian_bump(1), Vec{0.3}, 0.5, 300, p4);
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
  }
}

TEST_CASE("gradient estimator basics") {
  const auto spec = LevyMeasureSpec::truncated(1, 1.5, 1.0, 1.0);
  const auto c = CoefficientField::sinusoidal(1, 2.0, 1.0);
  const auto p = quick();

  SUBCASE("constant f gives exactly zero") {
    const auto r =
        estimate_gradient_modulus(spec, c, constant_fn(1, 2.0), Vec{0.0}, Vec{0.05}, 0.5, 200, p);
    CHECK(r.value == 0.0);
  }
  SUBCASE("t = 0 is the plain difference quotient") {
    const auto f = gaussian_bump(1);
    const auto r = estimate_gradient_modulus(spec, c, f, Vec{0.1}, Vec{0.15}, 0.0, 100, p);
    CHECK(r.value ==
          doctest::Approx(std::abs(f.value(Vec{0.1}) - f.value(Vec{0.15})) / 0.05));
  }
  SUBCASE("coupling bound holds pathwise for the shared batch") {
    const auto curve = estimate_gradient_curve(spec, c, gaussian_bump(1), Vec{0.3}, Vec{0.35},
                                               {0.1, 0.25, 0.5, 1.0}, 800, p);
    for (const auto& pt : curve) {
      REQUIRE(pt.value <= pt.coupling_bound + 1e-12);
      REQUIRE(pt.survival >= 0.0);
      REQUIRE(pt.survival <= 1.0);
    }
    // Survival is nonincreasing along the grid.
    for (std::size_t i = 1; i < curve.size(); ++i)
      REQUIRE(curve[i].survival <= curve[i - 1].survival + 1e-12);
  }
}

TEST_CASE("coupling survival curve") {
  const auto spec = LevyMeasureSpec::truncated(1, 1.5, 1.0, 1.0);
  const auto c = CoefficientField::sinusoidal(1, 2.0, 1.0);
  const auto p = quick();

  SUBCASE("equal starts never survive") {
    const auto curve = coupling_survival(spec, c, Vec{0.2}, Vec{0.2}, {0.1, 0.5, 1.0}, 200, p);
    for (const auto& pt : curve) CHECK(pt.survival == 0.0);
  }
  SUBCASE("values lie in [0,1] and decrease") {
    const auto curve =
        coupling_survival(spec, c, Vec{0.0}, Vec{0.1}, {0.05, 0.2, 0.5, 1.0}, 500, p);
    double prev = 1.0;
    for (const auto& pt : curve) {
      REQUIRE(pt.survival >= 0.0);
      REQUIRE(pt.survival <= prev);
      prev = pt.survival;
    }
  }
  SUBCASE("regression value from a frozen pilot run") {
    // Pilot (homogeneous alpha = 3/2, c == 1, |x0-y0| = 0.05, kappa = 1,
    // cutoff 0.05, seed 77, n = 800): P(T > 0.2) ~= 0.15, comfortably below
    // one half by t = 0.2.
    const auto hom = LevyMeasureSpec::homogeneous(1, 1.5, 1.0);
    const auto cc = CoefficientField::constant(1, 1.0);
    const auto curve = coupling_survival(hom, cc, Vec{0.0}, Vec{0.05}, {0.2}, 800, p);
    CHECK(curve[0].survival < 0.5);
  }
}

TEST_CASE("rate fit") {
  SUBCASE("noiseless power law") {
    std::vector<RatePoint> pts;
    for (double t : {0.05, 0.1, 0.2, 0.4, 0.8})
      pts.push_back({t, std::pow(t, -0.5), 1e-12});
    const auto fit = fit_rate(pts, -0.5);
    CHECK(fit.slope == doctest::Approx(-0.5).epsilon(1e-10));
    CHECK(fit.half_width < 1e-8);
    CHECK(fit.matches(0.05));
  }
  SUBCASE("multiplicative noise stays within a twentieth") {
    Philox4x32 g(13, 0);
    std::vector<RatePoint> pts;
    for (int i = 0; i < 12; ++i) {
      const double t = 0.05 * std::pow(2.0, i * 0.4);
      const double noise = 1.0 + 0.05 * (2.0 * uniform01(g) - 1.0);
      pts.push_back({t, std::pow(t, -0.75) * noise, 1e-9});
    }
    const auto fit = fit_rate(pts, -0.75);
    CHECK(std::abs(fit.slope + 0.75) < 0.05);
  }
  SUBCASE("too few usable points") {
    std::vector<RatePoint> pts = {{0.1, 1.0, 1e-3}, {0.2, 0.5, 1e-3}, {0.4, 0.25, 1e-3}};
    CHECK_THROWS(fit_rate(pts, -1.0));
    // Points drowned in noise are filtered out.
    std::vector<RatePoint> noisy;
    for (double t : {0.1, 0.2, 0.4, 0.8, 1.6})
      noisy.push_back({t, 0.01, 1.0});
    CHECK_THROWS(fit_rate(noisy, -1.0));
  }
}

TEST_CASE("two-sample KS statistic") {
  SUBCASE("identical samples give zero") {
    std::vector<double> a(200);
    for (int i = 0; i < 200; ++i) a[static_cast<std::size_t>(i)] = std::sin(i * 0.7);
    CHECK(ks_two_sample(a, a) == 0.0);
  }
  SUBCASE("disjoint supports give one") {
    std::vector<double> a(150), b(150);
    for (int i = 0; i < 150; ++i) {
      a[static_cast<std::size_t>(i)] = i;
      b[static_cast<std::size_t>(i)] = 1000.0 + i;
    }
    CHECK(ks_two_sample(a, b) == 1.0);
  }
  SUBCASE("size guard") {
    std::vector<double> small(50, 0.0), big(200, 0.0);
    CHECK_THROWS(ks_two_sample(small, big));
  }
  SUBCASE("same-law samples pass the asymptotic threshold in >= 99% of reps") {
    const int n = 2000;
    const double threshold = 1.95 * std::sqrt(2.0 / n);
    int ok = 0;
    const int reps = 60;
    for (int rep = 0; rep < reps; ++rep) {
      Philox4x32 g(500 + rep, 0);
      std::vector<double> a(n), b(n);
      for (int i = 0; i < n; ++i) {
        a[static_cast<std::size_t>(i)] = uniform01(g);
        b[static_cast<std::size_t>(i)] = uniform01(g);
      }
      if (ks_two_sample(a, b) < threshold) ++ok;
    }
    CHECK(ok >= static_cast<int>(0.99 * reps));
  }
}

TEST_CASE("projection helper") {
  std::vector<Vec> pts = {Vec{1.0, 2.0}, Vec{-1.0, 0.5}};
  const auto proj = project(pts, Vec{0.0, 1.0});
  CHECK(proj[0] == 2.0);
  CHECK(proj[1] == 0.5);
}
