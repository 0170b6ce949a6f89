#include <doctest.h>

#include <cmath>

#include "levylab/kernel_bundle.hpp"
#include "levylab/rng.hpp"

using namespace levylab;

TEST_CASE("clip keeps direction and caps the norm") {
  CHECK(clip_to_norm(Vec{2.0, 0.0}, 1.0) == Vec{1.0, 0.0});
  CHECK(clip_to_norm(Vec{0.3, 0.4}, 1.0) == Vec{0.3, 0.4});
  CHECK(norm(clip_to_norm(Vec{0.0, 0.0}, 0.5)) == 0.0);

  Philox4x32 g(5, 0);
  for (int i = 0; i < 10000; ++i) {
    Vec v{4.0 * (uniform01(g) - 0.5), 4.0 * (uniform01(g) - 0.5)};
    const double kappa = 0.01 + uniform01(g);
    const Vec w = clip_to_norm(v, kappa);
    REQUIRE(norm(w) == doctest::Approx(std::min(kappa, norm(v))).epsilon(1e-12));
    // Parallel: cross product in 2d.
    REQUIRE(std::abs(v[0] * w[1] - v[1] * w[0]) <= 1e-12 * (1.0 + norm(v)));
  }
}

TEST_CASE("displaced-minimum density values") {
  const auto spec = LevyMeasureSpec::homogeneous(1, 0.5, 1.0);
  // min(q(1/4), q(-3/4)) = (3/4)^{-3/2} = 8/(3 sqrt 3).
  CHECK(displaced_min_density(spec, Vec{1.0}, Vec{0.25}) ==
        doctest::Approx(8.0 / (3.0 * std::sqrt(3.0))).epsilon(1e-14));
  CHECK_THROWS(displaced_min_density(spec, Vec{1.0}, Vec{0.0}));
  CHECK_THROWS(displaced_min_density(spec, Vec{1.0}, Vec{1.0}));
  CHECK_THROWS(displaced_min_density(spec, Vec{0.0}, Vec{0.5}));

  const auto tr = LevyMeasureSpec::truncated(1, 0.5, 1.0, 1.0);
  CHECK(displaced_min_density(tr, Vec{0.5}, Vec{2.0}) == 0.0);

  // Reflection: value at (u, z+u) equals value at (-u, z).
  Philox4x32 g(17, 0);
  for (int i = 0; i < 50; ++i) {
    const Vec u{0.2 + uniform01(g)};
    const Vec z{2.0 * (uniform01(g) - 0.5) + 0.01};
    if (norm(z) == 0.0 || z == u || z == -1.0 * u) continue;
    CHECK(displaced_min_density(spec, u, z + u) ==
          doctest::Approx(displaced_min_density(spec, -1.0 * u, z)).epsilon(1e-14));
  }
}

TEST_CASE("branch densities: conventions and identities") {
  const auto spec = LevyMeasureSpec::truncated(1, 1.5, 1.0, 1.0);
  const auto c = CoefficientField::sinusoidal(1, 2.0, 1.0);

  SUBCASE("merged pair moves synchronously") {
    const KernelBundle b(spec, c, Vec{0.3}, Vec{0.3}, 1.0);
    const auto d = b.branch_densities(Vec{0.2});
    CHECK(d[0] == 0.0);
    CHECK(d[1] == 0.0);
    CHECK(d[2] == doctest::Approx(c.eval_state(Vec{0.3}) * spec.density(Vec{0.2})));
    CHECK(d[3] == 0.0);
    CHECK(d[4] == 0.0);
  }

  SUBCASE("constant coefficient kills the lone branches") {
    const auto cc = CoefficientField::constant(1, 1.0);
    const KernelBundle b(spec, cc, Vec{0.0}, Vec{0.4}, 1.0);
    const auto d = b.branch_densities(Vec{0.2});
    CHECK(d[3] == 0.0);
    CHECK(d[4] == 0.0);
  }

  SUBCASE("marginal and total sum identities at random states") {
    Philox4x32 g(23, 0);
    for (int i = 0; i < 100; ++i) {
      const Vec x{3.0 * (uniform01(g) - 0.5)};
      Vec y{3.0 * (uniform01(g) - 0.5)};
      if (x == y) y[0] += 0.1;
      const Vec z{1.9 * (uniform01(g) - 0.5)};
      if (norm(z) < 1e-3 || !spec.in_support(z)) continue;
      const KernelBundle b(spec, c, x, y, 1.0);
      const auto d = b.branch_densities(z);
      const double q = spec.density(z);
      const double cx = c.eval_state(x), cy = c.eval_state(y);
      for (double di : d) REQUIRE(di >= 0.0);
      REQUIRE(d[0] + d[1] + d[2] + d[3] ==
              doctest::Approx(cx * q).epsilon(1e-12));
      REQUIRE(d[0] + d[1] + d[2] + d[3] + d[4] ==
              doctest::Approx(std::max(cx, cy) * q).epsilon(1e-12));
      REQUIRE(d[0] + d[1] + d[2] + d[3] + d[4] <= c.upper() * q * (1.0 + 1e-12));
    }
  }

  SUBCASE("ratios match densities and respect the envelope") {
    Philox4x32 g(29, 0);
    for (int i = 0; i < 100; ++i) {
      const Vec x{2.0 * uniform01(g)};
      const Vec y{-2.0 * uniform01(g) - 0.01};
      const Vec z{0.02 + 0.9 * uniform01(g)};
      const KernelBundle b(spec, c, x, y, 1.0);
      const auto d = b.branch_densities(z);
      const auto r = b.branch_ratios(z);
      const double envelope = c.upper() * spec.density(z);
      double sum = 0.0;
      for (int k = 0; k < 5; ++k) {
        REQUIRE(r[k] == doctest::Approx(d[k] / envelope).epsilon(1e-10));
        sum += r[k];
      }
      REQUIRE(sum <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("displaced-minimum density never exceeds either factor") {
  const auto spec = LevyMeasureSpec::truncated(1, 1.2, 1.0, 1.0);
  Philox4x32 g(31, 0);
  for (int i = 0; i < 200; ++i) {
    const Vec u{0.05 + uniform01(g)};
    const Vec z{1.8 * (uniform01(g) - 0.5)};
    if (norm(z) < 1e-6 || z == u) continue;
    const double m = displaced_min_density(spec, u, z);
    REQUIRE(m <= spec.density(z) * (1.0 + 1e-15));
    REQUIRE(m <= spec.density(z - u) * (1.0 + 1e-15));
    REQUIRE(m >= 0.0);
  }
}
