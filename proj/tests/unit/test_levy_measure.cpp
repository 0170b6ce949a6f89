#include <doctest.h>

#include <cmath>

#include "levylab/levy_measure.hpp"
#include "levylab/rng.hpp"

using namespace levylab;

TEST_CASE("power-law density values and support") {
  const auto hom = LevyMeasureSpec::homogeneous(1, 0.5, 1.0);
  CHECK(hom.density(Vec{0.25}) == doctest::Approx(std::pow(0.25, -1.5)).epsilon(1e-14));
  CHECK(hom.density(Vec{-2.0}) == doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-14));

  const auto tr = LevyMeasureSpec::truncated(1, 1.5, 2.0, 1.0);
  CHECK(tr.density(Vec{0.5}) == doctest::Approx(2.0 * std::pow(0.5, -2.5)).epsilon(1e-14));
  CHECK(tr.density(Vec{1.5}) == 0.0);

  const auto cone = LevyMeasureSpec::cone(1, 0.5, 1.0, Vec{1.0}, 0.5);
  CHECK(cone.density(Vec{0.5}) > 0.0);
  CHECK(cone.density(Vec{-0.5}) == 0.0);  // outside the cone
  CHECK(cone.density(Vec{1.5}) == 0.0);   // outside |z| <= 1

  CHECK_THROWS(LevyMeasureSpec::homogeneous(1, 2.0, 1.0));
  CHECK_THROWS(LevyMeasureSpec::homogeneous(1, 1.0, -1.0));
  CHECK_THROWS(LevyMeasureSpec::cone(1, 0.5, 1.0, Vec{1.0}, 1.5));
}

TEST_CASE("closed-form moments in d = 1 and d = 2") {
  // int_{|z|<=1} z^2 |z|^{-1-a} dz = 2/(2-a) in d = 1.
  const auto t15 = LevyMeasureSpec::truncated(1, 1.5, 1.0, 1.0);
  CHECK(t15.ball_abs_moment(2.0, 1.0) == doctest::Approx(4.0).epsilon(1e-14));
  // nu(|z|>r) = 2 (r^-a - R^-a)/a.
  CHECK(t15.tail_mass(0.01) ==
        doctest::Approx(2.0 * (std::pow(0.01, -1.5) - 1.0) / 1.5).epsilon(1e-14));
  CHECK(t15.tail_mass(1.0) == 0.0);

  const auto h05 = LevyMeasureSpec::homogeneous(2, 0.5, 3.0);
  // A * 2 pi * r^{2-a}/(2-a)
  CHECK(h05.ball_abs_moment(2.0, 0.3) ==
        doctest::Approx(3.0 * 2.0 * M_PI * std::pow(0.3, 1.5) / 1.5).epsilon(1e-14));
  CHECK(h05.tail_mass(2.0) ==
        doctest::Approx(3.0 * 2.0 * M_PI * std::pow(2.0, -0.5) / 0.5).epsilon(1e-14));
}

TEST_CASE("first-moment vector vanishes for symmetric specs, matches cone closed form") {
  const auto sym = LevyMeasureSpec::truncated(2, 1.2, 1.0, 1.0);
  CHECK(norm(sym.first_moment_annulus(0.01, 1.0)) == 0.0);

  // d = 1 cone along +1: int_eps^1 z * z^{-1.5} dz = 2(1 - sqrt(eps)).
  const auto cone = LevyMeasureSpec::cone(1, 0.5, 1.0, Vec{1.0}, 0.5);
  const Vec m = cone.first_moment_annulus(0.01, 1.0);
  CHECK(m[0] == doctest::Approx(2.0 * (1.0 - 0.1)).epsilon(1e-13));
}

TEST_CASE("restricted sampling matches the truncated power law") {
  const auto spec = LevyMeasureSpec::truncated(1, 1.5, 1.0, 1.0);
  Philox4x32 rng(99, 0);
  const double eps = 0.01;
  int below_median = 0;
  const int n = 100000;
  // Median radius of the restricted law: F(m) = 1/2.
  const double lo = std::pow(eps, -1.5), hi = 1.0;
  const double median = std::pow(lo - 0.5 * (lo - hi), -1.0 / 1.5);
  double max_r = 0.0, min_r = 1e9;
  for (int i = 0; i < n; ++i) {
    const Vec z = spec.sample_restricted(rng, eps);
    const double r = norm(z);
    max_r = std::max(max_r, r);
    min_r = std::min(min_r, r);
    if (r < median) ++below_median;
  }
  CHECK(min_r >= eps);
  CHECK(max_r <= 1.0);
  CHECK(static_cast<double>(below_median) / n == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("cone sampling stays in the cone") {
  const auto cone = LevyMeasureSpec::cone(2, 0.8, 1.0, Vec{0.0, 1.0}, 0.4);
  Philox4x32 rng(7, 3);
  for (int i = 0; i < 2000; ++i) {
    const Vec z = cone.sample_restricted(rng, 0.05);
    REQUIRE(cone.in_support(z));
  }
}

TEST_CASE("stable bounds report") {
  const ConeSpec full_cone{Vec{1.0}, 0.5};
  const auto hom = LevyMeasureSpec::homogeneous(1, 1.2, 1.0);
  auto rep = stable_bounds_check(hom, 1.2, 1.2, 1.0, 1.0, full_cone);
  CHECK(rep.pass());
  CHECK(rep.worst_lower_ratio == doctest::Approx(1.0));
  CHECK(rep.worst_upper_ratio == doctest::Approx(1.0));

  const auto conespec = LevyMeasureSpec::cone(1, 0.7, 0.5, Vec{1.0}, 0.3);
  rep = stable_bounds_check(conespec, 0.7, 0.7, 0.5, 0.5, ConeSpec{Vec{1.0}, 0.3});
  CHECK(rep.pass());

  // alpha = 1.5 density against an alpha2 = 1.2 upper envelope fails at
  // small |z|.
  const auto t15 = LevyMeasureSpec::truncated(1, 1.5, 1.0, 1.0);
  rep = stable_bounds_check(t15, 1.0, 1.2, 1.0, 1.0, full_cone);
  CHECK_FALSE(rep.pass_upper);
  CHECK(rep.worst_upper_ratio > 1.0);
}
