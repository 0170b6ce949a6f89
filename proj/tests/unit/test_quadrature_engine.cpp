#include <doctest.h>

#include <cmath>

#include "levylab/quadrature.hpp"

using namespace levylab;

TEST_CASE("adaptive line: smooth, kinked, and endpoint-singular integrands") {
  const auto poly = [](double x) { return x * x; };
  auto r = adaptive_line(poly, 0.0, 2.0, {}, 1e-12, 1e-14, 1000);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(8.0 / 3.0).epsilon(1e-13));

  // |x - 0.3| has a kink; anchored it costs almost nothing.
  const auto kink = [](double x) { return std::abs(x - 0.3); };
  r = adaptive_line(kink, 0.0, 1.0, {0.3}, 1e-13, 1e-15, 1000);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(0.5 * 0.09 + 0.5 * 0.49).epsilon(1e-13));

  // Integrable endpoint singularity x^{-1/2}.
  const auto sing = [](double x) { return 1.0 / std::sqrt(x); };
  r = adaptive_line(sing, 0.0, 1.0, {}, 1e-10, 1e-12, 20000);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));

  // Oscillatory but resolvable.
  const auto osc = [](double x) { return std::cos(10.0 * x); };
  r = adaptive_line(osc, 0.0, 3.0, {}, 1e-12, 1e-13, 4000);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(std::sin(30.0) / 10.0).epsilon(1e-11));
}

TEST_CASE("adaptive line reports non-convergence on an exhausted budget") {
  const auto sing = [](double x) { return 1.0 / std::sqrt(x); };
  const auto r = adaptive_line(sing, 0.0, 1.0, {}, 1e-14, 1e-16, 8);
  CHECK_FALSE(r.converged);
}

TEST_CASE("error estimate bounds the distance to a refined pass") {
  const auto f = [](double x) { return std::exp(-x) / std::sqrt(x + 1e-6); };
  const auto coarse = adaptive_line(f, 0.0, 5.0, {}, 1e-6, 1e-8, 40000);
  const auto fine = adaptive_line(f, 0.0, 5.0, {}, 1e-6 / 16.0, 1e-8 / 16.0, 40000);
  REQUIRE(coarse.converged);
  REQUIRE(fine.converged);
  CHECK(std::abs(coarse.value - fine.value) <= coarse.error + fine.error);
}

TEST_CASE("radial anchors solve the locus quadratics") {
  AnchorSet a;
  a.add_sphere(Vec{1.0, 0.0}, 0.5);
  a.add_bisector(Vec{2.0, 0.0});
  const Vec e{1.0, 0.0};
  const auto cuts = a.radial_anchors(e, 0.0, 10.0);
  // Sphere cut at 0.5 and 1.5, bisector at 1.0.
  REQUIRE(cuts.size() == 3);
  CHECK(cuts[0] == doctest::Approx(0.5));
  CHECK(cuts[1] == doctest::Approx(1.0));
  CHECK(cuts[2] == doctest::Approx(1.5));

  AnchorSet c;
  c.add_cone(zero_vec(2), Vec{1.0, 0.0}, std::cos(M_PI / 4.0));
  // A ray at 30 degrees lies inside the 45-degree cone: no radial crossing.
  const Vec inside{std::cos(M_PI / 6.0), std::sin(M_PI / 6.0)};
  CHECK(c.radial_anchors(inside, 0.0, 10.0).empty());
  const auto phis = c.angular_anchors();
  REQUIRE(phis.size() >= 2);
}

TEST_CASE("shell integration in d = 1 and d = 2 on closed forms") {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-10;
  cfg.abs_tol = 1e-12;

  // d=1: int_{0.1<=|z|<=1} |z|^{-3/2} dz = 2 * 2 (0.1^{-1/2} - 1).
  const auto f1 = [](const Vec& z) { return std::pow(std::abs(z[0]), -1.5); };
  auto r = integrate_shell(1, f1, 0.1, 1.0, {}, cfg, 1e-12);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(4.0 * (std::pow(0.1, -0.5) - 1.0)).epsilon(1e-10));

  // d=2: int_{0.1<=|z|<=1} |z|^{-3} dz = 2 pi (1/0.1 - 1).
  const auto f2 = [](const Vec& z) { return std::pow(norm(z), -3.0); };
  r = integrate_shell(2, f2, 0.1, 1.0, {}, cfg, 1e-10);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(2.0 * M_PI * 9.0).epsilon(1e-9));

  // d=2 with an angular dependence: int |z|^{-3} cos^2(phi).
  const auto f3 = [](const Vec& z) {
    const double rr = norm(z);
    const double c = z[0] / rr;
    return std::pow(rr, -3.0) * c * c;
  };
  r = integrate_shell(2, f3, 0.1, 1.0, {}, cfg, 1e-10);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(M_PI * 9.0).epsilon(1e-9));
}
