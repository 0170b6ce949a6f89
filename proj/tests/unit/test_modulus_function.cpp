#include <doctest.h>

#include <cmath>

#include "levylab/modulus_function.hpp"

using namespace levylab;

TEST_CASE("closed-form values") {
  const auto p = ModulusFunction::power(0.5);
  CHECK(p.eval(0.04, 0) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(p.eval(0.04, 2) == doctest::Approx(-31.25).epsilon(1e-14));

  const auto lw = ModulusFunction::log_weighted(1.0);
  CHECK(lw.eval(std::exp(-4.0), 0) == doctest::Approx(4.0 * std::exp(-4.0)).epsilon(1e-14));

  const auto ll = ModulusFunction::lip_log(1.0);
  const double r = 0.01;
  CHECK(ll.eval(r, 0) == doctest::Approx(r * (1.0 - 1.0 / std::log(1.0 / r))).epsilon(1e-14));
}

TEST_CASE("domain and parameter guards") {
  CHECK_THROWS(ModulusFunction::power(1.5));
  CHECK_THROWS(ModulusFunction::power(0.0));
  CHECK_THROWS(ModulusFunction::log_weighted(0.0));
  const auto p = ModulusFunction::power(0.5);
  CHECK_THROWS(p.eval(0.0, 0));
  CHECK_THROWS(p.eval(2.0, 0));
  CHECK_THROWS(p.eval(0.1, 4));
}

TEST_CASE("shape checks pass for valid members and reject a convex power") {
  CHECK(ModulusFunction::power(0.5).shape_check().pass);
  CHECK(ModulusFunction::power(0.9).shape_check().pass);
  CHECK(ModulusFunction::log_weighted(1.0).shape_check().pass);
  CHECK(ModulusFunction::log_weighted(2.5).shape_check().pass);
  CHECK(ModulusFunction::lip_log(1.0).shape_check().pass);
  CHECK(ModulusFunction::lip_log(0.3).shape_check().pass);

  const auto convex = ModulusFunction::make_unchecked(ModulusFamily::kPower, 1.5, 1.0);
  const auto rep = convex.shape_check();
  CHECK_FALSE(rep.pass);
  CHECK(rep.failure == "psi'' > 0");
}

TEST_CASE("lip-log third derivative changes sign just above its validity radius") {
  // At theta = 1 the sign condition psi''' >= 0 needs log(1/r) >= sqrt(6).
  const auto wide = ModulusFunction::make_unchecked(ModulusFamily::kLipLog, 1.0, std::exp(-2.0));
  CHECK_FALSE(wide.shape_check().pass);
  const auto ll = ModulusFunction::lip_log(1.0);
  CHECK(ll.valid_radius() == doctest::Approx(std::exp(-std::sqrt(6.0))).epsilon(1e-14));
  CHECK(ll.shape_check().pass);
}

TEST_CASE("derivatives agree with central differences") {
  for (const auto& m : {ModulusFunction::power(0.3), ModulusFunction::log_weighted(1.5),
                        ModulusFunction::lip_log(0.7)}) {
    const double hi = m.valid_radius();
    for (double frac : {0.9, 0.5, 0.1, 0.01}) {
      const double r = hi * frac;
      const double h = r * 1e-4;
      for (int order = 0; order < 3; ++order) {
        const double fd = (m.eval(r + h, order) - m.eval(r - h, order)) / (2.0 * h);
        const double exact = m.eval(r, order + 1);
        REQUIRE(fd == doctest::Approx(exact).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("psi is nondecreasing on its validity interval") {
  for (const auto& m : {ModulusFunction::power(0.6), ModulusFunction::log_weighted(1.0),
                        ModulusFunction::lip_log(1.0)}) {
    double prev = 0.0;
    for (int i = 1; i <= 50; ++i) {
      const double r = m.valid_radius() * i / 50.0;
      const double v = m.eval(r, 0);
      REQUIRE(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("regime selector and the alpha1 = 1 guard") {
  CHECK(modulus_for_regime(0.5, 0.8, 0.4).family() == ModulusFamily::kPower);
  CHECK(modulus_for_regime(1.5, 1.5, 1.0).family() == ModulusFamily::kLipLog);
  CHECK(modulus_for_regime(1.0, 1.5, 1.5).family() == ModulusFamily::kLogWeighted);
  CHECK_THROWS(modulus_for_regime(1.0, 1.5, 0.5));
}
