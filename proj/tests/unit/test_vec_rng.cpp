#include <doctest.h>

#include <cmath>
#include <set>

#include "levylab/rng.hpp"
#include "levylab/vec.hpp"

using namespace levylab;

TEST_CASE("vec arithmetic and norms") {
  Vec a{3.0, 4.0};
  CHECK(norm(a) == doctest::Approx(5.0));
  Vec b{1.0, -1.0};
  CHECK(dot(a, b) == doctest::Approx(-1.0));
  CHECK((a + b)[0] == doctest::Approx(4.0));
  CHECK((2.0 * b)[1] == doctest::Approx(-2.0));
  CHECK(norm(a - a) == 0.0);
  CHECK_THROWS(Vec(0));
  CHECK_THROWS(Vec(kMaxDim + 1));
}

TEST_CASE("philox known-answer blocks") {
  // Reference outputs of the 10-round 4x32 generator.
  auto out = Philox4x32::block({0, 0, 0, 0}, {0, 0});
  CHECK(out[0] == 0x6627e8d5u);
  CHECK(out[1] == 0xe169c58du);
  CHECK(out[2] == 0xbc57ac4cu);
  CHECK(out[3] == 0x9b00dbd8u);

  out = Philox4x32::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                          {0xffffffffu, 0xffffffffu});
  CHECK(out[0] == 0x408f276du);
  CHECK(out[1] == 0x41c83b0eu);
  CHECK(out[2] == 0xa20bc7c6u);
  CHECK(out[3] == 0x6d5451fdu);

  out = Philox4x32::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                          {0xa4093822u, 0x299f31d0u});
  CHECK(out[0] == 0xd16cfe09u);
  CHECK(out[1] == 0x94fdccebu);
  CHECK(out[2] == 0x5001e420u);
  CHECK(out[3] == 0x24126ea1u);
}

TEST_CASE("philox streams are reproducible and distinct") {
  Philox4x32 a(42, 7), b(42, 7), c(42, 8);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 100; ++i) {
    const auto va = a(), vb = b(), vc = c();
    all_equal = all_equal && (va == vb);
    any_diff = any_diff || (va != vc);
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("uniform01 stays in [0,1) with sane moments") {
  Philox4x32 g(1, 0);
  double sum = 0.0, sum2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = uniform01(g);
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    sum2 += u * u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(sum2 / n == doctest::Approx(1.0 / 3.0).epsilon(0.01));
}
