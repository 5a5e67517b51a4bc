#include <bumpft/complex.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace bumpft;
using Catch::Approx;

TEST_CASE("principal_arg lies in (-pi, pi]", "[complex]") {
  CHECK(principal_arg({-1.0, 0.0}) == std::numbers::pi);
  CHECK(principal_arg({-1.0, -0.0}) == std::numbers::pi);
  CHECK(principal_arg({0.0, 1.0}) == Approx(std::numbers::pi / 2));
  CHECK(principal_arg({0.0, -1.0}) == Approx(-std::numbers::pi / 2));
  CHECK(principal_arg({1.0, -0.0}) == 0.0);
}

TEST_CASE("principal powers of i", "[complex]") {
  // sqrt(2i) = 1 + i
  const ComplexScalar r = principal_sqrt({0.0, 2.0});
  CHECK(r.real() == Approx(1.0).epsilon(1e-15));
  CHECK(r.imag() == Approx(1.0).epsilon(1e-15));

  // sqrt(-i) = e^{-i pi/4}
  const ComplexScalar s = principal_sqrt({0.0, -1.0});
  CHECK(principal_arg(s) == Approx(-std::numbers::pi / 4));

  const ComplexScalar p = i_pow(1.5);
  CHECK(p.real() == Approx(-std::sqrt(0.5)));
  CHECK(p.imag() == Approx(std::sqrt(0.5)));
}

TEST_CASE("principal_pow on the negative real axis takes +pi", "[complex]") {
  const ComplexScalar z = principal_pow({-4.0, -0.0}, 0.5);
  CHECK(z.real() == Approx(0.0).margin(1e-15));
  CHECK(z.imag() == Approx(2.0));
}

TEST_CASE("zero handling", "[complex]") {
  CHECK(principal_pow({0.0, 0.0}, 2.5) == ComplexScalar{});
  CHECK_THROWS_AS(principal_pow({0.0, 0.0}, -1.0), std::domain_error);
  CHECK_THROWS_AS(principal_log({0.0, 0.0}), std::domain_error);
  CHECK(principal_sqrt({0.0, 0.0}) == ComplexScalar{});
}

TEST_CASE("(1/(ik))^(1/alpha) has argument -pi/(2 alpha) and positive real part", "[complex][property]") {
  for (int ia = 1; ia <= 50; ++ia) {
    const double alpha = 1.0 + 5.0 * ia / 50.0;  // (1, 6]
    for (int ik = 0; ik <= 40; ++ik) {
      const double k = std::pow(10.0, 4.0 * ik / 40.0);  // [1, 1e4]
      const ComplexScalar z = principal_pow(1.0 / (kI * k), 1.0 / alpha);
      INFO("alpha=" << alpha << " k=" << k);
      CHECK(z.real() > 0.0);
      CHECK(principal_arg(z) == Approx(-std::numbers::pi / (2 * alpha)).epsilon(1e-13));
    }
  }
}

TEST_CASE("principal_pow agrees with exp(p log z)", "[complex][property]") {
  for (int i = 0; i < 36; ++i) {
    const double theta = -std::numbers::pi + 2.0 * std::numbers::pi * (i + 0.5) / 36.0;
    const ComplexScalar z = std::polar(1.7, theta);
    for (double p : {-2.5, -1.0, 0.25, 0.5, 1.0 / 3.0, 2.0, 3.5}) {
      const ComplexScalar expected = std::exp(p * principal_log(z));
      CHECK(std::abs(principal_pow(z, p) - expected) <= 1e-14 * std::abs(expected));
    }
  }
}
