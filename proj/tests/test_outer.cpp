#include "dcyc/outer.hpp"

#include <doctest.h>

#include <cmath>

using namespace dcyc;

namespace {

BoundaryModulus abs_one_minus_z(int power) {
  return BoundaryModulus::from_function(
      [power](double th) { return std::pow(std::abs(Complex(1.0, 0.0) - std::polar(1.0, th)), power); }, {0.0}, {},
      "test");
}

}  // namespace

TEST_CASE("constant modulus") {
  OuterOptions o;
  o.grid = 256;
  const OuterFunction f = outer_from_modulus(BoundaryModulus::constant(2.5), o);
  CHECK(std::abs(f.taylor()[0] - Complex(2.5, 0.0)) < 1e-13);
  for (std::size_t k = 1; k < f.taylor().size(); ++k) CHECK(std::abs(f.taylor()[k]) < 1e-13);
  CHECK(f.tail_estimate() < 1e-20);
}

TEST_CASE("outer function of |1 - z| and |1 - z|^2") {
  const OuterFunction f1 = outer_from_modulus(abs_one_minus_z(1));
  REQUIRE(f1.taylor().size() >= 3);
  CHECK(std::abs(f1.taylor()[0] - 1.0) < 1e-9);
  CHECK(std::abs(f1.taylor()[1] + 1.0) < 1e-9);
  for (std::size_t k = 2; k < 50; ++k) CHECK(std::abs(f1.taylor()[k]) < 1e-8);
  const OuterFunction f2 = outer_from_modulus(abs_one_minus_z(2));
  CHECK(std::abs(f2.taylor()[0] - 1.0) < 1e-9);
  CHECK(std::abs(f2.taylor()[1] + 2.0) < 1e-9);
  CHECK(std::abs(f2.taylor()[2] - 1.0) < 1e-9);
  CHECK(f1.subtracted_zeros() == 1);
  // f(1/2) = 1/2
  CHECK(std::abs(evaluate(f1, Complex(0.5, 0.0)).value - 0.5) < 1e-9);
}

TEST_CASE("Herglotz quadrature agrees with the Taylor series") {
  const BoundaryModulus phi = BoundaryModulus::from_function([](double th) { return 2.0 + std::cos(th); });
  const OuterFunction f = outer_from_modulus(phi);
  for (Complex z : {Complex(0.3, 0.1), Complex(-0.5, 0.2), Complex(0.0, -0.7)}) {
    CHECK(std::abs(evaluate(f, z).value - herglotz_evaluate(phi, z)) < 1e-10);
  }
  // 2 + cos θ = |a + b e^{iθ}|² with a b = 1/2, a² + b² = 2
  const double a = std::sqrt((2.0 + std::sqrt(3.0)) / 2.0);
  const double b = 0.5 / a;
  const Complex z(0.4, -0.3);
  CHECK(std::abs(std::abs(evaluate(f, z).value) - std::norm(a + b * z)) < 1e-10);
}

TEST_CASE("series exponentiation and pointwise route agree") {
  const OuterFunction f = outer_from_modulus(BoundaryModulus::from_function([](double th) { return std::exp(std::sin(th)); }));
  const auto direct = exponentiate_pointwise(f, 40);
  for (std::size_t k = 0; k < 40; ++k) CHECK(std::abs(direct[k] - f.taylor()[k]) < 1e-10);
  // exp(z) from b = (0, 1)
  const std::vector<Complex> b{0.0, 1.0};
  const auto e = exponentiate_series(b, 10);
  double fact = 1.0;
  for (std::size_t k = 0; k < 10; ++k) {
    if (k > 0) fact *= static_cast<double>(k);
    CHECK(std::abs(e[k] - 1.0 / fact) < 1e-15);
  }
}

TEST_CASE("modulus at zero") {
  const ModulusAtZero m1 = modulus_at_zero(abs_one_minus_z(1));
  CHECK(m1.finite);
  CHECK(m1.value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(m1.log_means.size() == 3);
  // w(t) = t around a single point: exp((1/π) ∫_0^π log θ dθ) = π/e
  const BoundaryModulus d = distance_modulus(CircleSet::from_points({0.0}), WeightProfile::power(1.0));
  const ModulusAtZero m2 = modulus_at_zero(d);
  CHECK(m2.value == doctest::Approx(kPi / std::exp(1.0)).epsilon(1e-6));
  const OuterFunction f = distance_function(CircleSet::from_points({0.0}), WeightProfile::power(1.0));
  CHECK(std::abs(f.taylor()[0]) == doctest::Approx(kPi / std::exp(1.0)).epsilon(1e-6));
}

TEST_CASE("boundary trace of a distance function") {
  const CircleSet e = CircleSet::from_points({0.0, 2.0});
  const WeightProfile w = WeightProfile::power(0.5);
  OuterOptions o;
  o.grid = 1024;
  const OuterFunction f = distance_function(e, w, o);
  REQUIRE(f.log_boundary().size() == 1024);
  for (std::size_t j = 0; j < 1024; j += 37) {
    const double th = kTwoPi * (static_cast<double>(j) + 0.5) / 1024.0;
    CHECK(f.log_boundary()[j] == doctest::Approx(0.5 * std::log(arc_distance(th, e))).epsilon(1e-12));
  }
}

TEST_CASE("grid must be a power of two") {
  CHECK(is_power_of_two(1024));
  CHECK_FALSE(is_power_of_two(1000));
  OuterOptions o;
  o.grid = 1000;
  CHECK_THROWS(outer_from_modulus(BoundaryModulus::constant(1.0), o));
}

TEST_CASE("vanishing on an arc is rejected") {
  const BoundaryModulus phi = BoundaryModulus::from_function([](double th) { return th < 1.0 ? 0.0 : 1.0; });
  CHECK_THROWS_WITH(outer_from_modulus(phi), doctest::Contains("positive-measure"));
  CHECK_FALSE(modulus_at_zero(phi).finite);
}
