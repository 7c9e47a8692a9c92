#include "dcyc/growth.hpp"
#include "dcyc/numeric.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace dcyc;

TEST_CASE("geometric tail converges") {
  std::vector<double> s;
  double acc = 0.0;
  for (int k = 0; k < 12; ++k) {
    acc += std::pow(0.5, k);
    s.push_back(acc);
  }
  CHECK(classify_partial_sums(s).verdict == Growth::converges);
}

TEST_CASE("harmonic-like partial sums diverge") {
  // partial sums of 1/k at k = 2^j grow like j log 2
  std::vector<double> s;
  for (int j = 1; j <= 14; ++j) {
    double acc = 0.0;
    for (int k = 1; k <= (1 << j); ++k) acc += 1.0 / k;
    s.push_back(acc);
  }
  CHECK(classify_partial_sums(s).verdict == Growth::diverges);
}

TEST_CASE("log-log divergence is never read as convergence") {
  std::vector<double> s;
  for (int j = 1; j <= 14; ++j) s.push_back(std::log(1.0 + j));
  CHECK(classify_partial_sums(s).verdict != Growth::converges);
  for (int j = 15; j <= 80; ++j) s.push_back(std::log(1.0 + j));
  CHECK(classify_partial_sums(s).verdict == Growth::diverges);
}

TEST_CASE("too few sums are inconclusive") {
  std::vector<double> s{1.0, 2.0};
  CHECK(classify_partial_sums(s).verdict == Growth::inconclusive);
}

TEST_CASE("infinite increments diverge") {
  std::vector<double> s{1.0, 2.0, 3.0, kInf, kInf};
  CHECK(classify_partial_sums(s).verdict == Growth::diverges);
}

TEST_CASE("growth names round-trip") {
  for (Growth g : {Growth::converges, Growth::diverges, Growth::inconclusive}) CHECK(growth_from_string(to_string(g)) == g);
  CHECK_THROWS(growth_from_string("maybe"));
}

TEST_CASE("log_add_exp and log_sub_exp") {
  CHECK(log_add_exp(std::log(2.0), std::log(3.0)) == doctest::Approx(std::log(5.0)).epsilon(1e-15));
  CHECK(log_add_exp(-kInf, 1.5) == 1.5);
  CHECK(log_sub_exp(std::log(5.0), std::log(3.0)) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(log_sub_exp(2.0, 2.0) == -kInf);
}

TEST_CASE("wrap and circular distance") {
  CHECK(wrap_angle(-0.5) == doctest::Approx(kTwoPi - 0.5));
  CHECK(wrap_angle(kTwoPi) == doctest::Approx(0.0));
  CHECK(circular_distance(0.1, kTwoPi - 0.1) == doctest::Approx(0.2));
  CHECK(circular_distance(0.0, kPi) == doctest::Approx(kPi));
}

TEST_CASE("quadrature backends") {
  CHECK(gauss_integrate([](double x) { return x * x * x * x; }, 0.0, 1.0, 8) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(adaptive_integrate([](double x) { return std::cos(x); }, 0.0, kPi / 2) == doctest::Approx(1.0).epsilon(1e-12));
  // ∫_0^1 log x dx = -1 with an endpoint singularity
  CHECK(endpoint_singular_integrate([](double x) { return std::log(x); }, 0.0, 1.0) == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("oscillating increments are coarsened before classification") {
  // geometric decay 0.85 per block modulated with period 3
  std::vector<double> s;
  double acc = 0.0;
  const double wobble[3] = {0.1, 2.0, 0.9};
  for (int k = 0; k < 18; ++k) {
    acc += std::pow(0.85, k) * wobble[k % 3];
    s.push_back(acc);
  }
  const GrowthEvidence ev = classify_partial_sums(s);
  CHECK(ev.verdict == Growth::converges);
  CHECK(ev.rule.find("coarsened") != std::string::npos);
  std::vector<double> short_noisy{1.0, 1.1, 2.0, 2.05, 3.0};
  CHECK(classify_partial_sums(short_noisy).verdict == Growth::inconclusive);
}
