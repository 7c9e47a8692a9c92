#include "dcyc/cyclicity.hpp"

#include <doctest.h>

#include <cmath>

using namespace dcyc;

TEST_CASE("default schedule") {
  const auto s = default_log_delta_schedule();
  REQUIRE(s.size() == 18 + 26);
  CHECK(s.front() == doctest::Approx(std::log(kPi / 8.0)));
  CHECK(s.back() == doctest::Approx(-std::ldexp(1.0, 30)));
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] < s[i - 1]);
}

TEST_CASE("default parameters sit inside the admissible window") {
  for (double mu : {0.1, 0.37, 0.5, 1.0, 2.0}) {
    const double a = default_alpha(mu);
    const double b = default_beta(a, mu);
    CHECK(a > 0.5);
    CHECK(a < b);
    CHECK(b < 0.5 * (1.0 + std::min(mu, 1.0)));
  }
}

TEST_CASE("a single point is certified") {
  const CyclicityReport r = theorem_main_check(CircleSet::from_points({0.0}));
  CHECK(r.conclusion == Conclusion::met);
  REQUIRE(r.certificate.has_value());
  CHECK(r.certificate->passed);
  CHECK(r.certificate->failures.empty());
  CHECK(r.certificate->knot_small_delta);
  CHECK(r.certificate->j_bounded);
}

TEST_CASE("middle thirds: capacity condition fails, not met") {
  const CyclicityReport r = theorem_main_check(CantorSpec::geometric(1.0 / 3.0));
  CHECK(r.conclusion == Conclusion::not_met);
  CHECK(r.capcond.verdict == Growth::converges);
  CHECK_FALSE(r.reason.empty());
}

TEST_CASE("double-exponential Cantor set is certified") {
  const CantorSpec spec = CantorSpec::double_exponential();
  const CyclicityReport r = theorem_main_check(spec);
  CHECK(r.conclusion == Conclusion::met);
  REQUIRE(r.certificate.has_value());
  CHECK(r.certificate->eta_small);
  CHECK(r.certificate->f0_close);
  CHECK(r.capcond.verdict == Growth::diverges);
}

TEST_CASE("certificate generation reaches the deepest delta") {
  const CantorSpec spec = CantorSpec::double_exponential();
  CertificateConfig c;
  const int g = certificate_generation(spec, c);
  CHECK(-spec.log_length(g) >= -1.6 * c.schedule().back() + 1.0);
  CHECK(-spec.log_length(g - 1) < -1.6 * c.schedule().back() + 1.0);
  c.log_deltas = {-5.0, -10.0};
  CHECK(certificate_generation(spec, c) < g);
}

TEST_CASE("Brown-Shields verdicts") {
  CHECK(cantor_brown_shields(CantorSpec::geometric(1.0 / 3.0)).verdict == "not cyclic");
  CHECK(cantor_brown_shields(CantorSpec::double_exponential()).verdict == "cyclic");
  CantorSpec point = CantorSpec::geometric(1.0 / 3.0);
  point.l0 = 0.0;
  CHECK(point.degenerate());
  CHECK(cantor_brown_shields(point).verdict == "cyclic");
  CHECK(certificate_generation(point, {}) == 0);
}

TEST_CASE("inconsistent parameters are rejected") {
  CertificateConfig c;
  c.alpha = 0.4;
  CHECK_THROWS_AS(construct_certificate(CircleSet::from_points({0.0}), 1.0, Growth::diverges, c), std::invalid_argument);
  const CyclicityReport r = theorem_main_check(CircleSet::from_points({0.0}), c);
  CHECK(r.conclusion == Conclusion::inconclusive);
  CHECK(r.reason.find("could not be built") != std::string::npos);
}
