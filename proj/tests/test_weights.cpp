#include "dcyc/cyclicity.hpp"
#include "dcyc/weights.hpp"

#include <doctest.h>

#include <cmath>
#include <memory>

using namespace dcyc;

namespace {

const double kLogPi = std::log(kPi);

std::shared_ptr<const InverseIntegral> integral_of(WeightProfile psi) {
  return std::make_shared<const InverseIntegral>(std::move(psi));
}

}  // namespace

TEST_CASE("power and constant profiles") {
  const WeightProfile w = WeightProfile::power(0.3, 2.0);
  CHECK(w.value(0.5) == doctest::Approx(2.0 * std::pow(0.5, 0.3)).epsilon(1e-14));
  CHECK(w.derivative(0.5) == doctest::Approx(0.6 * std::pow(0.5, -0.7)).epsilon(1e-12));
  CHECK(WeightProfile::constant(3.0).value(1e-200) == doctest::Approx(3.0));
  const WeightProfile e = WeightProfile::exp_power(-1.0, -1.0);
  CHECK(e.value(0.5) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
}

TEST_CASE("discontinuous pieces are rejected") {
  WeightPiece a;
  a.family = Family::power;
  a.log_lo = -kInf;
  a.log_hi = 0.0;
  a.p = 1.0;
  WeightPiece b = a;
  b.log_lo = 0.0;
  b.log_hi = kLogPi;
  b.log_c = 0.1;
  CHECK_THROWS_AS(WeightProfile({a, b}), std::invalid_argument);
}

TEST_CASE("build_phi for a single point") {
  const NeighborhoodMeasure m = neighborhood_measure(CircleSet::from_points({0.0}));
  const WeightProfile phi1 = build_phi(m, 1.0);
  for (double t : {1e-12, 0.01, 1.0, 3.0}) CHECK(phi1.value(t) == doctest::Approx(t).epsilon(1e-13));
  const WeightProfile phi = build_phi(m, 0.5);
  // 2t = √t at t = 1/4
  CHECK(phi.value(0.1) == doctest::Approx(0.2).epsilon(1e-13));
  CHECK(phi.value(0.25) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(phi.value(2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
}

TEST_CASE("build_phi once |E_t| saturates") {
  const NeighborhoodMeasure m = neighborhood_measure(CircleSet::from_points({0.0, kPi}));
  const WeightProfile phi = build_phi(m, 0.9);
  // |E_t| = 2π beyond π/2, above t^0.9 there
  CHECK(phi.value(2.5) == doctest::Approx(std::pow(2.5, 0.9)).epsilon(1e-13));
  // 4t < t^0.9 only below 4^-10
  CHECK(phi.value(1e-7) == doctest::Approx(4e-7).epsilon(1e-13));
  CHECK(phi.value(1e-3) == doctest::Approx(std::pow(1e-3, 0.9)).epsilon(1e-13));
}

TEST_CASE("concavity of w(t^γ)") {
  CHECK(concavity_check(WeightProfile::power(0.3), 3.0).ok);
  const ConcavityResult bad = concavity_check(WeightProfile::power(0.4), 3.0);
  CHECK_FALSE(bad.ok);
  CHECK(bad.violation_log_t.has_value());
}

TEST_CASE("log integrability") {
  const StepFunction n = counting_function(CircleSet::from_points({0.0}));
  const IntegralValue v = log_integrability(WeightProfile::power(1.0), n);
  CHECK(v.finite);
  // 2 (∫_0^1 -log t + ∫_1^π log t) = 2 (π log π - π + 2)
  CHECK(v.value == doctest::Approx(2.0 * (kPi * std::log(kPi) - kPi + 2.0)).epsilon(1e-10));
  const IntegralValue e = log_integrability(WeightProfile::exp_power(-1.0, -1.0), n);
  CHECK_FALSE(e.finite);
}

TEST_CASE("log integrability matches the Carleson-set integral for t^(1-α)") {
  const CircleSet e = cantor_profile(CantorSpec::geometric(1.0 / 3.0), 20);
  const double alpha = 0.6;
  const IntegralValue v = log_integrability(WeightProfile::power(1.0 - alpha, std::pow(kPi, -(1.0 - alpha))), counting_function(e));
  REQUIRE(v.finite);
  CHECK(v.value == doctest::Approx((1.0 - alpha) * carleson_set_test(e).value).epsilon(1e-8));
}

TEST_CASE("w_delta for psi(t) = t") {
  const auto g = integral_of(WeightProfile::power(1.0));
  const double log_delta = kLogPi - 3.0;
  const WDelta wd = w_delta_family(g, 0.6, log_delta);
  CHECK(wd.A == doctest::Approx(1.0 + std::log(3.0)).epsilon(1e-13));
  CHECK(wd.log_eta == doctest::Approx(log_delta).epsilon(1e-13));
  CHECK(wd.degenerate_middle);
  CHECK(wd.w.log_value(log_delta) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(wd.w.value(2.0) == doctest::Approx(1.0));
}

TEST_CASE("w_delta eta against the closed-form inverse of G for psi = t^0.75") {
  const double alpha = 0.6;
  const auto g = integral_of(WeightProfile::power(0.75));
  // G(t) = 4 (π^¼ - t^¼)
  auto G = [](double t) { return 4.0 * (std::pow(kPi, 0.25) - std::pow(t, 0.25)); };
  for (double log_delta : {-3.0, -6.0, -12.0, -24.0, -48.0}) {
    const WDelta wd = w_delta_family(g, alpha, log_delta);
    const double delta = std::exp(log_delta);
    const double ratio = std::pow(delta, 0.25);
    CHECK(wd.ratio == doctest::Approx(ratio).epsilon(1e-12));
    const double target = G(delta) * std::exp(ratio - 1.0);
    const double eta = std::pow(std::pow(kPi, 0.25) - target / 4.0, 4.0);
    CHECK(wd.eta() == doctest::Approx(eta).epsilon(1e-10));
    // w_δ is continuous, equals δ/ψ(δ) at δ and 1 above η
    CHECK(wd.w.log_value(log_delta) == doctest::Approx(std::log(ratio)).epsilon(1e-12));
    CHECK(wd.w.value(std::min(kPi, 1.01 * wd.eta())) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("w_delta eta against a 64-step dyadic scan") {
  const auto g = integral_of(WeightProfile::power(0.8, 1.3));
  for (double log_delta : {-2.0, -5.0, -9.0}) {
    const WDelta wd = w_delta_family(g, 0.55, log_delta);
    const double target = g->at_log(log_delta) * std::exp(wd.ratio - 1.0);
    double x = log_delta;
    double step = kLogPi - log_delta;
    for (int k = 0; k < 64; ++k) {
      step *= 0.5;
      if (g->at_log(x + step) > target) x += step;
    }
    CHECK(std::fabs(wd.log_eta - x) < 1e-10);
  }
}

TEST_CASE("knot inequality and concavity of w_delta") {
  const double alpha = 0.6;
  const double gamma = default_gamma(alpha);
  // ψ = 2t: G(t) = log(π/t)/2, so the knot inequality G(δ) >= 1/(1-α) reads δ <= π e^-5
  const auto g = integral_of(WeightProfile::power(1.0, 2.0));
  CHECK(knot_inequality(*g, alpha, kLogPi - 5.5));
  CHECK_FALSE(knot_inequality(*g, alpha, kLogPi - 4.5));
  // on the middle piece t^(1-1/γ) w' = t^(-1/γ)/log(π/t) decreases while log(π/t) > γ
  const WDelta small = w_delta_family(g, alpha, kLogPi - 20.0);
  CHECK(kLogPi - small.log_eta > gamma);
  CHECK(concavity_check(small.w, gamma).ok);
  // δ = π e^-4: the middle piece is fine (log(π/η) = 4/√e > γ) but the knot inequality fails
  const ConcavityResult near = concavity_check(w_delta_family(g, alpha, kLogPi - 4.0).w, gamma);
  CHECK_FALSE(near.ok);
  REQUIRE(near.violation_log_t.has_value());
  CHECK(*near.violation_log_t == doctest::Approx(kLogPi - 4.0).epsilon(1e-9));
  CHECK(near.knot.has_value());
}

TEST_CASE("certificate parameter validation") {
  CertificateParams ok{0.6, 0.62, default_gamma(0.6), -5.0, 0.3};
  CHECK_NOTHROW(ok.validate());
  CertificateParams bad = ok;
  bad.beta = 0.7;  // above (1+μ)/2 = 0.65
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.gamma = 1.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("default gamma stays admissible") {
  for (double alpha : {0.55, 0.6, 0.7, 0.75, 0.9}) {
    const double g = default_gamma(alpha);
    CHECK(g > 2.0);
    CHECK(1.0 - 1.0 / g < alpha);
  }
}

TEST_CASE("inverse integral closed forms") {
  const InverseIntegral g(WeightProfile::power(1.0));
  CHECK(g.at(1e-3) == doctest::Approx(std::log(kPi / 1e-3)).epsilon(1e-13));
  CHECK(g.at_zero() == kInf);
  const InverseIntegral h(WeightProfile::power(0.5));
  CHECK(h.at_zero() == doctest::Approx(2.0 * std::sqrt(kPi)).epsilon(1e-13));
}
