#include "dcyc/circle_geometry.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace dcyc;

namespace {

// gap lengths read off arc positions
std::vector<double> brute_gaps(const CircleSet& e) {
  std::vector<double> g;
  const auto& a = e.arcs();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double next = i + 1 < a.size() ? a[i + 1].start : a.front().start + kTwoPi;
    const double len = next - a[i].end();
    if (len > 0.0) g.push_back(len);
  }
  return g;
}

double brute_n(const CircleSet& e, double t) {
  double n = 0.0;
  for (double g : brute_gaps(e)) n += g > 2.0 * t ? 2.0 : 0.0;
  return n;
}

double brute_measure(const CircleSet& e, double t) {
  double m = 0.0;
  for (const Arc& a : e.arcs()) m += a.length;
  for (double g : brute_gaps(e)) m += std::min(g, 2.0 * t);
  return m;
}

double brute_distance(double theta, const CircleSet& e) {
  double d = kPi;
  for (const Arc& a : e.arcs()) {
    if (a.contains(theta)) return 0.0;
    d = std::min({d, circular_distance(theta, a.start), circular_distance(theta, a.end())});
  }
  return d;
}

}  // namespace

TEST_CASE("middle-thirds generation 1 and 0") {
  const CantorSpec spec = CantorSpec::geometric(1.0 / 3.0);
  const CircleSet g0 = cantor_generate(spec, 0);
  REQUIRE(g0.arcs().size() == 1);
  CHECK(g0.arcs()[0].length == doctest::Approx(kPi / 2));
  const CircleSet g1 = cantor_generate(spec, 1);
  REQUIRE(g1.arcs().size() == 2);
  CHECK(g1.arcs()[0].start == doctest::Approx(0.0));
  CHECK(g1.arcs()[0].length == doctest::Approx(kPi / 6));
  CHECK(g1.arcs()[1].end() == doctest::Approx(kPi / 2));
  CHECK(g1.arcs()[1].length == doctest::Approx(kPi / 6));
}

TEST_CASE("double-exponential generation 3 gaps") {
  const CantorSpec spec = CantorSpec::double_exponential();
  const CircleSet g3 = cantor_generate(spec, 3);
  CHECK(g3.arcs().size() == 8);
  auto l = [](int n) { return kPi / 2 * std::exp(-(std::ldexp(1.0, n) - 1.0)); };
  std::vector<double> gaps = brute_gaps(g3);
  // 4 gaps g_3, 2 gaps g_2, 1 gap g_1 and the big gap 2π - l_0
  std::vector<double> expect{2 * kPi - l(0), l(0) - 2 * l(1)};
  for (int i = 0; i < 2; ++i) expect.push_back(l(1) - 2 * l(2));
  for (int i = 0; i < 4; ++i) expect.push_back(l(2) - 2 * l(3));
  std::sort(gaps.begin(), gaps.end());
  std::sort(expect.begin(), expect.end());
  REQUIRE(gaps.size() == expect.size());
  for (std::size_t i = 0; i < gaps.size(); ++i) CHECK(gaps[i] == doctest::Approx(expect[i]).epsilon(1e-12));
  for (double g : gaps) CHECK(g > 0.0);
  for (int k = 1; k <= 3; ++k) CHECK(std::exp(spec.log_gap(k)) == doctest::Approx(l(k - 1) - 2 * l(k)).epsilon(1e-12));
}

TEST_CASE("invalid length rule names the first bad index") {
  const CantorSpec bad = CantorSpec::explicit_lengths({1.0, 0.4, 0.3});
  try {
    bad.validate(2);
    FAIL("expected InvalidCantorSpec");
  } catch (const InvalidCantorSpec& e) {
    CHECK(e.index() == 2);
  }
}

TEST_CASE("arc distance") {
  const CircleSet one = CircleSet::from_points({0.0});
  CHECK(arc_distance(kPi / 2, one) == doctest::Approx(kPi / 2));
  const CircleSet arcs = CircleSet::from_arcs({{1.0, 0.5}});
  CHECK(arc_distance(1.2, arcs) == 0.0);
  const CircleSet g2 = cantor_generate(CantorSpec::geometric(1.0 / 3.0), 2);
  const double center = kPi / 4;
  CHECK(arc_distance(center, g2) == doctest::Approx(brute_distance(center, g2)).epsilon(1e-14));
  CHECK(arc_distance(center, g2) == doctest::Approx(kPi / 12).epsilon(1e-14));
  for (int i = 0; i < 200; ++i) {
    const double th = kTwoPi * (i + 0.37) / 200.0;
    CHECK(arc_distance(th, g2) == doctest::Approx(brute_distance(th, g2)).epsilon(1e-13));
  }
}

TEST_CASE("counting function") {
  const StepFunction n1 = counting_function(CircleSet::from_points({0.0}));
  for (double t : {1e-6, 0.5, 3.0}) CHECK(n1(t) == 2.0);
  const StepFunction n2 = counting_function(CircleSet::from_points({0.0, kPi}));
  CHECK(n2(1.0) == 4.0);
  CHECK(n2(1.6) == 0.0);
  const CantorSpec spec = CantorSpec::geometric(1.0 / 3.0);
  for (int gen : {3, 6}) {
    const CircleSet e = cantor_generate(spec, gen);
    const StepFunction n = counting_function(e);
    for (double t : {1e-5, 3e-4, 0.01, 0.05, 0.2, 1.0, 2.5}) {
      // avoid ties at exact gap lengths
      CHECK(n(t) == brute_n(e, t));
      double formula = 2.0 * (2 * kPi - kPi / 2 > 2 * t);
      for (int k = 1; k <= gen; ++k) formula += 2.0 * std::ldexp(1.0, k - 1) * (std::exp(spec.log_gap(k)) > 2 * t);
      CHECK(n(t) == formula);
    }
  }
}

TEST_CASE("integral of N is the neighbourhood measure") {
  const CircleSet e = cantor_generate(CantorSpec::geometric(0.3), 5);
  const StepFunction n = counting_function(e);
  const NeighborhoodMeasure m = neighborhood_measure(e);
  for (double t : {1e-4, 0.003, 0.04, 0.7, 2.0}) {
    CHECK(n.integral(t) + e.measure() == doctest::Approx(m(t)).epsilon(1e-12));
    CHECK(t * n(t) <= m(t) + 1e-15);
    CHECK(m(t) == doctest::Approx(brute_measure(e, t)).epsilon(1e-12));
  }
}

TEST_CASE("neighbourhood measure closed cases") {
  const NeighborhoodMeasure m1 = neighborhood_measure(CircleSet::from_points({0.0}));
  for (double t : {1e-9, 0.3, 3.0}) CHECK(m1(t) == doctest::Approx(2 * t).epsilon(1e-14));
  const NeighborhoodMeasure m2 = neighborhood_measure(CircleSet::from_points({0.0, kPi}));
  CHECK(m2(1.0) == doctest::Approx(4.0));
  CHECK(m2(2.0) == doctest::Approx(kTwoPi));
  const CantorSpec spec = CantorSpec::geometric(1.0 / 3.0);
  for (int n : {2, 5, 9}) {
    const double ln = std::exp(spec.log_length(n));
    const NeighborhoodMeasure m = neighborhood_measure(cantor_profile(spec, n));
    CHECK(m(ln / 2) == doctest::Approx(std::ldexp(1.0, n) * 2 * ln).epsilon(1e-12));
  }
}

TEST_CASE("deep profiles agree with positions where both exist") {
  const CantorSpec spec = CantorSpec::double_exponential();
  const NeighborhoodMeasure a = neighborhood_measure(cantor_generate(spec, 4));
  const NeighborhoodMeasure b = neighborhood_measure(cantor_profile(spec, 4));
  for (double t : {1e-8, 1e-3, 0.1, 1.0}) CHECK(a(t) == doctest::Approx(b(t)).epsilon(1e-12));
  // generation 40 is far below double precision as positions, fine as a profile
  const CircleSet deep = cantor_profile(spec, 40);
  CHECK(deep.measure_zero() == false);
  CHECK(std::isfinite(neighborhood_measure(deep).log_at(-1e9)));
}

TEST_CASE("mu exponent") {
  CHECK(CantorSpec::geometric(0.25).closed_form_mu() == doctest::Approx(0.5).epsilon(1e-14));
  const MuEstimate one = mu_exponent(CircleSet::from_points({0.0}));
  CHECK(one.slope == doctest::Approx(1.0).epsilon(1e-9));
  const MuEstimate third = mu_exponent(cantor_profile(CantorSpec::geometric(1.0 / 3.0), 12));
  CHECK(std::fabs(third.slope - (1.0 - std::log(2.0) / std::log(3.0))) < 0.05);
}

TEST_CASE("capacity condition") {
  const CapcondReport one = capcond_diagnostic(CircleSet::from_points({0.0}));
  CHECK(one.verdict == Growth::diverges);
  CHECK(capcond_diagnostic(CantorSpec::geometric(1.0 / 3.0)).verdict == Growth::converges);
  CHECK(capcond_diagnostic(CantorSpec::double_exponential(), 30).verdict == Growth::diverges);
  // I(ε) = ½ log(π/ε) for a single point
  const NeighborhoodMeasure m = neighborhood_measure(CircleSet::from_points({0.0}));
  CHECK(m.inverse_integral(std::log(1e-6)) == doctest::Approx(0.5 * std::log(kPi / 1e-6)).epsilon(1e-12));
}

TEST_CASE("Carleson set test") {
  const CarlesonSetReport one = carleson_set_test(CircleSet::from_points({0.0}));
  CHECK(one.verdict == Growth::converges);
  CHECK(one.value == doctest::Approx(kTwoPi).epsilon(1e-9));
  CHECK(carleson_set_test(cantor_profile(CantorSpec::geometric(1.0 / 3.0), 20)).verdict == Growth::converges);
  GapSequenceSpec g;
  g.rule = GapSequenceSpec::Rule::inverse_log_squared;
  g.scale = 0.5;
  g.count = 20000;
  CHECK(carleson_set_test(gap_sequence_set(g)).verdict == Growth::diverges);
}

TEST_CASE("gap sequence closed forms") {
  GapSequenceSpec g;
  g.rule = GapSequenceSpec::Rule::power;
  g.exponent = 2.0;
  g.count = 100;
  CHECK(g.power_sum_verdict(0.6) == Growth::converges);
  CHECK(g.power_sum_verdict(0.4) == Growth::diverges);
  CHECK(g.carleson_verdict() == Growth::converges);
}
