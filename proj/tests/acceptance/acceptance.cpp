// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include "dcyc/cyclicity.hpp"
#include "dcyc/energy.hpp"
#include "dcyc/io.hpp"
#include "dcyc/regularize.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace dcyc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

BoundaryModulus abs_one_minus_z(int power) {
  return BoundaryModulus::from_function(
      [power](double th) { return std::pow(std::abs(Complex(1.0, 0.0) - std::polar(1.0, th)), power); }, {0.0});
}

// ---------------------------------------------------------------- criterion 1

Outcome energy_oracles() {
  Outcome o;
  const double s1 = series_energy(OuterFunction::from_taylor({1.0, -1.0})).value;
  const double s2 = series_energy(OuterFunction::from_taylor({1.0, -2.0, 1.0})).value;
  o.require(s1 == 1.0, "series(1-z) == 1");
  o.require(s2 == 6.0, "series((1-z)^2) == 6");
  // the same functions rebuilt from |f| on the circle
  const double m1 = series_energy(outer_from_modulus(abs_one_minus_z(1))).value;
  const double m2 = series_energy(outer_from_modulus(abs_one_minus_z(2))).value;
  o.require(std::fabs(m1 - 1.0) < 1e-9 && std::fabs(m2 - 6.0) < 1e-9, "modulus route within 1e-9");
  o.detail << "series " << g(s1) << ", " << g(s2) << "; from modulus " << g(m1) << ", " << g(m2);
  CarlesonOptions co;
  co.tol = 1e-3;
  for (int p : {1, 2}) {
    const auto t0 = Clock::now();
    const CarlesonEnergy c = carleson_energy(abs_one_minus_z(p), co);
    const double dt = seconds_since(t0);
    const double exact = p == 1 ? 1.0 : 6.0;
    o.require(std::fabs(c.value - exact) <= 1e-3 * exact, "carleson within 1e-3 relative");
    o.require(dt < 10.0, "carleson under 10 s");
    o.detail << "; carleson " << g(c.value) << " (" << g(dt) << " s)";
  }
  return o;
}

// ---------------------------------------------------------------- criterion 2

std::size_t grid_for(const CircleSet& e) {
  std::size_t m = 4096;
  const std::size_t points = e.measure_zero() ? e.arcs().size() : 2 * e.arcs().size();
  while (m < 8 * points) m *= 2;
  return m;
}

EnergyReport report_for(const CircleSet& e, const WeightProfile& w, double gamma) {
  TwoSidedOptions opt;
  const std::size_t m = grid_for(e);
  opt.grids = {m, 2 * m, 4 * m};
  return two_sided_report(e, w, gamma, opt);
}

Outcome two_sided() {
  Outcome o;
  struct WeightCase {
    WeightProfile w;
    double gamma;
    std::string name;
  };
  const std::vector<WeightCase> weights{{WeightProfile::power(1.0), 1.0, "t"}, {WeightProfile::power(0.3), 3.0, "t^0.3"}};
  const CantorSpec third = CantorSpec::geometric(1.0 / 3.0);
  struct SetCase {
    CircleSet e;
    std::optional<CircleSet> refined;
    std::string name;
  };
  const std::vector<SetCase> sets{{CircleSet::from_points({0.0}), std::nullopt, "{1}"},
                                  {CircleSet::from_points({0.0, kPi}), std::nullopt, "{1,-1}"},
                                  {cantor_generate(third, 10), cantor_generate(third, 12), "cantor 1/3 gen 10"}};
  for (const SetCase& s : sets) {
    for (const WeightCase& w : weights) {
      const auto t0 = Clock::now();
      const EnergyReport r = report_for(s.e, w.w, w.gamma);
      double gen_move = 0.0;
      if (s.refined) {
        const EnergyReport r2 = report_for(*s.refined, w.w, w.gamma);
        gen_move = std::fabs(r2.ratio_series_j / r.ratio_series_j - 1.0);
        o.require(r2.grid_drift < 0.2, s.name + " + 2 generations, " + w.name + ": grid drift < 20%");
      }
      const double dt = seconds_since(t0);
      const std::string tag = s.name + ", " + w.name;
      o.require(r.ratio_series_j >= 1e-3 && r.ratio_series_j <= 1e3, tag + ": ratio in [1e-3, 1e3]");
      o.require(r.grid_drift < 0.2, tag + ": grid drift < 20%");
      o.require(gen_move < 0.2, tag + ": generation move < 20%");
      o.require(dt < 120.0, tag + ": under 2 min");
      o.detail << " " << tag << ": ratio " << g(r.ratio_series_j) << " drift " << g(r.grid_drift);
      if (s.refined) o.detail << " gen+2 " << g(gen_move);
      o.detail << " (" << g(dt) << " s);";
    }
  }
  return o;
}

// ---------------------------------------------------------------- criterion 3

Outcome classification() {
  Outcome o;
  const CircleSet one = CircleSet::from_points({0.0});
  const CircleSet third = cantor_generate(CantorSpec::geometric(1.0 / 3.0), 12);
  const CircleSet two_fifths = cantor_generate(CantorSpec::geometric(0.4), 12);
  struct Case {
    const CircleSet* e;
    double alpha;
    std::string name;
  };
  const std::vector<Case> cases{{&one, 0.25, "{1} a=0.25"},          {&third, 0.2, "1/3 a=0.2"},
                                {&third, 0.4, "1/3 a=0.4"},          {&two_fifths, 0.2, "2/5 a=0.2"},
                                {&one, 0.75, "{1} a=0.75"},          {&third, 0.75, "1/3 a=0.75"}};
  for (const Case& c : cases) {
    const CircleSet e = c.e->measure_zero() ? *c.e : c.e->endpoints();
    OuterOptions oo;
    oo.grid = 65536;
    const SeriesEnergy s = series_energy(distance_function(e, WeightProfile::power(c.alpha), oo));
    const PowerCriterion p = power_criterion(*c.e, c.alpha);
    o.require(s.growth.verdict == p.verdict, c.name + ": series " + to_string(s.growth.verdict) + " vs criterion " +
                                                 to_string(p.verdict));
    o.detail << " " << c.name << ": " << to_string(s.growth.verdict) << "/" << to_string(p.verdict) << ";";
  }
  return o;
}

// ---------------------------------------------------------------- criterion 4

/// O(n^2) suffix infimum: for every i a full min reduction over j >= i, split over independent accumulators.
std::vector<double> brute_suffix_inf(const std::vector<double>& u) {
  constexpr std::size_t lanes = 32;
  const std::size_t n = u.size();
  std::vector<double> out(n);
  const double* p = u.data();
  for (std::size_t i = 0; i < n; ++i) {
    double acc[lanes];
    for (double& a : acc) a = p[i];
    std::size_t j = i;
    for (; j + lanes <= n; j += lanes) {
#pragma omp simd
      for (std::size_t k = 0; k < lanes; ++k) acc[k] = acc[k] < p[j + k] ? acc[k] : p[j + k];
    }
    double m = p[i];
    for (; j < n; ++j) m = std::min(m, p[j]);
    for (double a : acc) m = std::min(m, a);
    out[i] = m;
  }
  return out;
}

Outcome rising_sun() {
  Outcome o;
  std::mt19937_64 rng(20240517);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = 100000;
  std::size_t mismatches = 0, bad_endpoints = 0, components = 0;
  const auto t0 = Clock::now();
  for (int inst = 0; inst < 100; ++inst) {
    std::vector<double> x(n), u(n);
    const double drift = 4.0 * unit(rng) - 1.0;
    const double amp = 0.1 + 2.0 * unit(rng);
    const double freq = 50.0 * unit(rng);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = 10.0 * static_cast<double>(i) / static_cast<double>(n - 1);
      u[i] = drift * x[i] + amp * std::sin(freq * x[i]) + 0.3 * noise(rng);
    }
    const RegularizationResult r = increasing_regularization({x, u, "random"});
    const std::vector<double> brute = brute_suffix_inf(u);
    for (std::size_t i = 0; i < n; ++i) mismatches += r.u_reg[i] != brute[i];
    for (const ShadeInterval& c : shade_components(r).components) {
      ++components;
      bad_endpoints += !(c.ua >= c.ub - 1e-6);
    }
  }
  o.require(mismatches == 0, "exact equality with the brute-force infimum");
  o.require(bad_endpoints == 0, "u(a) >= u(b) - 1e-6 on every shade component");
  o.detail << "100 instances of n=1e5: " << mismatches << " mismatching values, " << components << " shade components, "
           << bad_endpoints << " endpoint violations (" << g(seconds_since(t0)) << " s)";
  return o;
}

// ---------------------------------------------------------------- criterion 5

WeightPiece power_piece(double lo, double hi, double value_at_hi, double p) {
  WeightPiece w;
  w.family = Family::power;
  w.log_lo = lo;
  w.log_hi = hi;
  w.log_c = value_at_hi;
  w.p = p;
  w.log_ref = hi;
  return w;
}

/// t^β with dents every `spacing` dyadic blocks: slope 1 toward t for `depth`, then flat back up to t^β.
WeightProfile dyadic_dents(double beta, double depth, int blocks, int spacing) {
  const double log_pi = std::log(kPi);
  std::vector<WeightPiece> rev;
  double hi = log_pi;
  for (int k = 1; k <= blocks; ++k) {
    const double l2 = log_pi - spacing * k * std::log(2.0);
    if (!(l2 < hi)) throw std::logic_error("dents overlap");
    rev.push_back(power_piece(l2, hi, beta * hi, beta));
    const double lm = l2 - depth;
    rev.push_back(power_piece(lm, l2, beta * l2, 1.0));
    const double l1 = l2 - depth / beta;
    rev.push_back(power_piece(l1, lm, beta * l2 - depth, 0.0));
    hi = l1;
  }
  rev.push_back(power_piece(-kInf, hi, beta * hi, beta));
  std::reverse(rev.begin(), rev.end());
  return WeightProfile(std::move(rev));
}

/// Random log-log slopes in [0, 1] under t^β, riding t^β whenever a segment would cross it.
WeightProfile random_slopes(double beta, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double log_pi = std::log(kPi);
  const double bottom = log_pi - 30.0;
  std::vector<WeightPiece> rev;
  double hi = log_pi;
  double v = beta * hi;
  while (hi > bottom) {
    double p = unit(rng);
    double len = std::min(0.05 + 3.0 * unit(rng), hi - bottom);
    const double room = beta * hi - v;
    if (p < beta) {
      const double meet = room / (beta - p);
      if (meet < 1e-9) p = beta;
      else len = std::min(len, meet);
    }
    rev.push_back(power_piece(hi - len, hi, v, p));
    v -= p * len;
    hi -= len;
  }
  rev.push_back(power_piece(-kInf, hi, v, beta + (1.0 - beta) * unit(rng)));
  std::reverse(rev.begin(), rev.end());
  return WeightProfile(std::move(rev));
}

struct PsiCase {
  std::string name;
  WeightProfile phi;
  double alpha;
  double beta;
  bool divergent;
  /// top of the construction; φ <= t^β is only required on (0, a]
  double a = kPi;
};

PsiCase from_set(const std::string& name, const CircleSet& e, double mu, bool divergent) {
  const double alpha = default_alpha(mu);
  const double beta = default_beta(alpha, mu);
  return {name, build_phi(neighborhood_measure(e), beta), alpha, beta, divergent};
}

Outcome psi_contract() {
  Outcome o;
  std::vector<PsiCase> cases;
  cases.push_back({"dents 0.7", dyadic_dents(0.7, 0.5 * std::log(2.0), 12, 2), 0.55, 0.7, false});
  cases.push_back({"dents 0.6", dyadic_dents(0.6, std::log(2.0), 10, 3), 0.52, 0.6, false});
  cases.push_back({"dents 0.9", dyadic_dents(0.9, 0.3, 30, 1), 0.6, 0.9, false});
  cases.push_back({"dents 0.75 deep", dyadic_dents(0.75, 2.0, 8, 4), 0.55, 0.75, false});
  cases.push_back({"dents 0.8", dyadic_dents(0.8, 0.25, 36, 1), 0.7, 0.8, false});
  cases.push_back({"dents 0.65", dyadic_dents(0.65, 1.5, 10, 4), 0.6, 0.65, false});
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::uint64_t s = 1; s <= 8; ++s) {
    const double beta = 0.6 + 0.35 * unit(rng);
    const double alpha = 0.5 + (beta - 0.5) * (0.1 + 0.8 * unit(rng));
    cases.push_back({"random " + std::to_string(s), random_slopes(beta, s), alpha, beta, false});
  }
  cases.push_back({"phi = t", WeightProfile::power(1.0), 0.6, 0.8, true, 1.0});
  cases.push_back({"phi = t/2", WeightProfile::power(1.0, 0.5), 0.55, 0.9, true, 1.0});
  cases.push_back(from_set("{1}", CircleSet::from_points({0.0}), 1.0, true));
  cases.push_back(from_set("{1,-1}", CircleSet::from_points({0.0, kPi}), 1.0, true));
  const CantorSpec dexp = CantorSpec::double_exponential();
  cases.push_back(from_set("double-exp cantor", cantor_profile(dexp, 40), dexp.closed_form_mu(), true));
  const CantorSpec third = CantorSpec::geometric(1.0 / 3.0);
  cases.push_back(from_set("cantor 1/3", cantor_profile(third, 12), third.closed_form_mu(), false));

  std::size_t violations = 0, nodes = 0, divergent = 0, divergent_ok = 0;
  for (const PsiCase& c : cases) {
    const PsiResult r = build_psi(c.phi, c.alpha, c.beta, c.a, PsiGrid{},
                                  c.divergent ? std::optional<Growth>(Growth::diverges) : std::nullopt);
    std::size_t local = 0;
    for (std::size_t i = 0; i < r.log_t.size(); ++i) {
      const double lt = r.log_t[i];
      const double slack = 1e-12 * std::max(1.0, std::fabs(r.log_psi[i]));
      local += c.phi.log_value(lt) > r.log_psi[i] + slack;
      local += r.log_psi[i] > c.beta * lt + slack;
      if (i > 0) {
        // ψ/t^α weakly increasing in t, nodes run toward t -> 0
        const double prev = r.log_psi[i - 1] - c.alpha * r.log_t[i - 1];
        const double cur = r.log_psi[i] - c.alpha * lt;
        local += cur > prev + 1e-12 * std::max(1.0, std::fabs(prev));
      }
    }
    nodes += r.log_t.size();
    violations += local;
    if (local) o.detail << " " << c.name << ": " << local << " violations;";
    if (c.divergent) {
      ++divergent;
      bool ok = r.partial_integrals.size() >= 4;
      double worst = kInf;
      std::size_t worst_k = 0;
      for (std::size_t k = 2; k < r.partial_integrals.size(); ++k) {
        const double inc = r.partial_integrals[k] - r.partial_integrals[k - 1];
        const double prev = r.partial_integrals[k - 1] - r.partial_integrals[k - 2];
        ok = ok && inc >= 0.5 * prev && inc > 0.0;
        if (inc / prev < worst) {
          worst = inc / prev;
          worst_k = k;
        }
      }
      divergent_ok += ok;
      if (!ok) {
        o.detail << " " << c.name << " (alpha " << c.alpha << ", beta " << c.beta << "): increment ratio " << worst
                 << " at decade " << worst_k << ";";
      }
    }
  }
  o.require(violations == 0, "zero sandwich/monotonicity violations");
  o.require(divergent_ok == divergent, "per-decade growth on divergent cases");
  o.detail << " " << cases.size() << " profiles, " << nodes << " nodes, " << violations << " violations; " << divergent_ok
           << "/" << divergent << " divergent cases grow by >= 50% of the previous decade";
  return o;
}

// ---------------------------------------------------------------- criterion 6

Outcome fusion_suite() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::size_t holds = 0;
  double worst = -kInf;
  const auto t0 = Clock::now();
  for (int i = 0; i < 100; ++i) {
    const FusionInstance fi = random_fusion_instance(rng);
    const FusionResult r = fusion_bound_check(fi.set, fi.moduli, fi.assignment);
    const bool ok = r.lhs <= r.rhs + 1e-6 * (1.0 + r.rhs);
    holds += ok;
    worst = std::max(worst, r.lhs - r.rhs);
  }
  o.require(holds == 100, "lhs <= rhs + 1e-6 (1 + rhs) in every instance");
  o.detail << holds << "/100 instances hold, max lhs - rhs = " << g(worst) << " (" << g(seconds_since(t0)) << " s)";
  return o;
}

// ---------------------------------------------------------------- criterion 7

void check_certificate(Outcome& o, const std::string& name, const CyclicityReport& r) {
  o.require(r.conclusion == Conclusion::met, name + ": met");
  if (!r.certificate) return;
  const Certificate& c = *r.certificate;
  const DeltaRecord& last = c.records.back();
  o.require(c.eta_decreasing, name + ": eta decreasing along the schedule");
  o.require(last.eta() < 1e-2, name + ": eta < 1e-2");
  o.require(last.f0() >= 0.95, name + ": |f(0)| >= 0.95 at the smallest delta");
  o.require(c.j_bounded, name + ": running min of J bounded over the last 5 deltas");
  o.require(c.concavity_log_threshold.has_value(), name + ": concavity threshold reported");
  std::size_t below = 0, concave = 0;
  if (c.concavity_log_threshold) {
    for (const DeltaRecord& d : c.records) {
      if (d.log_delta <= *c.concavity_log_threshold) {
        ++below;
        concave += d.concave;
      }
    }
  }
  o.require(below > 0 && below == concave, name + ": concave below the threshold");
  o.detail << " " << name << ": eta " << g(last.eta()) << ", |f(0)| " << g(last.f0()) << ", J sup " << g(c.j_sup)
           << " <= cap " << g(c.j_cap) << ", concave on " << concave << " deltas below log delta "
           << g(c.concavity_log_threshold.value_or(0.0)) << ";";
}

Outcome certificates() {
  Outcome o;
  const auto t0 = Clock::now();
  check_certificate(o, "{1}", theorem_main_check(CircleSet::from_points({0.0})));
  check_certificate(o, "double-exp cantor", theorem_main_check(CantorSpec::double_exponential()));
  const CyclicityReport third = theorem_main_check(CantorSpec::geometric(1.0 / 3.0));
  o.require(third.conclusion == Conclusion::not_met, "cantor 1/3: not met");
  o.require(third.capcond.verdict == Growth::converges, "cantor 1/3: capcond evidence");
  o.detail << " cantor 1/3: " << to_string(third.conclusion) << " (" << third.reason << ");";
  const double dt = seconds_since(t0);
  o.require(dt < 300.0, "under 5 min");
  o.detail << " total " << g(dt) << " s";
  return o;
}

// ---------------------------------------------------------------- criterion 8

Outcome mu_fit() {
  Outcome o;
  for (double lambda : {1.0 / 3.0, 0.25, 0.4}) {
    const MuEstimate m = mu_exponent(cantor_profile(CantorSpec::geometric(lambda), 12));
    const double exact = 1.0 - std::log(2.0) / std::log(1.0 / lambda);
    o.require(std::fabs(m.slope - exact) <= 0.05, "lambda " + g(lambda) + " within 0.05");
    o.detail << " lambda " << g(lambda) << ": fit " << g(m.slope) << " vs " << g(exact) << ";";
  }
  return o;
}

// ---------------------------------------------------------------- criterion 9

std::string reports_at(int threads) {
  omp_set_num_threads(threads);
  Json all = Json::array();
  all.push_back(to_json(theorem_main_check(CircleSet::from_points({0.0}))));
  all.push_back(to_json(carleson_energy(abs_one_minus_z(1))));
  OuterOptions oo;
  oo.grid = 16384;
  all.push_back(to_json(series_energy(distance_function(cantor_generate(CantorSpec::geometric(1.0 / 3.0), 8).endpoints(),
                                                        WeightProfile::power(0.3), oo))));
  const CantorSpec dexp = CantorSpec::double_exponential();
  const double mu = dexp.closed_form_mu();
  const double alpha = default_alpha(mu);
  const double beta = default_beta(alpha, mu);
  all.push_back(to_json(build_psi(build_phi(neighborhood_measure(cantor_profile(dexp, 40)), beta), alpha, beta, kPi)));
  std::mt19937_64 rng(11);
  for (int i = 0; i < 5; ++i) {
    const FusionInstance fi = random_fusion_instance(rng);
    all.push_back(to_json(fusion_bound_check(fi.set, fi.moduli, fi.assignment)));
  }
  return dump(all);
}

Outcome determinism() {
  Outcome o;
  const int saved = omp_get_max_threads();
  const std::string one = reports_at(1);
  const std::string four = reports_at(4);
  const std::string eight = reports_at(8);
  omp_set_num_threads(saved);
  o.require(one == four && one == eight, "byte-identical reports");
  o.detail << "reports of " << one.size() << " bytes, identical across 1/4/8 threads: " << (one == four && one == eight ? "yes" : "no");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"energy oracle agreement", energy_oracles},
      {"two-sided estimate", two_sided},
      {"finiteness classification", classification},
      {"rising-sun exactness", rising_sun},
      {"regularization contract", psi_contract},
      {"fusion inequality", fusion_suite},
      {"certificate pipeline", certificates},
      {"mu formula", mu_fit},
      {"determinism", determinism}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    failed += !o.pass;
    std::printf("criterion %zu (%s): %s %s\n", i + 1, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL",
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
