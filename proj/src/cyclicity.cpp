#include "dcyc/cyclicity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dcyc {

namespace {

const double kLogPi = std::log(kPi);

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

/// w(τ) = level for increasing w, in log t.
double solve_level(const WeightProfile& w, double log_level, double log_lo) {
  double lo = log_lo, hi = kLogPi;
  if (w.log_value(hi) <= log_level) return hi;
  while (w.log_value(lo) >= log_level) lo = 2.0 * lo - 1.0;
  for (int it = 0; it < 3000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (w.log_value(mid) < log_level) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

DeltaRecord delta_record(const std::shared_ptr<const InverseIntegral>& g, const StepFunction& n,
                         const NeighborhoodMeasure& measure, double alpha, double gamma,
                         double log_delta, const CertificateConfig& config) {
  DeltaRecord rec;
  rec.log_delta = log_delta;
  try {
    const WDelta wd = w_delta_family(g, alpha, log_delta);
    rec.A = wd.A;
    rec.log_eta = wd.log_eta;
    rec.ratio = wd.ratio;
    rec.degenerate_middle = wd.degenerate_middle;
    const IntegralValue li = log_integrability(wd.w, n);
    rec.log_f0 = -li.value / kTwoPi;
    const IntegralValue j = j_functional(n, wd.w, JMode::gamma_gt_2, gamma);
    rec.j = j.value;
    rec.j_finite = j.finite;
    for (double eps : config.epsilons) {
      // w < 1 - ε exactly on d < τ
      const double log_level = std::log1p(-eps);
      const double start = log_delta + (log_level - std::log(wd.ratio)) / (1.0 - alpha) - 1.0;
      const double tau = solve_level(wd.w, log_level, std::min(start, log_delta));
      rec.bad_fractions.push_back(std::exp(measure.log_at(tau)) / kTwoPi);
    }
    rec.concave = concavity_check(wd.w, gamma).ok;
    rec.knot = knot_inequality(*g, alpha, log_delta);
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  return rec;
}

}  // namespace

std::vector<double> default_log_delta_schedule() {
  std::vector<double> out;
  for (int k = 3; k <= 20; ++k) out.push_back(kLogPi - k * std::log(2.0));
  for (int j = 5; j <= 30; ++j) out.push_back(-std::ldexp(1.0, j));
  return out;
}

double default_alpha(double mu) { return 0.5 * (0.5 + 0.5 * (1.0 + std::min(mu, 1.0))); }

double default_beta(double alpha, double mu) { return 0.5 * (alpha + 0.5 * (1.0 + std::min(mu, 1.0))); }

double default_gamma(double alpha) {
  const double gmax = 1.0 / (1.0 - alpha);
  const double g = 2.0 / (2.0 * alpha - 1.0) * (1.0 + 1e-3);
  return g < gmax ? g : 2.0 + 0.1 * (gmax - 2.0);
}

Certificate construct_certificate(const CircleSet& set, double mu, std::optional<Growth> capcond,
                                  const CertificateConfig& config) {
  if (!(mu > 0.0)) throw std::invalid_argument("construct_certificate: needs μ > 0");
  if (!set.measure_zero() && !set.truncation()) {
    throw std::invalid_argument("construct_certificate: needs a measure-zero set");
  }
  Certificate cert;
  cert.mu = std::min(mu, 1.0);
  cert.alpha = config.alpha.value_or(default_alpha(cert.mu));
  cert.beta = config.beta.value_or(default_beta(cert.alpha, cert.mu));
  cert.gamma = config.gamma.value_or(default_gamma(cert.alpha));
  CertificateParams params{cert.alpha, cert.beta, cert.gamma, -1.0, cert.mu};
  params.validate();
  cert.j_cap = config.j_cap.value_or(1.0 / (1.0 - cert.alpha) + 2.0);

  std::vector<double> schedule = config.schedule();
  if (schedule.empty()) throw std::invalid_argument("construct_certificate: empty δ schedule");
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    if (!(schedule[i] < schedule[i - 1])) throw std::invalid_argument("construct_certificate: δ schedule must decrease");
  }
  const double s_max = -schedule.back();
  if (const auto trunc = set.truncation()) {
    if (trunc->log_exact_above > schedule.back() - 0.5 * s_max) {
      throw std::invalid_argument("construct_certificate: Cantor generation too shallow for the δ schedule");
    }
  }

  const NeighborhoodMeasure measure = neighborhood_measure(set);
  const StepFunction n = counting_function(set);
  const WeightProfile phi = build_phi(measure, cert.beta);
  const PsiGrid grid = PsiGrid::deep(1.5 * s_max + kLogPi);
  auto psi = std::make_shared<PsiResult>(build_psi(phi, cert.alpha, cert.beta, kPi, grid, capcond));
  cert.psi = psi;
  const auto g = std::make_shared<const InverseIntegral>(psi->psi);

  cert.records.resize(schedule.size());
  const auto count = static_cast<std::ptrdiff_t>(schedule.size());
#pragma omp parallel for schedule(dynamic, 1) if (config.parallel)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    cert.records[k] = delta_record(g, n, measure, cert.alpha, cert.gamma, schedule[k], config);
  }

  auto& recs = cert.records;
  for (const DeltaRecord& r : recs) {
    if (!r.error.empty()) cert.failures.push_back("δ=" + fmt(r.delta()) + " (log δ=" + fmt(r.log_delta) + "): " + r.error);
  }
  if (!cert.failures.empty()) return cert;

  // monotone trends are judged on the final monotone run, which must cover half the schedule
  auto eta_up = [&](std::size_t i) {
    return recs[i].log_eta > recs[i - 1].log_eta + 1e-12 * std::max(1.0, std::fabs(recs[i - 1].log_eta));
  };
  auto f0_down = [&](std::size_t i) {
    return recs[i].log_f0 < recs[i - 1].log_f0 - 1e-9 * std::max(1.0, std::fabs(recs[i - 1].log_f0));
  };
  std::size_t eta_start = recs.size() - 1, f0_start = recs.size() - 1;
  while (eta_start > 0 && !eta_up(eta_start)) --eta_start;
  while (f0_start > 0 && !f0_down(f0_start)) --f0_start;
  cert.eta_monotone_whole = eta_start == 0;
  cert.f0_monotone_whole = f0_start == 0;
  cert.eta_monotone_log_threshold = recs[eta_start].log_delta;
  cert.f0_monotone_log_threshold = recs[f0_start].log_delta;
  const std::size_t min_run = std::max(config.liminf_window, (recs.size() + 1) / 2);
  cert.eta_decreasing = recs.size() - eta_start >= min_run;
  cert.f0_nondecreasing = recs.size() - f0_start >= min_run;
  if (!cert.eta_decreasing) {
    cert.failures.push_back("η_δ increases at δ=" + fmt(recs[eta_start].delta()) + " (log δ=" + fmt(recs[eta_start].log_delta) +
                            "), leaving a monotone run shorter than half the schedule");
  }
  if (!cert.f0_nondecreasing) {
    cert.failures.push_back("|f(0)| decreases at log δ=" + fmt(recs[f0_start].log_delta) +
                            ", leaving a monotone run shorter than half the schedule");
  }
  const DeltaRecord& last = recs.back();
  cert.eta_small = last.log_eta < std::log(config.eta_threshold);
  if (!cert.eta_small) cert.failures.push_back("η_δ = " + fmt(last.eta()) + " at the smallest δ, not below " + fmt(config.eta_threshold));
  cert.f0_close = last.f0() >= config.f0_threshold;
  if (!cert.f0_close) cert.failures.push_back("|f(0)| = " + fmt(last.f0()) + " at the smallest δ, below " + fmt(config.f0_threshold));
  cert.trace_converges = true;
  for (std::size_t e = 0; e < config.epsilons.size(); ++e) {
    if (last.bad_fractions[e] > config.measure_threshold) {
      cert.trace_converges = false;
      cert.failures.push_back("condition (i): |{|f*| < 1-" + fmt(config.epsilons[e]) + "}|/2π = " +
                              fmt(last.bad_fractions[e]) + " at the smallest δ");
    }
  }
  const std::size_t window = std::min(config.liminf_window, recs.size());
  cert.j_running_min = kInf;
  for (std::size_t i = recs.size() - window; i < recs.size(); ++i) cert.j_running_min = std::min(cert.j_running_min, recs[i].j);
  for (const DeltaRecord& r : recs) cert.j_sup = std::max(cert.j_sup, r.j);
  cert.j_bounded = cert.j_running_min <= cert.j_cap;
  if (!cert.j_bounded) cert.failures.push_back("min J over the last " + std::to_string(window) + " δ = " + fmt(cert.j_running_min) + " exceeds cap " + fmt(cert.j_cap));

  std::size_t first_concave = recs.size();
  while (first_concave > 0 && recs[first_concave - 1].concave) --first_concave;
  if (first_concave < recs.size()) cert.concavity_log_threshold = recs[first_concave].log_delta;
  else cert.failures.push_back("w_δ(t^γ) not concave at the smallest δ");
  cert.knot_small_delta = true;
  for (std::size_t i = recs.size() - window; i < recs.size(); ++i) cert.knot_small_delta = cert.knot_small_delta && recs[i].knot;
  if (!cert.knot_small_delta) cert.failures.push_back("knot inequality ∫_δ^π ds/ψ >= 1/(1-α) fails for small δ");

  cert.passed = cert.failures.empty();
  return cert;
}

std::string to_string(Conclusion c) {
  switch (c) {
    case Conclusion::met: return "sufficient-conditions-met";
    case Conclusion::not_met: return "not-met";
    case Conclusion::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

CyclicityReport check(const CircleSet& set, const CertificateConfig& config) {
  CyclicityReport rep;
  rep.set_descriptor = set.describe();
  if (!set.measure_zero() && !set.truncation()) {
    rep.conclusion = Conclusion::not_met;
    rep.reason = "E has positive measure";
    return rep;
  }
  rep.mu = mu_exponent(set);
  rep.capcond = capcond_diagnostic(set);
  const double mu = rep.mu.value();
  if (rep.capcond.verdict == Growth::converges) {
    rep.conclusion = Conclusion::not_met;
    rep.reason = "capacity condition fails: ∫ dt/|E_t| converges (" + rep.capcond.basis + ")";
    return rep;
  }
  if (rep.mu.closed_form && !(mu > 0.0)) {
    rep.conclusion = Conclusion::not_met;
    rep.reason = "μ = " + fmt(mu) + " is not positive";
    return rep;
  }
  if (!rep.mu.good_fit()) {
    rep.conclusion = Conclusion::inconclusive;
    rep.reason = "μ estimate not usable: slope " + fmt(rep.mu.slope) + " over " + fmt(rep.mu.decades) + " decades";
    return rep;
  }
  if (rep.capcond.verdict == Growth::inconclusive) {
    rep.conclusion = Conclusion::inconclusive;
    rep.reason = "capacity condition inconclusive (" + rep.capcond.basis + ")";
    return rep;
  }
  try {
    rep.certificate = construct_certificate(set, mu, rep.capcond.verdict, config);
  } catch (const std::invalid_argument& e) {
    rep.conclusion = Conclusion::inconclusive;
    rep.reason = std::string("certificate could not be built: ") + e.what();
    return rep;
  }
  if (rep.certificate->passed) {
    rep.conclusion = Conclusion::met;
    rep.reason = "μ > 0, ∫ dt/|E_t| diverges and every certificate check passed";
  } else {
    rep.conclusion = Conclusion::not_met;
    rep.reason = "certificate check failed: " + rep.certificate->failures.front();
  }
  return rep;
}

}  // namespace

CyclicityReport theorem_main_check(const CircleSet& set, const CertificateConfig& config) { return check(set, config); }

int certificate_generation(const CantorSpec& spec, const CertificateConfig& config) {
  if (spec.degenerate()) return 0;
  const std::vector<double> schedule = config.schedule();
  const double need = schedule.empty() ? 30.0 : -1.6 * schedule.back() + 1.0;
  const int top = spec.max_generation();
  for (int g = 2; g <= top; ++g) {
    if (-spec.log_length(g) >= need) return g;
  }
  return top;
}

CyclicityReport theorem_main_check(const CantorSpec& spec, const CertificateConfig& config) {
  return check(cantor_profile(spec, certificate_generation(spec, config)), config);
}

CyclicityVerdict cantor_brown_shields(const CantorSpec& spec) {
  CyclicityVerdict out;
  if (spec.degenerate()) {
    out.capacity_zero = Growth::diverges;
    out.verdict = "cyclic";
    out.basis = "the construction collapses to a single point, a countable set";
    return out;
  }
  const CapcondReport rep = capcond_diagnostic(spec, spec.max_generation());
  out.capacity_zero = rep.verdict;
  out.basis = rep.basis;
  switch (rep.verdict) {
    case Growth::diverges: out.verdict = "cyclic"; break;
    case Growth::converges: out.verdict = "not cyclic"; break;
    case Growth::inconclusive: out.verdict = "inconclusive"; break;
  }
  return out;
}

}  // namespace dcyc
