#include "dcyc/energy.hpp"

#include "dcyc/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dcyc {

namespace {

const double kLogPi = std::log(kPi);

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(10);
  out << v;
  return out.str();
}

}  // namespace

// ------------------------------------------------------------ series energy

SeriesEnergy series_energy(const OuterFunction& f) {
  const auto& a = f.taylor();
  SeriesEnergy out;
  std::vector<double> dyadic;
  double acc = 0.0;
  std::size_t next = 1;
  for (std::size_t k = 1; k < a.size(); ++k) {
    acc += static_cast<double>(k) * std::norm(a[k]);
    if (k == next) {
      dyadic.push_back(acc);
      next *= 2;
    }
  }
  if (dyadic.empty() || next / 2 != a.size() - 1) dyadic.push_back(acc);
  out.value = acc;
  out.tail_estimate = f.tail_estimate();
  out.growth = classify_partial_sums(dyadic);
  out.likely_infinite = out.growth.verdict == Growth::diverges;
  return out;
}

// ---------------------------------------------------------- Carleson energy

namespace {

// panels narrower than this lose their nodes to rounding
constexpr double kMinPanel = 1e-13;

std::vector<double> initial_edges(const BoundaryModulus& phi, const CarlesonOptions& opt) {
  std::vector<double> base;
  for (std::size_t i = 0; i < opt.base_panels; ++i) base.push_back(kTwoPi * static_cast<double>(i) / static_cast<double>(opt.base_panels));
  std::vector<double> singular;
  for (double s : phi.singular_points) singular.push_back(wrap_angle(s));
  for (double s : singular) base.push_back(s);
  for (double k : phi.kinks) base.push_back(wrap_angle(k));
  std::sort(base.begin(), base.end());
  std::sort(singular.begin(), singular.end());
  std::vector<double> pts;
  for (double b : base) {
    if (pts.empty() || b - pts.back() > 1e-13) pts.push_back(b);
  }
  if (pts.size() > 1 && pts.front() + kTwoPi - pts.back() <= 1e-13) pts.pop_back();
  auto is_singular = [&](double x) {
    auto it = std::lower_bound(singular.begin(), singular.end(), x - 1e-13);
    return it != singular.end() && std::fabs(*it - x) <= 1e-13;
  };
  std::vector<double> edges;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double a = pts[i];
    const double b = i + 1 < n ? pts[i + 1] : pts[0] + kTwoPi;
    const bool sa = is_singular(a);
    const bool sb = is_singular(wrap_angle(b));
    const double len = b - a;
    edges.push_back(a);
    std::vector<double> inner;
    const double reach = (sa && sb) ? 0.5 * len : len;
    double step = reach;
    for (int l = 0; l < opt.grading_levels; ++l) {
      step *= opt.grading;
      if (sa) inner.push_back(a + step);
      if (sb) inner.push_back(b - step);
    }
    if (sa && sb) inner.push_back(a + 0.5 * len);
    std::sort(inner.begin(), inner.end());
    for (double x : inner) {
      if (x > edges.back() + kMinPanel && x < b - kMinPanel) edges.push_back(x);
    }
  }
  edges.push_back(edges.front() + kTwoPi);
  return edges;
}

struct PanelSums {
  std::vector<double> per_panel;
  double total = 0.0;
};

double safe_log(const BoundaryModulus& phi, double theta) {
  const double l = phi.log_sampler(wrap_angle(theta));
  return std::isnan(l) ? std::log(1e-300) : std::max(l, std::log(1e-300));
}

PanelSums panel_sums(const BoundaryModulus& phi, const std::vector<double>& edges, bool parallel) {
  const GaussRule& rule = gauss_legendre(8);
  const std::size_t np = edges.size() - 1;
  const std::size_t q = rule.nodes.size();
  kernels::CarlesonNodes nodes;
  nodes.theta.resize(np * q);
  nodes.weight.resize(np * q);
  nodes.log_phi.resize(np * q);
  nodes.diagonal.resize(np * q);
  const auto total_nodes = static_cast<std::ptrdiff_t>(np * q);
#pragma omp parallel for schedule(static) if (parallel)
  for (std::ptrdiff_t idx = 0; idx < total_nodes; ++idx) {
    const std::size_t p = static_cast<std::size_t>(idx) / q;
    const std::size_t j = static_cast<std::size_t>(idx) % q;
    const double a = edges[p], b = edges[p + 1];
    const double half = 0.5 * (b - a);
    const double x = 0.5 * (a + b) + half * rule.nodes[j];
    const std::size_t i = static_cast<std::size_t>(idx);
    nodes.theta[i] = x;
    nodes.weight[i] = half * rule.weights[j];
    nodes.log_phi[i] = safe_log(phi, x);
    const double h = std::max(1e-5 * (b - a), 1e-15 * std::max(1.0, std::fabs(x)));
    const double fp = std::exp(safe_log(phi, x + h));
    const double fm = std::exp(safe_log(phi, x - h));
    const double d = (fp - fm) / (2.0 * h);
    nodes.diagonal[i] = 2.0 * d * d;
  }
  std::vector<double> rows(np * q);
  if (parallel) kernels::carleson_rows_parallel(nodes, rows);
  else kernels::carleson_rows_serial(nodes, rows);
  PanelSums out;
  out.per_panel.resize(np);
  for (std::size_t p = 0; p < np; ++p) {
    out.per_panel[p] = pairwise_sum(std::span<const double>(rows).subspan(p * q, q));
    if (out.per_panel[p] < -1e-12 * std::fabs(out.per_panel[p]) - 1e-300) {
      throw std::runtime_error("carleson_energy: negative panel value beyond rounding");
    }
  }
  out.total = pairwise_sum(out.per_panel) / (4.0 * kPi * kPi);
  return out;
}

std::vector<double> bisect_all(const std::vector<double>& edges) {
  std::vector<double> out;
  out.reserve(2 * edges.size());
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    out.push_back(edges[i]);
    if (edges[i + 1] - edges[i] > 2.0 * kMinPanel) out.push_back(0.5 * (edges[i] + edges[i + 1]));
  }
  out.push_back(edges.back());
  return out;
}

}  // namespace

CarlesonEnergy carleson_energy(const BoundaryModulus& phi, const CarlesonOptions& options) {
  if (!(options.tol > 0.0)) throw std::invalid_argument("carleson_energy: tol must be positive");
  CarlesonEnergy out;
  std::vector<double> edges = initial_edges(phi, options);
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    out.iterations = iter;
    const std::size_t np = edges.size() - 1;
    const PanelSums coarse = panel_sums(phi, edges, options.parallel);
    const std::vector<double> fine_edges = bisect_all(edges);
    const PanelSums fine = panel_sums(phi, fine_edges, options.parallel);
    std::vector<double> err(np);
    std::vector<bool> split(np);
    for (std::size_t p = 0, f = 0; p < np; ++p) {
      split[p] = edges[p + 1] - edges[p] > 2.0 * kMinPanel;
      const double children = split[p] ? fine.per_panel[f] + fine.per_panel[f + 1] : fine.per_panel[f];
      f += split[p] ? 2 : 1;
      err[p] = std::fabs(children - coarse.per_panel[p]);
    }
    out.value = fine.total;
    out.error = std::fabs(fine.total - coarse.total);
    out.panels = fine_edges.size() - 1;
    if (out.error <= options.tol * out.value || out.error <= 1e-15) {
      out.converged = true;
      return out;
    }
    const double mean_err = std::accumulate(err.begin(), err.end(), 0.0) / static_cast<double>(np);
    std::vector<double> next;
    next.reserve(2 * edges.size());
    std::size_t added = 0;
    for (std::size_t p = 0; p < np; ++p) {
      next.push_back(edges[p]);
      if (err[p] >= mean_err && split[p]) {
        next.push_back(0.5 * (edges[p] + edges[p + 1]));
        ++added;
      }
    }
    next.push_back(edges.back());
    if (added == 0 || 2 * (np + added) > options.max_panels) {
      out.budget_exceeded = true;
      return out;
    }
    edges = std::move(next);
  }
  out.budget_exceeded = true;
  return out;
}

// --------------------------------------------------------------- J functional

std::string to_string(JMode m) {
  switch (m) {
    case JMode::gamma_gt_2: return "gamma_gt_2";
    case JMode::gamma_eq_2: return "gamma_eq_2";
    case JMode::gamma_lt_2: return "gamma_lt_2";
  }
  return "gamma_gt_2";
}

JMode jmode_for_gamma(double gamma) {
  if (gamma > 2.0) return JMode::gamma_gt_2;
  if (gamma == 2.0) return JMode::gamma_eq_2;
  return JMode::gamma_lt_2;
}

namespace {

/// ∫_{L1}^{L2} exp(c0 + κ (L - Lr)) y^d dL with y = log π - L, d <= 2.
double exp_poly_integral(double c0, double kappa, double lr, int d, double l1, double l2) {
  if (!(l2 > l1)) return 0.0;
  if (d == 0) {
    if (std::fabs(kappa) < 1e-14) return std::exp(c0) * (l2 - l1);
    if (l1 == -kInf && kappa < 0.0) return kInf;
    const double base = kappa > 0.0 ? l2 : l1;
    return std::exp(kappa * (base - lr) + c0) * (-std::expm1(-std::fabs(kappa) * (l2 - l1))) / std::fabs(kappa);
  }
  if (std::fabs(kappa) < 1e-14) {
    if (l1 == -kInf) return kInf;
    auto prim = [&](double l) { const double y = kLogPi - l; return -std::pow(y, d + 1) / (d + 1); };
    return std::exp(c0) * (prim(l2) - prim(l1));
  }
  if (l1 == -kInf && kappa < 0.0) return kInf;
  auto prim = [&](double l) {
    if (l == -kInf) return 0.0;
    const double y = kLogPi - l;
    double poly;
    if (d == 1) poly = y / kappa + 1.0 / (kappa * kappa);
    else poly = y * y / kappa + 2.0 * y / (kappa * kappa) + 2.0 / (kappa * kappa * kappa);
    return std::exp(c0 + kappa * (l - lr)) * poly;
  };
  return prim(l2) - prim(l1);
}

/// ∫ w'(t)² ω(t) dt over (e^{l1}, e^{l2}] inside piece i.
double j_piece(const WeightProfile& w, std::size_t i, double l1, double l2, JMode mode, double gamma) {
  const WeightPiece& p = w.pieces()[i];
  if (!(l2 > l1)) return 0.0;
  switch (p.family) {
    case Family::power: {
      if (p.p == 0.0) return 0.0;
      const double c = 2.0 * p.log_c + 2.0 * std::log(std::fabs(p.p));
      switch (mode) {
        case JMode::gamma_gt_2: return exp_poly_integral(c, 2.0 * p.p, p.log_ref, 0, l1, l2);
        case JMode::gamma_eq_2: return exp_poly_integral(c - p.log_ref, 2.0 * p.p - 1.0, p.log_ref, 2, l1, l2);
        case JMode::gamma_lt_2:
          return exp_poly_integral(c + (1.0 - 2.0 / gamma) * p.log_ref, 2.0 * p.p + 1.0 - 2.0 / gamma, p.log_ref, 1, l1, l2);
      }
      break;
    }
    case Family::affine: {
      if (p.log_b == -kInf) return 0.0;
      const double c = 2.0 * p.log_b;
      switch (mode) {
        case JMode::gamma_gt_2: return exp_poly_integral(c, 2.0, 0.0, 0, l1, l2);
        case JMode::gamma_eq_2: return exp_poly_integral(c, 1.0, 0.0, 2, l1, l2);
        case JMode::gamma_lt_2: return exp_poly_integral(c, 3.0 - 2.0 / gamma, 0.0, 1, l1, l2);
      }
      break;
    }
    case Family::exp_power:
    case Family::log_inverse_integral: {
      // integrand in L: w'^2 ω t = (w s)^2 / t^2 · ω t with s = d log w / d log t
      auto f = [&](double l) {
        const double s = w.piece_log_slope(i, l);
        const double lw = w.piece_log_value(i, l);
        const double y = kLogPi - l;
        double log_omega_t;
        double poly = 1.0;
        switch (mode) {
          case JMode::gamma_gt_2: log_omega_t = 2.0 * l; break;
          case JMode::gamma_eq_2: log_omega_t = l; poly = y * y; break;
          default: log_omega_t = (3.0 - 2.0 / gamma) * l; poly = y; break;
        }
        return s * s * std::exp(2.0 * lw - 2.0 * l + log_omega_t) * poly;
      };
      if (p.family == Family::log_inverse_integral) {
        const WeightProfile& psi = w.inverse_integral()->psi();
        double acc = 0.0;
        const std::size_t first = psi.locate(l1);
        const std::size_t last = psi.locate(l2);
        for (std::size_t j = first; j <= last; ++j) {
          const double a = std::max(psi.pieces()[j].log_lo, l1);
          const double b = std::min(psi.pieces()[j].log_hi, l2);
          if (b > a) acc += gauss_integrate(f, a, b, 16);
        }
        return acc;
      }
      if (l1 == -kInf) {
        return endpoint_singular_integrate([&](double t) { return t > 0.0 ? f(std::log(t)) / t : 0.0; }, 0.0,
                                           std::exp(l2), 1e-10);
      }
      return adaptive_integrate(f, l1, l2, 1e-12);
    }
  }
  return 0.0;
}

}  // namespace

IntegralValue j_functional(const StepFunction& n, const WeightProfile& w, JMode mode, double gamma) {
  IntegralValue out;
  std::vector<double> terms;
  for (const StepFunction::Piece& s : n.pieces()) {
    if (s.value == 0.0) continue;
    for (std::size_t i = s.log_lo == -kInf ? 0 : w.locate(s.log_lo); i < w.pieces().size(); ++i) {
      const WeightPiece& p = w.pieces()[i];
      const double a = std::max(p.log_lo, s.log_lo);
      const double b = std::min(p.log_hi, s.log_hi);
      if (a >= s.log_hi) break;
      if (b > a) terms.push_back(s.value * j_piece(w, i, a, b, mode, gamma));
    }
  }
  out.value = pairwise_sum(terms);
  out.finite = std::isfinite(out.value);
  if (!out.finite) {
    const WeightPiece& lead = w.pieces().front();
    out.evidence = "integrand not integrable at 0: leading piece " + to_string(lead.family) + " with exponent p = " +
                   fmt(lead.p) + " in mode " + to_string(mode);
  } else {
    out.evidence = "closed forms on power/affine pieces, Gauss panels elsewhere";
  }
  return out;
}

// ----------------------------------------------------------- two-sided report

EnergyReport two_sided_report(const CircleSet& set, const WeightProfile& w, double gamma, const TwoSidedOptions& options) {
  const ConcavityResult conc = concavity_check(w, gamma);
  if (!conc.ok) {
    throw ConcavityViolation("two_sided_report: t -> w(t^γ) is not concave (" + conc.detail + ")", conc);
  }
  for (std::size_t i = 0; i < w.pieces().size(); ++i) {
    const WeightPiece& p = w.pieces()[i];
    const double mid = p.log_lo == -kInf ? p.log_hi - 1.0 : 0.5 * (p.log_lo + p.log_hi);
    if (w.piece_log_slope(i, mid) < 0.0) throw std::invalid_argument("two_sided_report: w must be increasing");
  }
  const CircleSet e = set.measure_zero() ? set : set.endpoints();
  EnergyReport rep;
  rep.gamma = gamma;
  rep.j_mode = jmode_for_gamma(gamma);
  const IntegralValue j = j_functional(counting_function(e), w, rep.j_mode, gamma);
  rep.j_value = j.value;
  rep.j_finite = j.finite;

  std::vector<double> ratios;
  for (std::size_t m : options.grids) {
    OuterOptions oo;
    oo.grid = m;
    oo.parallel = options.parallel;
    const OuterFunction f = distance_function(e, w, oo);
    const SeriesEnergy s = series_energy(f);
    rep.grids.push_back({m, s.value, s.tail_estimate});
    rep.series_value = s.value;
    rep.series_tail = s.tail_estimate;
    rep.series_growth = s.growth.verdict;
    ratios.push_back(j.finite && j.value > 0.0 ? s.value / j.value : 0.0);
  }
  rep.ratio_series_j = ratios.empty() ? 0.0 : ratios.back();
  for (std::size_t i = 1; i < ratios.size(); ++i) {
    if (ratios[i - 1] > 0.0) rep.grid_drift = std::max(rep.grid_drift, std::fabs(ratios[i] / ratios[i - 1] - 1.0));
  }
  rep.stable_under_refinement = rep.grid_drift < options.drift_limit;
  rep.in_sanity_band = rep.ratio_series_j >= options.band_lo && rep.ratio_series_j <= options.band_hi;

  const BoundaryModulus modulus = distance_modulus(e, w);
  if (!options.carleson) {
    rep.carleson_note = "skipped by configuration";
  } else if (modulus.singular_points.size() > options.carleson_max_singular) {
    rep.carleson_note = "skipped: " + std::to_string(modulus.singular_points.size()) +
                        " singular points exceed the panel budget limit of " +
                        std::to_string(options.carleson_max_singular);
  } else {
    CarlesonOptions co = options.carleson_options;
    co.parallel = options.parallel;
    rep.carleson = carleson_energy(modulus, co);
    rep.carleson_note = rep.carleson->converged ? "converged" : "budget exceeded";
    if (j.finite && j.value > 0.0) rep.ratio_carleson_j = rep.carleson->value / j.value;
  }
  rep.divergence_note = "divergence is classified from growth of partial quantities, never certified";
  return rep;
}

// ------------------------------------------------------------- power criterion

PowerCriterion power_criterion(const CircleSet& set, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("power_criterion: α must be positive");
  if (std::fabs(alpha - 0.5) < 1e-12) {
    throw std::domain_error("power_criterion: α = 1/2 is the unsupported boundary case");
  }
  PowerCriterion out;
  if (alpha > 0.5) {
    const CarlesonSetReport c = carleson_set_test(set);
    out.verdict = c.verdict;
    out.value = c.value;
    out.basis = "Carleson-set test: " + c.basis;
    return out;
  }
  const double s = 2.0 * alpha;
  const auto& gaps = set.gaps();
  std::vector<double> terms;
  for (const GapClass& g : gaps) {
    terms.push_back(2.0 * g.count * std::exp(s * (g.log_length - std::log(2.0))) / s);
  }
  out.value = pairwise_sum(terms);
  if (set.cantor()) {
    const CantorSpec& spec = set.cantor()->spec;
    if (spec.degenerate()) {
      out.verdict = Growth::converges;
      out.basis = "single point";
      return out;
    }
    switch (spec.rule) {
      case CantorRule::geometric:
        out.verdict = 2.0 * std::pow(spec.ratio, s) < 1.0 ? Growth::converges : Growth::diverges;
        out.basis = "closed form: generation terms scale like (2 λ^{2α})^k";
        return out;
      case CantorRule::double_exp:
        out.verdict = Growth::converges;
        out.basis = "closed form: generation terms decay super-exponentially";
        return out;
      case CantorRule::explicit_lengths: break;
    }
  }
  if (set.gap_sequence()) {
    out.verdict = set.gap_sequence()->power_sum_verdict(s);
    out.basis = "closed form for the gap-sequence rule";
    return out;
  }
  if (set.is_finite_point_set()) {
    out.verdict = Growth::converges;
    out.basis = "finitely many gaps: N_E bounded";
    return out;
  }
  std::vector<double> sums;
  if (!gaps.empty()) {
    const double top = gaps.front().log_length;
    double acc = 0.0;
    std::size_t i = 0;
    for (int d = 1; i < gaps.size() && d < 400; ++d) {
      const double cut = top - d * std::log(10.0);
      while (i < gaps.size() && gaps[i].log_length > cut) acc += terms[i++];
      sums.push_back(acc);
    }
  }
  const GrowthEvidence ev = classify_partial_sums(sums);
  out.verdict = ev.verdict;
  out.basis = "partial sums by gap-length decade: " + ev.rule;
  return out;
}

// ------------------------------------------------------------------- fusion

double log_mean_quadrature(const BoundaryModulus& phi) {
  std::vector<double> pts;
  for (int i = 0; i < 16; ++i) pts.push_back(kTwoPi * i / 16.0);
  for (double s : phi.singular_points) pts.push_back(wrap_angle(s));
  for (double k : phi.kinks) pts.push_back(wrap_angle(k));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(), [](double a, double b) { return std::fabs(a - b) < 1e-14; }), pts.end());
  pts.push_back(pts.front() + kTwoPi);
  const double floor = std::log(1e-300);
  std::vector<double> parts;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    parts.push_back(endpoint_singular_integrate(
        [&](double x) { return std::max(phi.log_sampler(wrap_angle(x)), floor); }, pts[i], pts[i + 1], 1e-12));
  }
  return pairwise_sum(parts) / kTwoPi;
}

FusionResult fusion_bound_check(const CircleSet& set, const std::vector<BoundaryModulus>& moduli,
                                const std::vector<std::size_t>& assignment, const FusionOptions& options) {
  if (!set.has_positions() || !set.measure_zero()) {
    throw std::invalid_argument("fusion_bound_check needs a measure-zero set with positions");
  }
  if (moduli.empty()) throw std::invalid_argument("fusion_bound_check needs at least one modulus");
  const auto& arcs = set.arcs();
  if (assignment.size() != arcs.size()) {
    throw std::invalid_argument("fusion_bound_check: one partition index per complementary arc is required");
  }
  for (std::size_t a : assignment) {
    if (a >= moduli.size()) throw std::invalid_argument("fusion_bound_check: partition index out of range");
  }
  // hypothesis |h_j| <= d/π on the grid
  const std::size_t m = options.hypothesis_grid;
  for (std::size_t j = 0; j < moduli.size(); ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      const double theta = kTwoPi * (static_cast<double>(i) + 0.5) / static_cast<double>(m);
      const double bound = std::log(arc_distance(theta, set) / kPi);
      const double lh = moduli[j].log_sampler(theta);
      if (lh > bound + 1e-12 * std::max(1.0, std::fabs(bound))) {
        throw std::domain_error("fusion_bound_check: |h_" + std::to_string(j + 1) + "| > d(ζ,E)/π at θ=" + fmt(theta) +
                                " (grid point " + std::to_string(i) + ")");
      }
    }
  }
  // complementary arc i runs from the end of arc i to the start of arc i+1
  std::vector<double> starts;
  for (const Arc& a : arcs) starts.push_back(a.start);
  BoundaryModulus spliced;
  spliced.log_sampler = [starts, moduli, assignment](double theta) {
    const double x = wrap_angle(theta);
    auto it = std::upper_bound(starts.begin(), starts.end(), x);
    const std::size_t gap = it == starts.begin() ? starts.size() - 1 : static_cast<std::size_t>(it - starts.begin()) - 1;
    return moduli[assignment[gap]].log_sampler(x);
  };
  for (const Arc& a : arcs) spliced.singular_points.push_back(a.start);
  for (const BoundaryModulus& h : moduli) {
    spliced.kinks.insert(spliced.kinks.end(), h.kinks.begin(), h.kinks.end());
    spliced.kinks.insert(spliced.kinks.end(), h.singular_points.begin(), h.singular_points.end());
  }
  spliced.label = "spliced";

  FusionResult out;
  const CarlesonEnergy lhs = carleson_energy(spliced, options.carleson);
  out.lhs = lhs.value;
  out.lhs_error = lhs.error;
  out.budget_exceeded = lhs.budget_exceeded;
  double rhs = 0.0;
  for (const BoundaryModulus& h : moduli) {
    const CarlesonEnergy piece = carleson_energy(h, options.carleson);
    const double d = piece.value;
    out.budget_exceeded = out.budget_exceeded || piece.budget_exceeded;
    const double lm = log_mean_quadrature(h);
    out.piece_energies.push_back(d);
    out.log_moduli_at_zero.push_back(lm);
    rhs += d - 0.5 * lm;
  }
  out.rhs = rhs;
  out.holds = out.lhs <= out.rhs + options.slack * (1.0 + out.rhs);
  return out;
}

FusionInstance random_fusion_instance(std::mt19937_64& rng, bool literal_weights) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> npoints(2, 4);
  std::uniform_int_distribution<int> nmoduli(2, 3);
  FusionInstance inst;
  const int np = npoints(rng);
  while (static_cast<int>(inst.points.size()) < np) {
    const double x = kTwoPi * unit(rng);
    bool ok = true;
    for (double y : inst.points) ok = ok && circular_distance(x, y) > 0.2;
    if (ok) inst.points.push_back(x);
  }
  inst.set = CircleSet::from_points(inst.points);
  const int nm = nmoduli(rng);
  for (int j = 0; j < nm; ++j) {
    const double a = 1.0 + 2.0 * unit(rng);
    inst.exponents.push_back(a);
    const double c = literal_weights ? 1.0 / kPi : std::pow(kPi, -a);
    inst.moduli.push_back(distance_modulus(inst.set, WeightProfile::power(a, c)));
  }
  for (std::size_t g = 0; g < inst.set.arcs().size(); ++g) {
    inst.assignment.push_back(static_cast<std::size_t>(unit(rng) * nm) % static_cast<std::size_t>(nm));
  }
  return inst;
}

}  // namespace dcyc
