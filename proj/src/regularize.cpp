#include "dcyc/regularize.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace dcyc {

namespace {

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

double rounding_slack(double v, double scale = 0.0) {
  return 1e-12 * std::max(1.0, std::fabs(v)) + 2e-15 * std::fabs(scale);
}

}  // namespace

RegularizationResult increasing_regularization(SampledFunction u) {
  if (u.x.empty() || u.x.size() != u.u.size()) throw std::invalid_argument("regularization: grid and values must match");
  for (std::size_t i = 1; i < u.x.size(); ++i) {
    if (!(u.x[i] > u.x[i - 1])) throw std::invalid_argument("regularization: grid must increase strictly");
  }
  RegularizationResult r;
  const std::size_t n = u.u.size();
  r.u_reg.resize(n);
  r.contact.resize(n);
  double running = kInf;
  for (std::size_t i = n; i-- > 0;) {
    if (!std::isfinite(u.u[i])) throw std::invalid_argument("regularization: values must be finite");
    running = std::min(running, u.u[i]);
    r.u_reg[i] = running;
    r.contact[i] = running == u.u[i];
  }
  r.u = std::move(u);
  return r;
}

ShadeReport shade_components(const RegularizationResult& r, double tol) {
  ShadeReport rep;
  const std::size_t n = r.u_reg.size();
  std::size_t i = 0;
  while (i < n) {
    if (r.contact[i]) {
      ++i;
      continue;
    }
    ShadeInterval c;
    c.first = i;
    while (i < n && !r.contact[i]) ++i;
    c.last = i - 1;
    // the last node is always a contact node, so i < n here
    c.a = r.u.x[c.first];
    c.b = r.u.x[i];
    c.ua = r.u.u[c.first];
    c.ub = r.u.u[i];
    c.endpoint_ok = c.ua >= c.ub - tol;
    rep.sampling_warning = rep.sampling_warning || !c.endpoint_ok;
    rep.components.push_back(c);
  }
  return rep;
}

ContactDensity contact_density(const RegularizationResult& r, double x_lo, double x_hi, double tail_fraction) {
  const auto& x = r.u.x;
  const auto& u = r.u.u;
  if (!(x_hi > x_lo) || !(x_hi > 0.0)) throw std::invalid_argument("contact_density: empty window");
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i - 1] < x_lo || x[i] > x_hi) continue;
    const double prev = u[i - 1] - x[i - 1];
    const double cur = u[i] - x[i];
    if (cur > prev + rounding_slack(prev, x[i])) {
      throw std::domain_error("contact_density: u(x) - x increases at x=" + fmt(x[i]));
    }
  }
  double in_s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size() && x[i] < x_hi; ++i) {
    if (x[i] < 0.0) continue;
    if (r.contact[i]) in_s += std::min(x[i + 1], x_hi) - x[i];
  }
  ContactDensity out;
  out.density = in_s / x_hi;
  out.bound = kInf;
  const double tail_start = x_hi - tail_fraction * (x_hi - x_lo);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] >= tail_start && x[i] <= x_hi && x[i] > 0.0) out.bound = std::min(out.bound, u[i] / x[i]);
  }
  out.holds = out.density >= out.bound - 1e-9;
  return out;
}

std::vector<double> PsiGrid::nodes() const {
  if (!(step > 0.0) || !(x_uniform > 0.0)) throw std::invalid_argument("psi grid: step and range must be positive");
  std::vector<double> xs;
  const auto n = static_cast<std::size_t>(std::llround(x_uniform / step));
  xs.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) xs.push_back(x_uniform * static_cast<double>(k) / static_cast<double>(n));
  if (x_max > x_uniform) {
    if (!(growth > 0.0)) throw std::invalid_argument("psi grid: growth must be positive");
    double x = xs.back();
    while (x < x_max) {
      x = std::min(x_max, x * (1.0 + growth));
      xs.push_back(x);
    }
  }
  return xs;
}

PsiGrid PsiGrid::deep(double x_max, double step, double x_uniform, double growth) {
  PsiGrid g;
  g.step = step;
  g.x_uniform = std::min(x_uniform, x_max);
  g.growth = growth;
  g.x_max = x_max;
  return g;
}

PsiResult build_psi(const WeightProfile& phi, double alpha, double beta, double a, const PsiGrid& grid,
                    std::optional<Growth> parametric_divergence) {
  if (!(alpha > 0.0 && alpha < beta && beta <= 1.0)) {
    throw std::invalid_argument("build_psi precondition violated: 0 < α < β <= 1");
  }
  if (!(a > 0.0 && a <= kPi)) throw std::invalid_argument("build_psi: a must lie in (0, π]");
  const std::vector<double> xs = grid.nodes();
  const std::size_t n = xs.size();
  const double log_a = std::log(a);

  PsiResult res;
  res.alpha = alpha;
  res.beta = beta;
  res.a = a;
  res.truncation_x = xs.back();
  res.log_t.resize(n);
  res.log_phi.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    res.log_t[i] = log_a - xs[i];
    res.log_phi[i] = phi.log_value(res.log_t[i]);
    if (!std::isfinite(res.log_phi[i])) {
      throw std::domain_error("build_psi precondition violated: φ(t) > 0 fails at t=" + fmt(std::exp(res.log_t[i])));
    }
    if (res.log_phi[i] > beta * res.log_t[i] + rounding_slack(res.log_phi[i])) {
      throw std::domain_error("build_psi precondition violated: φ(t) <= t^β fails at t=" + fmt(std::exp(res.log_t[i])));
    }
    if (i > 0) {
      const double prev = res.log_phi[i - 1] - res.log_t[i - 1];
      const double cur = res.log_phi[i] - res.log_t[i];
      if (cur < prev - rounding_slack(prev, res.log_t[i])) {
        throw std::domain_error("build_psi precondition violated: φ(t)/t weakly decreasing fails at t=" +
                                fmt(std::exp(res.log_t[i])));
      }
    }
  }

  // rescale to a = 1: φ1(s) = φ(a s) / a^β
  SampledFunction u;
  u.x = xs;
  u.u.resize(n);
  u.tag = "u(x) = -(log φ1(e^-x) + α x) / (1 - α)";
  for (std::size_t i = 0; i < n; ++i) {
    const double log_phi1 = res.log_phi[i] - beta * log_a;
    u.u[i] = -(log_phi1 + alpha * xs[i]) / (1.0 - alpha);
  }
  res.regularization = increasing_regularization(std::move(u));

  res.log_psi.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double raw = -(1.0 - alpha) * res.regularization.u_reg[i] - alpha * xs[i] + beta * log_a;
    const double clamped = std::min(std::max(raw, res.log_phi[i]), beta * res.log_t[i]);
    if (clamped != raw) {
      ++res.clamped_nodes;
      res.max_clamp = std::max(res.max_clamp, std::fabs(clamped - raw));
    }
    res.log_psi[i] = clamped;
  }

  res.sandwich_holds = true;
  res.psi_over_t_alpha_increasing = true;
  for (std::size_t i = 0; i < n; ++i) {
    const double slack = rounding_slack(res.log_psi[i]);
    res.sandwich_holds = res.sandwich_holds && res.log_phi[i] <= res.log_psi[i] + slack &&
                         res.log_psi[i] <= beta * res.log_t[i] + slack;
    if (i > 0) {
      const double prev = res.log_psi[i - 1] - alpha * res.log_t[i - 1];
      const double cur = res.log_psi[i] - alpha * res.log_t[i];
      if (cur > prev + rounding_slack(prev, res.log_t[i])) res.psi_over_t_alpha_increasing = false;
    }
  }

  // ψ as log-linear interpolation in log t between nodes
  std::vector<WeightPiece> pieces;
  {
    WeightPiece first;
    first.family = Family::power;
    first.log_lo = -kInf;
    first.log_hi = res.log_t[n - 1];
    first.log_c = res.log_psi[n - 1];
    first.log_ref = res.log_t[n - 1];
    first.p = n >= 2 ? (res.log_psi[n - 2] - res.log_psi[n - 1]) / (res.log_t[n - 2] - res.log_t[n - 1]) : beta;
    pieces.push_back(first);
  }
  for (std::size_t i = n - 1; i >= 1; --i) {
    WeightPiece p;
    p.family = Family::power;
    p.log_lo = res.log_t[i];
    p.log_hi = res.log_t[i - 1];
    p.log_c = res.log_psi[i - 1];
    p.log_ref = res.log_t[i - 1];
    p.p = (res.log_psi[i - 1] - res.log_psi[i]) / (res.log_t[i - 1] - res.log_t[i]);
    pieces.push_back(p);
  }
  const double log_pi = std::log(kPi);
  if (log_a < log_pi) {
    WeightPiece top;
    top.family = Family::power;
    top.log_lo = log_a;
    top.log_hi = log_pi;
    top.log_c = res.log_psi[0];
    top.log_ref = log_a;
    top.p = beta;
    pieces.push_back(top);
  } else {
    pieces.back().log_hi = log_pi;
  }
  res.psi = WeightProfile(std::move(pieces));

  // partial integrals ∫_ε^a dt/ψ on decades of ε
  const InverseIntegral g(res.psi);
  const double g_a = g.at_log(log_a);
  for (int k = 1; k <= 300; ++k) {
    const double log_eps = log_a - k * std::log(10.0);
    if (log_eps < res.log_t.back()) break;
    res.decade_epsilons.push_back(std::exp(log_eps));
    res.partial_integrals.push_back(g.at_log(log_eps) - g_a);
  }
  res.divergence = classify_partial_sums(res.partial_integrals);
  const auto& inc = res.divergence.increments;
  res.divergence_evidence = inc.size() >= 2;
  for (std::size_t i = 1; i < inc.size(); ++i) res.divergence_evidence = res.divergence_evidence && inc[i] >= 0.5 * inc[i - 1];
  res.parametric_divergence = parametric_divergence;
  return res;
}

}  // namespace dcyc
