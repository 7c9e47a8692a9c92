#include "dcyc/outer.hpp"

#include "dcyc/fft.hpp"
#include "dcyc/kernels.hpp"

#include <algorithm>
#include <optional>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dcyc {

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

BoundaryModulus BoundaryModulus::from_function(std::function<double(double)> phi, std::vector<double> singular_points,
                                               std::vector<double> kinks, std::string label) {
  BoundaryModulus m;
  m.log_sampler = [phi = std::move(phi)](double theta) {
    const double v = phi(theta);
    return v > 0.0 ? std::log(v) : -kInf;
  };
  m.singular_points = std::move(singular_points);
  m.kinks = std::move(kinks);
  m.label = std::move(label);
  return m;
}

BoundaryModulus BoundaryModulus::constant(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("constant modulus must be positive");
  BoundaryModulus m;
  const double lc = std::log(c);
  m.log_sampler = [lc](double) { return lc; };
  m.label = "constant";
  return m;
}

OuterFunction OuterFunction::from_taylor(std::vector<Complex> coefficients) {
  OuterFunction f;
  f.taylor_ = std::move(coefficients);
  return f;
}

std::vector<Complex> exponentiate_series(std::span<const Complex> b, std::size_t terms) {
  std::vector<Complex> a(terms + 1);
  if (b.empty()) throw std::invalid_argument("exponentiate_series: empty input");
  a[0] = std::exp(b[0]);
  for (std::size_t n = 1; n <= terms; ++n) {
    Complex acc = 0.0;
    const std::size_t kmax = std::min(n, b.size() - 1);
    for (std::size_t k = 1; k <= kmax; ++k) acc += static_cast<double>(k) * b[k] * a[n - k];
    a[n] = acc / static_cast<double>(n);
  }
  return a;
}

namespace {

/// Σ_{K/2<k<=K} k|a_k|² extrapolated geometrically from the previous block.
double tail_from_blocks(const std::vector<Complex>& a) {
  const std::size_t k = a.size() - 1;
  if (k < 8) return 0.0;
  double last = 0.0, prev = 0.0;
  for (std::size_t i = k / 2 + 1; i <= k; ++i) last += static_cast<double>(i) * std::norm(a[i]);
  for (std::size_t i = k / 4 + 1; i <= k / 2; ++i) prev += static_cast<double>(i) * std::norm(a[i]);
  if (!(prev > 0.0)) return last;
  double energy = 0.0;
  for (std::size_t i = 1; i <= k; ++i) energy += static_cast<double>(i) * std::norm(a[i]);
  // blocks at rounding level: the ratio is noise
  if (last <= 1e-12 * energy) return last;
  const double rho = last / prev;
  return rho < 1.0 ? last * rho / (1.0 - rho) : kInf;
}

std::vector<double> sample(const BoundaryModulus& phi, std::size_t m, bool parallel) {
  return parallel ? kernels::sample_log_parallel(phi.log_sampler, m) : kernels::sample_log_serial(phi.log_sampler, m);
}

/// Local exponent p with log φ ≈ p log|θ - s|, or nullopt when not a clean power zero.
std::optional<double> zero_exponent(const BoundaryModulus& phi, double s, double separation) {
  const double h2 = 1e-3 * std::min(1.0, separation);
  const double h1 = 1e-2 * h2;
  const double h0 = 1e-2 * h1;
  if (!(h0 > 1e-200)) return std::nullopt;
  auto slope = [&](double sign, double a, double b) {
    const double la = phi.log_sampler(wrap_angle(s + sign * a));
    const double lb = phi.log_sampler(wrap_angle(s + sign * b));
    return (lb - la) / (std::log(b) - std::log(a));
  };
  const double right = slope(1.0, h1, h2), left = slope(-1.0, h1, h2);
  const double right0 = slope(1.0, h0, h1), left0 = slope(-1.0, h0, h1);
  if (!std::isfinite(right) || !std::isfinite(left) || !std::isfinite(right0) || !std::isfinite(left0)) return std::nullopt;
  const double p = 0.5 * (right + left);
  if (!(p > 1e-6 && p < 64.0)) return std::nullopt;
  const double tol = 1e-6 * std::max(1.0, p);
  if (std::fabs(right - left) > tol || std::fabs(right0 - right) > tol || std::fabs(left0 - left) > tol) return std::nullopt;
  return p;
}

}  // namespace

OuterFunction outer_from_modulus(const BoundaryModulus& phi, const OuterOptions& options) {
  const std::size_t m = options.grid;
  if (!is_power_of_two(m) || m < 256) throw std::invalid_argument("outer_from_modulus: grid must be a power of two >= 256");
  const std::size_t k_terms = options.taylor_terms ? options.taylor_terms : m / 4;
  if (k_terms >= m / 2) throw std::invalid_argument("outer_from_modulus: Taylor terms must stay below M/2");

  OuterFunction f;
  f.grid_ = m;
  f.clamp_floor_ = options.clamp_floor;
  f.log_boundary_ = sample(phi, m, options.parallel);
  for (double& v : f.log_boundary_) {
    if (std::isnan(v)) throw std::domain_error("outer_from_modulus: modulus sampler returned NaN");
    if (v < options.clamp_floor) {
      v = options.clamp_floor;
      ++f.clamped_points_;
    }
  }
  if (f.clamped_fraction() > options.clamp_error_fraction) {
    std::ostringstream msg;
    msg << "outer_from_modulus: φ vanishes on " << f.clamped_points_ << " of " << m
        << " grid points (positive-measure zero set)";
    throw std::domain_error(msg.str());
  }
  if (f.clamped_points_ > 0) {
    f.warnings_.push_back("clamped " + std::to_string(f.clamped_points_) + " grid values of log φ at the floor");
  }

  // Remove p log|2 sin((θ - s)/2)| at clean power zeros; its coefficients -p e^{-iks}/(2k) are added back exactly.
  std::vector<std::pair<double, double>> zeros;
  if (f.clamped_points_ == 0 && options.subtract_singularities) {
    std::vector<double> pts;
    for (double s0 : phi.singular_points) pts.push_back(wrap_angle(s0));
    std::sort(pts.begin(), pts.end());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      double sep = kPi;
      if (pts.size() > 1) {
        const double next = i + 1 < pts.size() ? pts[i + 1] : pts[0] + kTwoPi;
        const double prev = i > 0 ? pts[i - 1] : pts.back() - kTwoPi;
        sep = std::min(next - pts[i], pts[i] - prev);
      }
      if (auto p = zero_exponent(phi, pts[i], sep)) zeros.emplace_back(pts[i], *p);
    }
  }
  std::vector<double> regular = f.log_boundary_;
  if (!zeros.empty()) {
    const auto mm = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel for schedule(static) if (options.parallel)
    for (std::ptrdiff_t j = 0; j < mm; ++j) {
      const double theta = kTwoPi * (static_cast<double>(j) + 0.5) / static_cast<double>(m);
      double acc = 0.0;
      for (const auto& [s0, p] : zeros) acc += p * std::log(2.0 * std::fabs(std::sin(0.5 * (theta - s0))));
      regular[static_cast<std::size_t>(j)] -= acc;
    }
  }
  f.subtracted_zeros_ = zeros.size();

  const auto spectrum = real_dft(regular);
  f.log_coefficients_.resize(m / 2 + 1);
  const auto half = static_cast<std::ptrdiff_t>(m / 2 + 1);
#pragma omp parallel for schedule(static) if (options.parallel)
  for (std::ptrdiff_t kk = 0; kk < half; ++kk) {
    const auto k = static_cast<std::size_t>(kk);
    const Complex phase = std::polar(1.0, -kPi * static_cast<double>(k) / static_cast<double>(m));
    Complex c = phase * spectrum[k] / static_cast<double>(m);
    if (k > 0) {
      for (const auto& [s0, p] : zeros) c -= p * std::polar(1.0, -static_cast<double>(k) * s0) / (2.0 * static_cast<double>(k));
    }
    f.log_coefficients_[k] = c;
  }
  f.analytic_.resize(m / 2);
  f.analytic_[0] = f.log_coefficients_[0].real();
  for (std::size_t k = 1; k < m / 2; ++k) f.analytic_[k] = 2.0 * f.log_coefficients_[k];
  f.taylor_ = exponentiate_series(f.analytic_, k_terms);
  f.tail_estimate_ = tail_from_blocks(f.taylor_);
  return f;
}

std::vector<Complex> exponentiate_pointwise(const OuterFunction& f, std::size_t terms) {
  const std::size_t m = f.grid();
  if (m == 0) throw std::invalid_argument("exponentiate_pointwise needs a grid-built outer function");
  const auto& b = f.analytic_coefficients();
  std::vector<Complex> shifted(m, 0.0);
  for (std::size_t k = 0; k < b.size(); ++k) {
    shifted[k] = b[k] * std::polar(1.0, kPi * static_cast<double>(k) / static_cast<double>(m));
  }
  auto trace = complex_dft(shifted, +1);
  for (Complex& g : trace) g = std::exp(g);
  const auto spectrum = complex_dft(trace, -1);
  std::vector<Complex> a(terms + 1);
  for (std::size_t k = 0; k <= terms; ++k) {
    a[k] = spectrum[k] * std::polar(1.0, -kPi * static_cast<double>(k) / static_cast<double>(m)) / static_cast<double>(m);
  }
  return a;
}

Evaluation evaluate(const OuterFunction& f, Complex z) {
  const double r = std::abs(z);
  if (r > 1.0 - 1e-9) {
    throw std::domain_error("evaluate: |z| too close to 1; use the boundary trace (log_boundary) instead");
  }
  const auto& a = f.taylor();
  Evaluation out;
  Complex acc = 0.0;
  for (std::size_t k = a.size(); k-- > 0;) acc = acc * z + a[k];
  out.value = acc;
  const std::size_t kk = a.size() - 1;
  double amax = 0.0;
  for (std::size_t k = kk / 2 + 1; k <= kk; ++k) amax = std::max(amax, std::abs(a[k]));
  out.tail_bound = amax * std::pow(r, static_cast<double>(kk + 1)) / (1.0 - r);
  return out;
}

Complex herglotz_evaluate(const BoundaryModulus& phi, Complex z, std::size_t m) {
  if (std::abs(z) >= 1.0) throw std::domain_error("herglotz_evaluate: z must lie in the open disk");
  const auto logs = kernels::sample_log_serial(phi.log_sampler, m);
  std::vector<double> re(m), im(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double theta = kTwoPi * (static_cast<double>(j) + 0.5) / static_cast<double>(m);
    const Complex zeta = std::polar(1.0, theta);
    const Complex kernel = (zeta + z) / (zeta - z);
    const double l = std::max(logs[j], std::log(1e-300));
    re[j] = kernel.real() * l;
    im[j] = kernel.imag() * l;
  }
  const Complex mean(pairwise_sum(re) / static_cast<double>(m), pairwise_sum(im) / static_cast<double>(m));
  return std::exp(mean);
}

ModulusAtZero modulus_at_zero(const BoundaryModulus& phi, std::size_t m, bool parallel) {
  if (!is_power_of_two(m)) throw std::invalid_argument("modulus_at_zero: grid must be a power of two");
  ModulusAtZero out;
  const double floor = std::log(1e-300);
  std::size_t clamped = 0;
  for (std::size_t level = 0; level < 3; ++level) {
    const std::size_t mm = m << level;
    auto logs = sample(phi, mm, parallel);
    clamped = 0;
    for (double& v : logs) {
      clamped += v < floor;
      v = std::max(v, floor);
    }
    out.log_means.push_back(kernels::blocked_sum(logs) / static_cast<double>(mm));
  }
  const double d1 = out.log_means[1] - out.log_means[0];
  const double d2 = out.log_means[2] - out.log_means[1];
  // the offset-grid mean of a log singularity has an O(1/M) error
  out.richardson_log = 2.0 * out.log_means[2] - out.log_means[1];
  out.richardson_error = std::fabs(out.richardson_log - (2.0 * out.log_means[1] - out.log_means[0]));
  out.log_value = out.richardson_log;
  out.value = std::exp(out.log_value);
  const bool positive_measure_zeros = static_cast<double>(clamped) > 0.01 * static_cast<double>(m << 2);
  if (positive_measure_zeros || (std::fabs(d2) > 1e-6 && std::fabs(d2) >= 0.75 * std::fabs(d1) && d2 < 0.0)) {
    out.finite = false;
    out.value = 0.0;
    out.log_value = -kInf;
  }
  return out;
}

BoundaryModulus distance_modulus(const CircleSet& set, const WeightProfile& w) {
  if (!set.has_positions()) throw std::invalid_argument("distance_modulus needs a set with arc positions");
  BoundaryModulus m;
  m.log_sampler = [set, w](double theta) {
    const double d = arc_distance(theta, set);
    return d > 0.0 ? w.log_value(std::log(d)) : -kInf;
  };
  for (const Arc& a : set.arcs()) {
    m.singular_points.push_back(a.start);
    if (a.length > 0.0) m.singular_points.push_back(wrap_angle(a.end()));
  }
  const auto& arcs = set.arcs();
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const double end = arcs[i].end();
    const double next = i + 1 < arcs.size() ? arcs[i + 1].start : arcs.front().start + kTwoPi;
    if (next > end) m.kinks.push_back(wrap_angle(0.5 * (end + next)));
  }
  std::sort(m.singular_points.begin(), m.singular_points.end());
  std::sort(m.kinks.begin(), m.kinks.end());
  m.label = "w(d(., E)) for " + set.describe();
  return m;
}

OuterFunction distance_function(const CircleSet& set, const WeightProfile& w, const OuterOptions& options) {
  const IntegralValue li = log_integrability(w, counting_function(set));
  if (!li.finite) throw std::domain_error("distance_function: ∫|log w| N_E dt diverges (" + li.evidence + ")");
  return outer_from_modulus(distance_modulus(set, w), options);
}

}  // namespace dcyc
