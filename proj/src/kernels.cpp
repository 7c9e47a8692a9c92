#include "dcyc/kernels.hpp"

#include "dcyc/numeric.hpp"

#include <cmath>
#include <stdexcept>

namespace dcyc::kernels {

std::vector<double> sample_log_serial(const std::function<double(double)>& log_phi, std::size_t m, double offset) {
  std::vector<double> out(m);
  for (std::size_t j = 0; j < m; ++j) out[j] = log_phi(kTwoPi * (static_cast<double>(j) + offset) / static_cast<double>(m));
  return out;
}

std::vector<double> sample_log_parallel(const std::function<double(double)>& log_phi, std::size_t m, double offset) {
  std::vector<double> out(m);
  const auto n = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    out[static_cast<std::size_t>(j)] = log_phi(kTwoPi * (static_cast<double>(j) + offset) / static_cast<double>(m));
  }
  return out;
}

namespace {

struct Prepared {
  std::vector<double> phi2, s, c;
};

Prepared prepare(const CarlesonNodes& nodes) {
  const std::size_t n = nodes.theta.size();
  if (nodes.weight.size() != n || nodes.log_phi.size() != n || nodes.diagonal.size() != n) {
    throw std::invalid_argument("carleson nodes: inconsistent sizes");
  }
  Prepared p;
  p.phi2.resize(n);
  p.s.resize(n);
  p.c.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.phi2[i] = std::exp(2.0 * nodes.log_phi[i]);
    p.s[i] = std::sin(0.5 * nodes.theta[i]);
    p.c[i] = std::cos(0.5 * nodes.theta[i]);
  }
  return p;
}

inline double row(const CarlesonNodes& nodes, const Prepared& p, std::size_t i) {
  const std::size_t n = nodes.theta.size();
  double acc = 0.0;
  const double pi2 = p.phi2[i];
  const double li = nodes.log_phi[i];
  const double si = p.s[i];
  const double ci = p.c[i];
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) {
      acc += nodes.weight[j] * nodes.diagonal[i];
      continue;
    }
    // sin((θi - θj)/2)
    const double sd = si * p.c[j] - ci * p.s[j];
    const double denom = 4.0 * sd * sd;
    const double num = (pi2 - p.phi2[j]) * (li - nodes.log_phi[j]);
    if (denom > 0.0) acc += nodes.weight[j] * num / denom;
  }
  return nodes.weight[i] * acc;
}

}  // namespace

void carleson_rows_serial(const CarlesonNodes& nodes, std::span<double> rows) {
  const Prepared p = prepare(nodes);
  for (std::size_t i = 0; i < nodes.theta.size(); ++i) rows[i] = row(nodes, p, i);
}

void carleson_rows_parallel(const CarlesonNodes& nodes, std::span<double> rows) {
  const Prepared p = prepare(nodes);
  const auto n = static_cast<std::ptrdiff_t>(nodes.theta.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)] = row(nodes, p, static_cast<std::size_t>(i));
}

double blocked_sum(std::span<const double> values) {
  constexpr std::size_t block = 1024;
  std::vector<double> partial((values.size() + block - 1) / block);
  const auto nb = static_cast<std::ptrdiff_t>(partial.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * block;
    const std::size_t hi = std::min(values.size(), lo + block);
    partial[static_cast<std::size_t>(b)] = pairwise_sum(values.subspan(lo, hi - lo));
  }
  return pairwise_sum(partial);
}

}  // namespace dcyc::kernels
