#pragma once

#include <functional>
#include <span>
#include <vector>

/// Data-parallel hot loops, each with a serial reference used by the tests and the benchmark.
namespace dcyc::kernels {

/// log φ at θ_j = 2π (j + offset) / M.
std::vector<double> sample_log_serial(const std::function<double(double)>& log_phi, std::size_t m, double offset = 0.5);
std::vector<double> sample_log_parallel(const std::function<double(double)>& log_phi, std::size_t m,
                                        double offset = 0.5);

/// Quadrature nodes for the Carleson double integral.
struct CarlesonNodes {
  std::vector<double> theta;
  std::vector<double> weight;
  std::vector<double> log_phi;
  /// 2 φ'(θ)^2, the diagonal limit of the integrand
  std::vector<double> diagonal;
};

/**
 * @brief rows[i] = w_i Σ_j w_j K(θ_i, θ_j), K the Carleson integrand
 * (φ_i² - φ_j²)(log φ_i - log φ_j) / |e^{iθ_i} - e^{iθ_j}|², with K(θ, θ) = 2φ'(θ)².
 */
void carleson_rows_serial(const CarlesonNodes& nodes, std::span<double> rows);
void carleson_rows_parallel(const CarlesonNodes& nodes, std::span<double> rows);

/// Deterministic blocked sum: fixed blocks, pairwise combination.
double blocked_sum(std::span<const double> values);

}  // namespace dcyc::kernels
