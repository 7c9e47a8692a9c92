#pragma once

#include "dcyc/growth.hpp"
#include "dcyc/weights.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dcyc {

struct SampledFunction {
  std::vector<double> x;
  std::vector<double> u;
  std::string tag;
};

struct ShadeInterval {
  std::size_t first = 0;  // first shaded node
  std::size_t last = 0;   // last shaded node
  double a = 0.0;         // x of the first shaded node
  double b = 0.0;         // x of the contact node closing the component
  double ua = 0.0;
  double ub = 0.0;
  bool endpoint_ok = true;
};

struct RegularizationResult {
  SampledFunction u;
  std::vector<double> u_reg;
  std::vector<bool> contact;
};

/// ũ(x_i) = min_{j >= i} u(x_j) by one backward scan.
RegularizationResult increasing_regularization(SampledFunction u);

struct ShadeReport {
  std::vector<ShadeInterval> components;
  bool sampling_warning = false;
};

/// Maximal runs of nodes with ũ < u; checks u(a) >= u(b) - tol for each.
ShadeReport shade_components(const RegularizationResult& r, double tol = 1e-6);

struct ContactDensity {
  double density = 0.0;  // |S ∩ [0, X]| / X at the window end
  double bound = 0.0;    // min of u(x)/x over the window tail
  bool holds = false;
};

/// Needs u(x) - x weakly decreasing on [x_lo, x_hi]; throws on the first violation.
ContactDensity contact_density(const RegularizationResult& r, double x_lo, double x_hi, double tail_fraction = 0.25);

struct PsiGrid {
  /// uniform part: nodes x = k h up to x_uniform
  double step = 12.0 * std::log(10.0) / 16383.0;
  double x_uniform = 12.0 * std::log(10.0);
  /// geometric continuation x_{k+1} = x_k (1 + growth) up to x_max (none when x_max <= x_uniform)
  double growth = 1.0 / 512.0;
  double x_max = 12.0 * std::log(10.0);

  std::vector<double> nodes() const;
  /// Grid reaching log-depth x_max with the default density near the top.
  static PsiGrid deep(double x_max, double step = 1.0 / 64.0, double x_uniform = 64.0, double growth = 1.0 / 512.0);
};

struct PsiResult {
  WeightProfile psi;
  RegularizationResult regularization;
  std::vector<double> log_t;
  std::vector<double> log_phi;
  std::vector<double> log_psi;
  double alpha = 0.0;
  double beta = 0.0;
  double a = 1.0;
  /// nodes where the clamp to [φ, t^β] moved the reconstruction (rounding only)
  std::size_t clamped_nodes = 0;
  /// largest clamp move in log ψ
  double max_clamp = 0.0;
  bool psi_over_t_alpha_increasing = false;
  bool sandwich_holds = false;
  std::vector<double> decade_epsilons;
  std::vector<double> partial_integrals;
  GrowthEvidence divergence;
  /// every decade adds at least half of the previous decade's increment
  bool divergence_evidence = false;
  std::optional<Growth> parametric_divergence;
  /// suffix infimum over the truncated grid is only an upper bound near x_max
  double truncation_x = 0.0;
};

/// ψ with ψ/t^α increasing, φ <= ψ <= t^β and ∫_0 dt/ψ = ∞, via the rising-sun transform.
PsiResult build_psi(const WeightProfile& phi, double alpha, double beta, double a = 1.0, const PsiGrid& grid = {},
                    std::optional<Growth> parametric_divergence = std::nullopt);

}  // namespace dcyc
