#pragma once

#include "dcyc/circle_geometry.hpp"
#include "dcyc/growth.hpp"
#include "dcyc/outer.hpp"
#include "dcyc/weights.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace dcyc {

struct SeriesEnergy {
  double value = 0.0;
  double tail_estimate = 0.0;
  /// dyadic-block partial sums Σ_{k<=2^j} k|a_k|²
  GrowthEvidence growth;
  bool likely_infinite = false;
};

SeriesEnergy series_energy(const OuterFunction& f);

struct CarlesonOptions {
  double tol = 1e-4;
  std::size_t max_panels = 1200;
  int max_iterations = 16;
  std::size_t base_panels = 32;
  /// geometric grading ratio toward singular points
  double grading = 0.15;
  int grading_levels = 14;
  bool parallel = true;
};

struct CarlesonEnergy {
  double value = 0.0;
  double error = 0.0;
  bool converged = false;
  bool budget_exceeded = false;
  std::size_t panels = 0;
  int iterations = 0;
};

/// (1/4π²) ∬ (φ1² - φ2²)(log φ1 - log φ2) / |ζ1 - ζ2|² over the torus.
CarlesonEnergy carleson_energy(const BoundaryModulus& phi, const CarlesonOptions& options = {});

enum class JMode { gamma_gt_2, gamma_eq_2, gamma_lt_2 };

std::string to_string(JMode m);
JMode jmode_for_gamma(double gamma);

/// ∫ w'(t)² ω(t) N(t) dt with ω = t, log²(π/t) or t^{2-2/γ} log(π/t).
IntegralValue j_functional(const StepFunction& n, const WeightProfile& w, JMode mode, double gamma = 3.0);

struct GridEnergy {
  std::size_t grid = 0;
  double series = 0.0;
  double tail = 0.0;
};

struct EnergyReport {
  double series_value = 0.0;
  double series_tail = 0.0;
  Growth series_growth = Growth::inconclusive;
  std::optional<CarlesonEnergy> carleson;
  std::string carleson_note;
  double j_value = 0.0;
  bool j_finite = true;
  JMode j_mode = JMode::gamma_gt_2;
  double gamma = 3.0;
  std::optional<double> ratio_carleson_j;
  double ratio_series_j = 0.0;
  std::vector<GridEnergy> grids;
  /// largest relative change of D_series/J between successive grids
  double grid_drift = 0.0;
  bool in_sanity_band = false;
  bool stable_under_refinement = false;
  std::string divergence_note;
};

struct TwoSidedOptions {
  std::vector<std::size_t> grids{4096, 8192, 16384};
  bool carleson = true;
  std::size_t carleson_max_singular = 64;
  CarlesonOptions carleson_options{};
  double band_lo = 1e-3;
  double band_hi = 1e3;
  double drift_limit = 0.2;
  bool parallel = true;
};

class ConcavityViolation : public std::domain_error {
 public:
  ConcavityViolation(const std::string& what, ConcavityResult result)
      : std::domain_error(what), result_(std::move(result)) {}
  const ConcavityResult& result() const { return result_; }

 private:
  ConcavityResult result_;
};

/// Series, Carleson and J values for f_w with the ratios; refuses when w(t^γ) is not concave.
EnergyReport two_sided_report(const CircleSet& set, const WeightProfile& w, double gamma,
                              const TwoSidedOptions& options = {});

struct PowerCriterion {
  Growth verdict = Growth::inconclusive;
  double value = 0.0;
  std::string basis;
};

/// Finiteness of D(f_w) for w = t^α: ∫ t^{2α-1} N_E < ∞ when α < 1/2, Carleson-set test when α > 1/2.
PowerCriterion power_criterion(const CircleSet& set, double alpha);

struct FusionOptions {
  std::size_t hypothesis_grid = 4096;
  CarlesonOptions carleson{};
  double slack = 1e-6;
};

struct FusionResult {
  double lhs = 0.0;
  double lhs_error = 0.0;
  double rhs = 0.0;
  std::vector<double> piece_energies;
  std::vector<double> log_moduli_at_zero;
  bool holds = false;
  /// some Carleson integral stopped at the panel budget
  bool budget_exceeded = false;
};

struct FusionInstance {
  std::vector<double> points;
  std::vector<double> exponents;
  std::vector<std::size_t> assignment;
  CircleSet set;
  std::vector<BoundaryModulus> moduli;
};

/// 2-4 points at least 0.2 apart, 2-3 moduli (t/π)^a with a in [1, 3] (t^a/π when literal), random arc assignment.
FusionInstance random_fusion_instance(std::mt19937_64& rng, bool literal_weights = false);

/**
 * @brief Spliced-modulus energy bound.
 *
 * assignment[i] names the modulus used on the i-th complementary arc of E
 * (arcs in increasing order of start); each arc is one open set of the partition.
 */
FusionResult fusion_bound_check(const CircleSet& set, const std::vector<BoundaryModulus>& moduli,
                                const std::vector<std::size_t>& assignment, const FusionOptions& options = {});

/// (1/2π) ∫ log φ by adaptive quadrature between singular points and kinks.
double log_mean_quadrature(const BoundaryModulus& phi);

}  // namespace dcyc
