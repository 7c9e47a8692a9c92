#pragma once

#include "dcyc/circle_geometry.hpp"
#include "dcyc/energy.hpp"
#include "dcyc/regularize.hpp"
#include "dcyc/weights.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace dcyc {

/// δ_k = π 2^{-k}, k = 3..20, then log-depths s = 2^j, j = 5..30; returned as log δ.
std::vector<double> default_log_delta_schedule();

struct CertificateConfig {
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> gamma;
  /// log δ values, decreasing; empty selects the default schedule
  std::vector<double> log_deltas;
  std::vector<double> epsilons{0.1, 0.01};
  double measure_threshold = 0.05;
  double f0_threshold = 0.95;
  double eta_threshold = 1e-2;
  std::size_t liminf_window = 5;
  /// default 1/(1-α) + 2
  std::optional<double> j_cap;
  bool parallel = true;

  std::vector<double> schedule() const { return log_deltas.empty() ? default_log_delta_schedule() : log_deltas; }
};

struct DeltaRecord {
  double log_delta = 0.0;
  double A = 0.0;
  double log_eta = 0.0;
  double ratio = 0.0;
  double log_f0 = 0.0;
  double j = 0.0;
  bool j_finite = true;
  /// |{ζ : |f*| < 1 - ε}| / 2π for each ε
  std::vector<double> bad_fractions;
  bool concave = false;
  bool knot = false;
  bool degenerate_middle = false;
  std::string error;

  double delta() const { return std::exp(log_delta); }
  double eta() const { return std::exp(log_eta); }
  double f0() const { return std::exp(log_f0); }
};

struct Certificate {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double mu = 0.0;
  double j_cap = 0.0;
  std::shared_ptr<const PsiResult> psi;
  std::vector<DeltaRecord> records;

  /// nonincreasing on the final run starting at this log δ (run covers at least half the schedule)
  bool eta_decreasing = false;
  bool eta_monotone_whole = false;
  double eta_monotone_log_threshold = 0.0;
  bool eta_small = false;
  bool f0_nondecreasing = false;
  bool f0_monotone_whole = false;
  double f0_monotone_log_threshold = 0.0;
  bool f0_close = false;
  bool trace_converges = false;
  double j_running_min = 0.0;
  double j_sup = 0.0;
  bool j_bounded = false;
  /// largest δ below which every w_δ passes the concavity check
  std::optional<double> concavity_log_threshold;
  bool knot_small_delta = false;
  bool passed = false;
  std::vector<std::string> failures;
};

/// Picks α, β, γ, builds φ, ψ and the w_δ family, and runs the numeric checks.
Certificate construct_certificate(const CircleSet& set, double mu, std::optional<Growth> capcond,
                                  const CertificateConfig& config = {});

/// Midpoints inside 1/2 < α < β < (1+μ)/2.
double default_alpha(double mu);
double default_beta(double alpha, double mu);

/// Default γ: 2/(2α-1)(1+1e-3) when it stays below 1/(1-α), otherwise 2 + (1/(1-α) - 2)/10.
double default_gamma(double alpha);

enum class Conclusion { met, not_met, inconclusive };
std::string to_string(Conclusion c);

struct CyclicityReport {
  std::string set_descriptor;
  MuEstimate mu;
  CapcondReport capcond;
  std::optional<Certificate> certificate;
  Conclusion conclusion = Conclusion::inconclusive;
  std::string reason;
};

CyclicityReport theorem_main_check(const CircleSet& set, const CertificateConfig& config = {});
CyclicityReport theorem_main_check(const CantorSpec& spec, const CertificateConfig& config = {});

/// Generation used for a Cantor rule so that the profile is exact below the deepest δ.
int certificate_generation(const CantorSpec& spec, const CertificateConfig& config);

struct CyclicityVerdict {
  /// "cyclic", "not cyclic" or "inconclusive"
  std::string verdict;
  Growth capacity_zero = Growth::inconclusive;
  std::string basis;
};

CyclicityVerdict cantor_brown_shields(const CantorSpec& spec);

}  // namespace dcyc
