#pragma once

#include "dcyc/circle_geometry.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace dcyc {

/// Closed-form families a weight piece can take.
enum class Family {
  power,                 // log w = log_c + p (log t - log_ref)
  affine,                // w = a + b t, stored as log a, log b
  exp_power,             // log w = log_c + k t^q
  log_inverse_integral,  // w = A - log G(t), G(t) = ∫_t^π ds/ψ(s)
};

std::string to_string(Family f);
Family family_from_string(const std::string& s);

/// One piece on (exp(log_lo), exp(log_hi)].
struct WeightPiece {
  Family family = Family::power;
  double log_lo = -kInf;
  double log_hi = 0.0;
  double log_c = 0.0;
  double p = 0.0;
  double log_ref = 0.0;
  double log_a = -kInf;
  double log_b = -kInf;
  double k = 0.0;
  double q = 0.0;
  double A = 0.0;
};

class InverseIntegral;

/**
 * @brief Piecewise closed-form weight on (0, π], evaluated in log coordinates.
 *
 * Pieces are contiguous, the first starts at t = 0 and the last ends at π.
 * Construction checks continuity at every knot to 1e-12 relative.
 */
class WeightProfile {
 public:
  WeightProfile() = default;
  explicit WeightProfile(std::vector<WeightPiece> pieces, std::shared_ptr<const InverseIntegral> integral = nullptr);

  static WeightProfile power(double p, double c = 1.0);
  static WeightProfile constant(double c);
  static WeightProfile exp_power(double k, double q, double c = 1.0);

  double value(double t) const { return std::exp(log_value(std::log(t))); }
  double log_value(double log_t) const;
  /// d log w / d log t inside the piece containing t (right piece at knots).
  double log_slope(double log_t) const;
  double derivative(double t) const;
  /// Piece-local evaluation, used for one-sided limits at knots.
  double piece_log_value(std::size_t i, double log_t) const;
  double piece_log_slope(std::size_t i, double log_t) const;

  std::size_t locate(double log_t) const;
  const std::vector<WeightPiece>& pieces() const { return pieces_; }
  const std::shared_ptr<const InverseIntegral>& inverse_integral() const { return integral_; }
  /// Largest relative jump across knots.
  double max_knot_jump() const;

 private:
  std::vector<WeightPiece> pieces_;
  std::shared_ptr<const InverseIntegral> integral_;
};

/**
 * @brief G(t) = ∫_t^π ds/ψ(s) as an antiderivative object.
 *
 * Closed forms on power and affine pieces of ψ, composite Gauss panels on
 * other families, with the cumulative value cached at every knot.
 */
class InverseIntegral {
 public:
  explicit InverseIntegral(WeightProfile psi);

  double at_log(double log_t) const;
  double at(double t) const { return at_log(std::log(t)); }
  /// G(0+), possibly infinite.
  double at_zero() const;
  const WeightProfile& psi() const { return psi_; }

 private:
  double piece_integral(std::size_t i, double l1, double l2) const;

  WeightProfile psi_;
  std::vector<double> above_;  // ∫_{t_hi(i)}^π
};

/// φ(t) = min{|E_t|, t^β} with exact crossovers.
WeightProfile build_phi(const NeighborhoodMeasure& measure, double beta);

struct ConcavityResult {
  bool ok = true;
  std::optional<double> violation_log_t;
  std::optional<std::size_t> knot;
  std::string detail;
};

/// t^{1-1/γ} w'(t) weakly decreasing, inside pieces and across knots.
ConcavityResult concavity_check(const WeightProfile& w, double gamma);

struct IntegralValue {
  double value = 0.0;
  bool finite = true;
  std::string evidence;
};

/// ∫_0^π |log w(t)| N(t) dt.
IntegralValue log_integrability(const WeightProfile& w, const StepFunction& n);

struct CertificateParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double log_delta = 0.0;
  std::optional<double> mu;

  /// Throws std::invalid_argument naming the violated inequality.
  void validate() const;
};

struct WDelta {
  WeightProfile w;
  double A = 0.0;
  double log_delta = 0.0;
  double log_eta = 0.0;
  /// δ/ψ(δ), the value of w_δ at δ.
  double ratio = 0.0;
  bool degenerate_middle = false;
  double eta() const { return std::exp(log_eta); }
};

/// Three-piece certificate weight built on ψ; needs δ/ψ(δ) <= 1.
WDelta w_delta_family(const std::shared_ptr<const InverseIntegral>& psi_integral, double alpha, double log_delta);

/// ∫_δ^π ds/ψ >= 1/(1-α), the knot condition.
bool knot_inequality(const InverseIntegral& g, double alpha, double log_delta);

}  // namespace dcyc
