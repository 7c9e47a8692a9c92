#pragma once

#include "dcyc/growth.hpp"
#include "dcyc/numeric.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcyc {

/// Closed arc [start, start + length] on the circle, measured in arclength.
struct Arc {
  double start = 0.0;
  double length = 0.0;

  double end() const { return start + length; }
  bool contains(double angle) const;
  friend bool operator==(const Arc&, const Arc&) = default;
};

/// All complementary arcs of one length, stored in log form so that
/// super-exponentially small gaps stay representable.
struct GapClass {
  double log_length = 0.0;
  double count = 1.0;

  double length() const { return std::exp(log_length); }
};

class InvalidCantorSpec : public std::invalid_argument {
 public:
  InvalidCantorSpec(const std::string& what, int index) : std::invalid_argument(what), index_(index) {}
  int index() const { return index_; }

 private:
  int index_;
};

enum class CantorRule { geometric, double_exp, explicit_lengths };

/**
 * @brief Length rule of a generalized Cantor set on the circle.
 *
 * geometric:  l_n = l0 * ratio^n
 * double_exp: log l_n = log l0 - rate * (2^n - 1) / max(n, 1)^power
 * explicit:   l_0..l_N listed
 *
 * l0 == 0 is the degenerate one-point set.
 */
struct CantorSpec {
  CantorRule rule = CantorRule::geometric;
  double l0 = kPi / 2;
  double base_start = 0.0;
  double ratio = 1.0 / 3.0;
  double rate = 1.0;
  double power = 0.0;
  std::vector<double> lengths;

  static CantorSpec geometric(double ratio, double l0 = kPi / 2, double base_start = 0.0);
  static CantorSpec double_exponential(double rate = 1.0, double power = 0.0, double l0 = kPi / 2,
                                       double base_start = 0.0);
  static CantorSpec explicit_lengths(std::vector<double> lengths, double base_start = 0.0);

  bool degenerate() const { return l0 == 0.0; }
  /// Largest generation the rule defines (explicit lists are finite).
  int max_generation() const;
  double log_length(int n) const;
  /// log g_k, g_k = l_{k-1} - 2 l_k, k >= 1.
  double log_gap(int k) const;
  /// Throws InvalidCantorSpec naming the first k <= through with g_k <= 0 or l_k/l_{k-1} >= 1/2.
  void validate(int through) const;
  /// sup of l_{n+1}/l_n over n < horizon.
  double sup_ratio(int horizon = 64) const;
  /// 1 - log 2 / log(1/sup_ratio).
  double closed_form_mu(int horizon = 64) const;
  std::string describe() const;
};

struct CantorTag {
  CantorSpec spec;
  int generation = 0;
};

/// What the finite generation misses about the limit set.
struct TruncationInfo {
  double log_hausdorff_bound = -kInf;
  double log_measure_overestimate = -kInf;
  /// |E_t| of the generation and of the limit agree for t >= exp(this).
  double log_exact_above = -kInf;
};

/// Gap sequence g_j, j = 2..count+1, used for countable sets with one accumulation point.
struct GapSequenceSpec {
  enum class Rule { inverse_log_squared, power };
  Rule rule = Rule::inverse_log_squared;
  double scale = 1.0;
  double exponent = 2.0;
  std::size_t count = 0;

  double gap(std::size_t j) const;
  /// Closed-form verdict for sum_j g_j^s (s > 0) and for sum_j g_j log(1/g_j).
  Growth power_sum_verdict(double s) const;
  Growth carleson_verdict() const;
};

/**
 * @brief Closed subset of the circle: disjoint closed arcs plus its complementary gaps.
 *
 * Sets built from positions carry their arcs. Deep Cantor generations are
 * gap-only: gap classes and measure are exact but no positions exist.
 */
class CircleSet {
 public:
  static CircleSet from_points(std::vector<double> angles);
  static CircleSet from_arcs(std::vector<Arc> arcs);
  /// Gap-only set; the complement consists of the given classes.
  static CircleSet from_gap_classes(std::vector<GapClass> gaps, double log_measure);

  bool has_positions() const { return has_positions_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  /// Complementary arcs grouped by length, decreasing.
  const std::vector<GapClass>& gaps() const { return gaps_; }
  double log_measure() const { return log_measure_; }
  double measure() const { return std::exp(log_measure_); }
  bool measure_zero() const { return log_measure_ == -kInf; }
  bool is_finite_point_set() const;
  double gap_count() const;

  const std::optional<CantorTag>& cantor() const { return cantor_; }
  const std::optional<GapSequenceSpec>& gap_sequence() const { return gap_sequence_; }
  std::optional<TruncationInfo> truncation() const;

  /// Endpoints of all arcs: the measure-zero skeleton, with each arc turned into a gap.
  CircleSet endpoints() const;

  std::string describe() const;

  void set_cantor_tag(CantorTag tag) { cantor_ = std::move(tag); }
  void set_gap_sequence(GapSequenceSpec spec) { gap_sequence_ = spec; }

 private:
  friend CircleSet cantor_generate(const CantorSpec&, int);
  friend CircleSet cantor_profile(const CantorSpec&, int);
  friend CircleSet gap_sequence_set(const GapSequenceSpec&);

  static CircleSet assemble(std::vector<Arc> arcs, std::vector<GapClass> gaps, std::vector<GapClass> arc_classes,
                            bool has_positions);

  std::vector<Arc> arcs_;
  /// Positive-length arcs grouped by length; they become gaps of the endpoint skeleton.
  std::vector<GapClass> arc_classes_;
  std::vector<GapClass> gaps_;
  double log_measure_ = -kInf;
  bool has_positions_ = false;
  std::optional<CantorTag> cantor_;
  std::optional<GapSequenceSpec> gap_sequence_;
};

/// 2^n arcs of generation n; throws if the arcs are not resolvable in double precision.
CircleSet cantor_generate(const CantorSpec& spec, int generation);
/// Generation n as gap classes only; valid for any depth.
CircleSet cantor_profile(const CantorSpec& spec, int generation);
/// Deepest generation whose arcs are resolvable as positions.
int cantor_resolvable_generation(const CantorSpec& spec);
/// Countable set: points at partial sums of the gap sequence, tail collapsed into one arc.
CircleSet gap_sequence_set(const GapSequenceSpec& spec);

double arc_distance(double angle, const CircleSet& set);

/// Right-continuous step function on (0, π]; value[i] holds on [knot_{i-1}, knot_i).
class StepFunction {
 public:
  struct Piece {
    double log_lo;
    double log_hi;
    double value;
  };

  StepFunction(std::vector<double> log_knots, std::vector<double> values);

  double operator()(double t) const { return at_log(std::log(t)); }
  double at_log(double log_t) const;
  const std::vector<double>& log_knots() const { return log_knots_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<Piece> pieces() const;
  /// ∫_0^t N.
  double integral(double t) const;

 private:
  std::vector<double> log_knots_;
  std::vector<double> values_;
};

/// t ↦ |E_t| = a_i + v_i t on each piece of N_E, in log form.
class NeighborhoodMeasure {
 public:
  struct Piece {
    double log_lo;
    double log_hi;
    double log_offset;
    double slope;
  };

  explicit NeighborhoodMeasure(std::vector<Piece> pieces);

  double operator()(double t) const { return std::exp(log_at(std::log(t))); }
  double log_at(double log_t) const;
  double slope_at(double log_t) const;
  const std::vector<Piece>& pieces() const { return pieces_; }
  /// ∫_{exp(log_lo)}^{exp(log_hi)} dt / |E_t|, closed form per piece.
  double inverse_integral(double log_lo, double log_hi = std::log(kPi)) const;

 private:
  std::size_t locate(double log_t) const;
  std::vector<Piece> pieces_;
};

StepFunction counting_function(const CircleSet& set);
NeighborhoodMeasure neighborhood_measure(const CircleSet& set);

struct MuOptions {
  std::optional<double> t_lo;
  std::optional<double> t_hi;
  int samples = 400;
  double min_decades = 4.0;
};

struct MuEstimate {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  double decades = 0.0;
  bool inconclusive = true;
  std::optional<double> closed_form;
  /// Value handed to the hypothesis check: closed form when present, fit otherwise.
  double value() const { return closed_form ? *closed_form : slope; }
  bool good_fit() const;
};

MuEstimate mu_exponent(const CircleSet& set, const MuOptions& options = {});

struct CapcondReport {
  Growth verdict = Growth::inconclusive;
  std::string basis;
  std::vector<double> epsilons;
  std::vector<double> integrals;
  GrowthEvidence numeric;
  std::optional<GrowthEvidence> series;
  std::optional<Growth> parametric;
};

CapcondReport capcond_diagnostic(const CircleSet& set);
CapcondReport capcond_diagnostic(const CantorSpec& spec, int generation = 14);

struct CarlesonSetReport {
  double value = 0.0;
  Growth verdict = Growth::inconclusive;
  std::string basis;
  std::vector<double> partial_sums;
  std::optional<double> tail_bound;
};

CarlesonSetReport carleson_set_test(const CircleSet& set);

}  // namespace dcyc
