#include "dcyc/circle_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace dcyc {

namespace {

constexpr int kParametricMaxGeneration = 62;
constexpr int kMaxPositionGeneration = 20;
constexpr double kMinResolvableLength = 1e-11;

double log_count(double count) { return std::log(count); }

/// Merge classes of identical length and sort by decreasing length.
std::vector<GapClass> canonical_classes(std::vector<GapClass> classes) {
  std::erase_if(classes, [](const GapClass& g) { return g.log_length == -kInf || g.count <= 0.0; });
  std::sort(classes.begin(), classes.end(),
            [](const GapClass& a, const GapClass& b) { return a.log_length > b.log_length; });
  std::vector<GapClass> merged;
  for (const GapClass& g : classes) {
    if (!merged.empty() && merged.back().log_length == g.log_length) {
      merged.back().count += g.count;
    } else {
      merged.push_back(g);
    }
  }
  return merged;
}

double log_total(const std::vector<GapClass>& classes) {
  double acc = -kInf;
  for (const GapClass& c : classes) acc = log_add_exp(acc, log_count(c.count) + c.log_length);
  return acc;
}

/// ∫_0^x log(π/t) dt = x (1 + log(π/x)), from log x.
double log_carleson_primitive(double log_x) { return log_x + std::log1p(std::log(kPi) - log_x); }

}  // namespace

bool Arc::contains(double angle) const {
  if (length >= kTwoPi) return true;
  return wrap_angle(angle - start) <= length;
}

// ---------------------------------------------------------------- CantorSpec

CantorSpec CantorSpec::geometric(double ratio, double l0, double base_start) {
  CantorSpec s;
  s.rule = CantorRule::geometric;
  s.ratio = ratio;
  s.l0 = l0;
  s.base_start = base_start;
  return s;
}

CantorSpec CantorSpec::double_exponential(double rate, double power, double l0, double base_start) {
  CantorSpec s;
  s.rule = CantorRule::double_exp;
  s.rate = rate;
  s.power = power;
  s.l0 = l0;
  s.base_start = base_start;
  return s;
}

CantorSpec CantorSpec::explicit_lengths(std::vector<double> lengths, double base_start) {
  if (lengths.empty()) throw InvalidCantorSpec("explicit Cantor spec needs at least l_0", 0);
  CantorSpec s;
  s.rule = CantorRule::explicit_lengths;
  s.l0 = lengths.front();
  s.lengths = std::move(lengths);
  s.base_start = base_start;
  return s;
}

int CantorSpec::max_generation() const {
  if (degenerate()) return 0;
  if (rule == CantorRule::explicit_lengths) return static_cast<int>(lengths.size()) - 1;
  return kParametricMaxGeneration;
}

double CantorSpec::log_length(int n) const {
  if (n < 0 || n > max_generation()) {
    throw std::out_of_range("Cantor generation " + std::to_string(n) + " outside the rule's range");
  }
  if (degenerate()) return -kInf;
  switch (rule) {
    case CantorRule::geometric: return std::log(l0) + n * std::log(ratio);
    case CantorRule::double_exp: {
      const double denom = std::pow(static_cast<double>(std::max(n, 1)), power);
      return std::log(l0) - rate * (std::ldexp(1.0, n) - 1.0) / denom;
    }
    case CantorRule::explicit_lengths: return std::log(lengths[static_cast<std::size_t>(n)]);
  }
  return -kInf;
}

double CantorSpec::log_gap(int k) const {
  const double prev = log_length(k - 1);
  const double cur = log_length(k);
  const double r = std::exp(cur - prev);
  return prev + std::log1p(-2.0 * r);
}

void CantorSpec::validate(int through) const {
  if (degenerate()) return;
  if (!(l0 > 0.0) || l0 > kTwoPi || !std::isfinite(l0)) {
    throw InvalidCantorSpec("Cantor spec: l_0 must lie in (0, 2π]", 0);
  }
  if (rule == CantorRule::geometric && !(ratio > 0.0 && ratio < 0.5)) {
    throw InvalidCantorSpec("Cantor spec: ratio l_1/l_0 must lie in (0, 1/2) (violated at index 1)", 1);
  }
  if (rule == CantorRule::explicit_lengths) {
    for (std::size_t i = 0; i < lengths.size(); ++i) {
      if (!(lengths[i] > 0.0) || !std::isfinite(lengths[i])) {
        throw InvalidCantorSpec("Cantor spec: l_" + std::to_string(i) + " must be positive", static_cast<int>(i));
      }
    }
  }
  const int last = std::min(through, max_generation());
  for (int k = 1; k <= last; ++k) {
    const double step = log_length(k) - log_length(k - 1);
    if (!(step < -std::log(2.0))) {
      throw InvalidCantorSpec("Cantor spec: gap g_" + std::to_string(k) + " = l_" + std::to_string(k - 1) +
                                  " - 2 l_" + std::to_string(k) + " is not positive (ratio >= 1/2)",
                              k);
    }
  }
}

double CantorSpec::sup_ratio(int horizon) const {
  const int last = std::min(horizon, max_generation());
  double best = 0.0;
  for (int n = 0; n < last; ++n) best = std::max(best, std::exp(log_length(n + 1) - log_length(n)));
  return best;
}

double CantorSpec::closed_form_mu(int horizon) const {
  const double r = sup_ratio(horizon);
  if (!(r > 0.0 && r < 0.5)) throw InvalidCantorSpec("Cantor spec: sup ratio not in (0, 1/2)", 0);
  return 1.0 - std::log(2.0) / std::log(1.0 / r);
}

std::string CantorSpec::describe() const {
  std::ostringstream out;
  out.precision(17);
  switch (rule) {
    case CantorRule::geometric: out << "geometric(ratio=" << ratio; break;
    case CantorRule::double_exp: out << "double_exp(rate=" << rate << ",power=" << power; break;
    case CantorRule::explicit_lengths: out << "explicit(n=" << lengths.size(); break;
  }
  out << ",l0=" << l0 << ",base=" << base_start << ")";
  return out.str();
}

// ------------------------------------------------------------ GapSequenceSpec

double GapSequenceSpec::gap(std::size_t j) const {
  const double x = static_cast<double>(j);
  switch (rule) {
    case Rule::inverse_log_squared: return scale / (x * std::log(x) * std::log(x));
    case Rule::power: return scale * std::pow(x, -exponent);
  }
  return 0.0;
}

Growth GapSequenceSpec::power_sum_verdict(double s) const {
  switch (rule) {
    // (j log^2 j)^{-s} is summable iff s > 1.
    case Rule::inverse_log_squared: return s > 1.0 ? Growth::converges : Growth::diverges;
    case Rule::power: return s * exponent > 1.0 ? Growth::converges : Growth::diverges;
  }
  return Growth::inconclusive;
}

Growth GapSequenceSpec::carleson_verdict() const {
  switch (rule) {
    // g log(1/g) ~ 1/(j log j) for g = 1/(j log^2 j).
    case Rule::inverse_log_squared: return Growth::diverges;
    case Rule::power: return exponent > 1.0 ? Growth::converges : Growth::diverges;
  }
  return Growth::inconclusive;
}

// ------------------------------------------------------------------ CircleSet

CircleSet CircleSet::assemble(std::vector<Arc> arcs, std::vector<GapClass> gaps, std::vector<GapClass> arc_classes,
                              bool has_positions) {
  CircleSet s;
  s.arcs_ = std::move(arcs);
  s.gaps_ = canonical_classes(std::move(gaps));
  s.arc_classes_ = canonical_classes(std::move(arc_classes));
  s.log_measure_ = log_total(s.arc_classes_);
  s.has_positions_ = has_positions;
  return s;
}

CircleSet CircleSet::from_points(std::vector<double> angles) {
  std::vector<Arc> arcs;
  arcs.reserve(angles.size());
  for (double a : angles) {
    if (!std::isfinite(a)) throw std::invalid_argument("point angle must be finite");
    arcs.push_back({a, 0.0});
  }
  return from_arcs(std::move(arcs));
}

CircleSet CircleSet::from_arcs(std::vector<Arc> arcs) {
  if (arcs.empty()) throw std::invalid_argument("a circle set needs at least one arc or point");
  for (Arc& a : arcs) {
    if (!(a.length >= 0.0) || !std::isfinite(a.start)) throw std::invalid_argument("arc length must be >= 0");
    a.start = wrap_angle(a.start);
    a.length = std::min(a.length, kTwoPi);
  }
  std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) { return a.start < b.start; });

  std::vector<Arc> merged;
  for (const Arc& a : arcs) {
    if (!merged.empty() && a.start <= merged.back().end()) {
      merged.back().length = std::max(merged.back().end(), a.end()) - merged.back().start;
    } else {
      merged.push_back(a);
    }
  }
  // An arc running past 2π may swallow arcs at the front.
  while (merged.size() > 1 && merged.back().end() - kTwoPi >= merged.front().start) {
    const double end = std::max(merged.back().end(), merged.front().end() + kTwoPi);
    merged.back().length = end - merged.back().start;
    merged.erase(merged.begin());
  }
  std::vector<GapClass> gaps;
  std::vector<GapClass> arc_classes;
  if (merged.size() == 1 && merged.front().length >= kTwoPi) {
    merged.front().length = kTwoPi;
  } else {
    for (std::size_t i = 0; i < merged.size(); ++i) {
      const Arc& cur = merged[i];
      const double next_start = i + 1 < merged.size() ? merged[i + 1].start : merged.front().start + kTwoPi;
      const double g = next_start - cur.end();
      if (g > 0.0) gaps.push_back({std::log(g), 1.0});
    }
  }
  for (const Arc& a : merged) {
    if (a.length > 0.0) arc_classes.push_back({std::log(a.length), 1.0});
  }
  return assemble(std::move(merged), std::move(gaps), std::move(arc_classes), true);
}

CircleSet CircleSet::from_gap_classes(std::vector<GapClass> gaps, double log_measure) {
  CircleSet s;
  s.gaps_ = canonical_classes(std::move(gaps));
  s.log_measure_ = log_measure;
  s.has_positions_ = false;
  return s;
}

bool CircleSet::is_finite_point_set() const {
  return has_positions_ && measure_zero() && !cantor_ && !gap_sequence_;
}

double CircleSet::gap_count() const {
  double n = 0.0;
  for (const GapClass& g : gaps_) n += g.count;
  return n;
}

std::optional<TruncationInfo> CircleSet::truncation() const {
  if (!cantor_ || cantor_->spec.degenerate()) return std::nullopt;
  const int n = cantor_->generation;
  const double log_ln = cantor_->spec.log_length(n);
  TruncationInfo info;
  info.log_hausdorff_bound = log_ln - std::log(2.0);
  info.log_measure_overestimate = n * std::log(2.0) + log_ln;
  info.log_exact_above = log_ln - std::log(2.0);
  return info;
}

CircleSet CircleSet::endpoints() const {
  if (measure_zero()) return *this;
  if (arc_classes_.empty()) {
    throw std::invalid_argument("endpoint skeleton needs the arc lengths of a positive-measure set");
  }
  std::vector<Arc> points;
  if (has_positions_) {
    for (const Arc& a : arcs_) {
      points.push_back({a.start, 0.0});
      if (a.length > 0.0 && a.length < kTwoPi) points.push_back({wrap_angle(a.end()), 0.0});
    }
    std::sort(points.begin(), points.end(), [](const Arc& a, const Arc& b) { return a.start < b.start; });
  }
  std::vector<GapClass> gaps = gaps_;
  gaps.insert(gaps.end(), arc_classes_.begin(), arc_classes_.end());
  CircleSet s = assemble(std::move(points), std::move(gaps), {}, has_positions_);
  s.cantor_ = cantor_;
  s.gap_sequence_ = gap_sequence_;
  return s;
}

std::string CircleSet::describe() const {
  std::ostringstream out;
  if (cantor_) {
    out << "cantor " << cantor_->spec.describe() << " generation " << cantor_->generation;
  } else if (gap_sequence_) {
    out << "gap sequence of " << gap_sequence_->count << " gaps";
  } else {
    out << arcs_.size() << (measure_zero() ? " points" : " arcs");
  }
  if (measure_zero() && !arc_classes_.empty()) out << " (skeleton)";
  return out.str();
}

// -------------------------------------------------------------- constructors

int cantor_resolvable_generation(const CantorSpec& spec) {
  if (spec.degenerate()) return 0;
  int n = 0;
  while (n + 1 <= std::min(kMaxPositionGeneration, spec.max_generation())) {
    const double ln = std::exp(spec.log_length(n + 1));
    const double gn = std::exp(spec.log_gap(n + 1));
    if (ln < kMinResolvableLength || gn < kMinResolvableLength) break;
    ++n;
  }
  return n;
}

CircleSet cantor_profile(const CantorSpec& spec, int generation) {
  if (generation < 0) throw std::invalid_argument("Cantor generation must be >= 0");
  if (spec.degenerate()) {
    CircleSet s = CircleSet::from_points({spec.base_start});
    s.cantor_ = CantorTag{spec, 0};
    return s;
  }
  if (generation > spec.max_generation()) {
    throw InvalidCantorSpec("Cantor generation beyond the rule's last length", spec.max_generation() + 1);
  }
  spec.validate(generation);
  std::vector<GapClass> gaps;
  if (spec.l0 < kTwoPi) gaps.push_back({std::log(kTwoPi - spec.l0), 1.0});
  for (int k = 1; k <= generation; ++k) gaps.push_back({spec.log_gap(k), std::ldexp(1.0, k - 1)});
  std::vector<GapClass> arc_classes{{spec.log_length(generation), std::ldexp(1.0, generation)}};
  CircleSet s = CircleSet::assemble({}, std::move(gaps), std::move(arc_classes), false);
  s.cantor_ = CantorTag{spec, generation};
  return s;
}

CircleSet cantor_generate(const CantorSpec& spec, int generation) {
  CircleSet profile = cantor_profile(spec, generation);
  if (spec.degenerate()) return profile;
  if (generation > cantor_resolvable_generation(spec)) {
    throw std::invalid_argument("Cantor generation " + std::to_string(generation) +
                                " is not resolvable as arc positions; use the gap-only profile");
  }
  std::vector<double> lefts{spec.base_start};
  for (int k = 1; k <= generation; ++k) {
    const double shift = std::exp(spec.log_length(k - 1)) - std::exp(spec.log_length(k));
    std::vector<double> next;
    next.reserve(lefts.size() * 2);
    for (double a : lefts) {
      next.push_back(a);
      next.push_back(a + shift);
    }
    lefts = std::move(next);
  }
  const double ln = std::exp(spec.log_length(generation));
  std::vector<Arc> arcs;
  arcs.reserve(lefts.size());
  for (double a : lefts) arcs.push_back({wrap_angle(a), ln});
  std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) { return a.start < b.start; });
  profile.arcs_ = std::move(arcs);
  profile.has_positions_ = true;
  return profile;
}

CircleSet gap_sequence_set(const GapSequenceSpec& spec) {
  if (spec.count == 0) throw std::invalid_argument("gap sequence needs at least one gap");
  std::vector<GapClass> gaps;
  gaps.reserve(spec.count + 1);
  std::vector<Arc> arcs{{0.0, 0.0}};
  double position = 0.0;
  for (std::size_t j = 2; j < spec.count + 2; ++j) {
    const double g = spec.gap(j);
    gaps.push_back({std::log(g), 1.0});
    position += g;
    arcs.push_back({position, 0.0});
  }
  // The remaining gaps accumulate at one point; the truncation keeps them as one arc.
  const double n = static_cast<double>(spec.count + 1);
  double tail = 0.0;
  switch (spec.rule) {
    case GapSequenceSpec::Rule::inverse_log_squared: tail = spec.scale / std::log(n + 0.5); break;
    case GapSequenceSpec::Rule::power: tail = spec.scale * std::pow(n + 0.5, 1.0 - spec.exponent) / (spec.exponent - 1.0); break;
  }
  arcs.back().length = tail;
  const double big = kTwoPi - position - tail;
  if (!(big > 0.0)) throw std::invalid_argument("gap sequence does not fit on the circle; reduce the scale");
  gaps.push_back({std::log(big), 1.0});
  const bool positions = spec.count <= 2'000'000;
  if (!positions) arcs.clear();
  CircleSet s = CircleSet::assemble(std::move(arcs), std::move(gaps), {{std::log(tail), 1.0}}, positions);
  s.gap_sequence_ = spec;
  return s;
}

double arc_distance(double angle, const CircleSet& set) {
  if (!set.has_positions()) throw std::invalid_argument("arc_distance needs a set with arc positions");
  const auto& arcs = set.arcs();
  if (arcs.empty()) throw std::invalid_argument("arc_distance on an empty set");
  const double theta = wrap_angle(angle);
  const std::size_t n = arcs.size();
  auto it = std::upper_bound(arcs.begin(), arcs.end(), theta, [](double v, const Arc& a) { return v < a.start; });
  const std::size_t right = static_cast<std::size_t>(it - arcs.begin()) % n;
  const std::size_t left = it == arcs.begin() ? n - 1 : static_cast<std::size_t>(it - arcs.begin()) - 1;
  double best = kInf;
  for (std::size_t idx : {left, right, std::size_t{0}, n - 1}) {
    const Arc& a = arcs[idx];
    if (a.contains(theta)) return 0.0;
    best = std::min({best, circular_distance(theta, a.start), circular_distance(theta, a.end())});
  }
  return best;
}

// ----------------------------------------------------------- step functions

StepFunction::StepFunction(std::vector<double> log_knots, std::vector<double> values)
    : log_knots_(std::move(log_knots)), values_(std::move(values)) {
  if (values_.size() != log_knots_.size() + 1) throw std::invalid_argument("step function: values = knots + 1");
  for (std::size_t i = 1; i < log_knots_.size(); ++i) {
    if (!(log_knots_[i] > log_knots_[i - 1])) throw std::invalid_argument("step function knots must increase");
  }
}

double StepFunction::at_log(double log_t) const {
  const auto it = std::upper_bound(log_knots_.begin(), log_knots_.end(), log_t);
  return values_[static_cast<std::size_t>(it - log_knots_.begin())];
}

std::vector<StepFunction::Piece> StepFunction::pieces() const {
  std::vector<Piece> out;
  const double log_pi = std::log(kPi);
  double lo = -kInf;
  for (std::size_t i = 0; i <= log_knots_.size(); ++i) {
    const double hi = i < log_knots_.size() ? std::min(log_knots_[i], log_pi) : log_pi;
    if (hi > lo) out.push_back({lo, hi, values_[i]});
    if (i < log_knots_.size()) lo = std::max(lo, log_knots_[i]);
  }
  return out;
}

double StepFunction::integral(double t) const {
  const double lt = std::log(t);
  double acc = 0.0;
  for (const Piece& p : pieces()) {
    if (p.log_lo >= lt) break;
    const double hi = std::min(p.log_hi, lt);
    acc += p.value * (std::exp(hi) - (p.log_lo == -kInf ? 0.0 : std::exp(p.log_lo)));
  }
  return acc;
}

NeighborhoodMeasure::NeighborhoodMeasure(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw std::invalid_argument("neighborhood measure needs at least one piece");
}

std::size_t NeighborhoodMeasure::locate(double log_t) const {
  const auto it = std::upper_bound(pieces_.begin(), pieces_.end(), log_t,
                                   [](double v, const Piece& p) { return v < p.log_lo; });
  return it == pieces_.begin() ? 0 : static_cast<std::size_t>(it - pieces_.begin()) - 1;
}

double NeighborhoodMeasure::log_at(double log_t) const {
  const Piece& p = pieces_[locate(log_t)];
  return log_add_exp(p.log_offset, p.slope > 0.0 ? std::log(p.slope) + log_t : -kInf);
}

double NeighborhoodMeasure::slope_at(double log_t) const { return pieces_[locate(log_t)].slope; }

double NeighborhoodMeasure::inverse_integral(double log_lo, double log_hi) const {
  double acc = 0.0;
  for (const Piece& p : pieces_) {
    const double l1 = std::max(p.log_lo, log_lo);
    const double l2 = std::min(p.log_hi, log_hi);
    if (!(l2 > l1)) continue;
    const double log_e1 = log_add_exp(p.log_offset, p.slope > 0.0 ? std::log(p.slope) + l1 : -kInf);
    const double log_dt = l2 + std::log(-std::expm1(l1 - l2));
    if (log_e1 == -kInf) return kInf;
    if (p.slope == 0.0) {
      acc += std::exp(log_dt - log_e1);
      continue;
    }
    // log((a + v t2)/(a + v t1)) / v with x = v (t2 - t1) / (a + v t1)
    const double log_x = std::log(p.slope) + log_dt - log_e1;
    const double log1px = log_x > 30.0 ? log_x + std::log1p(std::exp(-log_x)) : std::log1p(std::exp(log_x));
    acc += log1px / p.slope;
  }
  return acc;
}

StepFunction counting_function(const CircleSet& set) {
  const auto& gaps = set.gaps();
  double total = 0.0;
  for (const GapClass& g : gaps) total += 2.0 * g.count;
  std::vector<double> knots;
  std::vector<double> values{total};
  // gaps are sorted by decreasing length: walk them from the smallest.
  for (auto it = gaps.rbegin(); it != gaps.rend(); ++it) {
    knots.push_back(it->log_length - std::log(2.0));
    total -= 2.0 * it->count;
    values.push_back(std::max(total, 0.0));
  }
  return StepFunction(std::move(knots), std::move(values));
}

NeighborhoodMeasure neighborhood_measure(const CircleSet& set) {
  const StepFunction n = counting_function(set);
  const auto& gaps = set.gaps();
  std::vector<NeighborhoodMeasure::Piece> pieces;
  double log_offset = set.log_measure();
  std::size_t exhausted = 0;
  for (const StepFunction::Piece& p : n.pieces()) {
    // every gap with g/2 <= lo contributes its full length
    while (exhausted < gaps.size()) {
      const GapClass& g = gaps[gaps.size() - 1 - exhausted];
      if (g.log_length - std::log(2.0) > p.log_lo) break;
      log_offset = log_add_exp(log_offset, std::log(g.count) + g.log_length);
      ++exhausted;
    }
    pieces.push_back({p.log_lo, p.log_hi, log_offset, p.value});
  }
  return NeighborhoodMeasure(std::move(pieces));
}

// ------------------------------------------------------------- diagnostics

bool MuEstimate::good_fit() const {
  if (closed_form) return *closed_form > 0.0;
  return !inconclusive && slope > 0.0 && rms_residual <= 0.1;
}

MuEstimate mu_exponent(const CircleSet& set, const MuOptions& options) {
  MuEstimate est;
  const NeighborhoodMeasure m = neighborhood_measure(set);
  double t_lo = 1e-12 * kPi;
  double t_hi = kPi / 2;
  if (set.cantor() && !set.cantor()->spec.degenerate() && set.cantor()->generation >= 2) {
    const CantorTag& tag = *set.cantor();
    t_lo = std::exp(tag.spec.log_length(tag.generation));
    t_hi = std::exp(tag.spec.log_length(1));
  } else {
    const auto& gaps = set.gaps();
    double seen = 0.0;
    for (const GapClass& g : gaps) {
      seen += g.count;
      if (seen >= 2.0) {
        t_hi = std::min(t_hi, g.length() / 2);
        break;
      }
    }
    if (!set.measure_zero()) {
      const StepFunction n = counting_function(set);
      const double n0 = n.values().front();
      if (n0 > 0.0) t_lo = std::max(t_lo, 10.0 * set.measure() / n0);
    }
  }
  if (options.t_lo) t_lo = *options.t_lo;
  if (options.t_hi) t_hi = *options.t_hi;
  est.t_lo = t_lo;
  est.t_hi = t_hi;
  est.decades = t_hi > t_lo ? std::log10(t_hi / t_lo) : 0.0;
  if (set.cantor() && !set.cantor()->spec.degenerate()) est.closed_form = set.cantor()->spec.closed_form_mu();
  if (!(t_hi > t_lo)) return est;

  const int n = std::max(options.samples, 8);
  const double a = std::log(t_lo);
  const double b = std::log(t_hi);
  std::vector<double> xs(static_cast<std::size_t>(n));
  std::vector<double> ys(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    xs[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
    ys[static_cast<std::size_t>(i)] = m.log_at(xs[static_cast<std::size_t>(i)]);
  }
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += xs[static_cast<std::size_t>(i)];
    my += ys[static_cast<std::size_t>(i)];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    const double dx = xs[static_cast<std::size_t>(i)] - mx;
    sxx += dx * dx;
    sxy += dx * (ys[static_cast<std::size_t>(i)] - my);
  }
  est.slope = sxy / sxx;
  est.intercept = my - est.slope * mx;
  double rss = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = ys[static_cast<std::size_t>(i)] - (est.intercept + est.slope * xs[static_cast<std::size_t>(i)]);
    rss += r * r;
  }
  est.rms_residual = std::sqrt(rss / n);
  est.inconclusive = est.decades < options.min_decades;
  return est;
}

namespace {

std::optional<Growth> parametric_capacity_verdict(const CantorSpec& spec) {
  if (spec.degenerate()) return Growth::diverges;
  switch (spec.rule) {
    case CantorRule::geometric: return Growth::converges;
    case CantorRule::double_exp: return spec.power <= 1.0 ? Growth::diverges : Growth::converges;
    case CantorRule::explicit_lengths: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

CapcondReport capcond_diagnostic(const CircleSet& set) {
  CapcondReport rep;
  const NeighborhoodMeasure m = neighborhood_measure(set);
  double log_floor = std::log(1e-12 * kPi);
  if (const auto trunc = set.truncation()) log_floor = std::max(trunc->log_exact_above, std::log(kPi) - 40 * std::log(10.0));
  for (int k = 1;; ++k) {
    const double log_eps = std::log(kPi) - k * std::log(10.0);
    if (log_eps < log_floor) break;
    rep.epsilons.push_back(std::exp(log_eps));
    rep.integrals.push_back(m.inverse_integral(log_eps));
  }
  rep.numeric = classify_partial_sums(rep.integrals);
  rep.verdict = rep.numeric.verdict;
  rep.basis = "exact I(eps) on decades: " + rep.numeric.rule;

  if (set.cantor()) {
    const CantorSpec& spec = set.cantor()->spec;
    if (!spec.degenerate()) {
      std::vector<double> sums;
      double acc = 0.0;
      for (int n = 1; n <= spec.max_generation(); ++n) {
        acc += std::ldexp(-spec.log_length(n), -n);
        sums.push_back(acc);
      }
      rep.series = classify_partial_sums(sums);
      if (rep.series->verdict != Growth::inconclusive) {
        rep.verdict = rep.series->verdict;
        rep.basis = "series sum 2^-n log(1/l_n): " + rep.series->rule;
      }
    }
    rep.parametric = parametric_capacity_verdict(spec);
    if (rep.parametric) {
      rep.verdict = *rep.parametric;
      rep.basis = "closed form for the " + spec.describe() + " length rule";
    }
  }
  return rep;
}

CapcondReport capcond_diagnostic(const CantorSpec& spec, int generation) {
  return capcond_diagnostic(cantor_profile(spec, std::min(generation, spec.max_generation())));
}

CarlesonSetReport carleson_set_test(const CircleSet& set) {
  CarlesonSetReport rep;
  const auto& gaps = set.gaps();
  std::vector<double> terms;
  terms.reserve(gaps.size());
  for (const GapClass& g : gaps) {
    const double log_half = std::min(g.log_length - std::log(2.0), std::log(kPi));
    terms.push_back(2.0 * g.count * std::exp(log_carleson_primitive(log_half)));
  }
  rep.value = pairwise_sum(terms);

  // partial sums at decade cut-offs of the gap length
  if (!gaps.empty()) {
    const double top = gaps.front().log_length;
    double acc = 0.0;
    std::size_t i = 0;
    for (int d = 1; i < gaps.size(); ++d) {
      const double cut = top - d * std::log(10.0);
      while (i < gaps.size() && gaps[i].log_length > cut) acc += terms[i++];
      rep.partial_sums.push_back(acc);
      if (d > 400) break;
    }
  }

  if (set.cantor()) {
    const CantorTag& tag = *set.cantor();
    if (!tag.spec.degenerate()) {
      double tail = 0.0;
      const int last = std::min(tag.generation + 60, tag.spec.max_generation());
      for (int k = tag.generation + 1; k <= last; ++k) {
        const double log_half = tag.spec.log_gap(k) - std::log(2.0);
        tail += std::ldexp(1.0, k) * std::exp(log_carleson_primitive(log_half));
      }
      rep.tail_bound = tail;
    }
    if (tag.spec.degenerate() || tag.spec.rule != CantorRule::explicit_lengths) {
      rep.verdict = Growth::converges;
      rep.basis = "closed form: generation sums 2^k g_k log(1/g_k) decay geometrically or faster";
      return rep;
    }
  }
  if (set.gap_sequence()) {
    rep.verdict = set.gap_sequence()->carleson_verdict();
    rep.basis = "closed form for the gap-sequence rule";
    return rep;
  }
  if (set.is_finite_point_set() || (set.has_positions() && !set.cantor() && set.gap_count() < 1e7)) {
    rep.verdict = Growth::converges;
    rep.basis = "finitely many gaps: exact finite value";
    return rep;
  }
  const GrowthEvidence ev = classify_partial_sums(rep.partial_sums);
  rep.verdict = ev.verdict;
  rep.basis = "partial sums by gap-length decade: " + ev.rule;
  return rep;
}

}  // namespace dcyc
