#include "dcyc/growth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dcyc {

std::string to_string(Growth g) {
  switch (g) {
    case Growth::converges: return "converges";
    case Growth::diverges: return "diverges";
    case Growth::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Growth growth_from_string(const std::string& s) {
  if (s == "converges") return Growth::converges;
  if (s == "diverges") return Growth::diverges;
  if (s == "inconclusive") return Growth::inconclusive;
  throw std::invalid_argument("unknown growth verdict: " + s);
}

GrowthEvidence classify_partial_sums(std::span<const double> partial_sums) {
  GrowthEvidence ev;
  ev.partial_sums.assign(partial_sums.begin(), partial_sums.end());
  if (partial_sums.size() < 4) {
    ev.rule = "fewer than four partial sums";
    return ev;
  }
  for (std::size_t i = 1; i < partial_sums.size(); ++i) ev.increments.push_back(partial_sums[i] - partial_sums[i - 1]);

  const double scale = std::max(std::fabs(partial_sums.back()), 1e-300);
  for (double d : ev.increments) {
    if (!std::isfinite(d)) {
      ev.verdict = Growth::diverges;
      ev.rule = "non-finite increment";
      return ev;
    }
    if (d < -1e-10 * scale) {
      ev.rule = "partial sums decrease";
      return ev;
    }
  }

  const std::size_t window = std::min<std::size_t>(4, ev.increments.size());
  const auto tail = std::span<const double>(ev.increments).last(window);
  if (std::all_of(tail.begin(), tail.end(), [&](double d) { return std::fabs(d) <= 1e-13 * scale; })) {
    ev.verdict = Growth::converges;
    ev.rule = "partial sums stabilized";
    return ev;
  }
  for (std::size_t i = 1; i < tail.size(); ++i) {
    const double prev = std::max(tail[i - 1], 0.0);
    const double cur = std::max(tail[i], 0.0);
    ev.ratios.push_back(prev > 0.0 ? cur / prev : (cur > 0.0 ? 1e6 : 0.0));
  }
  std::vector<double> sorted = ev.ratios;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[sorted.size() / 2];
  const double max_ratio = sorted.back();
  bool rising = true;
  for (std::size_t i = 1; i < ev.ratios.size(); ++i) rising = rising && ev.ratios[i] >= ev.ratios[i - 1] + 0.01;
  bool non_rising = true;
  for (std::size_t i = 1; i < ev.ratios.size(); ++i) non_rising = non_rising && ev.ratios[i] <= ev.ratios[i - 1] + 0.02;

  const double min_ratio = sorted.front();
  if (max_ratio > 3.0 * min_ratio || (min_ratio == 0.0 && max_ratio > 0.0)) {
    // oscillating increments (scales out of step with dyadic blocks): retry on every third partial sum
    if (partial_sums.size() >= 10) {
      std::vector<double> coarse;
      for (std::size_t i = (partial_sums.size() - 1) % 3; i < partial_sums.size(); i += 3) coarse.push_back(partial_sums[i]);
      const GrowthEvidence c = classify_partial_sums(coarse);
      ev.verdict = c.verdict;
      ev.rule = "noisy increments, coarsened to every third sum: " + c.rule;
    } else {
      ev.rule = "increment ratios too noisy";
    }
    return ev;
  }
  if (median >= 0.95) {
    ev.verdict = Growth::diverges;
    ev.rule = "increments do not decay (median ratio >= 0.95)";
  } else if (rising && ev.ratios.back() >= 0.6) {
    ev.verdict = Growth::diverges;
    ev.rule = "increment ratios rise toward 1 (sub-geometric decay)";
  } else if (max_ratio <= 0.8) {
    ev.verdict = Growth::converges;
    ev.rule = "geometric decay of increments (max ratio <= 0.8)";
  } else if (max_ratio <= 0.9 && non_rising) {
    ev.verdict = Growth::converges;
    ev.rule = "non-rising increment ratios <= 0.9";
  } else {
    ev.rule = "increment ratios ambiguous";
  }
  return ev;
}

}  // namespace dcyc
