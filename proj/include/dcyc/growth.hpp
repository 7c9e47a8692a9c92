#pragma once

#include <span>
#include <string>
#include <vector>

namespace dcyc {

/// Three-valued verdict for "is this quantity finite?" questions.
enum class Growth { converges, diverges, inconclusive };

std::string to_string(Growth g);
Growth growth_from_string(const std::string& s);

/// Evidence behind a verdict drawn from a sequence of partial sums.
struct GrowthEvidence {
  Growth verdict = Growth::inconclusive;
  std::vector<double> partial_sums;
  std::vector<double> increments;
  std::vector<double> ratios;
  std::string rule;
};

/**
 * @brief Classify a nondecreasing sequence of partial sums.
 *
 * Sums are expected at geometrically spaced cut-offs (decades, dyadic blocks,
 * generations), so a convergent series shows geometrically shrinking increments
 * and a divergent one shows increments that stay flat, grow, or decay slower
 * than any geometric rate.
 */
GrowthEvidence classify_partial_sums(std::span<const double> partial_sums);

}  // namespace dcyc
