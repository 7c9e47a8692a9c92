#pragma once

#include "dcyc/circle_geometry.hpp"
#include "dcyc/outer.hpp"

#include <memory>
#include <stdexcept>
#include <string>

namespace dcyc {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at column " + std::to_string(position + 1)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/**
 * @brief Inline boundary expression in ζ = e^{iθ}.
 *
 * See docs/modulus_grammar.md. The modulus is |value|; dist() is d(ζ, E)
 * and needs a set at evaluation time.
 */
class ModulusExpression {
 public:
  static ModulusExpression parse(const std::string& text);

  Complex evaluate(double theta, const CircleSet* set = nullptr) const;
  bool uses_dist() const { return uses_dist_; }
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
  bool uses_dist_ = false;
};

/// Zeros of a sampled modulus: grid minima below 1e-3 of the maximum, refined by golden section.
std::vector<double> find_zeros(const std::function<double(double)>& log_phi, std::size_t grid = 65536);

/// Boundary modulus |expr|; zeros are located numerically and the set's arc endpoints are added when dist() is used.
BoundaryModulus modulus_from_expression(const ModulusExpression& expr, const CircleSet* set = nullptr);

}  // namespace dcyc
