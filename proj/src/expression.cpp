#include "dcyc/expression.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace dcyc {

struct ModulusExpression::Node {
  enum class Kind { number, zeta, theta, pi, imag, neg, add, sub, mul, div, pow, call, dist };
  Kind kind = Kind::number;
  double number = 0.0;
  std::string func;
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using Node = ModulusExpression::Node;
using NodePtr = std::shared_ptr<const Node>;

const char* const kFunctions[] = {"abs", "exp", "log", "sqrt", "sin", "cos", "re", "im"};

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    return e;
  }
  bool uses_dist() const { return uses_dist_; }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
  }
  static NodePtr make(Node::Kind k, std::vector<NodePtr> args = {}) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->args = std::move(args);
    return n;
  }

  NodePtr expr() {
    NodePtr left = term();
    for (;;) {
      if (accept('+')) left = make(Node::Kind::add, {left, term()});
      else if (accept('-')) left = make(Node::Kind::sub, {left, term()});
      else return left;
    }
  }
  NodePtr term() {
    NodePtr left = unary();
    for (;;) {
      if (accept('*')) left = make(Node::Kind::mul, {left, unary()});
      else if (accept('/')) left = make(Node::Kind::div, {left, unary()});
      else return left;
    }
  }
  NodePtr unary() {
    if (accept('-')) return make(Node::Kind::neg, {unary()});
    if (accept('+')) return unary();
    return power();
  }
  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Node::Kind::pow, {base, unary()});
    return base;
  }
  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of expression", pos_);
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) throw ParseError("malformed number", pos_);
      pos_ += static_cast<std::size_t>(end - begin);
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::number;
      n->number = v;
      return n;
    }
    if (accept('(')) {
      NodePtr e = expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      if (name == "zeta" || name == "z") return make(Node::Kind::zeta);
      if (name == "theta") return make(Node::Kind::theta);
      if (name == "pi") return make(Node::Kind::pi);
      if (name == "i") return make(Node::Kind::imag);
      if (name == "dist") {
        expect('(');
        expect(')');
        uses_dist_ = true;
        return make(Node::Kind::dist);
      }
      if (std::find(std::begin(kFunctions), std::end(kFunctions), name) != std::end(kFunctions)) {
        expect('(');
        NodePtr arg = expr();
        expect(')');
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::call;
        n->func = name;
        n->args = {arg};
        return n;
      }
      throw ParseError("unknown identifier '" + name + "'", start);
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  bool uses_dist_ = false;
};

bool is_real(Complex z) { return z.imag() == 0.0; }

Complex eval(const Node& n, double theta, const CircleSet* set) {
  switch (n.kind) {
    case Node::Kind::number: return n.number;
    case Node::Kind::zeta: return std::polar(1.0, theta);
    case Node::Kind::theta: return theta;
    case Node::Kind::pi: return kPi;
    case Node::Kind::imag: return Complex(0.0, 1.0);
    case Node::Kind::neg: return -eval(*n.args[0], theta, set);
    case Node::Kind::add: return eval(*n.args[0], theta, set) + eval(*n.args[1], theta, set);
    case Node::Kind::sub: return eval(*n.args[0], theta, set) - eval(*n.args[1], theta, set);
    case Node::Kind::mul: return eval(*n.args[0], theta, set) * eval(*n.args[1], theta, set);
    case Node::Kind::div: return eval(*n.args[0], theta, set) / eval(*n.args[1], theta, set);
    case Node::Kind::pow: {
      const Complex b = eval(*n.args[0], theta, set);
      const Complex e = eval(*n.args[1], theta, set);
      if (is_real(b) && is_real(e) && (b.real() >= 0.0 || e.real() == std::round(e.real()))) {
        return std::pow(b.real(), e.real());
      }
      if (b == 0.0) return 0.0;
      return std::pow(b, e);
    }
    case Node::Kind::call: {
      const Complex a = eval(*n.args[0], theta, set);
      if (n.func == "abs") return std::abs(a);
      if (n.func == "exp") return std::exp(a);
      if (n.func == "log") return is_real(a) && a.real() > 0.0 ? Complex(std::log(a.real())) : std::log(a);
      if (n.func == "sqrt") return is_real(a) && a.real() >= 0.0 ? Complex(std::sqrt(a.real())) : std::sqrt(a);
      if (n.func == "sin") return std::sin(a);
      if (n.func == "cos") return std::cos(a);
      if (n.func == "re") return a.real();
      return a.imag();
    }
    case Node::Kind::dist:
      if (!set) throw std::invalid_argument("dist() needs a set (--points, --arcs, --cantor or --set)");
      return arc_distance(theta, *set);
  }
  return 0.0;
}

}  // namespace

ModulusExpression ModulusExpression::parse(const std::string& text) {
  Parser p(text);
  ModulusExpression e;
  e.root_ = p.parse();
  e.text_ = text;
  e.uses_dist_ = p.uses_dist();
  return e;
}

Complex ModulusExpression::evaluate(double theta, const CircleSet* set) const { return eval(*root_, theta, set); }

std::vector<double> find_zeros(const std::function<double(double)>& log_phi, std::size_t grid) {
  std::vector<double> v(grid);
  for (std::size_t j = 0; j < grid; ++j) v[j] = log_phi(kTwoPi * static_cast<double>(j) / static_cast<double>(grid));
  const double vmax = *std::max_element(v.begin(), v.end());
  const double h = kTwoPi / static_cast<double>(grid);
  std::vector<double> zeros;
  for (std::size_t j = 0; j < grid; ++j) {
    const double l = v[(j + grid - 1) % grid];
    const double r = v[(j + 1) % grid];
    if (!(v[j] <= l && v[j] < r) || v[j] > vmax + std::log(1e-3)) continue;
    // golden-section search on [θ_j - h, θ_j + h]
    double a = kTwoPi * static_cast<double>(j) / static_cast<double>(grid) - h;
    double b = a + 2.0 * h;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = log_phi(wrap_angle(x1)), f2 = log_phi(wrap_angle(x2));
    for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - g * (b - a);
        f1 = log_phi(wrap_angle(x1));
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + g * (b - a);
        f2 = log_phi(wrap_angle(x2));
      }
    }
    const double x = v[j] == -kInf ? kTwoPi * static_cast<double>(j) / static_cast<double>(grid) : 0.5 * (a + b);
    if (v[j] == -kInf || std::min(f1, f2) < vmax + std::log(1e-10)) zeros.push_back(wrap_angle(x));
  }
  std::sort(zeros.begin(), zeros.end());
  zeros.erase(std::unique(zeros.begin(), zeros.end(), [](double p, double q) { return q - p < 1e-9; }), zeros.end());
  if (zeros.size() > 1 && zeros.back() - zeros.front() > kTwoPi - 1e-9) zeros.pop_back();
  return zeros;
}

BoundaryModulus modulus_from_expression(const ModulusExpression& expr, const CircleSet* set) {
  if (expr.uses_dist() && !set) throw std::invalid_argument("expression uses dist() but no set was given");
  BoundaryModulus m;
  m.log_sampler = [expr, set](double theta) {
    const double v = std::abs(expr.evaluate(theta, set));
    if (std::isnan(v)) throw std::domain_error("modulus expression is undefined at θ=" + std::to_string(theta));
    return v > 0.0 ? std::log(v) : -kInf;
  };
  m.singular_points = find_zeros(m.log_sampler);
  if (set && expr.uses_dist()) {
    for (const Arc& a : set->arcs()) {
      m.singular_points.push_back(a.start);
      if (a.length > 0.0) m.singular_points.push_back(wrap_angle(a.end()));
    }
    std::sort(m.singular_points.begin(), m.singular_points.end());
    m.singular_points.erase(std::unique(m.singular_points.begin(), m.singular_points.end(),
                                        [](double p, double q) { return q - p < 1e-9; }),
                            m.singular_points.end());
  }
  m.label = expr.text();
  return m;
}

}  // namespace dcyc
