#include "dcyc/numeric.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>

namespace dcyc {

double log_add_exp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

double log_sub_exp(double a, double b) {
  if (b == -kInf) return a;
  if (b > a) throw std::domain_error("log_sub_exp: negative difference");
  if (a == b) return -kInf;
  return a + std::log(-std::expm1(b - a));
}

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t base = 16;
  if (values.size() <= base) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace {

template <int N>
GaussRule make_rule() {
  using boost::math::quadrature::gauss;
  GaussRule rule;
  const auto& abscissa = gauss<double, N>::abscissa();
  const auto& weights = gauss<double, N>::weights();
  // Boost stores the nonnegative half of a symmetric rule.
  for (std::size_t i = 0; i < abscissa.size(); ++i) {
    if (abscissa[i] == 0.0) {
      rule.nodes.push_back(0.0);
      rule.weights.push_back(weights[i]);
    } else {
      rule.nodes.push_back(abscissa[i]);
      rule.weights.push_back(weights[i]);
      rule.nodes.push_back(-abscissa[i]);
      rule.weights.push_back(weights[i]);
    }
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  static const GaussRule r4 = make_rule<4>();
  static const GaussRule r8 = make_rule<8>();
  static const GaussRule r16 = make_rule<16>();
  static const GaussRule r32 = make_rule<32>();
  switch (order) {
    case 4: return r4;
    case 8: return r8;
    case 16: return r16;
    case 32: return r32;
    default: throw std::invalid_argument("gauss_legendre: supported orders are 4, 8, 16, 32");
  }
}

double adaptive_integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                          double* error) {
  if (a == b) {
    if (error) *error = 0.0;
    return 0.0;
  }
  double err = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, rel_tol, &err);
  if (error) *error = err;
  return value;
}

double endpoint_singular_integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                                   double* error) {
  if (a == b) {
    if (error) *error = 0.0;
    return 0.0;
  }
  static thread_local boost::math::quadrature::tanh_sinh<double> integrator(12);
  double err = 0.0;
  const double value = integrator.integrate(f, a, b, rel_tol, &err);
  if (error) *error = err;
  return value;
}

double wrap_angle(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double circular_distance(double a, double b) {
  const double d = std::fabs(wrap_angle(a) - wrap_angle(b));
  return d > kPi ? kTwoPi - d : d;
}

}  // namespace dcyc
