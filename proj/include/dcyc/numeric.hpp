#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

namespace dcyc {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// log(exp(a) + exp(b)) without overflow; either argument may be -inf.
double log_add_exp(double a, double b);

/// log(exp(a) - exp(b)) for a >= b.
double log_sub_exp(double a, double b);

/// Pairwise summation in a fixed association order, independent of threading.
double pairwise_sum(std::span<const double> values);

/// Gauss-Legendre nodes/weights on [-1, 1] (cached per order).
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int order);

/// Integrate f on [a, b] with an n-point Gauss-Legendre rule.
template <class F>
double gauss_integrate(F&& f, double a, double b, int order = 8) {
  const GaussRule& rule = gauss_legendre(order);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return acc * half;
}

/// Adaptive Gauss-Kronrod on a finite interval (Boost.Math backend).
double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-10, double* error = nullptr);

/// Tanh-sinh quadrature; tolerates integrable endpoint singularities.
double endpoint_singular_integrate(const std::function<double(double)>& f, double a, double b,
                                   double rel_tol = 1e-10, double* error = nullptr);

/// Wrap an angle into [0, 2π).
double wrap_angle(double angle);

/// Arclength distance between two angles, in [0, π].
double circular_distance(double a, double b);

}  // namespace dcyc
