#pragma once

#include "dcyc/circle_geometry.hpp"
#include "dcyc/weights.hpp"

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace dcyc {

using Complex = std::complex<double>;

/**
 * @brief Boundary modulus φ on the circle, given through θ ↦ log φ(e^{iθ}).
 *
 * Working with log φ keeps deep dips (w(d) with tiny w) exact. Zeros return -inf.
 */
struct BoundaryModulus {
  std::function<double(double)> log_sampler;
  /// zeros of φ, typically the set E
  std::vector<double> singular_points;
  /// points where φ is not smooth
  std::vector<double> kinks;
  std::string label;

  double operator()(double theta) const { return std::exp(log_sampler(theta)); }
  static BoundaryModulus from_function(std::function<double(double)> phi, std::vector<double> singular_points = {},
                                       std::vector<double> kinks = {}, std::string label = {});
  static BoundaryModulus constant(double c);
};

struct OuterOptions {
  std::size_t grid = 4096;
  /// 0 selects M/4
  std::size_t taylor_terms = 0;
  double clamp_floor = std::log(1e-300);
  /// fraction of clamped grid points above which φ is treated as vanishing on a set of positive measure
  double clamp_error_fraction = 0.01;
  /// subtract the log singularity at clean power zeros before the FFT
  bool subtract_singularities = true;
  bool parallel = true;
};

class OuterFunction {
 public:
  OuterFunction() = default;
  /// Wrap known Taylor coefficients (polynomials, products).
  static OuterFunction from_taylor(std::vector<Complex> coefficients);

  std::size_t grid() const { return grid_; }
  const std::vector<Complex>& log_coefficients() const { return log_coefficients_; }
  const std::vector<Complex>& analytic_coefficients() const { return analytic_; }
  const std::vector<Complex>& taylor() const { return taylor_; }
  /// Σ_{k>K} k|a_k|² extrapolated from the last two dyadic blocks.
  double tail_estimate() const { return tail_estimate_; }
  double clamp_floor() const { return clamp_floor_; }
  std::size_t clamped_points() const { return clamped_points_; }
  double clamped_fraction() const { return grid_ ? static_cast<double>(clamped_points_) / static_cast<double>(grid_) : 0.0; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  /// log φ on the offset grid, after clamping
  const std::vector<double>& log_boundary() const { return log_boundary_; }
  /// zeros whose log singularity was handled analytically
  std::size_t subtracted_zeros() const { return subtracted_zeros_; }

 private:
  friend OuterFunction outer_from_modulus(const BoundaryModulus&, const OuterOptions&);

  std::size_t grid_ = 0;
  std::vector<Complex> log_coefficients_;
  std::vector<Complex> analytic_;
  std::vector<Complex> taylor_;
  std::vector<double> log_boundary_;
  double tail_estimate_ = 0.0;
  double clamp_floor_ = 0.0;
  std::size_t clamped_points_ = 0;
  std::size_t subtracted_zeros_ = 0;
  std::vector<std::string> warnings_;
};

OuterFunction outer_from_modulus(const BoundaryModulus& phi, const OuterOptions& options = {});

/// exp of a power series: n a_n = Σ_{k=1}^n k b_k a_{n-k}, a_0 = exp(b_0).
std::vector<Complex> exponentiate_series(std::span<const Complex> b, std::size_t terms);
/// Cross-check: exponentiate the boundary trace pointwise and transform back.
std::vector<Complex> exponentiate_pointwise(const OuterFunction& f, std::size_t terms);

struct Evaluation {
  Complex value;
  double tail_bound = 0.0;
};

/// Taylor evaluation, |z| <= 1 - 1e-9.
Evaluation evaluate(const OuterFunction& f, Complex z);
/// Direct Herglotz quadrature on an offset M-point grid.
Complex herglotz_evaluate(const BoundaryModulus& phi, Complex z, std::size_t m = 8192);

struct ModulusAtZero {
  double value = 0.0;
  double log_value = 0.0;
  /// grid means at M, 2M, 4M
  std::vector<double> log_means;
  double richardson_log = 0.0;
  double richardson_error = 0.0;
  bool finite = true;
};

/// |f(0)| = exp of the mean of log φ, Richardson-extrapolated from the 2M and 4M grids.
ModulusAtZero modulus_at_zero(const BoundaryModulus& phi, std::size_t m = 4096, bool parallel = true);

/// θ ↦ w(d(e^{iθ}, E)).
BoundaryModulus distance_modulus(const CircleSet& set, const WeightProfile& w);
OuterFunction distance_function(const CircleSet& set, const WeightProfile& w, const OuterOptions& options = {});

bool is_power_of_two(std::size_t n);

}  // namespace dcyc
