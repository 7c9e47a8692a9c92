// Times the OpenMP kernels against their serial references and checks they agree bit for bit.
#include "dcyc/kernels.hpp"
#include "dcyc/numeric.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

using namespace dcyc;

namespace {

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, std::size_t n, double serial, double parallel, bool same) {
  std::printf("%-14s n=%-8zu serial %9.4f s  parallel %9.4f s  speedup %5.2f  %s\n", name, n, serial, parallel,
              serial / parallel, same ? "identical" : "MISMATCH");
}

// log of the distance to {1}, as used for a distance-function modulus
double log_dist(double th) { return std::log(std::min(th, kTwoPi - th)); }

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("threads %d\n", omp_get_max_threads());
  int mismatches = 0;

  for (std::size_t m : {std::size_t{1} << 16, std::size_t{1} << 20}) {
    std::vector<double> a, b;
    const double ts = best_of(reps, [&] { a = kernels::sample_log_serial(log_dist, m); });
    const double tp = best_of(reps, [&] { b = kernels::sample_log_parallel(log_dist, m); });
    report("sample_log", m, ts, tp, a == b);
    mismatches += a != b;
  }

  for (std::size_t n : {std::size_t{1024}, std::size_t{4096}}) {
    kernels::CarlesonNodes nodes;
    nodes.theta.resize(n);
    nodes.weight.assign(n, kTwoPi / static_cast<double>(n));
    nodes.log_phi.resize(n);
    nodes.diagonal.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double th = kTwoPi * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
      nodes.theta[i] = th;
      // |1 - e^{iθ}| = 2 sin(θ/2)
      nodes.log_phi[i] = std::log(2.0 * std::sin(0.5 * th));
      const double d = std::cos(0.5 * th);
      nodes.diagonal[i] = 2.0 * d * d;
    }
    std::vector<double> a(n), b(n);
    const double ts = best_of(reps, [&] { kernels::carleson_rows_serial(nodes, a); });
    const double tp = best_of(reps, [&] { kernels::carleson_rows_parallel(nodes, b); });
    report("carleson_rows", n, ts, tp, a == b);
    mismatches += a != b;
  }

  {
    const std::size_t n = std::size_t{1} << 22;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 / (1.0 + static_cast<double>(i));
    double s1 = 0.0, s2 = 0.0;
    omp_set_num_threads(1);
    const double ts = best_of(reps, [&] { s1 = kernels::blocked_sum(v); });
    omp_set_num_threads(omp_get_num_procs());
    const double tp = best_of(reps, [&] { s2 = kernels::blocked_sum(v); });
    report("blocked_sum", n, ts, tp, s1 == s2);
    mismatches += s1 != s2;
  }
  return mismatches == 0 ? 0 : 1;
}
