#include "dcyc/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace dcyc {

namespace {

// FFTW planning is not thread safe; execution on separate buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

template <class T>
using FftwBuffer = std::unique_ptr<T, FftwFree>;

template <class T>
FftwBuffer<T> allocate(std::size_t n) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * n));
  if (!p) throw std::bad_alloc();
  return FftwBuffer<T>(p);
}

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};

using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

}  // namespace

std::vector<std::complex<double>> real_dft(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  auto in = allocate<double>(n);
  auto out = allocate<fftw_complex>(n / 2 + 1);
  Plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));
  }
  if (!plan) throw std::runtime_error("fftw: r2c plan failed");
  std::memcpy(in.get(), x.data(), sizeof(double) * n);
  fftw_execute(plan.get());
  std::vector<std::complex<double>> result(n / 2 + 1);
  for (std::size_t k = 0; k < result.size(); ++k) result[k] = {out.get()[k][0], out.get()[k][1]};
  return result;
}

std::vector<std::complex<double>> complex_dft(std::span<const std::complex<double>> x, int sign) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  auto in = allocate<fftw_complex>(n);
  auto out = allocate<fftw_complex>(n);
  Plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_1d(static_cast<int>(n), in.get(), out.get(), sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                FFTW_ESTIMATE));
  }
  if (!plan) throw std::runtime_error("fftw: dft plan failed");
  for (std::size_t j = 0; j < n; ++j) {
    in.get()[j][0] = x[j].real();
    in.get()[j][1] = x[j].imag();
  }
  fftw_execute(plan.get());
  std::vector<std::complex<double>> result(n);
  for (std::size_t k = 0; k < n; ++k) result[k] = {out.get()[k][0], out.get()[k][1]};
  return result;
}

}  // namespace dcyc
