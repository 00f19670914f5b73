#include "fft_plan.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace ns2d::detail {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

FftPlan::FftPlan(int n) : n_(n) {
  const std::size_t real_size = static_cast<std::size_t>(n) * n;
  const std::size_t spec_size = static_cast<std::size_t>(n) * (n / 2 + 1);
  double* r = fftw_alloc_real(real_size);
  fftw_complex* c = fftw_alloc_complex(spec_size);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  forward_plan_ = fftw_plan_dft_r2c_2d(n, n, r, c, flags);
  inverse_plan_ = fftw_plan_dft_c2r_2d(n, n, c, r, flags);
  fftw_free(r);
  fftw_free(c);
}

FftPlan::~FftPlan() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

std::shared_ptr<const FftPlan> FftPlan::get(int n) {
  std::lock_guard lock(planner_mutex());
  static std::map<int, std::shared_ptr<const FftPlan>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::shared_ptr<const FftPlan> plan(new FftPlan(n));
  cache.emplace(n, plan);
  return plan;
}

void FftPlan::forward(std::span<const double> in, std::span<std::complex<double>> out) const {
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

void FftPlan::inverse(std::span<const std::complex<double>> in, std::span<double> out) const {
  thread_local std::vector<std::complex<double>> scratch;
  scratch.assign(in.begin(), in.end());
  inverse_destroy(scratch, out);
}

void FftPlan::inverse_destroy(std::span<std::complex<double>> in, std::span<double> out) const {
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_), reinterpret_cast<fftw_complex*>(in.data()),
                       out.data());
}

}  // namespace ns2d::detail
