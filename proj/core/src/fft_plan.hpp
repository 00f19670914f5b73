// Cached FFTW plans for n x n real transforms. Raw (unnormalised, no phase) convention.
#pragma once

#include <complex>
#include <memory>
#include <span>

namespace ns2d::detail {

class FftPlan {
 public:
  /// Shared plan pair for size n; creation is serialised, execution is thread-safe.
  static std::shared_ptr<const FftPlan> get(int n);

  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  int n() const { return n_; }

  /// out[k1][k2] = sum_j in[j1][j2] exp(-2 pi i (k.j)/n), half spectrum.
  void forward(std::span<const double> in, std::span<std::complex<double>> out) const;

  /// Unnormalised inverse. The input is preserved (copied to scratch internally).
  void inverse(std::span<const std::complex<double>> in, std::span<double> out) const;

  /// Unnormalised inverse that may overwrite its input.
  void inverse_destroy(std::span<std::complex<double>> in, std::span<double> out) const;

 private:
  explicit FftPlan(int n);
  int n_;
  void* forward_plan_;
  void* inverse_plan_;
};

}  // namespace ns2d::detail
