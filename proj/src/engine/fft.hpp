#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <mutex>

namespace slitworks::detail {

std::mutex& fftwPlannerMutex();

/// In-place complex FFT on an fftw_malloc'd buffer. Planning is serialized, execution is not.
class ComplexFft {
 public:
  explicit ComplexFft(std::size_t n);
  ~ComplexFft();
  ComplexFft(const ComplexFft&) = delete;
  ComplexFft& operator=(const ComplexFft&) = delete;

  std::complex<double>* data() { return reinterpret_cast<std::complex<double>*>(buf_); }
  std::size_t size() const { return n_; }
  void forward() { fftw_execute(fwd_); }
  /// Unnormalized inverse.
  void backward() { fftw_execute(bwd_); }

 private:
  std::size_t n_;
  fftw_complex* buf_;
  fftw_plan fwd_;
  fftw_plan bwd_;
};

}  // namespace slitworks::detail
