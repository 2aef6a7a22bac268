#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>

namespace mbkdv::detail {

/// Owns one in-place FFTW buffer with forward and backward plans of a fixed size.
/// Forward is normalized by 1/n so that coefficients are Fourier-series amplitudes.
class Fft {
 public:
  explicit Fft(std::size_t n);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::size_t size() const { return n_; }
  std::complex<double>* data() { return reinterpret_cast<std::complex<double>*>(buf_); }

  void forward();   // data() <- (1/n) sum_j data_j exp(-2 pi i jk/n)
  void backward();  // data() <- sum_k data_k exp(+2 pi i jk/n)

 private:
  std::size_t n_;
  fftw_complex* buf_ = nullptr;
  fftw_plan fwd_ = nullptr;
  fftw_plan bwd_ = nullptr;
};

}  // namespace mbkdv::detail
