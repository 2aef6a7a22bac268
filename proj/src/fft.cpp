#include "fft.hpp"

#include <mutex>
#include <new>

namespace mbkdv::detail {

namespace {
// FFTW's planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
  std::lock_guard lock(planner_mutex());
  buf_ = fftw_alloc_complex(n);
  if (!buf_) throw std::bad_alloc();
  const int ni = static_cast<int>(n);
  fwd_ = fftw_plan_dft_1d(ni, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
  bwd_ = fftw_plan_dft_1d(ni, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft::~Fft() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(fwd_);
  fftw_destroy_plan(bwd_);
  fftw_free(buf_);
}

void Fft::forward() {
  fftw_execute(fwd_);
  const double scale = 1.0 / static_cast<double>(n_);
  auto* d = data();
  for (std::size_t i = 0; i < n_; ++i) d[i] *= scale;
}

void Fft::backward() { fftw_execute(bwd_); }

}  // namespace mbkdv::detail
