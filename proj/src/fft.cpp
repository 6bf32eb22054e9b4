#include "logse/fft.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <new>
#include <stdexcept>

namespace logse {

namespace {

// FFTW planning is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("fft: zero length");
  std::lock_guard lock(planner_mutex());
  buf_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (buf_ == nullptr) throw std::bad_alloc();
  const int len = static_cast<int>(n);
  fwd_ = fftw_plan_dft_1d(len, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
  bwd_ = fftw_plan_dft_1d(len, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft::~Fft() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(fwd_);
  fftw_destroy_plan(bwd_);
  fftw_free(buf_);
}

void Fft::forward(std::span<const std::complex<double>> in,
                  std::span<std::complex<double>> out) {
  auto* b = reinterpret_cast<std::complex<double>*>(buf_);
  std::copy(in.begin(), in.end(), b);
  fftw_execute(fwd_);
  std::copy(b, b + n_, out.begin());
}

void Fft::inverse(std::span<const std::complex<double>> in,
                  std::span<std::complex<double>> out) {
  auto* b = reinterpret_cast<std::complex<double>*>(buf_);
  std::copy(in.begin(), in.end(), b);
  fftw_execute(bwd_);
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = b[j] * scale;
}

Fft& thread_fft(std::size_t n) {
  thread_local std::map<std::size_t, std::unique_ptr<Fft>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Fft>(n);
  return *slot;
}

}  // namespace logse
