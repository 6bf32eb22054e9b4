#pragma once

#include <complex>
#include <cstddef>
#include <span>

#include <fftw3.h>

namespace logse {

/// FFTW-backed complex DFT of fixed length.
///
/// forward() is unnormalized; inverse() carries the 1/M factor, so
/// inverse(forward(u)) == u. An instance owns its buffers and plans and must
/// not be shared between threads; use thread_fft() for a per-thread cache.
class Fft {
 public:
  explicit Fft(std::size_t n);
  ~Fft();

  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::size_t size() const { return n_; }

  void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);
  void inverse(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

 private:
  std::size_t n_;
  fftw_complex* buf_;
  fftw_plan fwd_;
  fftw_plan bwd_;
};

/// Per-thread transform of length n, created on first use.
Fft& thread_fft(std::size_t n);

}  // namespace logse
