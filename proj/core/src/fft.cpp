#include "vspectra/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <stdexcept>

namespace vspectra {

namespace {
// FFTW planning is not thread-safe
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Fft::Fft(int dim, int n) : dim_(dim), n_(n) {
  if (dim != 1 && dim != 3) throw std::invalid_argument("fft: dim must be 1 or 3");
  if (n < 2) throw std::invalid_argument("fft: n must be >= 2");
  total_ = 1;
  for (int d = 0; d < dim; ++d) total_ *= static_cast<std::size_t>(n);

  buf_ = reinterpret_cast<std::complex<double>*>(
      fftw_malloc(sizeof(fftw_complex) * total_));
  if (!buf_) throw std::bad_alloc();
  auto* raw = reinterpret_cast<fftw_complex*>(buf_);

  std::lock_guard<std::mutex> lock(plan_mutex());
  if (dim == 1) {
    fwd_ = fftw_plan_dft_1d(n, raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_1d(n, raw, raw, FFTW_BACKWARD, FFTW_ESTIMATE);
  } else {
    fwd_ = fftw_plan_dft_3d(n, n, n, raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_3d(n, n, n, raw, raw, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  if (!fwd_ || !bwd_) throw std::runtime_error("fft: planning failed");
}

Fft::~Fft() {
  std::lock_guard<std::mutex> lock(plan_mutex());
  if (fwd_) fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  if (bwd_) fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
  if (buf_) fftw_free(buf_);
}

void Fft::to_spectral(std::vector<std::complex<double>>& data) const {
  if (data.size() != total_) throw std::invalid_argument("fft: size mismatch");
  std::memcpy(buf_, data.data(), sizeof(std::complex<double>) * total_);
  fftw_execute(static_cast<fftw_plan>(fwd_));
  const double scale = 1.0 / static_cast<double>(total_);
  for (std::size_t i = 0; i < total_; ++i) data[i] = buf_[i] * scale;
}

void Fft::to_real(std::vector<std::complex<double>>& data) const {
  if (data.size() != total_) throw std::invalid_argument("fft: size mismatch");
  std::memcpy(buf_, data.data(), sizeof(std::complex<double>) * total_);
  fftw_execute(static_cast<fftw_plan>(bwd_));
  std::memcpy(data.data(), buf_, sizeof(std::complex<double>) * total_);
}

}  // namespace vspectra
