#ifndef VSPECTRA_FFT_HPP
#define VSPECTRA_FFT_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace vspectra {

/// Complex-to-complex FFT on an n^dim periodic lattice (dim 1 or 3).
/// Spectral arrays hold Fourier coefficients f_m with
/// f(x) = sum_m f_m e^{i k_m . x}; to_spectral applies the 1/N factor.
/// Not safe for concurrent calls on one instance (each simulation owns its
/// transforms).
class Fft {
public:
  Fft(int dim, int n);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  void to_spectral(std::vector<std::complex<double>>& data) const;
  void to_real(std::vector<std::complex<double>>& data) const;

  std::size_t size() const { return total_; }

private:
  int dim_;
  int n_;
  std::size_t total_;
  void* fwd_ = nullptr;  // fftw_plan
  void* bwd_ = nullptr;
  std::complex<double>* buf_ = nullptr;  // fftw-aligned work buffer
};

}  // namespace vspectra

#endif
