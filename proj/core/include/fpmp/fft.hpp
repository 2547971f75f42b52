#pragma once

#include <complex>
#include <vector>

#include "fpmp/image.hpp"

namespace fpmp {

// Frequency-domain counterpart of Image: one complex plane per channel.
struct Spectrum {
  int rows = 0;
  int cols = 0;
  int channels = 1;
  std::vector<std::complex<double>> data;

  Spectrum() = default;
  Spectrum(int rows_, int cols_, int channels_ = 1);

  std::size_t pixels() const { return static_cast<std::size_t>(rows) * cols; }
  std::complex<double>* plane(int ch) { return data.data() + static_cast<std::size_t>(ch) * pixels(); }
  const std::complex<double>* plane(int ch) const {
    return data.data() + static_cast<std::size_t>(ch) * pixels();
  }
};

// Unnormalized forward DFT per channel.
Spectrum fft2(const Image& img);

// Inverse DFT (scaled by 1/(rows*cols)), real part.
Image ifft2_real(const Spectrum& spec);

// Kernel embedded in an m x n periodic grid with its anchor shifted to
// (0,0), then transformed. Single-channel spectrum.
Spectrum psf2otf(const Kernel& k, int rows, int cols);

// Direct circular convolution; the kernel anchor sits on the output pixel.
Image conv2_periodic(const Image& img, const Kernel& k);

// Adjoint of conv2_periodic (circular correlation with the same kernel).
Image conv2_adjoint(const Image& img, const Kernel& k);

}  // namespace fpmp
