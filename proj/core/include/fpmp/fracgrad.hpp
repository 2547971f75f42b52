#pragma once

#include <complex>
#include <vector>

#include "fpmp/fft.hpp"
#include "fpmp/image.hpp"

namespace fpmp {

// Grunwald-Letnikov weights of order alpha, truncated to len taps.
// weights[l] = (-1)^l Gamma(a+1) / (Gamma(l+1) Gamma(a-l+1)), computed by the
// recurrence w[l] = w[l-1] * (l-1-a) / l to dodge Gamma overflow.
struct GlCoeffs {
  double alpha = 1.0;
  std::vector<double> weights;
};

GlCoeffs gl_coeffs(double alpha, int len);

// Horizontal/vertical components of a fractional gradient.
struct GradPair {
  Image h;
  Image v;
};

// h-component sums weights[l] * u(i-l, j), v-component weights[l] * u(i, j-l),
// both with periodic wrap.
GradPair frac_grad(const Image& img, const GlCoeffs& c);

// Exact adjoint of frac_grad under the Euclidean inner product.
Image frac_grad_adjoint(const GradPair& g, const GlCoeffs& c);

// DFT symbols of the two gradient stencils and the combined real symbol
// |F_h|^2 + |F_v|^2 used in the solver denominators.
struct FracSymbol {
  int rows = 0;
  int cols = 0;
  std::vector<std::complex<double>> h;  // varies along rows, constant across cols
  std::vector<std::complex<double>> v;
  std::vector<double> combined;
};

FracSymbol frac_symbol(const GlCoeffs& c, int rows, int cols);

}  // namespace fpmp
