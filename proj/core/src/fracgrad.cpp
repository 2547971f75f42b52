#include "fpmp/fracgrad.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fpmp {

GlCoeffs gl_coeffs(double alpha, int len) {
  if (len < 1) throw std::invalid_argument("gl_coeffs: len must be >= 1");
  GlCoeffs c;
  c.alpha = alpha;
  c.weights.resize(len);
  c.weights[0] = 1.0;
  for (int l = 1; l < len; ++l)
    c.weights[l] = c.weights[l - 1] * (l - 1 - alpha) / l;
  return c;
}

namespace {

void check_len(const GlCoeffs& c, int rows, int cols, const char* what) {
  const int len = static_cast<int>(c.weights.size());
  if (len > std::min(rows, cols))
    throw std::invalid_argument(std::string(what) + ": truncation length exceeds image size");
}

}  // namespace

GradPair frac_grad(const Image& img, const GlCoeffs& c) {
  check_len(c, img.rows, img.cols, "frac_grad");
  GradPair g{Image(img.rows, img.cols, img.channels), Image(img.rows, img.cols, img.channels)};
  const int m = img.rows, n = img.cols;
  const int len = static_cast<int>(c.weights.size());
  for (int ch = 0; ch < img.channels; ++ch) {
    const double* src = img.plane(ch);
    double* dh = g.h.plane(ch);
    double* dv = g.v.plane(ch);
    for (int l = 0; l < len; ++l) {
      const double w = c.weights[l];
      for (int r = 0; r < m; ++r) {
        const double* row_shift = src + static_cast<std::size_t>((r - l + m) % m) * n;
        double* out = dh + static_cast<std::size_t>(r) * n;
        for (int col = 0; col < n; ++col) out[col] += w * row_shift[col];
      }
      for (int r = 0; r < m; ++r) {
        const double* row = src + static_cast<std::size_t>(r) * n;
        double* out = dv + static_cast<std::size_t>(r) * n;
        for (int col = 0; col < n; ++col) out[col] += w * row[(col - l + n) % n];
      }
    }
  }
  return g;
}

Image frac_grad_adjoint(const GradPair& g, const GlCoeffs& c) {
  require_same_shape(g.h, g.v, "frac_grad_adjoint");
  check_len(c, g.h.rows, g.h.cols, "frac_grad_adjoint");
  Image out(g.h.rows, g.h.cols, g.h.channels);
  const int m = out.rows, n = out.cols;
  const int len = static_cast<int>(c.weights.size());
  for (int ch = 0; ch < out.channels; ++ch) {
    const double* sh = g.h.plane(ch);
    const double* sv = g.v.plane(ch);
    double* dst = out.plane(ch);
    for (int l = 0; l < len; ++l) {
      const double w = c.weights[l];
      for (int r = 0; r < m; ++r) {
        const double* row_shift = sh + static_cast<std::size_t>((r + l) % m) * n;
        double* o = dst + static_cast<std::size_t>(r) * n;
        for (int col = 0; col < n; ++col) o[col] += w * row_shift[col];
      }
      for (int r = 0; r < m; ++r) {
        const double* row = sv + static_cast<std::size_t>(r) * n;
        double* o = dst + static_cast<std::size_t>(r) * n;
        for (int col = 0; col < n; ++col) o[col] += w * row[(col + l) % n];
      }
    }
  }
  return out;
}

FracSymbol frac_symbol(const GlCoeffs& c, int rows, int cols) {
  check_len(c, rows, cols, "frac_symbol");
  FracSymbol s;
  s.rows = rows;
  s.cols = cols;
  s.h.resize(static_cast<std::size_t>(rows) * cols);
  s.v.resize(s.h.size());
  s.combined.resize(s.h.size());
  const int len = static_cast<int>(c.weights.size());

  auto axis_symbol = [&](int size) {
    std::vector<std::complex<double>> sym(size);
    for (int k = 0; k < size; ++k) {
      std::complex<double> acc = 0.0;
      for (int l = 0; l < len; ++l)
        acc += std::polar(c.weights[l], -2.0 * std::numbers::pi * k * l / size);
      sym[k] = acc;
    }
    return sym;
  };
  const auto sym_r = axis_symbol(rows);
  const auto sym_c = axis_symbol(cols);

  for (int r = 0; r < rows; ++r) {
    for (int col = 0; col < cols; ++col) {
      const std::size_t i = static_cast<std::size_t>(r) * cols + col;
      s.h[i] = sym_r[r];
      s.v[i] = sym_c[col];
      s.combined[i] = std::norm(sym_r[r]) + std::norm(sym_c[col]);
    }
  }
  return s;
}

}  // namespace fpmp
