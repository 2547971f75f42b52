#include "fpmp/framelet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fpmp {

const double kFrameletH1[3] = {std::sqrt(2.0) / 4.0, 0.0, -std::sqrt(2.0) / 4.0};

namespace {

const double* filter_taps(int i) {
  switch (i) {
    case 0: return kFrameletH0;
    case 1: return kFrameletH1;
    default: return kFrameletH2;
  }
}

// out(r,c) = f[0] in(r-1,c) + f[1] in(r,c) + f[2] in(r+1,c), periodic.
// adjoint flips the stencil.
void filter_rows(const Image& in, const double* f, bool adjoint, Image& out) {
  const int m = in.rows, n = in.cols;
  const double a = adjoint ? f[2] : f[0];
  const double b = f[1];
  const double c = adjoint ? f[0] : f[2];
  for (int ch = 0; ch < in.channels; ++ch) {
    const double* src = in.plane(ch);
    double* dst = out.plane(ch);
    for (int r = 0; r < m; ++r) {
      const double* up = src + static_cast<std::size_t>((r - 1 + m) % m) * n;
      const double* mid = src + static_cast<std::size_t>(r) * n;
      const double* down = src + static_cast<std::size_t>((r + 1) % m) * n;
      double* o = dst + static_cast<std::size_t>(r) * n;
      for (int col = 0; col < n; ++col) o[col] = a * up[col] + b * mid[col] + c * down[col];
    }
  }
}

void filter_cols(const Image& in, const double* f, bool adjoint, Image& out) {
  const int m = in.rows, n = in.cols;
  const double a = adjoint ? f[2] : f[0];
  const double b = f[1];
  const double c = adjoint ? f[0] : f[2];
  for (int ch = 0; ch < in.channels; ++ch) {
    const double* src = in.plane(ch);
    double* dst = out.plane(ch);
    for (int r = 0; r < m; ++r) {
      const double* row = src + static_cast<std::size_t>(r) * n;
      double* o = dst + static_cast<std::size_t>(r) * n;
      o[0] = a * row[n - 1] + b * row[0] + c * row[1 % n];
      for (int col = 1; col + 1 < n; ++col)
        o[col] = a * row[col - 1] + b * row[col] + c * row[col + 1];
      if (n > 1) o[n - 1] = a * row[n - 2] + b * row[n - 1] + c * row[0];
    }
  }
}

void check_coeff_shapes(const std::array<Image, 9>& bands, const char* what) {
  for (int b = 1; b < 9; ++b)
    if (!bands[b].same_shape(bands[0]))
      throw std::invalid_argument(std::string(what) + ": band shapes differ");
}

}  // namespace

FrameletCoeffs framelet_analysis(const Image& img) {
  if (img.rows < 1 || img.cols < 1) throw std::invalid_argument("framelet_analysis: empty image");
  FrameletCoeffs out;
  Image rowpass(img.rows, img.cols, img.channels);
  for (int i = 0; i < 3; ++i) {
    filter_rows(img, filter_taps(i), false, rowpass);
    for (int j = 0; j < 3; ++j) {
      out.bands[3 * i + j] = Image(img.rows, img.cols, img.channels);
      filter_cols(rowpass, filter_taps(j), false, out.bands[3 * i + j]);
    }
  }
  return out;
}

Image framelet_synthesis(const FrameletCoeffs& coeffs) {
  check_coeff_shapes(coeffs.bands, "framelet_synthesis");
  const Image& b0 = coeffs.bands[0];
  Image acc(b0.rows, b0.cols, b0.channels);
  Image colpass(b0.rows, b0.cols, b0.channels);
  Image full(b0.rows, b0.cols, b0.channels);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      filter_cols(coeffs.bands[3 * i + j], filter_taps(j), true, colpass);
      filter_rows(colpass, filter_taps(i), true, full);
      for (std::size_t k = 0; k < acc.data.size(); ++k) acc.data[k] += full.data[k];
    }
  }
  return acc;
}

FpmpResult fpmp(const Image& img, int r) {
  if (r < 1) throw std::invalid_argument("fpmp: patch size must be >= 1");
  return fpmp_of(framelet_analysis(img), r);
}

FpmpResult fpmp_of(const FrameletCoeffs& coeffs, int r) {
  if (r < 1) throw std::invalid_argument("fpmp: patch size must be >= 1");
  check_coeff_shapes(coeffs.bands, "fpmp");
  const int m = coeffs.rows(), n = coeffs.cols(), channels = coeffs.channels();
  const int pr = (m + r - 1) / r, pc = (n + r - 1) / r;

  FpmpResult res;
  res.minima.patch = r;
  res.minima.patch_rows = pr;
  res.minima.patch_cols = pc;
  res.minima.values.resize(static_cast<std::size_t>(9) * pr * pc);
  res.mask.patch = r;
  res.mask.patch_rows = pr;
  res.mask.patch_cols = pc;

  for (int b = 0; b < 9; ++b) {
    const Image& band = coeffs.bands[b];
    res.mask.bits[b] = Image(m, n, channels);
    for (int p = 0; p < pr; ++p) {
      const int r0 = p * r, r1 = std::min(m, r0 + r);
      for (int q = 0; q < pc; ++q) {
        const int c0 = q * r, c1 = std::min(n, c0 + r);
        double best = std::numeric_limits<double>::infinity();
        int br = r0, bc = c0, bch = 0;
        for (int rr = r0; rr < r1; ++rr)
          for (int cc = c0; cc < c1; ++cc)
            for (int ch = 0; ch < channels; ++ch)
              if (band.at(rr, cc, ch) < best) {
                best = band.at(rr, cc, ch);
                br = rr;
                bc = cc;
                bch = ch;
              }
        res.minima.values[(static_cast<std::size_t>(b) * pr + p) * pc + q] = best;
        res.mask.bits[b].at(br, bc, bch) = 1.0;
      }
    }
  }
  return res;
}

namespace {

// Sliding min over centered w x w windows, clamped at the borders; reduces
// over channels too. Output is single-channel.
Image sliding_min(const Image& src, int w) {
  const int m = src.rows, n = src.cols, half = w / 2;
  Image out(m, n, 1);
  for (int r = 0; r < m; ++r) {
    const int r0 = std::max(0, r - half), r1 = std::min(m, r + half + 1);
    for (int c = 0; c < n; ++c) {
      const int c0 = std::max(0, c - half), c1 = std::min(n, c + half + 1);
      double best = std::numeric_limits<double>::infinity();
      for (int ch = 0; ch < src.channels; ++ch)
        for (int rr = r0; rr < r1; ++rr)
          for (int cc = c0; cc < c1; ++cc)
            best = std::min(best, src.at(rr, cc, ch));
      out.at(r, c) = best;
    }
  }
  return out;
}

}  // namespace

Image fdc(const Image& img, int r) {
  if (r < 1 || r % 2 == 0) throw std::invalid_argument("fdc: window size must be odd");
  FrameletCoeffs coeffs = framelet_analysis(img);
  const int m = img.rows, n = img.cols;
  Image out(3 * m, 3 * n, 1);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Image tile = sliding_min(coeffs.bands[3 * i + j], r);
      for (int rr = 0; rr < m; ++rr)
        for (int cc = 0; cc < n; ++cc) out.at(i * m + rr, j * n + cc) = tile.at(rr, cc);
    }
  }
  return out;
}

namespace {

void check_mask(const MinMask& mask, int rows, int cols, int channels, const char* what) {
  for (const Image& bits : mask.bits)
    if (bits.rows != rows || bits.cols != cols || bits.channels != channels)
      throw std::invalid_argument(std::string(what) + ": mask shape mismatch");
}

}  // namespace

std::pair<Image, Image> split_by_mask(const Image& img, const MinMask& mask) {
  check_mask(mask, img.rows, img.cols, img.channels, "split_by_mask");
  FrameletCoeffs coeffs = framelet_analysis(img);
  FrameletCoeffs kept, rest;
  for (int b = 0; b < 9; ++b) {
    kept.bands[b] = coeffs.bands[b];
    rest.bands[b] = coeffs.bands[b];
    const Image& bits = mask.bits[b];
    for (std::size_t k = 0; k < bits.data.size(); ++k) {
      kept.bands[b].data[k] *= bits.data[k];
      rest.bands[b].data[k] *= 1.0 - bits.data[k];
    }
  }
  return {framelet_synthesis(kept), framelet_synthesis(rest)};
}

FpmpVector extract_masked(const FrameletCoeffs& coeffs, const MinMask& mask) {
  check_mask(mask, coeffs.rows(), coeffs.cols(), coeffs.channels(), "extract_masked");
  FpmpVector out;
  out.patch = mask.patch;
  out.patch_rows = mask.patch_rows;
  out.patch_cols = mask.patch_cols;
  out.values.resize(mask.set_count());
  const int m = coeffs.rows(), n = coeffs.cols(), r = mask.patch;
  for (int b = 0; b < 9; ++b) {
    const Image& bits = mask.bits[b];
    const Image& band = coeffs.bands[b];
    for (int p = 0; p < mask.patch_rows; ++p) {
      const int r0 = p * r, r1 = std::min(m, r0 + r);
      for (int q = 0; q < mask.patch_cols; ++q) {
        const int c0 = q * r, c1 = std::min(n, c0 + r);
        double value = 0.0;
        for (int rr = r0; rr < r1; ++rr)
          for (int cc = c0; cc < c1; ++cc)
            for (int ch = 0; ch < bits.channels; ++ch)
              if (bits.at(rr, cc, ch) != 0.0) value = band.at(rr, cc, ch);
        out.values[(static_cast<std::size_t>(b) * mask.patch_rows + p) * mask.patch_cols + q] = value;
      }
    }
  }
  return out;
}

Image scatter_minima(const FpmpVector& n, const MinMask& mask) {
  if (n.values.size() != mask.set_count())
    throw std::invalid_argument("scatter_minima: vector length does not match mask");
  const Image& b0 = mask.bits[0];
  FrameletCoeffs coeffs;
  for (int b = 0; b < 9; ++b) coeffs.bands[b] = Image(b0.rows, b0.cols, b0.channels);
  const int m = b0.rows, nn = b0.cols, r = mask.patch;
  for (int b = 0; b < 9; ++b) {
    const Image& bits = mask.bits[b];
    Image& band = coeffs.bands[b];
    for (int p = 0; p < mask.patch_rows; ++p) {
      const int r0 = p * r, r1 = std::min(m, r0 + r);
      for (int q = 0; q < mask.patch_cols; ++q) {
        const int c0 = q * r, c1 = std::min(nn, c0 + r);
        const double value =
            n.values[(static_cast<std::size_t>(b) * mask.patch_rows + p) * mask.patch_cols + q];
        for (int rr = r0; rr < r1; ++rr)
          for (int cc = c0; cc < c1; ++cc)
            for (int ch = 0; ch < bits.channels; ++ch)
              if (bits.at(rr, cc, ch) != 0.0) band.at(rr, cc, ch) = value;
      }
    }
  }
  return framelet_synthesis(coeffs);
}

std::vector<double> pmp(const Image& img, int r) {
  if (r < 1) throw std::invalid_argument("pmp: patch size must be >= 1");
  const int m = img.rows, n = img.cols;
  const int pr = (m + r - 1) / r, pc = (n + r - 1) / r;
  std::vector<double> out(static_cast<std::size_t>(pr) * pc);
  for (int p = 0; p < pr; ++p) {
    const int r0 = p * r, r1 = std::min(m, r0 + r);
    for (int q = 0; q < pc; ++q) {
      const int c0 = q * r, c1 = std::min(n, c0 + r);
      double best = std::numeric_limits<double>::infinity();
      for (int ch = 0; ch < img.channels; ++ch)
        for (int rr = r0; rr < r1; ++rr)
          for (int cc = c0; cc < c1; ++cc) best = std::min(best, img.at(rr, cc, ch));
      out[static_cast<std::size_t>(p) * pc + q] = best;
    }
  }
  return out;
}

Image dark_channel(const Image& img, int r) {
  if (r < 1 || r % 2 == 0) throw std::invalid_argument("dark_channel: window size must be odd");
  return sliding_min(img, r);
}

}  // namespace fpmp
