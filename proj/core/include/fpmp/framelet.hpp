#pragma once

#include <array>
#include <utility>
#include <vector>

#include "fpmp/image.hpp"

namespace fpmp {

// Piecewise-linear B-spline tight frame: one low-pass and two high-pass
// filters, combined separably into 9 subbands. Analysis correlates with the
// centered taps, synthesis applies the adjoint bank; together W^T W = I.
inline constexpr double kFrameletH0[3] = {0.25, 0.5, 0.25};
extern const double kFrameletH1[3];  // (sqrt(2)/4) * [1, 0, -1]
inline constexpr double kFrameletH2[3] = {-0.25, 0.5, -0.25};

// Band b = 3*i + j applies filter i along rows and filter j along columns.
struct FrameletCoeffs {
  std::array<Image, 9> bands;

  int rows() const { return bands[0].rows; }
  int cols() const { return bands[0].cols; }
  int channels() const { return bands[0].channels; }
};

FrameletCoeffs framelet_analysis(const Image& img);
Image framelet_synthesis(const FrameletCoeffs& coeffs);

// Selector of per-patch minimal coefficient positions: one bit per
// non-overlapping r x r patch per band, across channels.
struct MinMask {
  std::array<Image, 9> bits;  // 0/1 values, same shape as the coefficients
  int patch = 0;
  int patch_rows = 0;
  int patch_cols = 0;

  std::size_t set_count() const {
    return static_cast<std::size_t>(9) * patch_rows * patch_cols;
  }
};

// Patch-wise minima in canonical order: entry (b, pr, pc) lives at index
// (b * patch_rows + pr) * patch_cols + pc.
struct FpmpVector {
  std::vector<double> values;
  int patch = 0;
  int patch_rows = 0;
  int patch_cols = 0;
};

struct FpmpResult {
  FpmpVector minima;
  MinMask mask;
};

// Framelet patch-wise minimal pixels: per band, the min over each
// non-overlapping r x r patch (ragged at the edges) and over channels.
// Argmin ties break on the first hit scanning rows, then columns, then
// channels.
FpmpResult fpmp(const Image& img, int r);

// Same, for an already-computed transform.
FpmpResult fpmp_of(const FrameletCoeffs& coeffs, int r);

// Framelet dark channel: sliding min over centered r x r windows (clamped at
// the borders, r odd) per band and channels, tiled into a 3m x 3n map with
// band (i,j) at tile (i,j).
Image fdc(const Image& img, int r);

// (W^T(M o Wx), W^T((1-M) o Wx)); the two parts sum back to img.
std::pair<Image, Image> split_by_mask(const Image& img, const MinMask& mask);

// Coefficient values at the masked positions, in canonical order.
FpmpVector extract_masked(const FrameletCoeffs& coeffs, const MinMask& mask);

// W^T P_w^T(n): values placed at their masked positions, then synthesized.
Image scatter_minima(const FpmpVector& n, const MinMask& mask);

// Raw-pixel baselines of the two priors (no framelet transform).
std::vector<double> pmp(const Image& img, int r);
Image dark_channel(const Image& img, int r);

}  // namespace fpmp
