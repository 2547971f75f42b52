#pragma once

#include <cstddef>
#include <vector>

namespace fpmp {

// Dense 2-D image with 1 or 3 channels, planar layout (each channel is a
// contiguous row-major plane). All pipeline math runs on doubles.
struct Image {
  int rows = 0;
  int cols = 0;
  int channels = 1;
  std::vector<double> data;

  Image() = default;
  Image(int rows_, int cols_, int channels_ = 1, double fill = 0.0);

  std::size_t pixels() const { return static_cast<std::size_t>(rows) * cols; }
  std::size_t size() const { return data.size(); }

  double& at(int r, int c, int ch = 0) {
    return data[static_cast<std::size_t>(ch) * pixels() + static_cast<std::size_t>(r) * cols + c];
  }
  double at(int r, int c, int ch = 0) const {
    return data[static_cast<std::size_t>(ch) * pixels() + static_cast<std::size_t>(r) * cols + c];
  }

  double* plane(int ch) { return data.data() + static_cast<std::size_t>(ch) * pixels(); }
  const double* plane(int ch) const { return data.data() + static_cast<std::size_t>(ch) * pixels(); }

  bool same_shape(const Image& o) const {
    return rows == o.rows && cols == o.cols && channels == o.channels;
  }
};

// Blur kernel: small non-negative 2-D array summing to 1. The anchor (origin
// of the convolution stencil) is floor(size/2) in each dimension.
struct Kernel {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Kernel() = default;
  Kernel(int rows_, int cols_, double fill = 0.0);

  int anchor_row() const { return rows / 2; }
  int anchor_col() const { return cols / 2; }

  double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }

  double sum() const;
  // Throws std::invalid_argument unless entries are >= 0 and sum to 1
  // within 1e-12.
  void validate() const;

  static Kernel delta() {
    Kernel k(1, 1);
    k.data[0] = 1.0;
    return k;
  }
};

double min_value(const Image& img);
double max_value(const Image& img);
double frob_norm(const Image& img);
double dot(const Image& a, const Image& b);
bool all_finite(const Image& img);

// max(img, 0) elementwise
Image clamp_nonneg(Image img);

void require_same_shape(const Image& a, const Image& b, const char* what);

}  // namespace fpmp
