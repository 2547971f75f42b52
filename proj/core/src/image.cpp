#include "fpmp/image.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fpmp {

Image::Image(int rows_, int cols_, int channels_, double fill)
    : rows(rows_), cols(cols_), channels(channels_),
      data(static_cast<std::size_t>(rows_) * cols_ * channels_, fill) {
  if (rows_ < 1 || cols_ < 1) throw std::invalid_argument("Image: dimensions must be positive");
  if (channels_ != 1 && channels_ != 3) throw std::invalid_argument("Image: channels must be 1 or 3");
}

Kernel::Kernel(int rows_, int cols_, double fill)
    : rows(rows_), cols(cols_), data(static_cast<std::size_t>(rows_) * cols_, fill) {
  if (rows_ < 1 || cols_ < 1) throw std::invalid_argument("Kernel: dimensions must be positive");
}

double Kernel::sum() const { return std::accumulate(data.begin(), data.end(), 0.0); }

void Kernel::validate() const {
  for (double v : data)
    if (!(v >= 0.0)) throw std::invalid_argument("Kernel: entries must be non-negative");
  if (std::abs(sum() - 1.0) > 1e-12)
    throw std::invalid_argument("Kernel: entries must sum to 1");
}

double min_value(const Image& img) { return *std::min_element(img.data.begin(), img.data.end()); }

double max_value(const Image& img) { return *std::max_element(img.data.begin(), img.data.end()); }

double frob_norm(const Image& img) {
  double s = 0.0;
  for (double v : img.data) s += v * v;
  return std::sqrt(s);
}

double dot(const Image& a, const Image& b) {
  require_same_shape(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) s += a.data[i] * b.data[i];
  return s;
}

bool all_finite(const Image& img) {
  for (double v : img.data)
    if (!std::isfinite(v)) return false;
  return true;
}

Image clamp_nonneg(Image img) {
  for (double& v : img.data) v = std::max(v, 0.0);
  return img;
}

void require_same_shape(const Image& a, const Image& b, const char* what) {
  if (!a.same_shape(b)) throw std::invalid_argument(std::string(what) + ": shape mismatch");
}

}  // namespace fpmp
