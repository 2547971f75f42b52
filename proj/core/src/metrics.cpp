#include "fpmp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fpmp {

double mse(const Image& a, const Image& b) {
  require_same_shape(a, b, "mse");
  double s = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    const double d = a.data[i] - b.data[i];
    s += d * d;
  }
  return s / static_cast<double>(a.data.size());
}

double psnr(const Image& a, const Image& b, double peak) {
  if (!(peak > 0.0)) throw std::invalid_argument("psnr: peak must be > 0");
  const double err = mse(a, b);
  if (err == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / err);
}

double psnr_display(double value) { return std::min(value, kPsnrDisplayCap); }

double ssim(const Image& a, const Image& b, double peak) {
  require_same_shape(a, b, "ssim");
  if (!(peak > 0.0)) throw std::invalid_argument("ssim: peak must be > 0");
  const double n = static_cast<double>(a.data.size());
  double mean_a = 0.0, mean_b = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    mean_a += a.data[i];
    mean_b += b.data[i];
  }
  mean_a /= n;
  mean_b /= n;
  double var_a = 0.0, var_b = 0.0, cov = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    const double da = a.data[i] - mean_a;
    const double db = b.data[i] - mean_b;
    var_a += da * da;
    var_b += db * db;
    cov += da * db;
  }
  var_a /= n;
  var_b /= n;
  cov /= n;
  const double c1 = (0.01 * peak) * (0.01 * peak);
  const double c2 = (0.03 * peak) * (0.03 * peak);
  return (2.0 * mean_a * mean_b + c1) * (2.0 * cov + c2) /
         ((mean_a * mean_a + mean_b * mean_b + c1) * (var_a + var_b + c2));
}

double rel_change(const Image& x_new, const Image& x_old) {
  require_same_shape(x_new, x_old, "rel_change");
  const double denom = frob_norm(x_old);
  if (denom == 0.0) throw std::invalid_argument("rel_change: reference has zero norm");
  double s = 0.0;
  for (std::size_t i = 0; i < x_new.data.size(); ++i) {
    const double d = x_new.data[i] - x_old.data[i];
    s += d * d;
  }
  return std::sqrt(s) / denom;
}

QualityReport evaluate(const Image& test, const Image& reference, double peak) {
  QualityReport r;
  r.mse = mse(test, reference);
  r.psnr = psnr(test, reference, peak);
  r.ssim = ssim(test, reference, peak);
  return r;
}

}  // namespace fpmp
