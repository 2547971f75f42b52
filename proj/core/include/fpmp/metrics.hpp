#pragma once

#include "fpmp/image.hpp"

namespace fpmp {

struct QualityReport {
  double psnr = 0.0;
  double ssim = 0.0;
  double mse = 0.0;
};

double mse(const Image& a, const Image& b);

// 10 log10(peak^2 / MSE); +infinity for identical images.
double psnr(const Image& a, const Image& b, double peak);

// Cap used when printing PSNR of identical images.
inline constexpr double kPsnrDisplayCap = 99.0;
double psnr_display(double value);

// Single-formula SSIM over whole-image statistics (population variances and
// covariance), C1 = (0.01 peak)^2, C2 = (0.03 peak)^2.
double ssim(const Image& a, const Image& b, double peak);

// ||x_new - x_old||_F / ||x_old||_F
double rel_change(const Image& x_new, const Image& x_old);

QualityReport evaluate(const Image& test, const Image& reference, double peak);

}  // namespace fpmp
