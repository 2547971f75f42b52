#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "fpmp/metrics.hpp"
#include "support/generators.hpp"

using namespace fpmp;
using fpmp::testing::random_image;

TEST_CASE("psnr: identical images hit the infinity sentinel, capped in text") {
  std::mt19937_64 rng(51);
  const Image img = random_image(8, 8, rng);
  const double value = psnr(img, img, 255.0);
  CHECK(std::isinf(value));
  CHECK(psnr_display(value) == kPsnrDisplayCap);
  CHECK(psnr_display(31.7) == 31.7);
}

TEST_CASE("psnr: MSE equal to peak^2 gives 0 dB") {
  Image zeros(4, 4);
  Image bright(4, 4, 1, 255.0);
  CHECK(psnr(zeros, bright, 255.0) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(mse(zeros, bright) == doctest::Approx(255.0 * 255.0).epsilon(1e-15));
}

TEST_CASE("psnr: symmetric and shape-checked") {
  std::mt19937_64 rng(52);
  const Image a = random_image(6, 6, rng);
  const Image b = random_image(6, 6, rng);
  CHECK(psnr(a, b, 1.0) == doctest::Approx(psnr(b, a, 1.0)).epsilon(1e-14));
  CHECK_THROWS_AS(psnr(a, Image(5, 6), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(psnr(a, b, 0.0), std::invalid_argument);
}

TEST_CASE("ssim: identical images score exactly 1") {
  std::mt19937_64 rng(53);
  const Image img = random_image(8, 8, rng);
  CHECK(ssim(img, img, 255.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("ssim: constant shift has unit structure term, closed form") {
  std::mt19937_64 rng(54);
  const Image u = random_image(16, 16, rng, 1, 0.0, 200.0);
  const double shift = 25.0;
  Image shifted = u;
  for (double& v : shifted.data) v += shift;

  double mean = 0.0;
  for (double v : u.data) mean += v;
  mean /= static_cast<double>(u.data.size());
  const double c1 = (0.01 * 255.0) * (0.01 * 255.0);
  const double expected = (2.0 * mean * (mean + shift) + c1) /
                          (mean * mean + (mean + shift) * (mean + shift) + c1);
  CHECK(ssim(u, shifted, 255.0) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(ssim(u, shifted, 255.0) < 1.0);
}

TEST_CASE("ssim: zero-variance against random, direct statistics oracle") {
  std::mt19937_64 rng(55);
  const Image flat(8, 8, 1, 100.0);
  const Image noisy = random_image(8, 8, rng, 1, 50.0, 150.0);

  const double n = static_cast<double>(noisy.data.size());
  double mo = 100.0, mr = 0.0;
  for (double v : noisy.data) mr += v;
  mr /= n;
  double var = 0.0, cov = 0.0;
  for (double v : noisy.data) var += (v - mr) * (v - mr);
  var /= n;
  const double c1 = (0.01 * 255.0) * (0.01 * 255.0);
  const double c2 = (0.03 * 255.0) * (0.03 * 255.0);
  const double expected =
      (2.0 * mo * mr + c1) * (2.0 * cov + c2) / ((mo * mo + mr * mr + c1) * (0.0 + var + c2));
  const double got = ssim(flat, noisy, 255.0);
  CHECK(got == doctest::Approx(expected).epsilon(1e-12));
  CHECK(got > 0.0);
  CHECK(got < 1.0);
}

TEST_CASE("ssim: symmetric in its operands and bounded by 1") {
  std::mt19937_64 rng(56);
  for (int trial = 0; trial < 20; ++trial) {
    const Image a = random_image(8, 8, rng, 1, 0.0, 255.0);
    const Image b = random_image(8, 8, rng, 1, 0.0, 255.0);
    const double ab = ssim(a, b, 255.0);
    CHECK(ab == doctest::Approx(ssim(b, a, 255.0)).epsilon(1e-14));
    CHECK(ab <= 1.0);
  }
}

TEST_CASE("rel_change: basic values and the direct-norm oracle") {
  std::mt19937_64 rng(57);
  const Image x = random_image(7, 9, rng);
  CHECK(rel_change(x, x) == 0.0);

  Image doubled = x;
  for (double& v : doubled.data) v *= 2.0;
  CHECK(rel_change(doubled, x) == doctest::Approx(1.0).epsilon(1e-14));

  const Image y = random_image(7, 9, rng);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.data.size(); ++i) {
    num += (y.data[i] - x.data[i]) * (y.data[i] - x.data[i]);
    den += x.data[i] * x.data[i];
  }
  CHECK(rel_change(y, x) == doctest::Approx(std::sqrt(num) / std::sqrt(den)).epsilon(1e-14));
}

TEST_CASE("rel_change: scale invariance and zero-norm rejection") {
  std::mt19937_64 rng(58);
  const Image a = random_image(6, 6, rng);
  const Image b = random_image(6, 6, rng);
  Image ca = a, cb = b;
  for (double& v : ca.data) v *= 3.7;
  for (double& v : cb.data) v *= 3.7;
  CHECK(rel_change(ca, cb) == doctest::Approx(rel_change(a, b)).epsilon(1e-13));
  CHECK_THROWS_AS(rel_change(a, Image(6, 6)), std::invalid_argument);
}

TEST_CASE("evaluate: bundles the three metrics") {
  std::mt19937_64 rng(59);
  const Image a = random_image(8, 8, rng, 1, 0.0, 255.0);
  const Image b = random_image(8, 8, rng, 1, 0.0, 255.0);
  const QualityReport r = evaluate(a, b, 255.0);
  CHECK(r.mse == doctest::Approx(mse(a, b)).epsilon(1e-15));
  CHECK(r.psnr == doctest::Approx(psnr(a, b, 255.0)).epsilon(1e-15));
  CHECK(r.ssim == doctest::Approx(ssim(a, b, 255.0)).epsilon(1e-15));
}
