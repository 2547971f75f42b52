#include <doctest.h>

#include <cmath>
#include <random>

#include "fpmp/degrade.hpp"
#include "fpmp/fft.hpp"
#include "fpmp/framelet.hpp"
#include "support/generators.hpp"
#include "support/phantom.hpp"

using namespace fpmp;
using fpmp::testing::make_grainy_phantom;
using fpmp::testing::make_phantom;
using fpmp::testing::random_image;

namespace {

double band_energy(const FrameletCoeffs& c) {
  double s = 0.0;
  for (const Image& band : c.bands)
    for (double v : band.data) s += v * v;
  return s;
}

std::size_t zero_count(const std::vector<double>& values, double eps = 1e-6) {
  std::size_t n = 0;
  for (double v : values)
    if (std::abs(v) < eps) ++n;
  return n;
}

}  // namespace

TEST_CASE("analysis: constant image concentrates in the low-pass band") {
  Image img(6, 8, 1, 5.0);
  const FrameletCoeffs c = framelet_analysis(img);
  for (double v : c.bands[0].data) CHECK(v == doctest::Approx(5.0).epsilon(1e-15));
  for (int b = 1; b < 9; ++b)
    for (double v : c.bands[b].data) CHECK(std::abs(v) < 1e-14);
}

TEST_CASE("analysis: h1 taps are (sqrt(2)/4, 0, -sqrt(2)/4)") {
  CHECK(kFrameletH1[0] == doctest::Approx(std::sqrt(2.0) / 4.0).epsilon(1e-16));
  CHECK(kFrameletH1[1] == 0.0);
  CHECK(kFrameletH1[2] == doctest::Approx(-std::sqrt(2.0) / 4.0).epsilon(1e-16));
}

TEST_CASE("analysis: Parseval identity on random images") {
  std::mt19937_64 rng(21);
  const Image img = random_image(8, 8, rng);
  const FrameletCoeffs c = framelet_analysis(img);
  double img_energy = 0.0;
  for (double v : img.data) img_energy += v * v;
  CHECK(band_energy(c) == doctest::Approx(img_energy).epsilon(1e-10));
}

TEST_CASE("synthesis: perfect reconstruction to 1e-10") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 5; ++trial) {
    const Image img = random_image(16, 16, rng, trial == 0 ? 3 : 1);
    const Image back = framelet_synthesis(framelet_analysis(img));
    for (std::size_t i = 0; i < img.data.size(); ++i)
      CHECK(std::abs(back.data[i] - img.data[i]) < 1e-10);
  }
}

TEST_CASE("synthesis: zero coefficients give the zero image") {
  FrameletCoeffs c;
  for (auto& band : c.bands) band = Image(5, 5);
  const Image out = framelet_synthesis(c);
  for (double v : out.data) CHECK(v == 0.0);
}

TEST_CASE("synthesis: single low-pass atom checked by the adjoint identity") {
  // <W x, e> = <x, W^T e> for the unit coefficient e
  std::mt19937_64 rng(23);
  const Image x = random_image(8, 8, rng);
  FrameletCoeffs e;
  for (auto& band : e.bands) band = Image(8, 8);
  e.bands[0].at(3, 4) = 1.0;
  const Image atom = framelet_synthesis(e);
  const FrameletCoeffs wx = framelet_analysis(x);
  CHECK(dot(x, atom) == doctest::Approx(wx.bands[0].at(3, 4)).epsilon(1e-12));
}

TEST_CASE("synthesis: mismatched band shapes are rejected") {
  FrameletCoeffs c;
  for (auto& band : c.bands) band = Image(5, 5);
  c.bands[4] = Image(6, 5);
  CHECK_THROWS_AS(framelet_synthesis(c), std::invalid_argument);
}

TEST_CASE("fpmp: constant 6x6 image with r=3") {
  Image img(6, 6, 1, 2.5);
  const FpmpResult res = fpmp::fpmp(img, 3);
  REQUIRE(res.minima.values.size() == 36);
  int at_c = 0, at_zero = 0;
  for (std::size_t i = 0; i < res.minima.values.size(); ++i) {
    if (std::abs(res.minima.values[i] - 2.5) < 1e-12) ++at_c;
    if (std::abs(res.minima.values[i]) < 1e-12) ++at_zero;
  }
  CHECK(at_c == 4);
  CHECK(at_zero == 32);
}

TEST_CASE("fpmp: r=1 returns every coefficient and an all-ones mask") {
  std::mt19937_64 rng(24);
  const Image img = random_image(4, 5, rng);
  const FpmpResult res = fpmp::fpmp(img, 1);
  const FrameletCoeffs c = framelet_analysis(img);
  REQUIRE(res.minima.values.size() == 9u * 4 * 5);
  for (int b = 0; b < 9; ++b) {
    for (double bit : res.mask.bits[b].data) CHECK(bit == 1.0);
    for (int r = 0; r < 4; ++r)
      for (int col = 0; col < 5; ++col) {
        const double got =
            res.minima.values[(static_cast<std::size_t>(b) * 4 + r) * 5 + col];
        CHECK(got == doctest::Approx(c.bands[b].at(r, col)).epsilon(1e-15));
      }
  }
}

TEST_CASE("fpmp: multi-channel minima reduce over channels") {
  Image img(4, 4, 3);
  for (int ch = 0; ch < 3; ++ch)
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) img.at(r, c, ch) = 10.0 + ch + 0.1 * r;
  const FpmpResult res = fpmp::fpmp(img, 4);
  // low-pass band: channel 0 has the smallest values everywhere
  CHECK(res.minima.values[0] == doctest::Approx(10.1).epsilon(1e-12));  // low-pass of 10 + 0.1r, channel 0
  double mask_sum = 0.0;
  for (int b = 0; b < 9; ++b)
    for (double v : res.mask.bits[b].data) mask_sum += v;
  CHECK(mask_sum == 9.0);  // one bit per band for the single patch
}

TEST_CASE("fpmp: blur does not reduce the near-zero count (Fig. 1 behaviour)") {
  const Image clear = make_phantom(96, 96);
  const Kernel k = make_psf(PsfSpec::parse("gaussian:9:1.7320508075688772"));
  const Image blurred = conv2_periodic(clear, k);
  const FpmpResult pc = fpmp::fpmp(clear, 8);
  const FpmpResult pb = fpmp::fpmp(blurred, 8);
  CHECK(zero_count(pb.minima.values) >= zero_count(pc.minima.values));
}

TEST_CASE("fpmp: blur raises patch minima on nearly all entries (monotonicity)") {
  const Image clear = make_grainy_phantom(96, 96);
  const Kernel k = make_psf(PsfSpec::parse("gaussian:9:1.7320508075688772"));
  const Image blurred = conv2_periodic(clear, k);
  const FpmpResult pc = fpmp::fpmp(clear, 8);
  const FpmpResult pb = fpmp::fpmp(blurred, 8);
  REQUIRE(pb.minima.values.size() == pc.minima.values.size());
  std::size_t ok = 0;
  double mean_clear = 0.0, mean_blur = 0.0;
  for (std::size_t i = 0; i < pc.minima.values.size(); ++i) {
    if (pb.minima.values[i] >= pc.minima.values[i] - 1e-9) ++ok;
    mean_clear += pc.minima.values[i];
    mean_blur += pb.minima.values[i];
  }
  CHECK(ok >= static_cast<std::size_t>(0.95 * static_cast<double>(pc.minima.values.size())));
  CHECK(mean_blur >= mean_clear);
}

TEST_CASE("fdc: constant image tiles") {
  Image img(5, 7, 1, 3.0);
  const Image d = fdc(img, 3);
  REQUIRE(d.rows == 15);
  REQUIRE(d.cols == 21);
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 7; ++c) CHECK(d.at(r, c) == doctest::Approx(3.0).epsilon(1e-14));
  for (int r = 5; r < 15; ++r)
    for (int c = 0; c < 21; ++c) CHECK(std::abs(d.at(r, c)) < 1e-13);
}

TEST_CASE("fdc: r=1 equals the channel-min of the coefficients") {
  std::mt19937_64 rng(25);
  const Image img = random_image(6, 6, rng, 3);
  const Image d = fdc(img, 1);
  const FrameletCoeffs c = framelet_analysis(img);
  for (int b = 0; b < 9; ++b)
    for (int r = 0; r < 6; ++r)
      for (int col = 0; col < 6; ++col) {
        double mn = c.bands[b].at(r, col, 0);
        for (int ch = 1; ch < 3; ++ch) mn = std::min(mn, c.bands[b].at(r, col, ch));
        CHECK(d.at(b / 3 * 6 + r, b % 3 * 6 + col) == doctest::Approx(mn).epsilon(1e-15));
      }
}

TEST_CASE("fdc: even window size is rejected") {
  CHECK_THROWS_AS(fdc(Image(4, 4, 1, 1.0), 2), std::invalid_argument);
}

TEST_CASE("fdc: blur raises the dark channel on >= 95% of entries") {
  const Image clear = make_grainy_phantom(80, 80);
  const Kernel k = make_psf(PsfSpec::parse("gaussian:9:1.7320508075688772"));
  const Image blurred = conv2_periodic(clear, k);
  const Image dc = fdc(clear, 5);
  const Image db = fdc(blurred, 5);
  std::size_t ok = 0;
  for (std::size_t i = 0; i < dc.data.size(); ++i)
    if (db.data[i] >= dc.data[i] - 1e-9) ++ok;
  CHECK(ok >= static_cast<std::size_t>(0.95 * static_cast<double>(dc.data.size())));
}

TEST_CASE("split_by_mask: all-ones and all-zero masks") {
  std::mt19937_64 rng(26);
  const Image img = random_image(6, 6, rng);
  const FpmpResult res = fpmp::fpmp(img, 1);  // all-ones mask
  auto [kept, rest] = split_by_mask(img, res.mask);
  for (std::size_t i = 0; i < img.data.size(); ++i) {
    CHECK(std::abs(kept.data[i] - img.data[i]) < 1e-10);
    CHECK(std::abs(rest.data[i]) < 1e-10);
  }

  MinMask zeros = res.mask;
  for (auto& bits : zeros.bits)
    for (double& v : bits.data) v = 0.0;
  auto [kept0, rest0] = split_by_mask(img, zeros);
  for (std::size_t i = 0; i < img.data.size(); ++i) {
    CHECK(std::abs(kept0.data[i]) < 1e-10);
    CHECK(std::abs(rest0.data[i] - img.data[i]) < 1e-10);
  }
}

TEST_CASE("split_by_mask: the two parts always reassemble the image") {
  std::mt19937_64 rng(27);
  const Image img = random_image(13, 9, rng);
  const FpmpResult res = fpmp::fpmp(img, 4);
  auto [kept, rest] = split_by_mask(img, res.mask);
  for (std::size_t i = 0; i < img.data.size(); ++i)
    CHECK(std::abs(kept.data[i] + rest.data[i] - img.data[i]) < 1e-10);

  MinMask bad = res.mask;
  bad.bits[2] = Image(5, 5);
  CHECK_THROWS_AS(split_by_mask(img, bad), std::invalid_argument);
}

TEST_CASE("mask partition: every coefficient lands in exactly one side") {
  std::mt19937_64 rng(28);
  const Image img = random_image(10, 10, rng);
  const FpmpResult res = fpmp::fpmp(img, 3);
  std::size_t bits = 0;
  for (int b = 0; b < 9; ++b)
    for (double v : res.mask.bits[b].data) {
      CHECK((v == 0.0 || v == 1.0));
      if (v == 1.0) ++bits;
    }
  CHECK(bits == res.mask.set_count());
  CHECK(bits == 9u * 4 * 4);
}

TEST_CASE("scatter_minima: restriction then scatter equals the masked part") {
  std::mt19937_64 rng(29);
  const Image img = random_image(9, 9, rng);
  const FpmpResult res = fpmp::fpmp(img, 3);
  const Image scattered = scatter_minima(res.minima, res.mask);
  const Image kept = split_by_mask(img, res.mask).first;
  for (std::size_t i = 0; i < img.data.size(); ++i)
    CHECK(std::abs(scattered.data[i] - kept.data[i]) < 1e-10);
}

TEST_CASE("scatter_minima: zero vector, single atom, length mismatch") {
  std::mt19937_64 rng(30);
  const Image img = random_image(6, 6, rng);
  FpmpResult res = fpmp::fpmp(img, 3);

  FpmpVector zeros = res.minima;
  for (double& v : zeros.values) v = 0.0;
  const Image out = scatter_minima(zeros, res.mask);
  for (double v : out.data) CHECK(std::abs(v) < 1e-12);

  // single unit entry: adjoint identity against the analysis of a probe
  FpmpVector single = zeros;
  single.values[5] = 1.0;
  const Image atom = scatter_minima(single, res.mask);
  const FrameletCoeffs probe = framelet_analysis(img);
  const FpmpVector gathered = extract_masked(probe, res.mask);
  CHECK(dot(atom, img) == doctest::Approx(gathered.values[5]).epsilon(1e-10));

  FpmpVector bad = zeros;
  bad.values.pop_back();
  CHECK_THROWS_AS(scatter_minima(bad, res.mask), std::invalid_argument);
}

TEST_CASE("extract_masked: recovers the fpmp values") {
  std::mt19937_64 rng(31);
  const Image img = random_image(12, 7, rng);
  const FpmpResult res = fpmp::fpmp(img, 5);
  const FpmpVector gathered = extract_masked(framelet_analysis(img), res.mask);
  REQUIRE(gathered.values.size() == res.minima.values.size());
  for (std::size_t i = 0; i < gathered.values.size(); ++i)
    CHECK(gathered.values[i] == doctest::Approx(res.minima.values[i]).epsilon(1e-14));
}

TEST_CASE("pmp/dark_channel: raw-pixel baselines") {
  Image img(6, 6, 1, 7.0);
  img.at(2, 3) = 1.0;
  const std::vector<double> p = pmp(img, 3);
  REQUIRE(p.size() == 4);
  CHECK(p[1] == 1.0);  // patch containing (2,3)
  CHECK(p[0] == 7.0);

  const Image d = dark_channel(img, 3);
  CHECK(d.at(2, 3) == 1.0);
  CHECK(d.at(3, 4) == 1.0);  // window reaches the dip
  CHECK(d.at(0, 0) == 7.0);
  CHECK_THROWS_AS(dark_channel(img, 4), std::invalid_argument);
}
