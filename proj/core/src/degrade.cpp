#include "fpmp/degrade.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace fpmp {

PsfSpec PsfSpec::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t pos = text.find(':', start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  if (parts.empty()) throw std::invalid_argument("psf spec: empty");

  auto need = [&](std::size_t n) {
    if (parts.size() != n + 1)
      throw std::invalid_argument("psf spec '" + text + "': wrong number of parameters");
  };
  PsfSpec s;
  if (parts[0] == "gaussian") {
    need(2);
    s.kind = PsfKind::gaussian;
    s.size = std::stoi(parts[1]);
    s.sigma = std::stod(parts[2]);
  } else if (parts[0] == "motion") {
    need(2);
    s.kind = PsfKind::motion;
    s.length = std::stod(parts[1]);
    s.angle_deg = std::stod(parts[2]);
  } else if (parts[0] == "average") {
    need(1);
    s.kind = PsfKind::average;
    s.size = std::stoi(parts[1]);
  } else if (parts[0] == "disk") {
    need(1);
    s.kind = PsfKind::disk;
    s.radius = std::stod(parts[1]);
  } else {
    throw std::invalid_argument("psf spec: unknown kind '" + parts[0] + "'");
  }
  return s;
}

namespace {

Kernel normalized(Kernel k) {
  const double s = k.sum();
  if (s <= 0.0) throw std::invalid_argument("make_psf: kernel sums to zero");
  for (double& v : k.data) v /= s;
  return k;
}

Kernel make_gaussian(int size, double sigma) {
  if (size < 1 || sigma <= 0.0) throw std::invalid_argument("make_psf: gaussian needs size >= 1, sigma > 0");
  Kernel k(size, size);
  const double c = (size - 1) / 2.0;
  for (int r = 0; r < size; ++r)
    for (int col = 0; col < size; ++col) {
      const double dr = r - c, dc = col - c;
      k.at(r, col) = std::exp(-(dr * dr + dc * dc) / (2.0 * sigma * sigma));
    }
  return normalized(std::move(k));
}

Kernel make_average(int size) {
  if (size < 1) throw std::invalid_argument("make_psf: average needs size >= 1");
  Kernel k(size, size, 1.0);
  return normalized(std::move(k));
}

// Symmetric line segment through the kernel center, rasterized by bilinear
// splatting of densely spaced samples.
Kernel make_motion(double length, double angle_deg) {
  if (length <= 0.0) throw std::invalid_argument("make_psf: motion needs length > 0");
  if (length <= 1.0) return Kernel::delta();
  const double theta = angle_deg * std::numbers::pi / 180.0;
  const double half = (length - 1.0) / 2.0;
  const double hx = half * std::cos(theta);
  const double hy = half * std::sin(theta);
  const int extent = static_cast<int>(std::ceil(std::max(std::abs(hx), std::abs(hy))));
  const int size = 2 * extent + 1;
  Kernel k(size, size);
  const int samples = std::max(64, static_cast<int>(length) * 64);
  for (int s = 0; s <= samples; ++s) {
    const double t = 2.0 * s / samples - 1.0;  // [-1, 1]
    // image rows grow downward; counterclockwise angle means -row direction
    const double x = extent + t * hx;
    const double y = extent - t * hy;
    const int c0 = static_cast<int>(std::floor(x));
    const int r0 = static_cast<int>(std::floor(y));
    const double fx = x - c0, fy = y - r0;
    const double w[4] = {(1 - fx) * (1 - fy), fx * (1 - fy), (1 - fx) * fy, fx * fy};
    const int rr[4] = {r0, r0, r0 + 1, r0 + 1};
    const int cc[4] = {c0, c0 + 1, c0, c0 + 1};
    for (int i = 0; i < 4; ++i)
      if (w[i] > 0.0 && rr[i] >= 0 && rr[i] < size && cc[i] >= 0 && cc[i] < size)
        k.at(rr[i], cc[i]) += w[i];
  }
  return normalized(std::move(k));
}

// Disk indicator with supersampled boundary coverage.
Kernel make_disk(double radius) {
  if (radius <= 0.0) throw std::invalid_argument("make_psf: disk needs radius > 0");
  const int extent = static_cast<int>(std::ceil(radius));
  const int size = 2 * extent + 1;
  const int sub = 8;
  Kernel k(size, size);
  for (int r = 0; r < size; ++r)
    for (int c = 0; c < size; ++c) {
      int inside = 0;
      for (int i = 0; i < sub; ++i)
        for (int j = 0; j < sub; ++j) {
          const double dy = r - extent + (i + 0.5) / sub - 0.5;
          const double dx = c - extent + (j + 0.5) / sub - 0.5;
          if (dx * dx + dy * dy <= radius * radius) ++inside;
        }
      k.at(r, c) = static_cast<double>(inside) / (sub * sub);
    }
  return normalized(std::move(k));
}

}  // namespace

Kernel make_psf(const PsfSpec& spec) {
  switch (spec.kind) {
    case PsfKind::gaussian: return make_gaussian(spec.size, spec.sigma);
    case PsfKind::average: return make_average(spec.size);
    case PsfKind::motion: return make_motion(spec.length, spec.angle_deg);
    case PsfKind::disk: return make_disk(spec.radius);
  }
  throw std::invalid_argument("make_psf: bad kind");
}

namespace {

double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t poisson_inversion(double mean, std::mt19937_64& rng) {
  const double limit = std::exp(-mean);
  std::uint64_t k = 0;
  double p = 1.0;
  do {
    ++k;
    p *= next_uniform(rng);
  } while (p > limit);
  return k - 1;
}

// Hormann (1993), algorithm PTRS.
std::uint64_t poisson_ptrs(double mean, std::mt19937_64& rng) {
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mean = std::log(mean);
  for (;;) {
    const double u = next_uniform(rng) - 0.5;
    const double v = next_uniform(rng);
    const double us = 0.5 - std::abs(u);
    if (us <= 0.0) continue;
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        k * log_mean - mean - std::lgamma(k + 1.0))
      return static_cast<std::uint64_t>(k);
  }
}

}  // namespace

std::uint64_t poisson_draw(double mean, std::mt19937_64& rng) {
  if (!(mean >= 0.0) || !std::isfinite(mean))
    throw std::invalid_argument("poisson_draw: mean must be finite and >= 0");
  if (mean == 0.0) return 0;
  if (mean < 30.0) return poisson_inversion(mean, rng);
  return poisson_ptrs(mean, rng);
}

Image poisson_corrupt(const Image& img, const NoiseSpec& noise) {
  if (!(noise.peak > 0.0)) throw std::invalid_argument("poisson_corrupt: peak must be > 0");
  const double mx = max_value(img);
  if (!(mx > 0.0)) throw std::invalid_argument("poisson_corrupt: image has no positive values");
  if (min_value(img) < 0.0) throw std::invalid_argument("poisson_corrupt: image must be non-negative");
  const double scale = noise.peak / mx;
  std::mt19937_64 rng(noise.seed);
  Image out(img.rows, img.cols, img.channels);
  for (std::size_t i = 0; i < img.data.size(); ++i)
    out.data[i] = static_cast<double>(poisson_draw(img.data[i] * scale, rng));
  return out;
}

}  // namespace fpmp
