#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "fpmp/image.hpp"

namespace fpmp {

enum class PsfKind { gaussian, motion, average, disk };

struct PsfSpec {
  PsfKind kind = PsfKind::average;
  int size = 3;            // gaussian, average
  double sigma = 1.0;      // gaussian
  double length = 1.0;     // motion
  double angle_deg = 0.0;  // motion, counterclockwise
  double radius = 1.0;     // disk

  // "kind:a[:b]", e.g. "gaussian:9:1.7321", "motion:20:45", "average:3",
  // "disk:5".
  static PsfSpec parse(const std::string& text);
};

Kernel make_psf(const PsfSpec& spec);

struct NoiseSpec {
  double peak = 255.0;
  std::uint64_t seed = 0;
};

// One Poisson variate. Sequential-search inversion below mean 30, Hormann's
// PTRS transformed rejection above; both consume a variable number of
// uniforms, so cross-language reimplementations agree statistically rather
// than bitwise.
std::uint64_t poisson_draw(double mean, std::mt19937_64& rng);

// Scales img so its maximum equals peak, then replaces every pixel by a
// Poisson draw with that mean. Output stays in count units.
Image poisson_corrupt(const Image& img, const NoiseSpec& noise);

}  // namespace fpmp
