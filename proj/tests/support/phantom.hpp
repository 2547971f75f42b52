#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fpmp/image.hpp"

namespace fpmp::testing {

// Deterministic grayscale test scene: flat background, a soft hill, a bright
// block, a shaded dark figure, an exact black hole and a thin pole, plus
// faint high-frequency textures. The background and textures are periodic-
// friendly (no wrap jump) and locally planar, so away from feature edges the
// high-pass framelet bands carry only the textures: above 1e-6 in the clean
// image, below it after a 9x9 Gaussian blur.
inline Image make_phantom(int rows, int cols) {
  Image img(rows, cols, 1, 70.0);
  const double hx = 0.30 * rows, hy = 0.66 * cols, hr = 0.25 * rows;
  const double ex = 0.62 * rows, ey = 0.34 * cols, ea = 0.27 * rows, eb = 0.20 * cols;
  const double dx = 0.26 * rows, dy = 0.16 * cols, dr = 0.10 * rows;

  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double v = 70.0;
      const double hd = std::sqrt((r - hx) * (r - hx) + (c - hy) * (c - hy));
      if (hd < hr) {
        const double w = std::cos(std::numbers::pi * hd / (2.0 * hr));
        v += 45.0 * w * w;  // compactly supported soft hill
      }
      if (r > 0.70 * rows && r < 0.90 * rows && c > 0.42 * cols && c < 0.62 * cols)
        v = 190.0;  // bright block
      const double er = (r - ex) / ea, ec = (c - ey) / eb;
      if (er * er + ec * ec < 1.0) v = 8.0 + 30.0 * (er * er + ec * ec);  // dark figure
      if (std::abs(c - 0.8 * cols) < 1.5 && r > 0.55 * rows && r < 0.92 * rows)
        v = 15.0;  // thin pole
      img.at(r, c) = v;
    }
  }

  // textures (all of period 2 or 4, exactly periodic for multiple-of-4 dims):
  // amplitudes keep every high-pass band of the clean image above the 1e-6
  // zero threshold while the blur pushes them below it
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      double t = 0.02 * ((r + c) % 2 ? -1.0 : 1.0);  // checker
      t += 1e-4 * ((r % 2) ? -1.0 : 1.0);            // row stripes
      t += 1e-4 * ((c % 2) ? -1.0 : 1.0);            // column stripes
      t += 1e-3 * std::cos(std::numbers::pi * r / 2.0) * std::cos(std::numbers::pi * c / 2.0);
      img.at(r, c) += t;
    }

  // exact black hole, no texture
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if ((r - dx) * (r - dx) + (c - dy) * (c - dy) < dr * dr) img.at(r, c) = 0.0;

  return img;
}

// Same scene with broadband film-grain-like texture on top; used where the
// patch-minimum monotonicity under blur is asserted entrywise (real photos
// have a noise floor that dominates the smeared edge lobes).
inline Image make_grainy_phantom(int rows, int cols) {
  Image img = make_phantom(rows, cols);
  const double tau = 2.0 * std::numbers::pi;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      double g = std::sin(tau * 11.0 * r / rows) * std::sin(tau * 17.0 * c / cols);
      g += std::sin(tau * 23.0 * r / rows + 1.1) * std::sin(tau * 7.0 * c / cols + 0.4);
      g += std::sin(tau * 13.0 * r / rows + 2.3) * std::sin(tau * 29.0 * c / cols + 1.7);
      if (img.at(r, c) > 0.0) img.at(r, c) = std::max(img.at(r, c) + 4.0 * g, 0.5);
    }
  return img;
}

// Bright-object-on-dark-sky scene for the blind tests.
inline Image make_satellite_phantom(int rows, int cols) {
  Image img(rows, cols, 1, 2.0);
  const double cx = 0.5 * rows, cy = 0.5 * cols;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const double dr = r - cx, dc = c - cy;
      const double dist = std::sqrt(dr * dr + dc * dc);
      double v = 2.0;
      if (dist < 0.16 * rows) v = 220.0 - 300.0 * dist / rows;  // body
      const double ring = std::abs(dist - 0.27 * rows);
      if (ring < 0.035 * rows && std::abs(dc) > 0.08 * cols) v = std::max(v, 120.0);
      img.at(r, c) = v;
    }
  // a few point sources
  const int pr[4] = {static_cast<int>(0.12 * rows), static_cast<int>(0.2 * rows),
                     static_cast<int>(0.82 * rows), static_cast<int>(0.9 * rows)};
  const int pc[4] = {static_cast<int>(0.8 * cols), static_cast<int>(0.15 * cols),
                     static_cast<int>(0.75 * cols), static_cast<int>(0.3 * cols)};
  for (int i = 0; i < 4; ++i) img.at(pr[i], pc[i]) = 255.0;
  return img;
}

// Smooth interior with a strong left/right luminance mismatch: wrapping it
// periodically creates a sharp jump at the vertical borders, the classic
// ringing provocation.
inline Image make_sharp_border_image(int rows, int cols) {
  Image img(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      double v = 10.0 + 230.0 * c / (cols - 1);
      v += 20.0 * std::exp(-((r - 0.5 * rows) * (r - 0.5 * rows) +
                             (c - 0.5 * cols) * (c - 0.5 * cols)) /
                           (2.0 * 0.15 * rows * 0.15 * rows));
      img.at(r, c) = v;
    }
  return img;
}

}  // namespace fpmp::testing
