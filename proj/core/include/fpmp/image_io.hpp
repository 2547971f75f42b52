#pragma once

#include <string>

#include "fpmp/image.hpp"

namespace fpmp {

struct LoadedImage {
  Image image;
  int maxval = 255;  // 255 or 65535, from the file's bit depth
};

// PGM (P2/P5, 8- or 16-bit) and PNG (gray or RGB, 8- or 16-bit; alpha
// stripped). Values are kept in raw integer units as doubles.
LoadedImage read_image(const std::string& path);

// Format chosen by extension (.pgm or .png). Values are clipped to
// [0, maxval] and rounded. PNG color requires maxval 255.
void write_image(const std::string& path, const Image& img, int maxval);

// Plain-text kernel: first line "rows cols", then one row per line.
Kernel read_kernel_txt(const std::string& path);
void write_kernel_txt(const std::string& path, const Kernel& k);

// Kernel rescaled so its maximum maps to white, for visual inspection.
void write_kernel_image(const std::string& path, const Kernel& k);

}  // namespace fpmp
