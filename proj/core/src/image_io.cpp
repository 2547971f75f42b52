#include "fpmp/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace fpmp {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& why) {
  throw std::runtime_error(path + ": " + why);
}

bool has_suffix(const std::string& s, const std::string& suffix) {
  if (s.size() < suffix.size()) return false;
  std::string tail = s.substr(s.size() - suffix.size());
  std::transform(tail.begin(), tail.end(), tail.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return tail == suffix;
}

// ---- PGM ----

int pgm_next_int(std::istream& in, const std::string& path) {
  // skips whitespace and '#' comments
  for (;;) {
    int c = in.peek();
    if (c == '#') {
      std::string line;
      std::getline(in, line);
    } else if (std::isspace(c)) {
      in.get();
    } else {
      break;
    }
  }
  int value = 0;
  if (!(in >> value)) fail(path, "malformed PGM header");
  return value;
}

LoadedImage read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path, "cannot open");
  char m0 = 0, m1 = 0;
  in.get(m0).get(m1);
  if (m0 != 'P' || (m1 != '2' && m1 != '5')) fail(path, "not a PGM file");
  const bool binary = m1 == '5';
  const int cols = pgm_next_int(in, path);
  const int rows = pgm_next_int(in, path);
  const int maxval = pgm_next_int(in, path);
  if (cols < 1 || rows < 1 || maxval < 1 || maxval > 65535) fail(path, "bad PGM header");

  LoadedImage out;
  out.maxval = maxval;
  out.image = Image(rows, cols);
  if (binary) {
    in.get();  // single whitespace after maxval
    const int bytes = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> buf(static_cast<std::size_t>(rows) * cols * bytes);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() != static_cast<std::streamsize>(buf.size())) fail(path, "truncated PGM data");
    for (std::size_t i = 0; i < out.image.data.size(); ++i)
      out.image.data[i] = bytes == 2 ? buf[2 * i] * 256.0 + buf[2 * i + 1] : buf[i];
  } else {
    for (double& v : out.image.data) v = pgm_next_int(in, path);
  }
  return out;
}

void write_pgm(const std::string& path, const Image& img, int maxval) {
  if (img.channels != 1) fail(path, "PGM output is grayscale only");
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(path, "cannot open for writing");
  out << "P5\n" << img.cols << ' ' << img.rows << '\n' << maxval << '\n';
  const int bytes = maxval > 255 ? 2 : 1;
  std::vector<unsigned char> buf(img.data.size() * bytes);
  for (std::size_t i = 0; i < img.data.size(); ++i) {
    const long q = std::lround(std::clamp(img.data[i], 0.0, static_cast<double>(maxval)));
    if (bytes == 2) {
      buf[2 * i] = static_cast<unsigned char>(q >> 8);
      buf[2 * i + 1] = static_cast<unsigned char>(q & 0xff);
    } else {
      buf[i] = static_cast<unsigned char>(q);
    }
  }
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!out) fail(path, "write failed");
}

// ---- PNG ----

struct PngReadCloser {
  png_structp png = nullptr;
  png_infop info = nullptr;
  std::FILE* fp = nullptr;
  ~PngReadCloser() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    if (fp) std::fclose(fp);
  }
};

LoadedImage read_png(const std::string& path) {
  PngReadCloser h;
  h.fp = std::fopen(path.c_str(), "rb");
  if (!h.fp) fail(path, "cannot open");
  h.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!h.png) fail(path, "libpng init failed");
  h.info = png_create_info_struct(h.png);
  if (!h.info) fail(path, "libpng init failed");
  if (setjmp(png_jmpbuf(h.png))) fail(path, "libpng read error");

  png_init_io(h.png, h.fp);
  png_read_info(h.png, h.info);

  png_set_palette_to_rgb(h.png);
  png_set_expand_gray_1_2_4_to_8(h.png);
  png_set_strip_alpha(h.png);
  png_read_update_info(h.png, h.info);

  const int rows = static_cast<int>(png_get_image_height(h.png, h.info));
  const int cols = static_cast<int>(png_get_image_width(h.png, h.info));
  const int depth = png_get_bit_depth(h.png, h.info);
  const int nch = png_get_channels(h.png, h.info);
  if (nch != 1 && nch != 3) fail(path, "unsupported PNG channel count");

  const std::size_t stride = png_get_rowbytes(h.png, h.info);
  std::vector<unsigned char> pixels(stride * rows);
  std::vector<png_bytep> row_ptrs(rows);
  for (int r = 0; r < rows; ++r) row_ptrs[r] = pixels.data() + stride * r;
  png_read_image(h.png, row_ptrs.data());

  LoadedImage out;
  out.maxval = depth == 16 ? 65535 : 255;
  out.image = Image(rows, cols, nch);
  for (int r = 0; r < rows; ++r) {
    const unsigned char* src = row_ptrs[r];
    for (int c = 0; c < cols; ++c)
      for (int ch = 0; ch < nch; ++ch) {
        const std::size_t i = (static_cast<std::size_t>(r) * cols + c) * nch + ch;
        out.image.at(r, c, ch) =
            depth == 16 ? src[2 * i] * 256.0 + src[2 * i + 1] : src[i];  // PNG is big-endian
      }
  }
  return out;
}

struct PngWriteCloser {
  png_structp png = nullptr;
  png_infop info = nullptr;
  std::FILE* fp = nullptr;
  ~PngWriteCloser() {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    if (fp) std::fclose(fp);
  }
};

void write_png(const std::string& path, const Image& img, int maxval) {
  if (maxval != 255 && maxval != 65535) fail(path, "PNG maxval must be 255 or 65535");
  if (img.channels == 3 && maxval != 255) fail(path, "16-bit PNG output is grayscale only");
  PngWriteCloser h;
  h.fp = std::fopen(path.c_str(), "wb");
  if (!h.fp) fail(path, "cannot open for writing");
  h.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!h.png) fail(path, "libpng init failed");
  h.info = png_create_info_struct(h.png);
  if (!h.info) fail(path, "libpng init failed");
  if (setjmp(png_jmpbuf(h.png))) fail(path, "libpng write error");

  const int depth = maxval == 65535 ? 16 : 8;
  const int color = img.channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY;
  png_init_io(h.png, h.fp);
  png_set_IHDR(h.png, h.info, img.cols, img.rows, depth, color, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(h.png, h.info);

  const int bytes = depth / 8;
  std::vector<unsigned char> row(static_cast<std::size_t>(img.cols) * img.channels * bytes);
  for (int r = 0; r < img.rows; ++r) {
    for (int c = 0; c < img.cols; ++c)
      for (int ch = 0; ch < img.channels; ++ch) {
        const long q = std::lround(std::clamp(img.at(r, c, ch), 0.0, static_cast<double>(maxval)));
        const std::size_t i = (static_cast<std::size_t>(c) * img.channels + ch) * bytes;
        if (bytes == 2) {
          row[i] = static_cast<unsigned char>(q >> 8);
          row[i + 1] = static_cast<unsigned char>(q & 0xff);
        } else {
          row[i] = static_cast<unsigned char>(q);
        }
      }
    png_write_row(h.png, row.data());
  }
  png_write_end(h.png, h.info);
}

}  // namespace

LoadedImage read_image(const std::string& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) fail(path, "cannot open");
  unsigned char magic[2] = {0, 0};
  probe.read(reinterpret_cast<char*>(magic), 2);
  probe.close();
  if (magic[0] == 'P' && (magic[1] == '2' || magic[1] == '5')) return read_pgm(path);
  if (magic[0] == 0x89 && magic[1] == 'P') return read_png(path);
  fail(path, "unsupported image format (expected PGM or PNG)");
}

void write_image(const std::string& path, const Image& img, int maxval) {
  if (maxval < 1 || maxval > 65535) fail(path, "maxval out of range");
  if (has_suffix(path, ".png")) {
    write_png(path, img, maxval <= 255 ? 255 : 65535);
  } else if (has_suffix(path, ".pgm")) {
    write_pgm(path, img, maxval);
  } else {
    fail(path, "unsupported output extension (use .pgm or .png)");
  }
}

Kernel read_kernel_txt(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open");
  int rows = 0, cols = 0;
  if (!(in >> rows >> cols) || rows < 1 || cols < 1) fail(path, "bad kernel header");
  Kernel k(rows, cols);
  for (double& v : k.data)
    if (!(in >> v)) fail(path, "truncated kernel data");
  return k;
}

void write_kernel_txt(const std::string& path, const Kernel& k) {
  std::ofstream out(path);
  if (!out) fail(path, "cannot open for writing");
  out << k.rows << ' ' << k.cols << '\n';
  out.precision(17);
  for (int r = 0; r < k.rows; ++r) {
    for (int c = 0; c < k.cols; ++c) out << (c ? " " : "") << k.at(r, c);
    out << '\n';
  }
  if (!out) fail(path, "write failed");
}

void write_kernel_image(const std::string& path, const Kernel& k) {
  Image img(k.rows, k.cols);
  const double mx = *std::max_element(k.data.begin(), k.data.end());
  for (std::size_t i = 0; i < k.data.size(); ++i)
    img.data[i] = mx > 0.0 ? k.data[i] / mx * 255.0 : 0.0;
  write_image(path, img, 255);
}

}  // namespace fpmp
