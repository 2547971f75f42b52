#include "fpmp/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace fpmp {

namespace {

// FFTW's planner is not thread-safe; executing a cached plan on fresh
// buffers is. Plans are in-place c2c, FFTW_UNALIGNED so std::vector
// storage works, and live for the whole process.
std::mutex g_plan_mutex;
std::map<std::tuple<int, int, int>, fftw_plan> g_plans;

fftw_plan plan_for(int rows, int cols, int sign) {
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto key = std::make_tuple(rows, cols, sign);
  auto it = g_plans.find(key);
  if (it != g_plans.end()) return it->second;
  std::vector<std::complex<double>> scratch(static_cast<std::size_t>(rows) * cols);
  auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan plan = fftw_plan_dft_2d(rows, cols, p, p, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plan) throw std::runtime_error("fftw planning failed");
  g_plans.emplace(key, plan);
  return plan;
}

void execute_inplace(int rows, int cols, int sign, std::complex<double>* buf) {
  fftw_plan plan = plan_for(rows, cols, sign);
  auto* p = reinterpret_cast<fftw_complex*>(buf);
  fftw_execute_dft(plan, p, p);
}

}  // namespace

Spectrum::Spectrum(int rows_, int cols_, int channels_)
    : rows(rows_), cols(cols_), channels(channels_),
      data(static_cast<std::size_t>(rows_) * cols_ * channels_) {}

Spectrum fft2(const Image& img) {
  Spectrum s(img.rows, img.cols, img.channels);
  for (int ch = 0; ch < img.channels; ++ch) {
    const double* in = img.plane(ch);
    std::complex<double>* out = s.plane(ch);
    for (std::size_t i = 0; i < img.pixels(); ++i) out[i] = in[i];
    execute_inplace(img.rows, img.cols, FFTW_FORWARD, out);
  }
  return s;
}

Image ifft2_real(const Spectrum& spec) {
  Image img(spec.rows, spec.cols, spec.channels);
  const double scale = 1.0 / (static_cast<double>(spec.rows) * spec.cols);
  std::vector<std::complex<double>> buf(spec.pixels());
  for (int ch = 0; ch < spec.channels; ++ch) {
    const std::complex<double>* in = spec.plane(ch);
    std::copy(in, in + spec.pixels(), buf.begin());
    execute_inplace(spec.rows, spec.cols, FFTW_BACKWARD, buf.data());
    double* out = img.plane(ch);
    for (std::size_t i = 0; i < spec.pixels(); ++i) out[i] = buf[i].real() * scale;
  }
  return img;
}

Spectrum psf2otf(const Kernel& k, int rows, int cols) {
  if (k.rows > rows || k.cols > cols)
    throw std::invalid_argument("psf2otf: kernel larger than target shape");
  Spectrum s(rows, cols, 1);
  const int ar = k.anchor_row(), ac = k.anchor_col();
  for (int r = 0; r < k.rows; ++r) {
    for (int c = 0; c < k.cols; ++c) {
      int rr = ((r - ar) % rows + rows) % rows;
      int cc = ((c - ac) % cols + cols) % cols;
      s.data[static_cast<std::size_t>(rr) * cols + cc] += k.at(r, c);
    }
  }
  execute_inplace(rows, cols, FFTW_FORWARD, s.data.data());
  return s;
}

namespace {

Image conv2_impl(const Image& img, const Kernel& k, bool adjoint) {
  if (k.rows > img.rows || k.cols > img.cols)
    throw std::invalid_argument("conv2_periodic: kernel larger than image");
  Image out(img.rows, img.cols, img.channels);
  const int ar = k.anchor_row(), ac = k.anchor_col();
  for (int ch = 0; ch < img.channels; ++ch) {
    const double* in = img.plane(ch);
    double* dst = out.plane(ch);
    for (int r = 0; r < img.rows; ++r) {
      for (int c = 0; c < img.cols; ++c) {
        double acc = 0.0;
        for (int kr = 0; kr < k.rows; ++kr) {
          const int dr = kr - ar;
          int rr = adjoint ? (r + dr) : (r - dr);
          rr = (rr % img.rows + img.rows) % img.rows;
          const double* row = in + static_cast<std::size_t>(rr) * img.cols;
          for (int kc = 0; kc < k.cols; ++kc) {
            const int dc = kc - ac;
            int cc = adjoint ? (c + dc) : (c - dc);
            cc = (cc % img.cols + img.cols) % img.cols;
            acc += k.at(kr, kc) * row[cc];
          }
        }
        dst[static_cast<std::size_t>(r) * img.cols + c] = acc;
      }
    }
  }
  return out;
}

}  // namespace

Image conv2_periodic(const Image& img, const Kernel& k) { return conv2_impl(img, k, false); }

Image conv2_adjoint(const Image& img, const Kernel& k) { return conv2_impl(img, k, true); }

}  // namespace fpmp
