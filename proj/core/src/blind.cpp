#include "fpmp/blind.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fpmp/fft.hpp"
#include "fpmp/metrics.hpp"

namespace fpmp {

void BlindConfig::validate() const {
  inner.validate();
  if (!(varrho_over_mu >= 0.0))
    throw std::invalid_argument("BlindConfig: varrho_over_mu must be >= 0");
  if (kernel_rows < 1 || kernel_cols < 1 || kernel_rows % 2 == 0 || kernel_cols % 2 == 0)
    throw std::invalid_argument("BlindConfig: kernel size must be odd");
  if (!(outer_tol > 0.0)) throw std::invalid_argument("BlindConfig: outer_tol must be > 0");
  if (outer_max_iter < 1 || inner_max_iter < 1)
    throw std::invalid_argument("BlindConfig: iteration counts must be >= 1");
}

Image kernel_tv_divergence(const Kernel& k) {
  const int m = k.rows, n = k.cols;
  const double eps = 1e-8;
  // forward differences, Neumann at the far edges
  Image nh(m, n), nv(m, n);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < n; ++c) {
      const double gr = (r + 1 < m) ? k.at(r + 1, c) - k.at(r, c) : 0.0;
      const double gc = (c + 1 < n) ? k.at(r, c + 1) - k.at(r, c) : 0.0;
      const double mag = std::sqrt(gr * gr + gc * gc + eps * eps);
      nh.at(r, c) = gr / mag;
      nv.at(r, c) = gc / mag;
    }
  // backward-difference divergence
  Image div(m, n);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < n; ++c) {
      const double dh = nh.at(r, c) - (r > 0 ? nh.at(r - 1, c) : 0.0);
      const double dv = nv.at(r, c) - (c > 0 ? nv.at(r, c - 1) : 0.0);
      div.at(r, c) = dh + dv;
    }
  return div;
}

Kernel update_kernel(const Kernel& k_prev, const Image& x, const Image& y,
                     double varrho_over_mu) {
  require_same_shape(x, y, "update_kernel");
  if (x.channels != 1) throw std::invalid_argument("update_kernel: expects single-channel images");
  const int m = x.rows, n = x.cols;
  const double eps = 1e-8;

  Spectrum fx = fft2(x);
  Spectrum otf = psf2otf(k_prev, m, n);
  Spectrum prod = fx;
  for (std::size_t i = 0; i < prod.data.size(); ++i) prod.data[i] *= otf.data[i];
  const Image blur = ifft2_real(prod);

  Image ratio(m, n);
  for (std::size_t i = 0; i < ratio.data.size(); ++i)
    ratio.data[i] = y.data[i] / std::max(blur.data[i], eps);

  // correlation of x with the ratio image: cc(d) = sum_p x(p - d) ratio(p)
  Spectrum fr = fft2(ratio);
  for (std::size_t i = 0; i < fr.data.size(); ++i) fr.data[i] *= std::conj(fx.data[i]);
  const Image cc = ifft2_real(fr);

  const Image tv = kernel_tv_divergence(k_prev);
  Kernel kt(k_prev.rows, k_prev.cols);
  const int ar = k_prev.anchor_row(), ac = k_prev.anchor_col();
  for (int r = 0; r < k_prev.rows; ++r)
    for (int c = 0; c < k_prev.cols; ++c) {
      const double denom = std::max(1.0 - varrho_over_mu * tv.at(r, c), 1e-8);
      const int dr = ((r - ar) % m + m) % m;
      const int dc = ((c - ac) % n + n) % n;
      kt.at(r, c) = k_prev.at(r, c) / denom * cc.at(dr, dc);
    }

  double sum = 0.0;
  for (double& v : kt.data) {
    v = std::max(v, 0.0);
    sum += v;
  }
  if (!(sum > 0.0)) throw std::runtime_error("update_kernel: degenerate kernel after clipping");
  for (double& v : kt.data) v /= sum;
  return kt;
}

Image boundary_preprocess(const Image& y, const Kernel& k) {
  if (k.rows > y.rows || k.cols > y.cols)
    throw std::invalid_argument("boundary_preprocess: kernel larger than image");
  const int band = std::max(k.rows, k.cols);
  const Image blurred = conv2_periodic(y, k);

  auto axis_weight = [band](int t, int size) {
    const int d = std::min(t, size - 1 - t);
    if (d >= band) return 1.0;
    const double s = std::sin(std::numbers::pi * (d + 0.5) / (2.0 * band));
    return s * s;
  };

  Image out = y;
  for (int ch = 0; ch < y.channels; ++ch)
    for (int r = 0; r < y.rows; ++r) {
      const double wr = axis_weight(r, y.rows);
      for (int c = 0; c < y.cols; ++c) {
        const double w = wr * axis_weight(c, y.cols);
        if (w < 1.0)
          out.at(r, c, ch) = w * y.at(r, c, ch) + (1.0 - w) * blurred.at(r, c, ch);
      }
    }
  return out;
}

double blind_objective(const Image& x, const Kernel& k, const Image& y,
                       const BlindConfig& cfg) {
  double tv = 0.0;
  for (int r = 0; r < k.rows; ++r)
    for (int c = 0; c < k.cols; ++c) {
      const double gr = (r + 1 < k.rows) ? k.at(r + 1, c) - k.at(r, c) : 0.0;
      const double gc = (c + 1 < k.cols) ? k.at(r, c + 1) - k.at(r, c) : 0.0;
      tv += std::sqrt(gr * gr + gc * gc);
    }
  return objective_energy(x, y, k, cfg.inner) + cfg.varrho_over_mu * cfg.inner.mu * tv;
}

BlindResult solve_blind(const Image& y, const BlindConfig& cfg) {
  cfg.validate();
  if (y.channels != 1) throw std::invalid_argument("solve_blind: expects single-channel images");
  if (min_value(y) < 0.0) throw std::invalid_argument("solve_blind: y must be non-negative");

  Kernel k(cfg.kernel_rows, cfg.kernel_cols,
           1.0 / (static_cast<double>(cfg.kernel_rows) * cfg.kernel_cols));
  Image work = cfg.boundary_prep ? boundary_preprocess(y, k) : y;

  SolverConfig inner = cfg.inner;
  inner.max_iter = cfg.inner_max_iter;

  BlindResult result;
  Image x = work;
  for (int it = 0; it < cfg.outer_max_iter; ++it) {
    SolveResult inner_result;
    try {
      inner_result = solve_nonblind_from(work, k, inner, x);
    } catch (const SolverError& err) {
      throw SolverError(std::string(err.what()) + " (blind outer iteration " +
                            std::to_string(it + 1) + ")",
                        err.iteration);
    }
    const Image x_new = std::move(inner_result.x);
    k = update_kernel(k, x_new, work, cfg.varrho_over_mu);

    BlindIterRecord rec;
    rec.iter = it + 1;
    rec.rel_change = rel_change(x_new, x);
    rec.objective = blind_objective(x_new, k, work, cfg);
    result.history.push_back(rec);

    x = x_new;
    if (rec.rel_change <= cfg.outer_tol) break;
  }
  result.x = std::move(x);
  result.k = std::move(k);
  return result;
}

}  // namespace fpmp
