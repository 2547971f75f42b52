#include "fpmp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "fpmp/fft.hpp"
#include "fpmp/metrics.hpp"

namespace fpmp {

void SolverConfig::validate() const {
  if (!(mu > 0.0) || !(gamma > 0.0) || !(eta > 0.0) || !(beta > 0.0) || !(rho > 0.0))
    throw std::invalid_argument("SolverConfig: penalties must be positive");
  if (!(lambda >= 0.0)) throw std::invalid_argument("SolverConfig: lambda must be >= 0");
  if (!(tol > 0.0)) throw std::invalid_argument("SolverConfig: tol must be > 0");
  if (max_iter < 1) throw std::invalid_argument("SolverConfig: max_iter must be >= 1");
  if (patch < 1) throw std::invalid_argument("SolverConfig: patch must be >= 1");
  if (gl_len < 1) throw std::invalid_argument("SolverConfig: gl_len must be >= 1");
  if (sweeps < 1) throw std::invalid_argument("SolverConfig: sweeps must be >= 1");
  if (!std::isfinite(alpha)) throw std::invalid_argument("SolverConfig: alpha must be finite");
}

Image update_v(const Image& kx, const Image& p1, const Image& y, double mu, double gamma) {
  require_same_shape(kx, p1, "update_v");
  require_same_shape(kx, y, "update_v");
  if (!(gamma > 0.0)) throw std::invalid_argument("update_v: gamma must be > 0");
  Image v(kx.rows, kx.cols, kx.channels);
  for (std::size_t i = 0; i < v.data.size(); ++i) {
    const double t = gamma * kx.data[i] + p1.data[i];
    const double s = mu - t;
    const double disc = std::sqrt(s * s + 4.0 * gamma * mu * y.data[i]);
    // rationalized branch avoids cancellation when t < mu
    v.data[i] = (s <= 0.0) ? (disc - s) / (2.0 * gamma)
                           : (2.0 * mu * y.data[i]) / (disc + s);
  }
  return v;
}

FpmpVector update_n(const FpmpVector& px, double lambda, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("update_n: rho must be > 0");
  FpmpVector n = px;
  const double cut = 2.0 * lambda / rho;
  for (double& value : n.values)
    if (value * value < cut) value = 0.0;
  return n;
}

namespace {

inline double shrink(double a, double b) {
  const double mag = std::abs(a) - b;
  return mag > 0.0 ? (a < 0.0 ? -mag : mag) : 0.0;
}

}  // namespace

GradPair update_z(const GradPair& grad, const GradPair& p3, double beta, GradNorm norm) {
  require_same_shape(grad.h, p3.h, "update_z");
  require_same_shape(grad.v, p3.v, "update_z");
  if (!(beta > 0.0)) throw std::invalid_argument("update_z: beta must be > 0");
  GradPair z{Image(grad.h.rows, grad.h.cols, grad.h.channels),
             Image(grad.v.rows, grad.v.cols, grad.v.channels)};
  const double cut = 2.0 / beta;
  auto apply = [&](const Image& g, const Image& p, Image& out) {
    for (std::size_t i = 0; i < g.data.size(); ++i) {
      const double w = g.data[i] + p.data[i] / beta;
      out.data[i] = (norm == GradNorm::l1) ? shrink(w, 1.0 / beta) : (w * w >= cut ? w : 0.0);
    }
  };
  apply(grad.h, p3.h, z.h);
  apply(grad.v, p3.v, z.v);
  return z;
}

Image update_m(const Image& x, const Image& p2, double eta) {
  require_same_shape(x, p2, "update_m");
  if (!(eta > 0.0)) throw std::invalid_argument("update_m: eta must be > 0");
  Image m(x.rows, x.cols, x.channels);
  for (std::size_t i = 0; i < m.data.size(); ++i)
    m.data[i] = std::max(x.data[i] + p2.data[i] / eta, 0.0);
  return m;
}

FftSolveContext::FftSolveContext(const Kernel& k, int rows_, int cols_, const SolverConfig& cfg)
    : rows(rows_), cols(cols_) {
  Spectrum otf = psf2otf(k, rows, cols);
  khat = std::move(otf.data);
  grad_sym = frac_symbol(gl_coeffs(cfg.alpha, cfg.gl_len), rows, cols);
  denom_plain.resize(khat.size());
  denom_rho.resize(khat.size());
  for (std::size_t i = 0; i < khat.size(); ++i) {
    const double base =
        cfg.gamma * std::norm(khat[i]) + cfg.eta + cfg.beta * grad_sym.combined[i];
    denom_plain[i] = base;
    denom_rho[i] = base + cfg.rho;
  }
}

namespace {

// gamma K*(F1 - K w) + eta (F2 - w) + beta sum_d G_d*(F3d - G_d w), per pixel
// of one channel plane.
void assemble_rhs(const FftSolveContext& ctx, const SolverConfig& cfg,
                  const std::complex<double>* f1, const std::complex<double>* f2,
                  const std::complex<double>* f3h, const std::complex<double>* f3v,
                  const std::complex<double>* w, std::complex<double>* out) {
  const std::size_t n = static_cast<std::size_t>(ctx.rows) * ctx.cols;
  for (std::size_t i = 0; i < n; ++i) {
    const std::complex<double> wi = w ? w[i] : std::complex<double>(0.0);
    out[i] = cfg.gamma * std::conj(ctx.khat[i]) * (f1[i] - ctx.khat[i] * wi) +
             cfg.eta * (f2[i] - wi) +
             cfg.beta * (std::conj(ctx.grad_sym.h[i]) * (f3h[i] - ctx.grad_sym.h[i] * wi) +
                         std::conj(ctx.grad_sym.v[i]) * (f3v[i] - ctx.grad_sym.v[i] * wi));
  }
}

}  // namespace

XUpdateResult update_x(const Image& x, const FpmpVector& n, const MinMask& mask,
                       const Image& xi1, const Image& xi2, const GradPair& xi3,
                       const FftSolveContext& ctx, const SolverConfig& cfg) {
  const std::size_t npix = x.pixels();
  Spectrum f1 = fft2(xi1);
  Spectrum f2 = fft2(xi2);
  Spectrum f3h = fft2(xi3.h);
  Spectrum f3v = fft2(xi3.v);
  Spectrum f7 = fft2(scatter_minima(n, mask));
  Spectrum fxp = fft2(split_by_mask(x, mask).first);
  Spectrum fxhat(x.rows, x.cols, x.channels);

  std::vector<std::complex<double>> rhs(npix);
  for (int ch = 0; ch < x.channels; ++ch) {
    std::complex<double>* xp = fxp.plane(ch);
    std::complex<double>* xh = fxhat.plane(ch);
    for (int sweep = 0; sweep < cfg.sweeps; ++sweep) {
      assemble_rhs(ctx, cfg, f1.plane(ch), f2.plane(ch), f3h.plane(ch), f3v.plane(ch), xp,
                   rhs.data());
      for (std::size_t i = 0; i < npix; ++i) xh[i] = rhs[i] / ctx.denom_plain[i];
      assemble_rhs(ctx, cfg, f1.plane(ch), f2.plane(ch), f3h.plane(ch), f3v.plane(ch), xh,
                   rhs.data());
      for (std::size_t i = 0; i < npix; ++i)
        xp[i] = (rhs[i] + cfg.rho * f7.plane(ch)[i]) / ctx.denom_rho[i];
    }
  }

  XUpdateResult res;
  res.x_p = ifft2_real(fxp);
  res.x_hat_p = ifft2_real(fxhat);
  res.x = res.x_p;
  for (std::size_t i = 0; i < res.x.data.size(); ++i) res.x.data[i] += res.x_hat_p.data[i];
  return res;
}

double objective_energy(const Image& x, const Image& y, const Kernel& k,
                        const SolverConfig& cfg) {
  require_same_shape(x, y, "objective_energy");
  if (min_value(x) < 0.0) return std::numeric_limits<double>::infinity();

  const Image kx = conv2_periodic(x, k);
  double data = 0.0;
  for (std::size_t i = 0; i < kx.data.size(); ++i)
    data += kx.data[i] - y.data[i] * std::log(std::max(kx.data[i], 1e-12));

  const FpmpResult fp = fpmp(x, cfg.patch);
  double prior_count = 0.0;
  for (double value : fp.minima.values)
    if (std::abs(value) > 1e-10) prior_count += 1.0;

  const GradPair grad = frac_grad(x, gl_coeffs(cfg.alpha, cfg.gl_len));
  double reg = 0.0;
  if (cfg.norm == GradNorm::l1) {
    for (double v : grad.h.data) reg += std::abs(v);
    for (double v : grad.v.data) reg += std::abs(v);
  } else {
    for (double v : grad.h.data) reg += std::abs(v) > 1e-10 ? 1.0 : 0.0;
    for (double v : grad.v.data) reg += std::abs(v) > 1e-10 ? 1.0 : 0.0;
  }
  return cfg.mu * data + cfg.lambda * prior_count + reg;
}

namespace {

Image apply_symbol(const Spectrum& fx, const std::vector<std::complex<double>>& sym) {
  Spectrum out = fx;
  for (int ch = 0; ch < fx.channels; ++ch) {
    std::complex<double>* p = out.plane(ch);
    for (std::size_t i = 0; i < fx.pixels(); ++i) p[i] *= sym[i];
  }
  return ifft2_real(out);
}

}  // namespace

SolveResult solve_nonblind_from(const Image& y, const Kernel& k, const SolverConfig& cfg,
                                const Image& x0, const Image* ref, double ref_peak) {
  cfg.validate();
  k.validate();
  require_same_shape(y, x0, "solve_nonblind");
  if (min_value(y) < 0.0) throw std::invalid_argument("solve_nonblind: y must be non-negative");

  const FftSolveContext ctx(k, y.rows, y.cols, cfg);
  const GlCoeffs gl = gl_coeffs(cfg.alpha, cfg.gl_len);

  Image x = x0;
  Image kx = apply_symbol(fft2(x), ctx.khat);
  FpmpResult fp = fpmp(x, cfg.patch);
  MinMask mask = std::move(fp.mask);
  FpmpVector n = std::move(fp.minima);
  GradPair z = frac_grad(x, gl);
  Image m(y.rows, y.cols, y.channels);
  Image p1(y.rows, y.cols, y.channels);
  Image p2(y.rows, y.cols, y.channels);
  GradPair p3{Image(y.rows, y.cols, y.channels), Image(y.rows, y.cols, y.channels)};

  SolveResult result;
  result.history.reserve(cfg.max_iter);

  for (int it = 0; it < cfg.max_iter; ++it) {
    const Image v = update_v(kx, p1, y, cfg.mu, cfg.gamma);

    Image xi1(y.rows, y.cols, y.channels), xi2(y.rows, y.cols, y.channels);
    GradPair xi3{Image(y.rows, y.cols, y.channels), Image(y.rows, y.cols, y.channels)};
    for (std::size_t i = 0; i < xi1.data.size(); ++i) {
      xi1.data[i] = v.data[i] - p1.data[i] / cfg.gamma;
      xi2.data[i] = m.data[i] - p2.data[i] / cfg.eta;
      xi3.h.data[i] = z.h.data[i] - p3.h.data[i] / cfg.beta;
      xi3.v.data[i] = z.v.data[i] - p3.v.data[i] / cfg.beta;
    }

    const XUpdateResult xu = update_x(x, n, mask, xi1, xi2, xi3, ctx, cfg);
    const Image& x_new = xu.x;
    if (!all_finite(x_new)) throw SolverError("solve_nonblind: non-finite iterate", it);

    FrameletCoeffs coeffs = framelet_analysis(x_new);
    n = update_n(extract_masked(coeffs, mask), cfg.lambda, cfg.rho);
    const GradPair grad_new = frac_grad(x_new, gl);
    z = update_z(grad_new, p3, cfg.beta, cfg.norm);
    m = update_m(x_new, p2, cfg.eta);
    kx = apply_symbol(fft2(x_new), ctx.khat);
    for (std::size_t i = 0; i < p1.data.size(); ++i) {
      p1.data[i] += cfg.gamma * (kx.data[i] - v.data[i]);
      p2.data[i] += cfg.eta * (x_new.data[i] - m.data[i]);
      p3.h.data[i] += cfg.beta * (grad_new.h.data[i] - z.h.data[i]);
      p3.v.data[i] += cfg.beta * (grad_new.v.data[i] - z.v.data[i]);
    }
    mask = fpmp_of(coeffs, cfg.patch).mask;

    IterRecord rec;
    rec.iter = it + 1;
    rec.rel_change = rel_change(x_new, x);
    const Image feasible = clamp_nonneg(x_new);
    rec.energy = objective_energy(feasible, y, k, cfg);
    rec.psnr = ref ? psnr(feasible, *ref, ref_peak) : std::numeric_limits<double>::quiet_NaN();
    rec.ssim = ref ? ssim(feasible, *ref, ref_peak) : std::numeric_limits<double>::quiet_NaN();
    result.history.push_back(rec);

    x = x_new;
    if (rec.rel_change <= cfg.tol) break;
  }

  result.x = clamp_nonneg(std::move(x));
  return result;
}

SolveResult solve_nonblind(const Image& y, const Kernel& k, const SolverConfig& cfg,
                           const Image* ref, double ref_peak) {
  return solve_nonblind_from(y, k, cfg, y, ref, ref_peak);
}

void write_history_csv(std::ostream& os, const std::vector<IterRecord>& history, bool with_ref) {
  os << (with_ref ? "iter,energy,rel_change,psnr,ssim\n" : "iter,energy,rel_change\n");
  for (const IterRecord& r : history) {
    os << r.iter << ',' << r.energy << ',' << r.rel_change;
    if (with_ref) os << ',' << r.psnr << ',' << r.ssim;
    os << '\n';
  }
}

}  // namespace fpmp
