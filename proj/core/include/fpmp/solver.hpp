#pragma once

#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "fpmp/fracgrad.hpp"
#include "fpmp/framelet.hpp"
#include "fpmp/image.hpp"

namespace fpmp {

enum class GradNorm { l0, l1 };

struct SolverConfig {
  double mu = 200.0;     // data-fidelity weight
  double lambda = 1.0;   // FPMP l0 weight (0 disables the prior)
  double gamma = 1e-3;   // penalty on kx = v
  double eta = 1.0;      // penalty on x = m
  double beta = 1e-3;    // penalty on grad x = z
  double rho = 1.0;      // penalty on n = P_w(x)
  double alpha = 0.5;    // fractional order
  int gl_len = 12;       // Grunwald-Letnikov truncation
  int patch = 15;        // FPMP patch size
  GradNorm norm = GradNorm::l1;
  double tol = 1e-4;
  int max_iter = 300;
  int sweeps = 1;  // Gauss-Seidel passes over the coupled x_p / x_hat_p pair

  void validate() const;
};

struct IterRecord {
  int iter = 0;
  double energy = 0.0;
  double rel_change = 0.0;
  double psnr = 0.0;  // NaN when no reference was supplied
  double ssim = 0.0;
};

// Thrown when an iterate stops being finite.
struct SolverError : std::runtime_error {
  int iteration;
  SolverError(const std::string& msg, int iteration_)
      : std::runtime_error(msg), iteration(iteration_) {}
};

// Elementwise positive root of gamma v^2 + (mu - t) v - mu y = 0 with
// t = gamma kx + p1; the stationary point of the Poisson v-subproblem.
Image update_v(const Image& kx, const Image& p1, const Image& y, double mu, double gamma);

// Hard threshold: keep px where px^2 >= 2 lambda / rho (boundary kept).
FpmpVector update_n(const FpmpVector& px, double lambda, double rho);

// l1: soft threshold of grad + p3/beta at 1/beta; l0: hard threshold keeping
// values w with w^2 >= 2/beta.
GradPair update_z(const GradPair& grad, const GradPair& p3, double beta, GradNorm norm);

// max(x + p2/eta, 0)
Image update_m(const Image& x, const Image& p2, double eta);

// Spectral quantities fixed for a given kernel/shape/config; shared by every
// x-update of a solve.
struct FftSolveContext {
  int rows = 0, cols = 0;
  std::vector<std::complex<double>> khat;
  FracSymbol grad_sym;
  std::vector<double> denom_plain;  // gamma|K|^2 + eta + beta S
  std::vector<double> denom_rho;    // + rho

  FftSolveContext(const Kernel& k, int rows, int cols, const SolverConfig& cfg);
};

struct XUpdateResult {
  Image x_p;
  Image x_hat_p;
  Image x;  // x_p + x_hat_p
};

// Solves the coupled pair of FFT systems for the masked/complement parts via
// Gauss-Seidel sweeps. xi1 = v - p1/gamma, xi2 = m - p2/eta,
// xi3 = z - p3/beta come from the caller; xi7 is scattered from n.
XUpdateResult update_x(const Image& x, const FpmpVector& n, const MinMask& mask,
                       const Image& xi1, const Image& xi2, const GradPair& xi3,
                       const FftSolveContext& ctx, const SolverConfig& cfg);

// Value of the variational objective at x (indicator included: any negative
// pixel yields +infinity).
double objective_energy(const Image& x, const Image& y, const Kernel& k, const SolverConfig& cfg);

struct SolveResult {
  Image x;
  std::vector<IterRecord> history;
};

// Full ADMM driver. If ref is non-null its PSNR/SSIM (at the given peak) are
// recorded per iteration.
SolveResult solve_nonblind(const Image& y, const Kernel& k, const SolverConfig& cfg,
                           const Image* ref = nullptr, double ref_peak = 255.0);

// Same, but starting from x0 instead of y (used by the blind outer loop).
SolveResult solve_nonblind_from(const Image& y, const Kernel& k, const SolverConfig& cfg,
                                const Image& x0, const Image* ref = nullptr,
                                double ref_peak = 255.0);

// One CSV row per iteration: iter,energy,rel_change[,psnr,ssim].
void write_history_csv(std::ostream& os, const std::vector<IterRecord>& history, bool with_ref);

}  // namespace fpmp
