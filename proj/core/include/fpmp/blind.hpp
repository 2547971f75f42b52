#pragma once

#include <vector>

#include "fpmp/image.hpp"
#include "fpmp/solver.hpp"

namespace fpmp {

struct BlindConfig {
  SolverConfig inner;
  double varrho_over_mu = 1.0;  // kernel TV weight relative to the data weight
  int kernel_rows = 9;
  int kernel_cols = 9;
  double outer_tol = 1e-3;
  int outer_max_iter = 20;
  int inner_max_iter = 30;  // warm-started inner budget per outer iteration
  bool boundary_prep = true;

  void validate() const;
};

// TV curvature div(grad k / |grad k|): forward-difference gradient with
// epsilon-regularized magnitude, backward-difference divergence.
Image kernel_tv_divergence(const Kernel& k);

// One multiplicative TV-regularized Richardson-Lucy style step, followed by
// projection onto the simplex (clip at 0, normalize to sum 1).
Kernel update_kernel(const Kernel& k_prev, const Image& x, const Image& y,
                     double varrho_over_mu);

// Edge-taper: blends the border band (width max(l,s)) with a k-blurred copy
// under a raised-cosine window so the periodic boundary assumption roughly
// holds. Interior pixels are untouched.
Image boundary_preprocess(const Image& y, const Kernel& k);

// Objective of the joint model at (x, k); used for the outer-loop history.
double blind_objective(const Image& x, const Kernel& k, const Image& y,
                       const BlindConfig& cfg);

struct BlindIterRecord {
  int iter = 0;
  double rel_change = 0.0;
  double objective = 0.0;
};

struct BlindResult {
  Image x;
  Kernel k;
  std::vector<BlindIterRecord> history;
};

// Alternates warm-started non-blind solves with kernel updates, starting
// from the uniform kernel.
BlindResult solve_blind(const Image& y, const BlindConfig& cfg);

}  // namespace fpmp
