#pragma once

#include <vector>

#include "corrkit/linalg.hpp"

namespace corrkit {

/// One linear equality constraint <A, X> = b on a symmetric matrix variable,
/// with A given by symmetric sparse entries: an entry (i, j, v) with i != j
/// stands for v at both (i, j) and (j, i).
struct SdpConstraint {
  struct Entry {
    int i = 0, j = 0;
    double v = 0.0;
  };
  std::vector<Entry> entries;
  double b = 0.0;

  void add(int i, int j, double v) {
    if (v != 0.0) entries.push_back({i, j, v});
  }
};

/// A semidefinite program over one PSD block:
///     maximize/minimize  <C, X>   s.t.  <A_i, X> = b_i,  X >= 0.
/// With `diagonal` set, X is restricted to diagonal matrices, which is the
/// linear-programming special case (x >= 0 componentwise).
struct SdpInstance {
  int n = 0;
  bool maximize = true;
  bool diagonal = false;
  std::vector<SdpConstraint::Entry> c_entries;  // sparse symmetric C
  std::vector<SdpConstraint> constraints;

  void add_objective(int i, int j, double v) {
    if (v != 0.0) c_entries.push_back({i, j, v});
  }
};

enum class SdpStatus { optimal, infeasible, max_iter };

const char* to_string(SdpStatus s);

struct SdpResult {
  SdpStatus status = SdpStatus::max_iter;
  // Primal block (dense row-major n*n; diagonal mode stores the full matrix
  // with zero off-diagonals so downstream code reads both alike).
  std::vector<double> x;
  std::vector<double> y;  // dual multipliers, one per original constraint
  std::vector<double> s;  // dual slack block, same layout as x
  double objective = 0.0;       // <C, X*> in the caller's direction
  double dual_objective = 0.0;  // b^T y*, bounds the primal for maximize problems
  double gap = 0.0;             // |<X, S>| complementarity residual
  double primal_residual = 0.0; // ||A(X) - b||_2
  double dual_residual = 0.0;   // ||sum y_i A_i - C - S||_F
  int iterations = 0;
  // Set when preprocess certifies inconsistent equalities: a combination
  // lambda with lambda^T A = 0 but lambda^T b != 0.
  std::vector<double> infeasibility_ray;
};

struct SdpOptions {
  double tol_gap = 1e-9;
  double tol_feas = 1e-8;
  int max_iter = 100;
  double step_fraction = 0.98;
  int max_block = 1200;
};

/// Removes linearly dependent equality constraints (rank-revealing
/// Gram-Schmidt with threshold 1e-10 * scale). `kept` maps reduced rows back
/// to original indices; an inconsistent system yields `infeasible = true`
/// together with a certificate combination over the original rows.
struct PreprocessResult {
  std::vector<int> kept;
  bool infeasible = false;
  std::vector<double> certificate;
};

PreprocessResult preprocess(const SdpInstance& inst);

/// Dense primal-dual path-following solver with a Mehrotra-style
/// predictor-corrector and HKM direction; deterministic.
SdpResult solve_sdp(const SdpInstance& inst, const SdpOptions& opts = {});

}  // namespace corrkit
