#pragma once

#include "corrkit/quantum.hpp"

namespace corrkit {

/// Outcome of the local-polytope membership test. When `local`, `weights`
/// carries a probability vector over deterministic strategy pairs
/// reproducing the table; otherwise `functional` is a Bell functional
/// (one coefficient per table cell, same [a][b][x][y] layout restricted to
/// this scenario) separating the table from the local polytope by `margin`.
struct LocalMembershipResult {
  bool local = false;
  double distance = 0.0;  // LP optimum: l1 distance to the polytope
  std::vector<double> weights;
  std::vector<double> functional;  // indexed like CorrelationTable cells
  double functional_value = 0.0;   // value on the tested table
  double local_bound = 0.0;        // max over deterministic strategies
  double margin = 0.0;             // functional_value - local_bound > 0
};

struct LocalMembershipOptions {
  std::size_t max_vertices_per_party = 256;
  double feas_tol = 1e-8;
};

/// Decides membership in the local polytope by linear programming over
/// deterministic strategy pairs: minimize the l1 mismatch between the table
/// and a convex combination of product-deterministic tables.
LocalMembershipResult local_membership(const CorrelationTable& p,
                                       const LocalMembershipOptions& opts = {});

/// The PR-box table for k = m = 2: P(a,b|x,y) = 1/2 when a xor b = x*y.
CorrelationTable pr_box_table();

/// Deterministic-strategy product table (for tests and model validation).
CorrelationTable deterministic_table(int ka, int ma, int kb, int mb,
                                     const std::vector<int>& alice_choice,
                                     const std::vector<int>& bob_choice);

}  // namespace corrkit
