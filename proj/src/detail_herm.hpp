#pragma once

// Internal helpers for posing problems over a complex Hermitian matrix
// variable M (N x N) as a real SDP over the doubled symmetric embedding
//   X = [[A, -B], [B, A]],  M = A + iB,
// which is PSD exactly when M is. Shared by the measurement-step SDPs and
// the moment-matrix builders.

#include "corrkit/linalg.hpp"
#include "corrkit/sdp.hpp"

namespace corrkit::detail {

/// One linear term Re(c * M_ij) referencing an ordered cell (i, j).
struct CellTerm {
  int i = 0, j = 0;
  Complex c;
};

/// Appends the real-embedding entries of Re(c * M_ij) to an entry list.
inline void add_cell_term(std::vector<SdpConstraint::Entry>& entries, int n, int i, int j,
                          Complex c) {
  double re = c.real(), im = c.imag();
  if (i == j) {
    // B_ii vanishes structurally, so only the real part contributes.
    if (re != 0.0) {
      entries.push_back({i, i, re / 2.0});
      entries.push_back({n + i, n + i, re / 2.0});
    }
    return;
  }
  if (re != 0.0) {
    entries.push_back({i, j, re / 4.0});
    entries.push_back({n + i, n + j, re / 4.0});
  }
  if (im != 0.0) {
    entries.push_back({n + i, j, -im / 4.0});
    entries.push_back({i, n + j, im / 4.0});
  }
}

inline SdpConstraint constraint_from_cells(int n, const std::vector<CellTerm>& cells,
                                           double rhs) {
  SdpConstraint c;
  for (const auto& t : cells) add_cell_term(c.entries, n, t.i, t.j, t.c);
  c.b = rhs;
  return c;
}

/// The embedding-pattern equalities: equal diagonal blocks and antisymmetric
/// off-diagonal block (which forces M Hermitian).
inline void add_structure_constraints(SdpInstance& inst, int n) {
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      SdpConstraint a;
      if (i == j) {
        a.add(i, i, 1.0);
        a.add(n + i, n + i, -1.0);
      } else {
        a.add(i, j, 0.5);
        a.add(n + i, n + j, -0.5);
      }
      a.b = 0.0;
      inst.constraints.push_back(std::move(a));

      SdpConstraint b;
      if (i == j) {
        b.add(i, n + i, 1.0);
      } else {
        b.add(i, n + j, 0.5);
        b.add(j, n + i, 0.5);
      }
      b.b = 0.0;
      inst.constraints.push_back(std::move(b));
    }
  }
}

/// Reads M = A + iB back out of a solved doubled block.
inline ComplexMatrix extract_hermitian(const std::vector<double>& x, int n) {
  ComplexMatrix m(n, n);
  int nn = 2 * n;
  auto xv = [&](int i, int j) { return x[size_t(i) * nn + j]; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double re = 0.5 * (xv(i, j) + xv(n + i, n + j));
      double im = 0.5 * (xv(n + i, j) - xv(i, n + j));
      m(i, j) = Complex(re, im);
    }
  // exact hermitization absorbs solver roundoff
  for (int i = 0; i < n; ++i) {
    m(i, i) = Complex(m(i, i).real(), 0.0);
    for (int j = i + 1; j < n; ++j) {
      Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  }
  return m;
}

}  // namespace corrkit::detail
