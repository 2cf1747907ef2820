#pragma once

#include "corrkit/quantum.hpp"

namespace corrkit {

/// A ucp map Phi: M_n -> M_d presented by its Choi matrix
/// C = sum_ij E_ij (x) Phi(E_ij), an nd x nd PSD matrix with
/// Tr_in(C) = identity (unitality).
struct ChoiMap {
  int n = 1;  // input dimension
  int d = 1;  // output dimension
  ComplexMatrix choi;

  ComplexMatrix apply(const ComplexMatrix& a) const;
  /// Unitality defect ||Tr_in(C) - 1||_max.
  double unitality_defect() const;
  /// Minimal Choi eigenvalue (complete positivity witness).
  double cp_defect() const;
  void validate(double tol = 1e-10) const;

  static ChoiMap from_kraus(int n, int d, const std::vector<ComplexMatrix>& kraus);
  static ChoiMap identity_channel(int n);
  static ChoiMap depolarizing(int n, int d);  // a -> tr(a)/n * 1_d
};

/// Stinespring form Phi(a) = V^dagger (a (x) 1_r) V with V an isometry from
/// C^d into C^n (x) C^r and r the Kraus rank.
struct StinespringDilation {
  int n = 1, d = 1, r = 1;
  ComplexMatrix v;  // (n*r) x d isometry
  std::vector<ComplexMatrix> kraus;

  ComplexMatrix represent(const ComplexMatrix& a) const;  // pi(a) = a (x) 1_r
  ComplexMatrix compress(const ComplexMatrix& a) const;   // V^dagger pi(a) V
  double isometry_defect() const;                         // ||V^dagger V - 1||
  /// max_ij || compress(E_ij) - Phi(E_ij) || against a Choi map
  double reconstruction_residual(const ChoiMap& phi) const;
};

StinespringDilation stinespring_dilate(const ChoiMap& phi, double tol = 1e-10);

/// Naimark form of a single POVM: projections Pi_a on C^d (x) C^m with
/// V^dagger Pi_a V = A_a.
struct NaimarkDilation {
  int d = 1, m = 1;
  ComplexMatrix v;  // (d*m) x d isometry
  std::vector<ComplexMatrix> projections;

  double isometry_defect() const;
  double reconstruction_residual(const std::vector<ComplexMatrix>& povm) const;
};

NaimarkDilation naimark_dilate(const std::vector<ComplexMatrix>& povm, double tol = 1e-10);

/// Entrywise (Schur) product positivity for block matrices with commuting
/// entries: blocks are n x n arrays of q x q operators.
struct SchurCheckResult {
  bool psd = false;
  double min_eigenvalue = 0.0;  // of the entrywise product
};

SchurCheckResult schur_product_psd_check(const std::vector<std::vector<ComplexMatrix>>& a,
                                         const std::vector<std::vector<ComplexMatrix>>& b,
                                         double psd_tol = 1e-8, double comm_tol = 1e-9);

}  // namespace corrkit
