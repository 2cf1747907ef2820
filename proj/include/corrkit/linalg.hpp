#pragma once

#include <complex>
#include <random>
#include <vector>

#include "corrkit/group.hpp"  // for Error

namespace corrkit {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Small and value-semantic; everything in
/// the library that touches concrete Hilbert spaces goes through this type.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

  static ComplexMatrix identity(int n);
  static ComplexMatrix zero(int rows, int cols) { return ComplexMatrix(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Complex& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Complex& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }
  const std::vector<Complex>& data() const { return a_; }
  std::vector<Complex>& data() { return a_; }

  ComplexMatrix operator+(const ComplexMatrix& o) const;
  ComplexMatrix operator-(const ComplexMatrix& o) const;
  ComplexMatrix operator*(const ComplexMatrix& o) const;
  ComplexMatrix operator*(Complex s) const;
  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  Complex trace() const;
  double norm_fro() const;
  double norm_max() const;  // max |entry|

  bool is_square() const { return rows_ == cols_; }
  double hermiticity_defect() const;  // ||A - A^dagger||_max

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Complex> a_;
};

ComplexMatrix operator*(Complex s, const ComplexMatrix& m);

/// Kronecker product A (x) B with row-major index convention
/// (i_A, i_B) -> i_A * rows(B) + i_B.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Partial trace of an operator on a tensor product with factor dimensions
/// `dims`; the slots listed in `traced` (0-based) are traced out and the
/// remaining slots are kept in their original order.
ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<int>& dims,
                            const std::vector<int>& traced);

struct EighResult {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns; H = V diag(w) V^dagger
};

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
/// Requires hermiticity within `herm_tol` (max-entry defect); the
/// reconstruction residual is below 1e-9 * ||H|| for well-scaled inputs.
EighResult eigh(const ComplexMatrix& h, double herm_tol = 1e-10);

/// Spectral norm of an arbitrary matrix (sqrt of top eigenvalue of A^dagger A).
double spectral_norm(const ComplexMatrix& a);

double min_eigenvalue(const ComplexMatrix& hermitian);

/// PSD square root / inverse square root through eigh; eigenvalues below
/// `cutoff` (relative to the largest) are treated as zero, and in the inverse
/// case their directions are dropped (pseudo-inverse).
ComplexMatrix psd_sqrt(const ComplexMatrix& h, double cutoff = 1e-12);
ComplexMatrix psd_inv_sqrt(const ComplexMatrix& h, double cutoff = 1e-12);

/// Random helpers (deterministic given the engine state).
ComplexMatrix random_hermitian(int n, std::mt19937_64& rng);
ComplexMatrix random_psd(int n, std::mt19937_64& rng);
ComplexMatrix random_unitary(int n, std::mt19937_64& rng);
std::vector<Complex> random_unit_vector(int n, std::mt19937_64& rng);

// ---- real symmetric kernel, used by the SDP solver ----

/// Dense row-major real symmetric storage is plain std::vector<double> with
/// explicit dimension, kept free of class ceremony for solver inner loops.
struct SymEigResult {
  std::vector<double> eigenvalues;  // ascending
  std::vector<double> vectors;      // column-major n*n, A = V diag(w) V^T
};

SymEigResult sym_eig(const std::vector<double>& a, int n);
double sym_min_eigenvalue(const std::vector<double>& a, int n);

}  // namespace corrkit
