#include "corrkit/dilation.hpp"

#include <cmath>

namespace corrkit {

namespace {
// Choi index convention: row (i, alpha) = i * d + alpha with i over the
// input space and alpha over the output space.
int choi_idx(int i, int alpha, int d) { return i * d + alpha; }
}  // namespace

ComplexMatrix ChoiMap::apply(const ComplexMatrix& a) const {
  if (a.rows() != n || a.cols() != n) throw Error("choi apply: input has wrong size");
  ComplexMatrix out(d, d);
  for (int al = 0; al < d; ++al)
    for (int be = 0; be < d; ++be) {
      Complex s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += a(i, j) * choi(choi_idx(i, al, d), choi_idx(j, be, d));
      out(al, be) = s;
    }
  return out;
}

double ChoiMap::unitality_defect() const {
  ComplexMatrix tr_in = partial_trace(choi, {n, d}, {0});
  return (tr_in - ComplexMatrix::identity(d)).norm_max();
}

double ChoiMap::cp_defect() const { return min_eigenvalue(choi); }

void ChoiMap::validate(double tol) const {
  if (choi.rows() != n * d || choi.cols() != n * d) throw Error("choi matrix has wrong size");
  if (choi.hermiticity_defect() > tol) throw Error("choi matrix is not Hermitian");
  double cp = cp_defect();
  if (cp < -tol)
    throw Error("map is not completely positive: min Choi eigenvalue " + std::to_string(cp));
  double u = unitality_defect();
  if (u > tol) throw Error("map is not unital: ||Phi(1) - 1|| = " + std::to_string(u));
}

ChoiMap ChoiMap::from_kraus(int n, int d, const std::vector<ComplexMatrix>& kraus) {
  ChoiMap phi;
  phi.n = n;
  phi.d = d;
  phi.choi = ComplexMatrix(n * d, n * d);
  for (const auto& k : kraus) {
    if (k.rows() != d || k.cols() != n) throw Error("kraus operator has wrong shape");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int al = 0; al < d; ++al)
          for (int be = 0; be < d; ++be)
            phi.choi(choi_idx(i, al, d), choi_idx(j, be, d)) += k(al, i) * std::conj(k(be, j));
  }
  return phi;
}

ChoiMap ChoiMap::identity_channel(int n) {
  return from_kraus(n, n, {ComplexMatrix::identity(n)});
}

ChoiMap ChoiMap::depolarizing(int n, int d) {
  // Phi(a) = tr(a)/n 1_d; Choi = (1_n (x) 1_d)/n
  ChoiMap phi;
  phi.n = n;
  phi.d = d;
  phi.choi = ComplexMatrix::identity(n * d) * Complex(1.0 / n);
  return phi;
}

ComplexMatrix StinespringDilation::represent(const ComplexMatrix& a) const {
  return kron(a, ComplexMatrix::identity(r));
}

ComplexMatrix StinespringDilation::compress(const ComplexMatrix& a) const {
  return v.adjoint() * represent(a) * v;
}

double StinespringDilation::isometry_defect() const {
  return (v.adjoint() * v - ComplexMatrix::identity(d)).norm_max();
}

double StinespringDilation::reconstruction_residual(const ChoiMap& phi) const {
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ComplexMatrix eij(n, n);
      eij(i, j) = 1.0;
      worst = std::max(worst, (compress(eij) - phi.apply(eij)).norm_max());
    }
  return worst;
}

StinespringDilation stinespring_dilate(const ChoiMap& phi, double tol) {
  phi.validate(tol);
  auto e = eigh(phi.choi);
  int nd = phi.n * phi.d;
  double top = std::max(1e-300, std::abs(e.eigenvalues.back()));

  StinespringDilation dil;
  dil.n = phi.n;
  dil.d = phi.d;
  for (int kidx = 0; kidx < nd; ++kidx) {
    double w = e.eigenvalues[size_t(kidx)];
    if (w <= 1e-12 * top) continue;
    ComplexMatrix k(phi.d, phi.n);
    double root = std::sqrt(w);
    for (int i = 0; i < phi.n; ++i)
      for (int al = 0; al < phi.d; ++al)
        k(al, i) = root * e.eigenvectors(choi_idx(i, al, phi.d), kidx);
    dil.kraus.push_back(std::move(k));
  }
  dil.r = static_cast<int>(dil.kraus.size());
  // V xi = sum_k (K_k^dagger xi) (x) e_k, an isometry because sum K K^dagger = 1.
  dil.v = ComplexMatrix(phi.n * dil.r, phi.d);
  for (int kidx = 0; kidx < dil.r; ++kidx) {
    ComplexMatrix kd = dil.kraus[size_t(kidx)].adjoint();  // n x d
    for (int i = 0; i < phi.n; ++i)
      for (int al = 0; al < phi.d; ++al) dil.v(i * dil.r + kidx, al) = kd(i, al);
  }
  return dil;
}

double NaimarkDilation::isometry_defect() const {
  return (v.adjoint() * v - ComplexMatrix::identity(d)).norm_max();
}

double NaimarkDilation::reconstruction_residual(const std::vector<ComplexMatrix>& povm) const {
  double worst = 0.0;
  for (int a = 0; a < m; ++a)
    worst = std::max(
        worst, (v.adjoint() * projections[size_t(a)] * v - povm[size_t(a)]).norm_max());
  return worst;
}

NaimarkDilation naimark_dilate(const std::vector<ComplexMatrix>& povm, double tol) {
  if (povm.empty()) throw Error("empty POVM");
  int d = povm[0].rows();
  ComplexMatrix total(d, d);
  for (const auto& el : povm) {
    if (!el.is_square() || el.rows() != d) throw Error("POVM elements must be square, equal size");
    if (el.hermiticity_defect() > tol) throw Error("POVM element is not Hermitian");
    if (min_eigenvalue(el) < -tol) throw Error("POVM element is not PSD");
    total += el;
  }
  if ((total - ComplexMatrix::identity(d)).norm_max() > tol)
    throw Error("POVM does not sum to identity");

  NaimarkDilation dil;
  dil.d = d;
  dil.m = static_cast<int>(povm.size());
  // V xi = sum_a (sqrt(A_a) xi) (x) e_a ; Pi_a = 1_d (x) |e_a><e_a|
  dil.v = ComplexMatrix(d * dil.m, d);
  for (int a = 0; a < dil.m; ++a) {
    ComplexMatrix root = psd_sqrt(povm[size_t(a)]);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) dil.v(i * dil.m + a, j) = root(i, j);
  }
  for (int a = 0; a < dil.m; ++a) {
    ComplexMatrix pa(d * dil.m, d * dil.m);
    for (int i = 0; i < d; ++i) pa(i * dil.m + a, i * dil.m + a) = 1.0;
    dil.projections.push_back(std::move(pa));
  }
  return dil;
}

SchurCheckResult schur_product_psd_check(const std::vector<std::vector<ComplexMatrix>>& a,
                                         const std::vector<std::vector<ComplexMatrix>>& b,
                                         double psd_tol, double comm_tol) {
  size_t n = a.size();
  if (n == 0 || b.size() != n) throw Error("schur check: block arrays must be equal n x n");
  int q = a[0][0].rows();
  auto assemble = [&](const std::vector<std::vector<ComplexMatrix>>& blocks) {
    ComplexMatrix big(int(n) * q, int(n) * q);
    for (size_t i = 0; i < n; ++i) {
      if (blocks[i].size() != n) throw Error("schur check: ragged block array");
      for (size_t j = 0; j < n; ++j) {
        const auto& blk = blocks[i][j];
        if (blk.rows() != q || blk.cols() != q) throw Error("schur check: block size mismatch");
        for (int r = 0; r < q; ++r)
          for (int c = 0; c < q; ++c) big(int(i) * q + r, int(j) * q + c) = blk(r, c);
      }
    }
    return big;
  };
  ComplexMatrix big_a = assemble(a), big_b = assemble(b);
  if (min_eigenvalue(big_a) < -1e-10 || min_eigenvalue(big_b) < -1e-10)
    throw Error("schur check: inputs must be PSD as block matrices");
  // entries must pairwise commute
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k)
        for (size_t l = 0; l < n; ++l) {
          ComplexMatrix comm = a[i][j] * b[k][l] - b[k][l] * a[i][j];
          if (comm.norm_max() > comm_tol)
            throw Error("schur check: entries (" + std::to_string(i) + "," + std::to_string(j) +
                        ") and (" + std::to_string(k) + "," + std::to_string(l) +
                        ") do not commute");
        }
  // entrywise product
  std::vector<std::vector<ComplexMatrix>> prod(n, std::vector<ComplexMatrix>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) prod[i][j] = a[i][j] * b[i][j];
  ComplexMatrix big_p = assemble(prod);
  // the product of commuting blocks of Hermitian big matrices need not be
  // entrywise Hermitian to machine precision; symmetrize before eigh
  ComplexMatrix sym = (big_p + big_p.adjoint()) * Complex(0.5);
  SchurCheckResult res;
  res.min_eigenvalue = min_eigenvalue(sym);
  res.psd = res.min_eigenvalue >= -psd_tol;
  return res;
}

}  // namespace corrkit
