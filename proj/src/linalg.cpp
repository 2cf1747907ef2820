#include "corrkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace corrkit {

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix shape mismatch in +");
  ComplexMatrix r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix shape mismatch in -");
  ComplexMatrix r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
  return r;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix shape mismatch in +=");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix shape mismatch in -=");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& o) const {
  if (cols_ != o.rows_) throw Error("matrix shape mismatch in *");
  ComplexMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      Complex aik = (*this)(i, k);
      if (aik == 0.0) continue;
      const Complex* brow = &o.a_[size_t(k) * o.cols_];
      Complex* rrow = &r.a_[size_t(i) * o.cols_];
      for (int j = 0; j < o.cols_; ++j) rrow[j] += aik * brow[j];
    }
  }
  return r;
}

ComplexMatrix ComplexMatrix::operator*(Complex s) const {
  ComplexMatrix r = *this;
  for (auto& v : r.a_) v *= s;
  return r;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& m) { return m * s; }

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix r = *this;
  for (auto& v : r.a_) v = std::conj(v);
  return r;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw Error("trace of non-square matrix");
  Complex t = 0.0;
  for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::norm_fro() const {
  double s = 0.0;
  for (const auto& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

double ComplexMatrix::norm_max() const {
  double s = 0.0;
  for (const auto& v : a_) s = std::max(s, std::abs(v));
  return s;
}

double ComplexMatrix::hermiticity_defect() const {
  if (!is_square()) return 1e300;
  double d = 0.0;
  for (int i = 0; i < rows_; ++i)
    for (int j = i; j < cols_; ++j)
      d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return d;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int ia = 0; ia < a.rows(); ++ia)
    for (int ja = 0; ja < a.cols(); ++ja) {
      Complex v = a(ia, ja);
      if (v == 0.0) continue;
      for (int ib = 0; ib < b.rows(); ++ib)
        for (int jb = 0; jb < b.cols(); ++jb)
          r(ia * b.rows() + ib, ja * b.cols() + jb) = v * b(ib, jb);
    }
  return r;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<int>& dims,
                            const std::vector<int>& traced) {
  int total = 1;
  for (int d : dims) total *= d;
  if (m.rows() != total || m.cols() != total)
    throw Error("partial_trace: dims do not match matrix size");
  int nslots = static_cast<int>(dims.size());
  std::vector<bool> is_traced(nslots, false);
  for (int t : traced) {
    if (t < 0 || t >= nslots) throw Error("partial_trace: slot out of range");
    is_traced[size_t(t)] = true;
  }
  std::vector<int> kept;
  int kept_dim = 1, traced_dim = 1;
  for (int s = 0; s < nslots; ++s) {
    if (is_traced[size_t(s)]) traced_dim *= dims[size_t(s)];
    else {
      kept.push_back(s);
      kept_dim *= dims[size_t(s)];
    }
  }
  // Strides of each slot in the full row-major index.
  std::vector<int> stride(nslots, 1);
  for (int s = nslots - 2; s >= 0; --s) stride[size_t(s)] = stride[size_t(s) + 1] * dims[size_t(s) + 1];

  // Enumerate kept and traced multi-indices.
  auto unrank = [&](const std::vector<int>& slots, int rank) {
    int offset = 0;
    for (int si = static_cast<int>(slots.size()) - 1; si >= 0; --si) {
      int d = dims[size_t(slots[size_t(si)])];
      offset += (rank % d) * stride[size_t(slots[size_t(si)])];
      rank /= d;
    }
    return offset;
  };
  std::vector<int> traced_slots;
  for (int s = 0; s < nslots; ++s)
    if (is_traced[size_t(s)]) traced_slots.push_back(s);

  std::vector<int> kept_offsets(size_t(kept_dim), 0);
  std::vector<int> traced_offsets(size_t(traced_dim), 0);
  for (int r = 0; r < kept_dim; ++r) kept_offsets[size_t(r)] = unrank(kept, r);
  for (int r = 0; r < traced_dim; ++r) traced_offsets[size_t(r)] = unrank(traced_slots, r);

  ComplexMatrix out(kept_dim, kept_dim);
  for (int i = 0; i < kept_dim; ++i)
    for (int j = 0; j < kept_dim; ++j) {
      Complex s = 0.0;
      for (int t = 0; t < traced_dim; ++t)
        s += m(kept_offsets[size_t(i)] + traced_offsets[size_t(t)],
               kept_offsets[size_t(j)] + traced_offsets[size_t(t)]);
      out(i, j) = s;
    }
  return out;
}

EighResult eigh(const ComplexMatrix& h, double herm_tol) {
  if (!h.is_square()) throw Error("eigh needs a square matrix");
  double scale = std::max(1.0, h.norm_max());
  if (h.hermiticity_defect() > herm_tol * scale)
    throw Error("eigh: input is not Hermitian (defect " +
                std::to_string(h.hermiticity_defect()) + ")");
  int n = h.rows();
  ComplexMatrix a = h;
  // Symmetrize exactly so rotations keep hermiticity to machine precision.
  for (int i = 0; i < n; ++i) {
    a(i, i) = Complex(a(i, i).real(), 0.0);
    for (int j = i + 1; j < n; ++j) {
      Complex v = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = v;
      a(j, i) = std::conj(v);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  auto offdiag = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += std::norm(a(i, j));
    return std::sqrt(2.0 * s);
  };

  double fro = a.norm_fro();
  double stop = std::max(1e-300, 1e-14 * std::max(fro, 1.0));
  for (int sweep = 0; sweep < 100 && offdiag() > stop; ++sweep) {
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        Complex apq = a(p, q);
        double beta = std::abs(apq);
        if (beta <= 1e-300) continue;
        double app = a(p, p).real(), aqq = a(q, q).real();
        Complex phi = apq / beta;
        double tau = (aqq - app) / (2.0 * beta);
        double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        // Unitary G with G(p,p)=c, G(p,q)=s*phi, G(q,p)=-s*conj(phi), G(q,q)=c
        // zeroes the (p,q) entry of G^dagger A G.
        Complex gpq = s * phi, gqp = -s * std::conj(phi);
        // A <- A G (columns p,q)
        for (int i = 0; i < n; ++i) {
          Complex aip = a(i, p), aiq = a(i, q);
          a(i, p) = aip * c + aiq * gqp;
          a(i, q) = aip * gpq + aiq * c;
        }
        // A <- G^dagger A (rows p,q)
        for (int j = 0; j < n; ++j) {
          Complex apj = a(p, j), aqj = a(q, j);
          a(p, j) = c * apj + std::conj(gqp) * aqj;
          a(q, j) = std::conj(gpq) * apj + c * aqj;
        }
        // V <- V G
        for (int i = 0; i < n; ++i) {
          Complex vip = v(i, p), viq = v(i, q);
          v(i, p) = vip * c + viq * gqp;
          v(i, q) = vip * gpq + viq * c;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }

  std::vector<int> order(static_cast<size_t>(n), 0);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });
  EighResult r;
  r.eigenvalues.resize(size_t(n));
  r.eigenvectors = ComplexMatrix(n, n);
  for (int k = 0; k < n; ++k) {
    r.eigenvalues[size_t(k)] = a(order[size_t(k)], order[size_t(k)]).real();
    for (int i = 0; i < n; ++i) r.eigenvectors(i, k) = v(i, order[size_t(k)]);
  }
  return r;
}

double spectral_norm(const ComplexMatrix& a) {
  ComplexMatrix g = a.adjoint() * a;
  auto e = eigh(g, 1e-8);
  double top = e.eigenvalues.empty() ? 0.0 : e.eigenvalues.back();
  return std::sqrt(std::max(0.0, top));
}

double min_eigenvalue(const ComplexMatrix& hermitian) {
  auto e = eigh(hermitian);
  return e.eigenvalues.empty() ? 0.0 : e.eigenvalues.front();
}

namespace {
ComplexMatrix apply_spectral(const ComplexMatrix& h, double cutoff, bool inverse) {
  auto e = eigh(h);
  int n = h.rows();
  double top = e.eigenvalues.empty() ? 0.0 : std::abs(e.eigenvalues.back());
  double floor_val = cutoff * std::max(top, 1e-300);
  ComplexMatrix r(n, n);
  for (int k = 0; k < n; ++k) {
    double w = e.eigenvalues[size_t(k)];
    if (w < -1e-8 * std::max(top, 1.0))
      throw Error("psd_sqrt: matrix has a significantly negative eigenvalue " +
                  std::to_string(w));
    if (w <= floor_val) continue;  // treat as zero (pseudo-inverse drops it)
    double f = inverse ? 1.0 / std::sqrt(w) : std::sqrt(w);
    for (int i = 0; i < n; ++i) {
      Complex vi = e.eigenvectors(i, k) * f;
      for (int j = 0; j < n; ++j) r(i, j) += vi * std::conj(e.eigenvectors(j, k));
    }
  }
  return r;
}
}  // namespace

ComplexMatrix psd_sqrt(const ComplexMatrix& h, double cutoff) {
  return apply_spectral(h, cutoff, false);
}

ComplexMatrix psd_inv_sqrt(const ComplexMatrix& h, double cutoff) {
  return apply_spectral(h, cutoff, true);
}

ComplexMatrix random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = g(rng);
    for (int j = i + 1; j < n; ++j) {
      Complex v(g(rng), g(rng));
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  }
  return m;
}

ComplexMatrix random_psd(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix b(n, n);
  for (auto& v : b.data()) v = Complex(g(rng), g(rng));
  return b.adjoint() * b;
}

ComplexMatrix random_unitary(int n, std::mt19937_64& rng) {
  // Gram-Schmidt on a Gaussian matrix; Haar-like, good enough for restarts
  // and random test instances.
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix m(n, n);
  for (auto& v : m.data()) v = Complex(g(rng), g(rng));
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < j; ++k) {
      Complex proj = 0.0;
      for (int i = 0; i < n; ++i) proj += std::conj(m(i, k)) * m(i, j);
      for (int i = 0; i < n; ++i) m(i, j) -= proj * m(i, k);
    }
    double nrm = 0.0;
    for (int i = 0; i < n; ++i) nrm += std::norm(m(i, j));
    nrm = std::sqrt(nrm);
    if (nrm < 1e-12) throw Error("random_unitary: degenerate draw");
    for (int i = 0; i < n; ++i) m(i, j) /= nrm;
  }
  return m;
}

std::vector<Complex> random_unit_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Complex> v(size_t(n), Complex(0.0));
  double nrm = 0.0;
  for (auto& x : v) {
    x = Complex(g(rng), g(rng));
    nrm += std::norm(x);
  }
  nrm = std::sqrt(nrm);
  for (auto& x : v) x /= nrm;
  return v;
}

SymEigResult sym_eig(const std::vector<double>& a_in, int n) {
  if (static_cast<int>(a_in.size()) != n * n) throw Error("sym_eig: bad size");
  std::vector<double> a = a_in;
  std::vector<double> v(size_t(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[size_t(i) * n + i] = 1.0;
  auto at = [&](int i, int j) -> double& { return a[size_t(i) * n + j]; };
  auto vt = [&](int i, int j) -> double& { return v[size_t(i) * n + j]; };

  double fro = 0.0;
  for (double x : a) fro += x * x;
  double stop = 1e-14 * std::max(std::sqrt(fro), 1.0);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    if (std::sqrt(2.0 * off) <= stop) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = at(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        double tau = (at(q, q) - at(p, p)) / (2.0 * apq);
        double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t), s = t * c;
        for (int i = 0; i < n; ++i) {
          double aip = at(i, p), aiq = at(i, q);
          at(i, p) = c * aip - s * aiq;
          at(i, q) = s * aip + c * aiq;
        }
        for (int j = 0; j < n; ++j) {
          double apj = at(p, j), aqj = at(q, j);
          at(p, j) = c * apj - s * aqj;
          at(q, j) = s * apj + c * aqj;
        }
        for (int i = 0; i < n; ++i) {
          double vip = vt(i, p), viq = vt(i, q);
          vt(i, p) = c * vip - s * viq;
          vt(i, q) = s * vip + c * viq;
        }
        at(p, q) = 0.0;
        at(q, p) = 0.0;
      }
    }
  }
  std::vector<int> order(static_cast<size_t>(n), 0);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return at(i, i) < at(j, j); });
  SymEigResult r;
  r.eigenvalues.resize(size_t(n));
  r.vectors.assign(size_t(n) * n, 0.0);
  for (int k = 0; k < n; ++k) {
    r.eigenvalues[size_t(k)] = at(order[size_t(k)], order[size_t(k)]);
    for (int i = 0; i < n; ++i) r.vectors[size_t(k) * n + i] = vt(i, order[size_t(k)]);
  }
  return r;
}

double sym_min_eigenvalue(const std::vector<double>& a, int n) {
  return sym_eig(a, n).eigenvalues.front();
}

}  // namespace corrkit
