#include "corrkit/quantum.hpp"

#include <algorithm>
#include <cmath>

#include "detail_herm.hpp"

namespace corrkit {

namespace {
const double kSqrt2 = std::sqrt(2.0);

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m(0, 0) = 1;
  m(1, 1) = -1;
  return m;
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m(0, 1) = 1;
  m(1, 0) = 1;
  return m;
}

// psi on dA*dB viewed as a dA x dB matrix.
ComplexMatrix as_matrix(const StateVector& psi, int da, int db) {
  if (psi.dimension() != da * db) throw Error("state dimension does not factor as dA*dB");
  ComplexMatrix m(da, db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j) m(i, j) = psi[i * db + j];
  return m;
}

Complex overlap(const ComplexMatrix& a, const ComplexMatrix& b) {
  Complex s = 0.0;
  for (size_t t = 0; t < a.data().size(); ++t) s += std::conj(a.data()[t]) * b.data()[t];
  return s;
}

}  // namespace

StateVector::StateVector(std::vector<Complex> amplitudes, double norm_tol)
    : amp_(std::move(amplitudes)) {
  if (amp_.empty()) throw Error("empty state vector");
  double n2 = 0.0;
  for (const auto& a : amp_) n2 += std::norm(a);
  if (std::abs(std::sqrt(n2) - 1.0) > norm_tol)
    throw Error("state vector is not normalized (norm " + std::to_string(std::sqrt(n2)) + ")");
}

StateVector StateVector::normalized(std::vector<Complex> amplitudes) {
  double n2 = 0.0;
  for (const auto& a : amplitudes) n2 += std::norm(a);
  if (n2 <= 0.0) throw Error("cannot normalize the zero vector");
  double inv = 1.0 / std::sqrt(n2);
  for (auto& a : amplitudes) a *= inv;
  return StateVector(std::move(amplitudes), 1e-9);
}

MeasurementFamily::MeasurementFamily(int k, int m, int dim)
    : k_(k), m_(m), dim_(dim), e_(size_t(k) * m, ComplexMatrix(dim, dim)) {
  if (k < 1 || m < 1 || dim < 1) throw Error("bad measurement family shape");
}

ComplexMatrix& MeasurementFamily::element(int setting, int outcome) {
  if (setting < 0 || setting >= k_ || outcome < 0 || outcome >= m_)
    throw Error("measurement element index out of range");
  return e_[size_t(setting) * m_ + outcome];
}

const ComplexMatrix& MeasurementFamily::element(int setting, int outcome) const {
  return const_cast<MeasurementFamily*>(this)->element(setting, outcome);
}

void MeasurementFamily::validate(const QuantumTolerances& tol) const {
  for (int x = 0; x < k_; ++x) {
    ComplexMatrix sum(dim_, dim_);
    for (int a = 0; a < m_; ++a) {
      const auto& el = element(x, a);
      if (el.rows() != dim_ || el.cols() != dim_) throw Error("measurement element has wrong size");
      if (el.hermiticity_defect() > 1e-9) throw Error("measurement element is not Hermitian");
      if (min_eigenvalue(el) < -tol.psd_tol)
        throw Error("measurement element (" + std::to_string(x) + "," + std::to_string(a) +
                    ") is not PSD");
      sum += el;
    }
    if ((sum - ComplexMatrix::identity(dim_)).norm_max() > tol.sum_tol)
      throw Error("POVM for setting " + std::to_string(x) + " does not sum to identity");
  }
}

bool MeasurementFamily::is_projective(double tol) const {
  for (int x = 0; x < k_; ++x)
    for (int a = 0; a < m_; ++a) {
      const auto& el = element(x, a);
      if ((el * el - el).norm_max() > tol) return false;
      for (int a2 = a + 1; a2 < m_; ++a2)
        if ((el * element(x, a2)).norm_max() > tol) return false;
    }
  return true;
}

MeasurementFamily MeasurementFamily::from_dichotomic_observables(
    const std::vector<ComplexMatrix>& obs) {
  if (obs.empty()) throw Error("no observables");
  int dim = obs[0].rows();
  MeasurementFamily fam(static_cast<int>(obs.size()), 2, dim);
  for (size_t x = 0; x < obs.size(); ++x) {
    const auto& o = obs[x];
    if ((o * o - ComplexMatrix::identity(dim)).norm_max() > 1e-10)
      throw Error("observable does not square to identity");
    fam.element(static_cast<int>(x), 0) = (ComplexMatrix::identity(dim) + o) * Complex(0.5);
    fam.element(static_cast<int>(x), 1) = (ComplexMatrix::identity(dim) - o) * Complex(0.5);
  }
  return fam;
}

CorrelationTable::CorrelationTable(int ka, int ma, int kb, int mb)
    : ka_(ka), ma_(ma), kb_(kb), mb_(mb), p_(size_t(ka) * ma * kb * mb, 0.0) {
  if (ka < 1 || ma < 1 || kb < 1 || mb < 1) throw Error("bad table shape");
}

size_t CorrelationTable::index(int a, int b, int x, int y) const {
  if (a < 0 || a >= ma_ || b < 0 || b >= mb_ || x < 0 || x >= ka_ || y < 0 || y >= kb_)
    throw Error("table index out of range");
  return ((size_t(a) * mb_ + b) * ka_ + x) * kb_ + y;
}

double& CorrelationTable::at(int a, int b, int x, int y) { return p_[index(a, b, x, y)]; }
double CorrelationTable::at(int a, int b, int x, int y) const { return p_[index(a, b, x, y)]; }

double CorrelationTable::marginal_alice(int a, int x, int y_ref) const {
  double s = 0.0;
  for (int b = 0; b < mb_; ++b) s += at(a, b, x, y_ref);
  return s;
}

double CorrelationTable::marginal_bob(int b, int y, int x_ref) const {
  double s = 0.0;
  for (int a = 0; a < ma_; ++a) s += at(a, b, x_ref, y);
  return s;
}

bool CorrelationTable::is_no_signaling(double ns_tol) const {
  for (int x = 0; x < ka_; ++x)
    for (int a = 0; a < ma_; ++a)
      for (int y = 1; y < kb_; ++y)
        if (std::abs(marginal_alice(a, x, y) - marginal_alice(a, x, 0)) > ns_tol) return false;
  for (int y = 0; y < kb_; ++y)
    for (int b = 0; b < mb_; ++b)
      for (int x = 1; x < ka_; ++x)
        if (std::abs(marginal_bob(b, y, x) - marginal_bob(b, y, 0)) > ns_tol) return false;
  return true;
}

void CorrelationTable::validate(double ns_tol) const {
  for (double v : p_)
    if (v < -1e-10 || v > 1.0 + 1e-10)
      throw Error("table entry " + std::to_string(v) + " outside [0,1]");
  for (int x = 0; x < ka_; ++x)
    for (int y = 0; y < kb_; ++y) {
      double s = 0.0;
      for (int a = 0; a < ma_; ++a)
        for (int b = 0; b < mb_; ++b) s += at(a, b, x, y);
      if (std::abs(s - 1.0) > ns_tol)
        throw Error("table not normalized at settings (" + std::to_string(x) + "," +
                    std::to_string(y) + ")");
    }
  if (!is_no_signaling(ns_tol)) throw Error("table is signaling");
}

double CorrelationTable::correlator(int x, int y) const {
  if (ma_ != 2 || mb_ != 2) throw Error("correlator needs two outcomes per party");
  return at(0, 0, x, y) - at(0, 1, x, y) - at(1, 0, x, y) + at(1, 1, x, y);
}

std::vector<double> CorrelationTable::flat_abxy() const {
  if (ka_ != kb_ || ma_ != mb_) throw Error("flat_abxy needs a symmetric scenario");
  std::vector<double> out(p_.size());
  size_t t = 0;
  for (int a = 0; a < ma_; ++a)
    for (int b = 0; b < mb_; ++b)
      for (int x = 0; x < ka_; ++x)
        for (int y = 0; y < kb_; ++y) out[t++] = at(a, b, x, y);
  return out;
}

CorrelationTable correlations_tensor(const StateVector& psi, const MeasurementFamily& alice,
                                     const MeasurementFamily& bob, const QuantumTolerances& tol) {
  alice.validate(tol);
  bob.validate(tol);
  int da = alice.dim(), db = bob.dim();
  ComplexMatrix psim = as_matrix(psi, da, db);
  CorrelationTable table(alice.k(), alice.m(), bob.k(), bob.m());
  // P = <(A (x) 1) psi, (1 (x) B) psi>; cache both operator images.
  std::vector<ComplexMatrix> left(size_t(alice.k()) * alice.m());
  for (int x = 0; x < alice.k(); ++x)
    for (int a = 0; a < alice.m(); ++a)
      left[size_t(x) * alice.m() + a] = alice.element(x, a) * psim;
  for (int y = 0; y < bob.k(); ++y)
    for (int b = 0; b < bob.m(); ++b) {
      ComplexMatrix right = psim * bob.element(y, b).transpose();
      for (int x = 0; x < alice.k(); ++x)
        for (int a = 0; a < alice.m(); ++a) {
          Complex v = overlap(left[size_t(x) * alice.m() + a], right);
          if (std::abs(v.imag()) > tol.imag_tol)
            throw Error("correlation has imaginary part " + std::to_string(v.imag()));
          table.at(a, b, x, y) = v.real();
        }
    }
  table.validate(tol.ns_tol);
  return table;
}

CorrelationTable correlations_commuting(const StateVector& psi, const MeasurementFamily& alice,
                                        const MeasurementFamily& bob,
                                        const QuantumTolerances& tol) {
  alice.validate(tol);
  bob.validate(tol);
  if (alice.dim() != bob.dim() || psi.dimension() != alice.dim())
    throw Error("commuting families must act on the state's space");
  // check all commutators first, reporting the worst pair
  double worst = 0.0;
  int wx = 0, wa = 0, wy = 0, wb = 0;
  for (int x = 0; x < alice.k(); ++x)
    for (int a = 0; a < alice.m(); ++a)
      for (int y = 0; y < bob.k(); ++y)
        for (int b = 0; b < bob.m(); ++b) {
          ComplexMatrix comm =
              alice.element(x, a) * bob.element(y, b) - bob.element(y, b) * alice.element(x, a);
          double nrm = spectral_norm(comm);
          if (nrm > worst) {
            worst = nrm;
            wx = x;
            wa = a;
            wy = y;
            wb = b;
          }
        }
  if (worst > tol.commutator_tol)
    throw Error("commutativity violated: ||[A^" + std::to_string(wx) + "_" + std::to_string(wa) +
                ", B^" + std::to_string(wy) + "_" + std::to_string(wb) +
                "]|| = " + std::to_string(worst));

  CorrelationTable table(alice.k(), alice.m(), bob.k(), bob.m());
  int d = psi.dimension();
  for (int x = 0; x < alice.k(); ++x)
    for (int a = 0; a < alice.m(); ++a)
      for (int y = 0; y < bob.k(); ++y)
        for (int b = 0; b < bob.m(); ++b) {
          ComplexMatrix op = alice.element(x, a) * bob.element(y, b);
          Complex v = 0.0;
          for (int i = 0; i < d; ++i) {
            Complex row = 0.0;
            for (int j = 0; j < d; ++j) row += op(i, j) * psi[j];
            v += std::conj(psi[i]) * row;
          }
          if (std::abs(v.imag()) > 1e-9)
            throw Error("commuting correlation has imaginary part " + std::to_string(v.imag()));
          table.at(a, b, x, y) = v.real();
        }
  table.validate(tol.ns_tol);
  return table;
}

Realization direct_sum_mix(const Realization& r1, const Realization& r2, double lambda) {
  if (lambda <= 0.0 || lambda >= 1.0) throw Error("lambda must lie in (0,1)");
  if (r1.alice.k() != r2.alice.k() || r1.alice.m() != r2.alice.m() ||
      r1.bob.k() != r2.bob.k() || r1.bob.m() != r2.bob.m())
    throw Error("scenario mismatch in direct_sum_mix");
  int da1 = r1.alice.dim(), da2 = r2.alice.dim();
  int db1 = r1.bob.dim(), db2 = r2.bob.dim();
  int da = da1 + da2, db = db1 + db2;

  auto block_family = [](const MeasurementFamily& f1, const MeasurementFamily& f2) {
    MeasurementFamily out(f1.k(), f1.m(), f1.dim() + f2.dim());
    for (int x = 0; x < f1.k(); ++x)
      for (int a = 0; a < f1.m(); ++a) {
        ComplexMatrix& e = out.element(x, a);
        for (int i = 0; i < f1.dim(); ++i)
          for (int j = 0; j < f1.dim(); ++j) e(i, j) = f1.element(x, a)(i, j);
        for (int i = 0; i < f2.dim(); ++i)
          for (int j = 0; j < f2.dim(); ++j)
            e(f1.dim() + i, f1.dim() + j) = f2.element(x, a)(i, j);
      }
    return out;
  };

  std::vector<Complex> amp(size_t(da) * db, 0.0);
  double c1 = std::sqrt(lambda), c2 = std::sqrt(1.0 - lambda);
  ComplexMatrix m1 = as_matrix(r1.psi, da1, db1);
  ComplexMatrix m2 = as_matrix(r2.psi, da2, db2);
  for (int i = 0; i < da1; ++i)
    for (int j = 0; j < db1; ++j) amp[size_t(i) * db + j] = c1 * m1(i, j);
  for (int i = 0; i < da2; ++i)
    for (int j = 0; j < db2; ++j) amp[size_t(da1 + i) * db + (db1 + j)] = c2 * m2(i, j);

  Realization out;
  out.psi = StateVector(std::move(amp), 1e-9);
  out.alice = block_family(r1.alice, r2.alice);
  out.bob = block_family(r1.bob, r2.bob);
  return out;
}

namespace {

// Palindrome history operator A^{x1}_{a1} ... A^{xt}_{at} ... A^{x1}_{a1}.
ComplexMatrix history_operator(const MeasurementFamily& fam, const std::vector<int>& xs,
                               const std::vector<int>& as) {
  int t = static_cast<int>(xs.size());
  ComplexMatrix op = fam.element(xs[size_t(t) - 1], as[size_t(t) - 1]);
  for (int i = t - 2; i >= 0; --i) {
    const ComplexMatrix& p = fam.element(xs[size_t(i)], as[size_t(i)]);
    op = p * op * p;
  }
  return op;
}

}  // namespace

std::vector<double> spatiotemporal(const StateVector& psi, const MeasurementFamily& alice,
                                   const MeasurementFamily& bob, const std::vector<int>& xs,
                                   const std::vector<int>& ys) {
  if (xs.empty() || ys.empty()) throw Error("spatiotemporal needs nonempty setting sequences");
  if (!alice.is_projective() || !bob.is_projective())
    throw Error("spatiotemporal requires projective families");
  for (int x : xs)
    if (x < 0 || x >= alice.k()) throw Error("alice setting out of range");
  for (int y : ys)
    if (y < 0 || y >= bob.k()) throw Error("bob setting out of range");

  int ta = static_cast<int>(xs.size()), tb = static_cast<int>(ys.size());
  int na = 1, nb = 1;
  for (int i = 0; i < ta; ++i) na *= alice.m();
  for (int i = 0; i < tb; ++i) nb *= bob.m();

  ComplexMatrix psim = as_matrix(psi, alice.dim(), bob.dim());
  std::vector<double> out(size_t(na) * nb, 0.0);
  double total = 0.0;
  for (int ra = 0; ra < na; ++ra) {
    std::vector<int> as = STCorrelationTable::unrank_sequence(ra, alice.m(), ta);
    ComplexMatrix opa = history_operator(alice, xs, as);
    ComplexMatrix left = opa * psim;
    for (int rb = 0; rb < nb; ++rb) {
      std::vector<int> bs = STCorrelationTable::unrank_sequence(rb, bob.m(), tb);
      ComplexMatrix opb = history_operator(bob, ys, bs);
      Complex v = overlap(psim, left * opb.transpose());
      if (std::abs(v.imag()) > 1e-10) throw Error("history probability has imaginary part");
      if (v.real() < -1e-10) throw Error("history probability is negative");
      double pr = std::max(0.0, v.real());
      out[size_t(ra) * nb + rb] = pr;
      total += pr;
    }
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw Error("history probabilities sum to " + std::to_string(total));
  return out;
}

int STCorrelationTable::rank_sequence(const std::vector<int>& seq, int base) {
  int r = 0;
  for (int v : seq) r = r * base + v;
  return r;
}

std::vector<int> STCorrelationTable::unrank_sequence(int rank, int base, int len) {
  std::vector<int> seq(size_t(len), 0);
  for (int i = len - 1; i >= 0; --i) {
    seq[size_t(i)] = rank % base;
    rank /= base;
  }
  return seq;
}

STCorrelationTable spatiotemporal_table(const StateVector& psi, const MeasurementFamily& alice,
                                        const MeasurementFamily& bob, int ta, int tb) {
  if (ta < 1 || tb < 1) throw Error("depths must be >= 1");
  STCorrelationTable t;
  t.ka = alice.k();
  t.ma = alice.m();
  t.kb = bob.k();
  t.mb = bob.m();
  t.ta = ta;
  t.tb = tb;
  int nx = 1, ny = 1;
  for (int i = 0; i < ta; ++i) nx *= alice.k();
  for (int i = 0; i < tb; ++i) ny *= bob.k();
  t.entries.assign(size_t(nx), std::vector<std::vector<double>>(size_t(ny)));
  for (int rx = 0; rx < nx; ++rx) {
    auto xs = STCorrelationTable::unrank_sequence(rx, alice.k(), ta);
    for (int ry = 0; ry < ny; ++ry) {
      auto ys = STCorrelationTable::unrank_sequence(ry, bob.k(), tb);
      t.entries[size_t(rx)][size_t(ry)] = spatiotemporal(psi, alice, bob, xs, ys);
    }
  }
  return t;
}

double TrivialJointMeasurement::max_marginal_defect_alice() const {
  double d = 0.0;
  for (int x = 0; x < pi.ka(); ++x)
    for (int a = 0; a < pi.ma(); ++a)
      for (int y = 0; y < pi.kb(); ++y)
        d = std::max(d, std::abs(pi.marginal_alice(a, x, y) - pi.marginal_alice(a, x, 0)));
  return d;
}

double TrivialJointMeasurement::max_marginal_defect_bob() const {
  double d = 0.0;
  for (int y = 0; y < pi.kb(); ++y)
    for (int b = 0; b < pi.mb(); ++b)
      for (int x = 0; x < pi.ka(); ++x)
        d = std::max(d, std::abs(pi.marginal_bob(b, y, x) - pi.marginal_bob(b, y, 0)));
  return d;
}

TrivialJointMeasurement trivial_joint(const CorrelationTable& p, double ns_tol) {
  p.validate(ns_tol);
  return TrivialJointMeasurement{p};
}

Realization wstate_realization() {
  auto z = pauli_z(), x = pauli_x();
  auto id2 = ComplexMatrix::identity(2);
  std::vector<ComplexMatrix> alice_obs = {kron(z, id2), kron(x, id2), kron(id2, z), kron(id2, x)};
  std::vector<ComplexMatrix> bob_obs = {(z - x) * Complex(1.0 / kSqrt2),
                                        (z + x) * Complex(1.0 / kSqrt2)};
  Realization r;
  r.alice = MeasurementFamily::from_dichotomic_observables(alice_obs);
  r.bob = MeasurementFamily::from_dichotomic_observables(bob_obs);
  std::vector<Complex> amp(8, 0.0);
  double c = 1.0 / std::sqrt(3.0);
  amp[1] = c;  // |00>_A |1>_B
  amp[2] = c;  // |01>_A |0>_B
  amp[4] = c;  // |10>_A |0>_B
  r.psi = StateVector(std::move(amp), 1e-12);
  return r;
}

double WCoarseTable::gamma_plus() const { return (1.0 + 1.0 / kSqrt2) / 6.0; }
double WCoarseTable::gamma_minus() const { return (1.0 - 1.0 / kSqrt2) / 6.0; }

WCoarseTable wstate_coarse_table() {
  Realization r = wstate_realization();
  WCoarseTable t;
  for (int pair = 0; pair < 2; ++pair) {
    std::vector<int> xs = {0, 2 + pair};  // A1 then A3 or A4
    for (int y = 0; y < 2; ++y) {
      auto probs = spatiotemporal(r.psi, r.alice, r.bob, xs, {y});
      // layout: ((a1 * 2 + a2) * 2 + b)
      for (int b = 0; b < 2; ++b) {
        t.p[pair][y][0][b] = probs[size_t((0 * 2 + 0) * 2 + b)];  // + : A1 succeeds, then +1
        t.p[pair][y][1][b] = probs[size_t((0 * 2 + 1) * 2 + b)];  // - : A1 succeeds, then -1
        t.p[pair][y][2][b] =
            probs[size_t((1 * 2 + 0) * 2 + b)] + probs[size_t((1 * 2 + 1) * 2 + b)];  // empty
      }
    }
  }
  return t;
}

CorrelationTable wstate_single_shot_table() {
  Realization r = wstate_realization();
  return correlations_tensor(r.psi, r.alice, r.bob);
}

HardyResult hardy_check(const WCoarseTable& t) {
  HardyResult h;
  h.lhs = t.p[1][1][0][0];   // P(+,+ | A1,A4; B2)
  h.rhs = t.p[1][0][0][0]    // P(+,+ | A1,A4; B1)
          + t.p[0][1][0][0]  // P(+,+ | A1,A3; B2)
          + t.p[0][0][1][1]  // P(-,- | A1,A3; B1)
          + t.p[0][0][2][1]; // P(empty,- | A1,A3; B1)
  h.violation = h.lhs - h.rhs;
  return h;
}

std::vector<double> chsh_values(const CorrelationTable& t, int x0, int x1, int y0, int y1) {
  double e[2][2] = {{t.correlator(x0, y0), t.correlator(x0, y1)},
                    {t.correlator(x1, y0), t.correlator(x1, y1)}};
  std::vector<double> vals;
  for (int mask = 0; mask < 16; ++mask) {
    int s[4] = {(mask & 1) ? -1 : 1, (mask & 2) ? -1 : 1, (mask & 4) ? -1 : 1,
                (mask & 8) ? -1 : 1};
    if (s[0] * s[1] * s[2] * s[3] != -1) continue;  // odd number of minus signs
    vals.push_back(s[0] * e[0][0] + s[1] * e[0][1] + s[2] * e[1][0] + s[3] * e[1][1]);
  }
  return vals;
}

std::vector<ComplexMatrix> povm_optimize(const std::vector<ComplexMatrix>& k_ops) {
  int m = static_cast<int>(k_ops.size());
  if (m < 1) throw Error("povm_optimize needs at least one outcome");
  int d = k_ops[0].rows();
  for (const auto& k : k_ops)
    if (!k.is_square() || k.rows() != d || k.hermiticity_defect() > 1e-8)
      throw Error("povm_optimize needs Hermitian square operators of equal size");

  int nc = m * d;  // complex dimension of the block-diagonal variable
  SdpInstance inst;
  inst.n = 2 * nc;
  inst.maximize = true;
  detail::add_structure_constraints(inst, nc);
  auto blk = [&](int a, int i) { return a * d + i; };

  // off-diagonal blocks vanish
  for (int a = 0; a < m; ++a)
    for (int a2 = a + 1; a2 < m; ++a2)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          inst.constraints.push_back(
              detail::constraint_from_cells(nc, {{blk(a, i), blk(a2, j), Complex(1.0)}}, 0.0));
          inst.constraints.push_back(detail::constraint_from_cells(
              nc, {{blk(a, i), blk(a2, j), Complex(0.0, -1.0)}}, 0.0));
        }
  // completeness sum_a E_a = 1
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      std::vector<detail::CellTerm> re, im;
      for (int a = 0; a < m; ++a) {
        re.push_back({blk(a, i), blk(a, j), Complex(1.0)});
        im.push_back({blk(a, i), blk(a, j), Complex(0.0, -1.0)});
      }
      inst.constraints.push_back(detail::constraint_from_cells(nc, re, i == j ? 1.0 : 0.0));
      if (i != j) inst.constraints.push_back(detail::constraint_from_cells(nc, im, 0.0));
    }
  // objective sum_a tr(K_a E_a) = sum_a sum_ij (K_a)_ij M_{(a,j),(a,i)}
  for (int a = 0; a < m; ++a)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        detail::add_cell_term(inst.c_entries, nc, blk(a, j), blk(a, i), k_ops[size_t(a)](i, j));

  SdpOptions opts;
  opts.tol_gap = 1e-10;
  opts.tol_feas = 1e-9;
  auto res = solve_sdp(inst, opts);
  if (res.status == SdpStatus::infeasible) throw Error("povm_optimize: infeasible (impossible)");

  ComplexMatrix big = detail::extract_hermitian(res.x, nc);
  std::vector<ComplexMatrix> povm(size_t(m), ComplexMatrix(d, d));
  ComplexMatrix total(d, d);
  for (int a = 0; a < m; ++a) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) povm[size_t(a)](i, j) = big(blk(a, i), blk(a, j));
    total += povm[size_t(a)];
  }
  // interior-point iterates stay strictly PSD; renormalizing the tiny
  // completeness residual away makes downstream validation exact
  ComplexMatrix fix = psd_inv_sqrt(total);
  for (auto& e : povm) e = fix * e * fix;
  return povm;
}

namespace {

MeasurementFamily random_projective_family(int k, int m, int dim, std::mt19937_64& rng) {
  MeasurementFamily fam(k, m, dim);
  for (int x = 0; x < k; ++x) {
    ComplexMatrix u = random_unitary(dim, rng);
    for (int a = 0; a < m; ++a) {
      ComplexMatrix p(dim, dim);
      for (int i = a; i < dim; i += m) p(i, i) = 1.0;  // partition of basis indices
      fam.element(x, a) = u * p * u.adjoint();
    }
  }
  return fam;
}

double bell_objective(const BellFunctional& c, const StateVector& psi,
                      const MeasurementFamily& alice, const MeasurementFamily& bob) {
  const auto& sc = c.scenario();
  ComplexMatrix psim = as_matrix(psi, alice.dim(), bob.dim());
  double val = 0.0;
  for (int x = 0; x < sc.k; ++x)
    for (int a = 0; a < sc.m; ++a) {
      ComplexMatrix left = alice.element(x, a) * psim;
      for (int y = 0; y < sc.k; ++y)
        for (int b = 0; b < sc.m; ++b) {
          double w = c.at(a, b, x, y);
          if (w == 0.0) continue;
          val += w * overlap(psim, left * bob.element(y, b).transpose()).real();
        }
    }
  return val;
}

}  // namespace

BellSeesawResult bell_value_seesaw(const BellFunctional& c, int dim_a, int dim_b,
                                   const SeesawOptions& opts) {
  const auto& sc = c.scenario();
  std::mt19937_64 rng(opts.seed);
  BellSeesawResult best;
  best.value = -1e300;

  for (int restart = 0; restart < std::max(1, opts.restarts); ++restart) {
    MeasurementFamily alice = random_projective_family(sc.k, sc.m, dim_a, rng);
    MeasurementFamily bob = random_projective_family(sc.k, sc.m, dim_b, rng);
    StateVector psi = StateVector::normalized(random_unit_vector(dim_a * dim_b, rng));
    double prev = -1e300;
    std::vector<double> history;

    for (int it = 0; it < opts.iterations; ++it) {
      // state step: top eigenvector of the Bell operator
      ComplexMatrix g(dim_a * dim_b, dim_a * dim_b);
      for (int x = 0; x < sc.k; ++x)
        for (int a = 0; a < sc.m; ++a)
          for (int y = 0; y < sc.k; ++y)
            for (int b = 0; b < sc.m; ++b) {
              double w = c.at(a, b, x, y);
              if (w == 0.0) continue;
              g += kron(alice.element(x, a), bob.element(y, b)) * Complex(w);
            }
      auto eg = eigh(g);
      int full = dim_a * dim_b;
      std::vector<Complex> top(size_t(full), Complex(0.0));
      for (int i = 0; i < full; ++i) top[size_t(i)] = eg.eigenvectors(i, full - 1);
      psi = StateVector::normalized(std::move(top));
      ComplexMatrix rho(full, full);
      for (int i = 0; i < full; ++i)
        for (int j = 0; j < full; ++j) rho(i, j) = psi[i] * std::conj(psi[j]);

      // Alice step: K^x_a = sum_{y,b} C^{ab}_{xy} Tr_B[(1 (x) B^y_b) rho]
      std::vector<ComplexMatrix> rb(size_t(sc.k) * sc.m);
      for (int y = 0; y < sc.k; ++y)
        for (int b = 0; b < sc.m; ++b)
          rb[size_t(y) * sc.m + b] =
              partial_trace(rho * kron(ComplexMatrix::identity(dim_a), bob.element(y, b)),
                            {dim_a, dim_b}, {1});
      for (int x = 0; x < sc.k; ++x) {
        std::vector<ComplexMatrix> k_ops(size_t(sc.m), ComplexMatrix(dim_a, dim_a));
        for (int a = 0; a < sc.m; ++a)
          for (int y = 0; y < sc.k; ++y)
            for (int b = 0; b < sc.m; ++b)
              k_ops[size_t(a)] += rb[size_t(y) * sc.m + b] * Complex(c.at(a, b, x, y));
        for (auto& k : k_ops) k = (k + k.adjoint()) * Complex(0.5);
        auto povm = povm_optimize(k_ops);
        for (int a = 0; a < sc.m; ++a) alice.element(x, a) = povm[size_t(a)];
      }

      // Bob step: L^y_b = sum_{x,a} C^{ab}_{xy} Tr_A[(A^x_a (x) 1) rho]
      std::vector<ComplexMatrix> ra(size_t(sc.k) * sc.m);
      for (int x = 0; x < sc.k; ++x)
        for (int a = 0; a < sc.m; ++a)
          ra[size_t(x) * sc.m + a] =
              partial_trace(rho * kron(alice.element(x, a), ComplexMatrix::identity(dim_b)),
                            {dim_a, dim_b}, {0});
      for (int y = 0; y < sc.k; ++y) {
        std::vector<ComplexMatrix> k_ops(size_t(sc.m), ComplexMatrix(dim_b, dim_b));
        for (int b = 0; b < sc.m; ++b)
          for (int x = 0; x < sc.k; ++x)
            for (int a = 0; a < sc.m; ++a)
              k_ops[size_t(b)] += ra[size_t(x) * sc.m + a] * Complex(c.at(a, b, x, y));
        for (auto& k : k_ops) k = (k + k.adjoint()) * Complex(0.5);
        auto povm = povm_optimize(k_ops);
        for (int b = 0; b < sc.m; ++b) bob.element(y, b) = povm[size_t(b)];
      }

      double val = bell_objective(c, psi, alice, bob);
      history.push_back(val);
      if (it > 1 && val - prev < opts.stall_tol) {
        prev = std::max(prev, val);
        break;
      }
      prev = val;
    }

    if (prev > best.value) {
      best.value = prev;
      best.realization = Realization{psi, alice, bob};
      best.history = history;
    }
  }
  return best;
}

}  // namespace corrkit
