#include "corrkit/steering.hpp"

#include <cmath>

namespace corrkit {

ComplexMatrix SteeringData::reduced_state(int x) const {
  ComplexMatrix r(d, d);
  for (int a = 0; a < m; ++a) r += alpha_at(x, a);
  return r;
}

void SteeringData::validate(double psd_tol, double norm_tol, double ns_tol) const {
  if (static_cast<int>(alpha.size()) != k * m) throw Error("steering data has wrong alpha count");
  if (bipartite() && static_cast<int>(beta.size()) != k * m)
    throw Error("steering data has wrong beta count");
  auto check_family = [&](const std::vector<ComplexMatrix>& fam, const char* name) {
    for (int x = 0; x < k; ++x) {
      double total = 0.0;
      for (int a = 0; a < m; ++a) {
        const auto& mat = fam[size_t(x) * m + a];
        if (mat.rows() != d || mat.cols() != d) throw Error("steering matrix has wrong size");
        if (mat.hermiticity_defect() > 1e-9)
          throw Error(std::string(name) + " matrix is not Hermitian");
        if (min_eigenvalue(mat) < -psd_tol)
          throw Error(std::string(name) + " matrix is not PSD");
        total += mat.trace().real();
      }
      if (std::abs(total - 1.0) > norm_tol)
        throw Error(std::string(name) + " normalization fails at setting " + std::to_string(x));
    }
  };
  check_family(alpha, "alpha");
  if (bipartite()) {
    check_family(beta, "beta");
    // matching condition: sum_a alpha[x][a] = sum_b beta[y][b] for all x, y
    ComplexMatrix ra = reduced_state(0);
    for (int x = 1; x < k; ++x)
      if ((reduced_state(x) - ra).norm_max() > ns_tol)
        throw Error("alpha reduced state depends on the setting");
    for (int y = 0; y < k; ++y) {
      ComplexMatrix rb(d, d);
      for (int b = 0; b < m; ++b) rb += beta_at(y, b);
      if ((rb - ra).norm_max() > ns_tol)
        throw Error("no-signaling matching condition fails at setting " + std::to_string(y));
    }
  }
}

namespace {

void check_density(const ComplexMatrix& rho, int dim) {
  if (rho.rows() != dim || rho.cols() != dim) throw Error("density matrix has wrong size");
  if (rho.hermiticity_defect() > 1e-9) throw Error("density matrix is not Hermitian");
  if (min_eigenvalue(rho) < -1e-9) throw Error("density matrix is not PSD");
  if (std::abs(rho.trace().real() - 1.0) > 1e-9) throw Error("density matrix is not trace one");
}

}  // namespace

SteeringData steering_extract(const ComplexMatrix& rho, int d, const MeasurementFamily& alice,
                              const MeasurementFamily& bob) {
  alice.validate();
  bob.validate();
  if (alice.k() != bob.k() || alice.m() != bob.m())
    throw Error("bipartite steering needs matching scenarios");
  int da = alice.dim(), db = bob.dim();
  check_density(rho, d * da * db);

  SteeringData sd;
  sd.d = d;
  sd.k = alice.k();
  sd.m = alice.m();
  sd.alpha.resize(size_t(sd.k) * sd.m);
  sd.beta.resize(size_t(sd.k) * sd.m);
  auto id_v = ComplexMatrix::identity(d);
  auto id_a = ComplexMatrix::identity(da);
  auto id_b = ComplexMatrix::identity(db);
  for (int x = 0; x < sd.k; ++x)
    for (int a = 0; a < sd.m; ++a)
      sd.alpha_at(x, a) =
          partial_trace(rho * kron(id_v, kron(alice.element(x, a), id_b)), {d, da, db}, {1, 2});
  for (int y = 0; y < sd.k; ++y)
    for (int b = 0; b < sd.m; ++b)
      sd.beta_at(y, b) =
          partial_trace(rho * kron(id_v, kron(id_a, bob.element(y, b))), {d, da, db}, {1, 2});
  sd.validate();
  return sd;
}

SteeringData steering_extract_single(const ComplexMatrix& rho, int d,
                                     const MeasurementFamily& alice) {
  alice.validate();
  int da = alice.dim();
  check_density(rho, d * da);
  SteeringData sd;
  sd.d = d;
  sd.k = alice.k();
  sd.m = alice.m();
  sd.alpha.resize(size_t(sd.k) * sd.m);
  auto id_v = ComplexMatrix::identity(d);
  for (int x = 0; x < sd.k; ++x)
    for (int a = 0; a < sd.m; ++a)
      sd.alpha_at(x, a) = partial_trace(rho * kron(id_v, alice.element(x, a)), {d, da}, {1});
  sd.validate();
  return sd;
}

SteeringRealization steering_realize(const SteeringData& sd) {
  if (sd.bipartite()) throw Error("steering_realize takes single-party data");
  sd.validate();
  int d = sd.d;
  // the reduced state must not depend on the measurement choice
  ComplexMatrix rho_v = sd.reduced_state(0);
  for (int x = 1; x < sd.k; ++x)
    if ((sd.reduced_state(x) - rho_v).norm_max() > 1e-10)
      throw Error("reduced verifier state depends on the setting");

  // A = d * rho_V^t; its range carries the realization.
  ComplexMatrix big_a = rho_v.transpose() * Complex(double(d));
  auto ea = eigh(big_a);
  double top = std::max(1e-300, ea.eigenvalues.back());
  std::vector<int> keep;
  for (int i = 0; i < d; ++i)
    if (ea.eigenvalues[size_t(i)] > 1e-10 * top) keep.push_back(i);
  int rank = static_cast<int>(keep.size());
  if (rank == 0) throw Error("reduced state has no support");

  // Q: d x rank isometry onto range(A); in that basis A is diagonal.
  ComplexMatrix q(d, rank);
  std::vector<double> lam(size_t(rank), 0.0);
  for (int c = 0; c < rank; ++c) {
    lam[size_t(c)] = ea.eigenvalues[size_t(keep[size_t(c)])];
    for (int i = 0; i < d; ++i) q(i, c) = ea.eigenvectors(i, keep[size_t(c)]);
  }

  SteeringRealization out;
  out.dim = rank;
  out.alice = MeasurementFamily(sd.k, sd.m, rank);
  for (int x = 0; x < sd.k; ++x)
    for (int a = 0; a < sd.m; ++a) {
      // A^x_a = A^{-1/2} (d alpha^t) A^{-1/2} compressed to the range
      ComplexMatrix hat = q.adjoint() * sd.alpha_at(x, a).transpose() * q * Complex(double(d));
      ComplexMatrix el(rank, rank);
      for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j)
          el(i, j) = hat(i, j) / std::sqrt(lam[size_t(i)] * lam[size_t(j)]);
      el = (el + el.adjoint()) * Complex(0.5);  // hermitize roundoff
      out.alice.element(x, a) = el;
    }

  // canonical purification: psi_{(i,c)} = sqrt(lam_c) * (Q^dagger)_{c i}
  std::vector<Complex> psi(size_t(d) * rank, 0.0);
  for (int i = 0; i < d; ++i)
    for (int c = 0; c < rank; ++c)
      psi[size_t(i) * rank + c] = std::sqrt(lam[size_t(c)]) * std::conj(q(i, c));
  ComplexMatrix rho(d * rank, d * rank);
  for (int r = 0; r < d * rank; ++r)
    for (int c = 0; c < d * rank; ++c)
      rho(r, c) = psi[size_t(r)] * std::conj(psi[size_t(c)]) / double(d);
  out.rho = rho;
  out.alice.validate();
  return out;
}

void SteeringGame::validate(double herm_tol) const {
  if (static_cast<int>(v.size()) != k * m || static_cast<int>(w.size()) != k * m)
    throw Error("steering game has wrong observable count");
  for (const auto* mats : {&v, &w})
    for (const auto& mat : *mats) {
      if (mat.rows() != d || mat.cols() != d) throw Error("game observable has wrong size");
      if (mat.hermiticity_defect() > herm_tol) throw Error("game observable is not Hermitian");
    }
}

double game_value(const SteeringGame& game, const SteeringData& sd) {
  if (!sd.bipartite()) throw Error("game_value needs bipartite steering data");
  if (game.d != sd.d || game.k != sd.k || game.m != sd.m)
    throw Error("game/assemblage shape mismatch");
  double s = 0.0;
  for (int x = 0; x < game.k; ++x)
    for (int a = 0; a < game.m; ++a) s += (sd.alpha_at(x, a) * game.v_at(x, a)).trace().real();
  for (int y = 0; y < game.k; ++y)
    for (int b = 0; b < game.m; ++b) s += (sd.beta_at(y, b) * game.w_at(y, b)).trace().real();
  return s / (2.0 * game.k);
}

double game_value_trivial_verifier(const SteeringGame& game) {
  if (game.d != 1) throw Error("closed form needs verifier dimension 1");
  double s = 0.0;
  for (int x = 0; x < game.k; ++x) {
    double best = -1e300;
    for (int a = 0; a < game.m; ++a) best = std::max(best, game.v_at(x, a)(0, 0).real());
    s += best;
  }
  for (int y = 0; y < game.k; ++y) {
    double best = -1e300;
    for (int b = 0; b < game.m; ++b) best = std::max(best, game.w_at(y, b)(0, 0).real());
    s += best;
  }
  return s / (2.0 * game.k);
}

namespace {

MeasurementFamily random_projective_family_steer(int k, int m, int dim, std::mt19937_64& rng) {
  MeasurementFamily fam(k, m, dim);
  for (int x = 0; x < k; ++x) {
    ComplexMatrix u = random_unitary(dim, rng);
    for (int a = 0; a < m; ++a) {
      ComplexMatrix p(dim, dim);
      for (int i = a; i < dim; i += m) p(i, i) = 1.0;
      fam.element(x, a) = u * p * u.adjoint();
    }
  }
  return fam;
}

double game_objective(const SteeringGame& game, const ComplexMatrix& rho,
                      const MeasurementFamily& alice, const MeasurementFamily& bob) {
  int da = alice.dim(), db = bob.dim();
  auto id_a = ComplexMatrix::identity(da);
  auto id_b = ComplexMatrix::identity(db);
  double s = 0.0;
  for (int x = 0; x < game.k; ++x)
    for (int a = 0; a < game.m; ++a)
      s += (rho * kron(game.v_at(x, a), kron(alice.element(x, a), id_b))).trace().real();
  for (int y = 0; y < game.k; ++y)
    for (int b = 0; b < game.m; ++b)
      s += (rho * kron(game.w_at(y, b), kron(id_a, bob.element(y, b)))).trace().real();
  return s / (2.0 * game.k);
}

}  // namespace

GameSeesawResult game_value_seesaw(const SteeringGame& game, int dim_a, int dim_b,
                                   const SeesawOptions& opts) {
  game.validate();
  if (dim_a < 1 || dim_b < 1) throw Error("local dimensions must be >= 1");
  int d = game.d;
  int full = d * dim_a * dim_b;
  std::mt19937_64 rng(opts.seed);
  auto id_a = ComplexMatrix::identity(dim_a);
  auto id_b = ComplexMatrix::identity(dim_b);

  GameSeesawResult best;
  best.lower_bound = -1e300;

  for (int restart = 0; restart < std::max(1, opts.restarts); ++restart) {
    MeasurementFamily alice = random_projective_family_steer(game.k, game.m, dim_a, rng);
    MeasurementFamily bob = random_projective_family_steer(game.k, game.m, dim_b, rng);
    ComplexMatrix rho(full, full);
    double prev = -1e300;
    std::vector<double> history;

    for (int it = 0; it < opts.iterations; ++it) {
      // state step: top eigenvector of the game operator
      ComplexMatrix g(full, full);
      for (int x = 0; x < game.k; ++x)
        for (int a = 0; a < game.m; ++a)
          g += kron(game.v_at(x, a), kron(alice.element(x, a), id_b));
      for (int y = 0; y < game.k; ++y)
        for (int b = 0; b < game.m; ++b)
          g += kron(game.w_at(y, b), kron(id_a, bob.element(y, b)));
      g = g * Complex(1.0 / (2.0 * game.k));
      auto eg = eigh(g);
      rho = ComplexMatrix(full, full);
      for (int i = 0; i < full; ++i)
        for (int j = 0; j < full; ++j)
          rho(i, j) = eg.eigenvectors(i, full - 1) * std::conj(eg.eigenvectors(j, full - 1));

      // Alice step: the x-term of the objective is tr(E^x_a K^x_a) with
      // K^x_a = Tr_{V,B}[rho (V^x_a (x) 1 (x) 1)] / 2k living on the A slot.
      for (int x = 0; x < game.k; ++x) {
        std::vector<ComplexMatrix> k_ops(size_t(game.m));
        for (int a = 0; a < game.m; ++a) {
          ComplexMatrix t = partial_trace(rho * kron(game.v_at(x, a), kron(id_a, id_b)),
                                          {d, dim_a, dim_b}, {0, 2});
          k_ops[size_t(a)] = (t + t.adjoint()) * Complex(0.5 / (2.0 * game.k));
        }
        auto povm = povm_optimize(k_ops);
        for (int a = 0; a < game.m; ++a) alice.element(x, a) = povm[size_t(a)];
      }
      // Bob step
      for (int y = 0; y < game.k; ++y) {
        std::vector<ComplexMatrix> k_ops(size_t(game.m));
        for (int b = 0; b < game.m; ++b) {
          ComplexMatrix t = partial_trace(rho * kron(game.w_at(y, b), kron(id_a, id_b)),
                                          {d, dim_a, dim_b}, {0, 1});
          k_ops[size_t(b)] = (t + t.adjoint()) * Complex(0.5 / (2.0 * game.k));
        }
        auto povm = povm_optimize(k_ops);
        for (int b = 0; b < game.m; ++b) bob.element(y, b) = povm[size_t(b)];
      }

      double val = game_objective(game, rho, alice, bob);
      history.push_back(val);
      if (it > 1 && val - prev < opts.stall_tol) {
        prev = std::max(prev, val);
        break;
      }
      prev = val;
    }

    if (prev > best.lower_bound) {
      best.lower_bound = prev;
      best.rho = rho;
      best.alice = alice;
      best.bob = bob;
      best.history = history;
    }
  }
  return best;
}

}  // namespace corrkit
