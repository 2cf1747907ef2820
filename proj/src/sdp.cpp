#include "corrkit/sdp.hpp"

#include <algorithm>
#include <cmath>

namespace corrkit {

const char* to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::optimal: return "optimal";
    case SdpStatus::infeasible: return "infeasible";
    case SdpStatus::max_iter: return "max_iter";
  }
  return "?";
}

namespace {

using Vec = std::vector<double>;

// Dense row-major symmetric matrix helpers on Vec of size n*n.

Vec dense_from_entries(const std::vector<SdpConstraint::Entry>& entries, int n) {
  Vec m(size_t(n) * n, 0.0);
  for (const auto& e : entries) {
    if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n) throw Error("sdp entry index out of range");
    m[size_t(e.i) * n + e.j] += e.v;
    if (e.i != e.j) m[size_t(e.j) * n + e.i] += e.v;
  }
  return m;
}

double inner(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double sparse_inner(const std::vector<SdpConstraint::Entry>& entries, const Vec& x, int n) {
  double s = 0.0;
  for (const auto& e : entries) {
    s += e.v * x[size_t(e.i) * n + e.j];
    if (e.i != e.j) s += e.v * x[size_t(e.j) * n + e.i];
  }
  return s;
}

void axpy_sparse(Vec& m, const std::vector<SdpConstraint::Entry>& entries, double alpha, int n) {
  for (const auto& e : entries) {
    m[size_t(e.i) * n + e.j] += alpha * e.v;
    if (e.i != e.j) m[size_t(e.j) * n + e.i] += alpha * e.v;
  }
}

Vec matmul(const Vec& a, const Vec& b, int n) {
  Vec r(size_t(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double aik = a[size_t(i) * n + k];
      if (aik == 0.0) continue;
      const double* brow = &b[size_t(k) * n];
      double* rrow = &r[size_t(i) * n];
      for (int j = 0; j < n; ++j) rrow[j] += aik * brow[j];
    }
  return r;
}

double fro_norm(const Vec& a) { return std::sqrt(inner(a, a)); }

void symmetrize(Vec& a, int n) {
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double v = 0.5 * (a[size_t(i) * n + j] + a[size_t(j) * n + i]);
      a[size_t(i) * n + j] = v;
      a[size_t(j) * n + i] = v;
    }
}

// Cholesky of a symmetric positive definite matrix; returns false on failure.
bool cholesky(const Vec& a, int n, Vec& l) {
  l.assign(size_t(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = a[size_t(i) * n + j];
      for (int k = 0; k < j; ++k) s -= l[size_t(i) * n + k] * l[size_t(j) * n + k];
      if (i == j) {
        if (s <= 0.0 || !std::isfinite(s)) return false;
        l[size_t(i) * n + i] = std::sqrt(s);
      } else {
        l[size_t(i) * n + j] = s / l[size_t(j) * n + j];
      }
    }
  }
  return true;
}

void forward_subst(const Vec& l, int n, Vec& x) {  // solve L x = x in place
  for (int i = 0; i < n; ++i) {
    double s = x[size_t(i)];
    for (int k = 0; k < i; ++k) s -= l[size_t(i) * n + k] * x[size_t(k)];
    x[size_t(i)] = s / l[size_t(i) * n + i];
  }
}

void backward_subst(const Vec& l, int n, Vec& x) {  // solve L^T x = x in place
  for (int i = n - 1; i >= 0; --i) {
    double s = x[size_t(i)];
    for (int k = i + 1; k < n; ++k) s -= l[size_t(k) * n + i] * x[size_t(k)];
    x[size_t(i)] = s / l[size_t(i) * n + i];
  }
}

// Inverse through Cholesky.
Vec spd_inverse(const Vec& a, int n) {
  Vec l;
  Vec work = a;
  double ridge = 0.0;
  double scale = 0.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(a[size_t(i) * n + i]));
  for (int attempt = 0; attempt < 8; ++attempt) {
    if (cholesky(work, n, l)) break;
    ridge = (ridge == 0.0 ? 1e-14 * std::max(scale, 1.0) : ridge * 100.0);
    work = a;
    for (int i = 0; i < n; ++i) work[size_t(i) * n + i] += ridge;
    if (attempt == 7) throw Error("sdp: Cholesky failed on SPD matrix");
  }
  Vec inv(size_t(n) * n, 0.0);
  Vec col(size_t(n), 0.0);
  for (int j = 0; j < n; ++j) {
    std::fill(col.begin(), col.end(), 0.0);
    col[size_t(j)] = 1.0;
    forward_subst(l, n, col);
    backward_subst(l, n, col);
    for (int i = 0; i < n; ++i) inv[size_t(i) * n + j] = col[size_t(i)];
  }
  symmetrize(inv, n);
  return inv;
}

// Largest alpha in (0, 1] with M + alpha*D >= 0, through eigenvalues of
// L^-1 D L^-T where M = L L^T.
double max_step(const Vec& m, const Vec& d, int n) {
  Vec l;
  Vec work = m;
  double scale = 0.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(m[size_t(i) * n + i]));
  double ridge = 0.0;
  while (!cholesky(work, n, l)) {
    ridge = (ridge == 0.0 ? 1e-14 * std::max(scale, 1.0) : ridge * 100.0);
    if (ridge > 1e-2 * std::max(scale, 1.0)) return 0.0;
    work = m;
    for (int i = 0; i < n; ++i) work[size_t(i) * n + i] += ridge;
  }
  // W = L^-1 D L^-T
  Vec w = d;
  // columns: solve L * Y = D  (apply forward subst to each column)
  for (int j = 0; j < n; ++j) {
    Vec col(size_t(n), 0.0);
    for (int i = 0; i < n; ++i) col[size_t(i)] = w[size_t(i) * n + j];
    forward_subst(l, n, col);
    for (int i = 0; i < n; ++i) w[size_t(i) * n + j] = col[size_t(i)];
  }
  // rows: Y L^-T  => solve L z = row^T per row
  for (int i = 0; i < n; ++i) {
    Vec row(size_t(n), 0.0);
    for (int j = 0; j < n; ++j) row[size_t(j)] = w[size_t(i) * n + j];
    forward_subst(l, n, row);
    for (int j = 0; j < n; ++j) w[size_t(i) * n + j] = row[size_t(j)];
  }
  symmetrize(w, n);
  double lmin = sym_min_eigenvalue(w, n);
  if (lmin >= 0.0) return 1.0;
  return std::min(1.0, -1.0 / lmin);
}

struct ReducedProblem {
  std::vector<SdpConstraint> cons;  // independent subset
  std::vector<int> kept;
};

PreprocessResult preprocess_impl(const SdpInstance& inst) {
  PreprocessResult res;
  int n = inst.n;
  size_t dim = size_t(n) * n;
  // Modified Gram-Schmidt over dense symmetric rows; coeffs track the
  // expansion of each orthonormal row in original rows for certificates.
  std::vector<Vec> basis;       // orthonormalized rows
  std::vector<Vec> basis_comb;  // combination over original rows
  std::vector<double> basis_b;  // corresponding rhs under the same combination
  int mrows = static_cast<int>(inst.constraints.size());
  double scale = 1.0;
  for (const auto& c : inst.constraints)
    for (const auto& e : c.entries) scale = std::max(scale, std::abs(e.v));
  double tol = 1e-10 * scale;

  for (int r = 0; r < mrows; ++r) {
    Vec row = dense_from_entries(inst.constraints[size_t(r)].entries, n);
    double b = inst.constraints[size_t(r)].b;
    Vec comb(size_t(mrows), 0.0);
    comb[size_t(r)] = 1.0;
    double row_norm0 = fro_norm(row);
    for (size_t k = 0; k < basis.size(); ++k) {
      double proj = inner(basis[k], row);
      if (proj == 0.0) continue;
      for (size_t t = 0; t < dim; ++t) row[t] -= proj * basis[k][t];
      for (int t = 0; t < mrows; ++t) comb[size_t(t)] -= proj * basis_comb[k][size_t(t)];
      b -= proj * basis_b[k];
    }
    double rn = fro_norm(row);
    if (rn > std::max(tol, 1e-13 * row_norm0)) {
      res.kept.push_back(r);
      for (auto& v : row) v /= rn;
      for (auto& v : comb) v /= rn;
      basis.push_back(std::move(row));
      basis_comb.push_back(std::move(comb));
      basis_b.push_back(b / rn);
    } else if (std::abs(b) > 1e-8 * std::max(1.0, std::abs(inst.constraints[size_t(r)].b))) {
      // Dependent row with inconsistent rhs: lambda^T A = 0, lambda^T b != 0.
      res.infeasible = true;
      res.certificate = comb;
      return res;
    }
  }
  return res;
}

struct CoreProblem {
  int n = 0;
  Vec c;
  std::vector<const SdpConstraint*> cons;
  Vec b;
};

// ---------- dense PSD-block IPM ----------

SdpResult solve_block(const CoreProblem& p, const SdpOptions& opts) {
  int n = p.n;
  int m = static_cast<int>(p.cons.size());
  size_t dim = size_t(n) * n;

  double bscale = 1.0, cscale = 1.0;
  for (double v : p.b) bscale = std::max(bscale, std::abs(v));
  for (double v : p.c) cscale = std::max(cscale, std::abs(v));

  Vec x(dim, 0.0), s(dim, 0.0), y(size_t(m), 0.0);
  double tau0 = std::max({1.0, bscale, cscale});
  for (int i = 0; i < n; ++i) {
    x[size_t(i) * n + i] = tau0;
    s[size_t(i) * n + i] = tau0;
  }

  SdpResult res;
  Vec rp(size_t(m), 0.0);
  Vec rd(dim);

  // Near degenerate optima the Schur system gets ill-conditioned and the
  // iterates can wobble; keep the best iterate seen and stop on stagnation.
  double best_merit = 1e300;
  Vec best_x = x, best_s = s, best_y = y;
  int best_iter = 0, since_best = 0;

  for (int iter = 0; iter < opts.max_iter; ++iter) {
    // residuals
    for (int i = 0; i < m; ++i) rp[size_t(i)] = p.b[size_t(i)] - sparse_inner(p.cons[size_t(i)]->entries, x, n);
    for (size_t t = 0; t < dim; ++t) rd[t] = -p.c[t] - s[t];
    for (int i = 0; i < m; ++i) axpy_sparse(rd, p.cons[size_t(i)]->entries, y[size_t(i)], n);
    // rd = sum y_i A_i - C - S (want zero)

    double mu = inner(x, s) / n;
    double pobj = inner(p.c, x);
    double dobj = inner(p.b, y);
    double rp_norm = std::sqrt(inner(rp, rp));
    double rd_norm = fro_norm(rd);

    res.iterations = iter;
    res.gap = std::abs(inner(x, s));
    res.primal_residual = rp_norm;
    res.dual_residual = rd_norm;
    res.objective = pobj;
    res.dual_objective = dobj;

    double merit = std::max({rp_norm / (1.0 + bscale), rd_norm / (1.0 + cscale),
                             inner(x, s) / (1.0 + std::abs(pobj) + std::abs(dobj))});
    if (merit < best_merit) {
      best_merit = merit;
      best_x = x;
      best_s = s;
      best_y = y;
      best_iter = iter;
      since_best = 0;
    } else if (++since_best > 15) {
      break;  // stagnating; the best iterate is reported below
    }

    bool feas = rp_norm <= opts.tol_feas * (1.0 + bscale) && rd_norm <= opts.tol_feas * (1.0 + cscale);
    bool small_gap = inner(x, s) <= opts.tol_gap * (1.0 + std::abs(pobj) + std::abs(dobj));
    if (feas && small_gap) {
      res.status = SdpStatus::optimal;
      break;
    }

    Vec sinv = spd_inverse(s, n);

    // Schur complement M_ij = tr(A_i X A_j S^-1); build W_j = X A_j S^-1 dense.
    Vec schur(size_t(m) * m, 0.0);
    std::vector<Vec> w(size_t(m), Vec{});
    for (int j = 0; j < m; ++j) {
      Vec aj = dense_from_entries(p.cons[size_t(j)]->entries, n);
      Vec xa = matmul(x, aj, n);
      w[size_t(j)] = matmul(xa, sinv, n);
    }
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        schur[size_t(i) * m + j] = sparse_inner(p.cons[size_t(i)]->entries, w[size_t(j)], n);
    symmetrize(schur, m);

    Vec lfac;
    {
      Vec work = schur;
      double diag_scale = 0.0;
      for (int i = 0; i < m; ++i) diag_scale = std::max(diag_scale, std::abs(work[size_t(i) * m + i]));
      double ridge = 0.0;
      while (!cholesky(work, m, lfac)) {
        ridge = (ridge == 0.0 ? 1e-13 * std::max(diag_scale, 1.0) : ridge * 100.0);
        if (ridge > std::max(diag_scale, 1.0)) throw Error("sdp: Schur factorization failed");
        work = schur;
        for (int i = 0; i < m; ++i) work[size_t(i) * m + i] += ridge;
      }
    }
    auto solve_schur = [&](const Vec& rhs) {
      Vec sol = rhs;
      forward_subst(lfac, m, sol);
      backward_subst(lfac, m, sol);
      // one round of iterative refinement against the unfactored Schur matrix
      Vec resid = rhs;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) resid[size_t(i)] -= schur[size_t(i) * m + j] * sol[size_t(j)];
      forward_subst(lfac, m, resid);
      backward_subst(lfac, m, resid);
      for (int i = 0; i < m; ++i) sol[size_t(i)] += resid[size_t(i)];
      return sol;
    };

    // X Rd S^-1 appears in both passes.
    Vec xrd = matmul(matmul(x, rd, n), sinv, n);

    auto newton = [&](double sigma_mu, const Vec* second_order) {
      // g_i = <A_i, sigma_mu * S^-1 - X Rd S^-1 (- DXa DSa S^-1)> - b_i
      Vec target(dim, 0.0);
      for (size_t t = 0; t < dim; ++t) target[t] = sigma_mu * sinv[t] - xrd[t];
      if (second_order)
        for (size_t t = 0; t < dim; ++t) target[t] -= (*second_order)[t];
      Vec g(size_t(m), 0.0);
      for (int i = 0; i < m; ++i)
        g[size_t(i)] = sparse_inner(p.cons[size_t(i)]->entries, target, n) - p.b[size_t(i)];
      Vec dy = solve_schur(g);
      Vec ds = rd;
      for (int i = 0; i < m; ++i) axpy_sparse(ds, p.cons[size_t(i)]->entries, dy[size_t(i)], n);
      // dx = sigma_mu S^-1 - X - X dS S^-1 - (DXa DSa S^-1), symmetrized
      Vec dx = matmul(matmul(x, ds, n), sinv, n);
      for (size_t t = 0; t < dim; ++t) {
        double v = sigma_mu * sinv[t] - x[t] - dx[t];
        if (second_order) v -= (*second_order)[t];
        dx[t] = v;
      }
      symmetrize(dx, n);
      return std::make_tuple(dx, dy, ds);
    };

    // Predictor (affine)
    auto [dxa, dya, dsa] = newton(0.0, nullptr);
    double ap = max_step(x, dxa, n);
    double ad = max_step(s, dsa, n);
    Vec xt = x, st = s;
    for (size_t t = 0; t < dim; ++t) {
      xt[t] += ap * dxa[t];
      st[t] += ad * dsa[t];
    }
    double mu_aff = inner(xt, st) / n;
    double sigma = std::pow(mu_aff / std::max(mu, 1e-300), 3.0);
    sigma = std::min(1.0, std::max(0.0, sigma));

    // Corrector
    Vec second = matmul(matmul(dxa, dsa, n), sinv, n);
    auto [dx, dy, ds] = newton(sigma * mu, &second);
    ap = opts.step_fraction * max_step(x, dx, n);
    ad = opts.step_fraction * max_step(s, ds, n);
    ap = std::min(1.0, ap);
    ad = std::min(1.0, ad);

    for (size_t t = 0; t < dim; ++t) x[t] += ap * dx[t];
    for (int i = 0; i < m; ++i) y[size_t(i)] += ad * dy[size_t(i)];
    for (size_t t = 0; t < dim; ++t) s[t] += ad * ds[t];
  }

  if (res.status != SdpStatus::optimal) {
    // adopt the best iterate and grade it against the tolerances
    x = std::move(best_x);
    s = std::move(best_s);
    y = std::move(best_y);
    for (int i = 0; i < m; ++i)
      rp[size_t(i)] = p.b[size_t(i)] - sparse_inner(p.cons[size_t(i)]->entries, x, n);
    for (size_t t = 0; t < dim; ++t) rd[t] = -p.c[t] - s[t];
    for (int i = 0; i < m; ++i) axpy_sparse(rd, p.cons[size_t(i)]->entries, y[size_t(i)], n);
    res.gap = std::abs(inner(x, s));
    res.primal_residual = std::sqrt(inner(rp, rp));
    res.dual_residual = fro_norm(rd);
    res.objective = inner(p.c, x);
    res.dual_objective = inner(p.b, y);
    res.iterations = best_iter;
    if (res.primal_residual <= opts.tol_feas * (1.0 + bscale) &&
        res.dual_residual <= opts.tol_feas * (1.0 + cscale) &&
        res.gap <= opts.tol_gap * (1.0 + std::abs(res.objective) + std::abs(res.dual_objective)))
      res.status = SdpStatus::optimal;
  }

  res.x = std::move(x);
  res.s = std::move(s);
  res.y.assign(y.begin(), y.end());
  return res;
}

// ---------- diagonal (LP) IPM ----------

SdpResult solve_diag(const CoreProblem& p, const SdpOptions& opts) {
  int n = p.n;
  int m = static_cast<int>(p.cons.size());
  // Diagonal entries only; constraints must touch only the diagonal.
  Vec c(size_t(n), 0.0);
  for (int i = 0; i < n; ++i) c[size_t(i)] = p.c[size_t(i) * n + i];
  std::vector<Vec> rows(size_t(m), Vec(size_t(n), 0.0));
  for (int r = 0; r < m; ++r)
    for (const auto& e : p.cons[size_t(r)]->entries) {
      if (e.i != e.j) throw Error("diagonal sdp instance has off-diagonal constraint entry");
      rows[size_t(r)][size_t(e.i)] += e.v;
    }

  double bscale = 1.0, cscale = 1.0;
  for (double v : p.b) bscale = std::max(bscale, std::abs(v));
  for (double v : c) cscale = std::max(cscale, std::abs(v));

  Vec x(size_t(n), std::max({1.0, bscale})), s(size_t(n), std::max({1.0, cscale})), y(size_t(m), 0.0);

  SdpResult res;
  for (int iter = 0; iter < opts.max_iter; ++iter) {
    Vec rp(size_t(m), 0.0);
    for (int i = 0; i < m; ++i) rp[size_t(i)] = p.b[size_t(i)] - inner(rows[size_t(i)], x);
    Vec rd(size_t(n), 0.0);
    for (int t = 0; t < n; ++t) rd[size_t(t)] = -c[size_t(t)] - s[size_t(t)];
    for (int i = 0; i < m; ++i)
      for (int t = 0; t < n; ++t) rd[size_t(t)] += y[size_t(i)] * rows[size_t(i)][size_t(t)];

    double mu = inner(x, s) / n;
    double pobj = inner(c, x), dobj = inner(p.b, y);
    double rp_norm = std::sqrt(inner(rp, rp)), rd_norm = std::sqrt(inner(rd, rd));

    res.iterations = iter;
    res.gap = std::abs(inner(x, s));
    res.primal_residual = rp_norm;
    res.dual_residual = rd_norm;
    res.objective = pobj;
    res.dual_objective = dobj;
    if (rp_norm <= opts.tol_feas * (1.0 + bscale) && rd_norm <= opts.tol_feas * (1.0 + cscale) &&
        inner(x, s) <= opts.tol_gap * (1.0 + std::abs(pobj) + std::abs(dobj))) {
      res.status = SdpStatus::optimal;
      break;
    }

    // Schur M = A diag(x/s) A^T
    Vec ratio(size_t(n), 0.0);
    for (int t = 0; t < n; ++t) ratio[size_t(t)] = x[size_t(t)] / s[size_t(t)];
    Vec schur(size_t(m) * m, 0.0);
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        double v = 0.0;
        for (int t = 0; t < n; ++t) v += rows[size_t(i)][size_t(t)] * ratio[size_t(t)] * rows[size_t(j)][size_t(t)];
        schur[size_t(i) * m + j] = v;
        schur[size_t(j) * m + i] = v;
      }
    Vec lfac;
    {
      Vec work = schur;
      double dscale = 0.0;
      for (int i = 0; i < m; ++i) dscale = std::max(dscale, std::abs(work[size_t(i) * m + i]));
      double ridge = 0.0;
      while (!cholesky(work, m, lfac)) {
        ridge = (ridge == 0.0 ? 1e-13 * std::max(dscale, 1.0) : ridge * 100.0);
        if (ridge > std::max(dscale, 1.0)) throw Error("lp: Schur factorization failed");
        work = schur;
        for (int i = 0; i < m; ++i) work[size_t(i) * m + i] += ridge;
      }
    }
    auto solve_schur = [&](Vec rhs) {
      forward_subst(lfac, m, rhs);
      backward_subst(lfac, m, rhs);
      return rhs;
    };

    auto newton = [&](double sigma_mu, const Vec* comp_extra) {
      Vec target(size_t(n), 0.0);
      for (int t = 0; t < n; ++t) {
        double v = sigma_mu / s[size_t(t)] - x[size_t(t)] * rd[size_t(t)] / s[size_t(t)];
        if (comp_extra) v -= (*comp_extra)[size_t(t)] / s[size_t(t)];
        target[size_t(t)] = v;
      }
      Vec g(size_t(m), 0.0);
      for (int i = 0; i < m; ++i) g[size_t(i)] = inner(rows[size_t(i)], target) - p.b[size_t(i)];
      Vec dy = solve_schur(g);
      Vec ds = rd;
      for (int i = 0; i < m; ++i)
        for (int t = 0; t < n; ++t) ds[size_t(t)] += dy[size_t(i)] * rows[size_t(i)][size_t(t)];
      Vec dx(size_t(n), 0.0);
      for (int t = 0; t < n; ++t) {
        double v = sigma_mu / s[size_t(t)] - x[size_t(t)] - x[size_t(t)] * ds[size_t(t)] / s[size_t(t)];
        if (comp_extra) v -= (*comp_extra)[size_t(t)] / s[size_t(t)];
        dx[size_t(t)] = v;
      }
      return std::make_tuple(dx, dy, ds);
    };

    auto ratio_step = [&](const Vec& v, const Vec& dv) {
      double a = 1.0;
      for (int t = 0; t < n; ++t)
        if (dv[size_t(t)] < 0.0) a = std::min(a, -v[size_t(t)] / dv[size_t(t)]);
      return a;
    };

    auto [dxa, dya, dsa] = newton(0.0, nullptr);
    double ap = ratio_step(x, dxa), ad = ratio_step(s, dsa);
    double mu_aff = 0.0;
    for (int t = 0; t < n; ++t)
      mu_aff += (x[size_t(t)] + ap * dxa[size_t(t)]) * (s[size_t(t)] + ad * dsa[size_t(t)]);
    mu_aff /= n;
    double sigma = std::min(1.0, std::max(0.0, std::pow(mu_aff / std::max(mu, 1e-300), 3.0)));

    Vec second(size_t(n), 0.0);
    for (int t = 0; t < n; ++t) second[size_t(t)] = dxa[size_t(t)] * dsa[size_t(t)];
    auto [dx, dy, ds] = newton(sigma * mu, &second);
    ap = std::min(1.0, opts.step_fraction * ratio_step(x, dx));
    ad = std::min(1.0, opts.step_fraction * ratio_step(s, ds));
    for (int t = 0; t < n; ++t) {
      x[size_t(t)] += ap * dx[size_t(t)];
      s[size_t(t)] += ad * ds[size_t(t)];
    }
    for (int i = 0; i < m; ++i) y[size_t(i)] += ad * dy[size_t(i)];
  }

  res.x.assign(size_t(n) * n, 0.0);
  res.s.assign(size_t(n) * n, 0.0);
  for (int t = 0; t < n; ++t) {
    res.x[size_t(t) * n + t] = x[size_t(t)];
    res.s[size_t(t) * n + t] = s[size_t(t)];
  }
  res.y.assign(y.begin(), y.end());
  return res;
}

}  // namespace

PreprocessResult preprocess(const SdpInstance& inst) { return preprocess_impl(inst); }

SdpResult solve_sdp(const SdpInstance& inst, const SdpOptions& opts) {
  if (inst.n <= 0) throw Error("sdp: empty block");
  if (inst.n > opts.max_block)
    throw Error("sdp: block size " + std::to_string(inst.n) + " exceeds cap " +
                std::to_string(opts.max_block));

  PreprocessResult pre = preprocess_impl(inst);
  if (pre.infeasible) {
    SdpResult res;
    res.status = SdpStatus::infeasible;
    res.infeasibility_ray = pre.certificate;
    return res;
  }

  CoreProblem core;
  core.n = inst.n;
  core.c = dense_from_entries(inst.c_entries, inst.n);
  if (!inst.maximize)
    for (auto& v : core.c) v = -v;
  for (int r : pre.kept) {
    core.cons.push_back(&inst.constraints[size_t(r)]);
    core.b.push_back(inst.constraints[size_t(r)].b);
  }

  SdpResult res = inst.diagonal ? solve_diag(core, opts) : solve_block(core, opts);

  // Map duals back over dropped rows and restore the caller's direction.
  Vec full_y(inst.constraints.size(), 0.0);
  for (size_t i = 0; i < pre.kept.size(); ++i) full_y[size_t(pre.kept[i])] = res.y[i];
  res.y = std::move(full_y);
  if (!inst.maximize) {
    // Internally we maximized <-C, X>; the dual slack S = sum y_i A_i + C is
    // already the slack of the user's minimize dual after y -> -y.
    res.objective = -res.objective;
    res.dual_objective = -res.dual_objective;
    for (auto& v : res.y) v = -v;
  }
  return res;
}

}  // namespace corrkit
