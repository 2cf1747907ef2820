#include <doctest.h>

#include <random>

#include "corrkit/sdp.hpp"

using namespace corrkit;

namespace {

// Feasibility thresholds the spec pins for solved instances.
void check_kkt(const SdpInstance& inst, const SdpResult& r) {
  REQUIRE(r.status == SdpStatus::optimal);
  CHECK(r.gap <= 1e-7 * (1.0 + std::abs(r.objective)));
  CHECK(r.primal_residual <= 1e-7);
  // min eigenvalues of X and S
  int n = inst.n;
  CHECK(sym_min_eigenvalue(r.x, n) >= -1e-8);
  CHECK(sym_min_eigenvalue(r.s, n) >= -1e-8);
}

}  // namespace

TEST_CASE("min trace with X11 = 1") {
  SdpInstance inst;
  inst.n = 2;
  inst.maximize = false;
  inst.add_objective(0, 0, 1.0);
  inst.add_objective(1, 1, 1.0);
  SdpConstraint c;
  c.add(0, 0, 1.0);
  c.b = 1.0;
  inst.constraints.push_back(c);
  auto r = solve_sdp(inst);
  check_kkt(inst, r);
  CHECK(r.objective == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(r.x[3]) <= 1e-6);
}

TEST_CASE("max <diag(1,-1), X> with trace 1") {
  SdpInstance inst;
  inst.n = 2;
  inst.maximize = true;
  inst.add_objective(0, 0, 1.0);
  inst.add_objective(1, 1, -1.0);
  SdpConstraint c;
  c.add(0, 0, 1.0);
  c.add(1, 1, 1.0);
  c.b = 1.0;
  inst.constraints.push_back(c);
  auto r = solve_sdp(inst);
  check_kkt(inst, r);
  CHECK(r.objective == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("weak duality on random feasible instances") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 4, m = 5;
    SdpInstance inst;
    inst.n = n;
    inst.maximize = true;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) inst.add_objective(i, j, g(rng));
    // feasible by construction: evaluate constraints on a random PSD X0
    std::vector<double> b0(size_t(n) * n, 0.0);
    std::vector<double> f(size_t(n) * n);
    for (auto& v : f) v = g(rng);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          b0[size_t(i) * n + j] += f[size_t(i) * n + k] * f[size_t(j) * n + k];
    for (int r = 0; r < m; ++r) {
      SdpConstraint c;
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
          if (rng() % 2) c.add(i, j, g(rng));
      double val = 0.0;
      for (const auto& e : c.entries) {
        val += e.v * b0[size_t(e.i) * n + e.j];
        if (e.i != e.j) val += e.v * b0[size_t(e.j) * n + e.i];
      }
      c.b = val;
      inst.constraints.push_back(c);
    }
    // bounded: add trace constraint
    SdpConstraint tr;
    double trv = 0.0;
    for (int i = 0; i < n; ++i) {
      tr.add(i, i, 1.0);
      trv += b0[size_t(i) * n + i];
    }
    tr.b = trv;
    inst.constraints.push_back(tr);

    auto r = solve_sdp(inst);
    if (r.status != SdpStatus::optimal) continue;  // rare: ill-conditioned draw
    check_kkt(inst, r);
    CHECK(r.objective <= r.dual_objective + 1e-6 * (1.0 + std::abs(r.objective)));
  }
}

TEST_CASE("preprocess: duplicate and contradictory rows") {
  SdpInstance inst;
  inst.n = 2;
  SdpConstraint c1;
  c1.add(0, 0, 1.0);
  c1.b = 1.0;
  inst.constraints.push_back(c1);
  inst.constraints.push_back(c1);  // duplicate
  auto pre = preprocess(inst);
  CHECK(pre.kept.size() == 1);
  CHECK_FALSE(pre.infeasible);

  SdpConstraint c2;
  c2.add(0, 0, 1.0);
  c2.b = 0.0;  // contradicts c1
  inst.constraints.push_back(c2);
  auto pre2 = preprocess(inst);
  CHECK(pre2.infeasible);
  CHECK_FALSE(pre2.certificate.empty());

  auto r = solve_sdp(inst);
  CHECK(r.status == SdpStatus::infeasible);
}

TEST_CASE("preprocess keeps random full-rank systems") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g(0.0, 1.0);
  SdpInstance inst;
  inst.n = 3;
  for (int r = 0; r < 5; ++r) {
    SdpConstraint c;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) c.add(i, j, g(rng));
    c.b = g(rng);
    inst.constraints.push_back(c);
  }
  auto pre = preprocess(inst);
  CHECK(pre.kept.size() == 5);
}

TEST_CASE("orthogonal basis change invariance") {
  // Rotating C and all A_i by the same orthogonal Q leaves the optimum.
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g(0.0, 1.0);
  int n = 3;
  // simple instance: max <C,X>, tr X = 1
  std::vector<double> cmat(size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double v = g(rng);
      cmat[size_t(i) * n + j] = v;
      cmat[size_t(j) * n + i] = v;
    }
  auto make_inst = [&](const std::vector<double>& c) {
    SdpInstance inst;
    inst.n = n;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) inst.add_objective(i, j, c[size_t(i) * n + j]);
    SdpConstraint tr;
    for (int i = 0; i < n; ++i) tr.add(i, i, 1.0);
    tr.b = 1.0;
    inst.constraints.push_back(tr);
    return inst;
  };
  auto r1 = solve_sdp(make_inst(cmat));

  // random rotation from sym_eig of a random symmetric matrix
  std::vector<double> h(size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double v = g(rng);
      h[size_t(i) * n + j] = v;
      h[size_t(j) * n + i] = v;
    }
  auto q = sym_eig(h, n).vectors;  // column-major orthogonal
  std::vector<double> crot(size_t(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          s += q[size_t(i) * n + a] * cmat[size_t(a) * n + b] * q[size_t(j) * n + b];
      // (Q^T C Q)_{ij} with columns of Q as eigen basis: q[k*n+i] is V(i,k)
      crot[size_t(i) * n + j] = s;
    }
  auto r2 = solve_sdp(make_inst(crot));
  CHECK(r1.objective == doctest::Approx(r2.objective).epsilon(1e-7));
}

TEST_CASE("diagonal mode solves an LP") {
  // max x0 + 2 x1 s.t. x0 + x1 = 1, x >= 0  -> 2
  SdpInstance inst;
  inst.n = 2;
  inst.diagonal = true;
  inst.maximize = true;
  inst.add_objective(0, 0, 1.0);
  inst.add_objective(1, 1, 2.0);
  SdpConstraint c;
  c.add(0, 0, 1.0);
  c.add(1, 1, 1.0);
  c.b = 1.0;
  inst.constraints.push_back(c);
  auto r = solve_sdp(inst);
  REQUIRE(r.status == SdpStatus::optimal);
  CHECK(r.objective == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(r.x[3] == doctest::Approx(1.0).epsilon(1e-6));

  // degenerate LP with redundant rows
  SdpConstraint c2 = c;
  inst.constraints.push_back(c2);
  auto r2 = solve_sdp(inst);
  CHECK(r2.objective == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("block size cap") {
  SdpInstance inst;
  inst.n = 5000;
  CHECK_THROWS_AS(solve_sdp(inst), Error);
}
