#include <doctest.h>

#include <random>

#include "corrkit/dilation.hpp"

using namespace corrkit;

namespace {

ChoiMap random_ucp(int n, int d, int nkraus, std::mt19937_64& rng) {
  // random Kraus operators renormalized to a unital CP map
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<ComplexMatrix> kraus;
  ComplexMatrix total(d, d);
  for (int k = 0; k < nkraus; ++k) {
    ComplexMatrix m(d, n);
    for (auto& v : m.data()) v = Complex(g(rng), g(rng));
    total += m * m.adjoint();
    kraus.push_back(std::move(m));
  }
  ComplexMatrix fix = psd_inv_sqrt(total);
  for (auto& k : kraus) k = fix * k;
  return ChoiMap::from_kraus(n, d, kraus);
}

std::vector<ComplexMatrix> random_povm(int m, int dim, std::mt19937_64& rng) {
  std::vector<ComplexMatrix> gs;
  ComplexMatrix total(dim, dim);
  for (int a = 0; a < m; ++a) {
    gs.push_back(random_psd(dim, rng) + ComplexMatrix::identity(dim) * Complex(0.05));
    total += gs.back();
  }
  ComplexMatrix fix = psd_inv_sqrt(total);
  for (auto& e : gs) {
    e = fix * e * fix;
    e = (e + e.adjoint()) * Complex(0.5);
  }
  return gs;
}

ComplexMatrix random_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix m(n, n);
  for (auto& v : m.data()) v = Complex(g(rng), g(rng));
  return m;
}

}  // namespace

TEST_CASE("identity channel dilation collapses") {
  auto phi = ChoiMap::identity_channel(3);
  auto dil = stinespring_dilate(phi);
  CHECK(dil.r == 1);
  CHECK(dil.isometry_defect() <= 1e-10);
  CHECK(dil.reconstruction_residual(phi) <= 1e-10);
}

TEST_CASE("depolarizing channel has full Kraus rank") {
  auto phi = ChoiMap::depolarizing(3, 2);
  CHECK(phi.unitality_defect() <= 1e-12);
  auto dil = stinespring_dilate(phi);
  CHECK(dil.r == 6);  // n*d
  CHECK(dil.reconstruction_residual(phi) <= 1e-10);
}

TEST_CASE("random ucp maps: dilation residual and the CS inequality") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    auto phi = random_ucp(3, 2, 2 + int(rng() % 3), rng);
    phi.validate();
    auto dil = stinespring_dilate(phi);
    CHECK(dil.isometry_defect() <= 1e-10);
    CHECK(dil.reconstruction_residual(phi) <= 1e-10);
    // Phi(a)* Phi(a) <= Phi(a* a) on random a
    for (int inner = 0; inner < 3; ++inner) {
      auto a = random_matrix(3, rng);
      auto lhs = phi.apply(a).adjoint() * phi.apply(a);
      auto rhs = phi.apply(a.adjoint() * a);
      CHECK(min_eigenvalue(rhs - lhs) >= -1e-8);
    }
  }
}

TEST_CASE("non-ucp inputs are rejected with the failing condition") {
  // not unital
  ChoiMap bad;
  bad.n = 2;
  bad.d = 2;
  bad.choi = ComplexMatrix::identity(4) * Complex(0.75);
  try {
    stinespring_dilate(bad);
    FAIL("expected unitality error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("unital") != std::string::npos);
  }
  // not completely positive
  ChoiMap neg;
  neg.n = 2;
  neg.d = 2;
  neg.choi = ComplexMatrix::identity(4);
  neg.choi(0, 3) = 2.0;
  neg.choi(3, 0) = 2.0;
  // fix unitality of this artificial example: partial trace over input is
  // still the identity since the added entry is off-diagonal there
  try {
    stinespring_dilate(neg);
    FAIL("expected cp error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("positive") != std::string::npos);
  }
}

TEST_CASE("naimark: projective input stays exact") {
  ComplexMatrix z(2, 2);
  z(0, 0) = 1;
  z(1, 1) = -1;
  auto fam = MeasurementFamily::from_dichotomic_observables({z});
  std::vector<ComplexMatrix> povm = {fam.element(0, 0), fam.element(0, 1)};
  auto dil = naimark_dilate(povm);
  CHECK(dil.isometry_defect() <= 1e-12);
  CHECK(dil.reconstruction_residual(povm) <= 1e-12);
  ComplexMatrix sum(4, 4);
  for (const auto& p : dil.projections) {
    CHECK((p * p - p).norm_max() <= 1e-12);
    sum += p;
  }
  CHECK((sum - ComplexMatrix::identity(4)).norm_max() <= 1e-12);
}

TEST_CASE("naimark: trine POVM statistics match on random states") {
  // three subnormalized qubit projectors at 120 degrees
  std::vector<ComplexMatrix> trine;
  for (int j = 0; j < 3; ++j) {
    double th = 2.0 * 3.14159265358979323846 * j / 3.0;
    std::vector<Complex> v = {std::cos(th / 2), std::sin(th / 2)};
    ComplexMatrix p(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int l = 0; l < 2; ++l) p(i, l) = (2.0 / 3.0) * v[size_t(i)] * std::conj(v[size_t(l)]);
    trine.push_back(std::move(p));
  }
  auto dil = naimark_dilate(trine);
  CHECK(dil.v.rows() == 6);
  CHECK(dil.reconstruction_residual(trine) <= 1e-10);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto psi = random_unit_vector(2, rng);
    ComplexMatrix col(2, 1);
    col(0, 0) = psi[0];
    col(1, 0) = psi[1];
    ComplexMatrix lifted = dil.v * col;  // 6 x 1
    for (int a = 0; a < 3; ++a) {
      double p_direct = (col.adjoint() * trine[size_t(a)] * col)(0, 0).real();
      double p_dilated = (lifted.adjoint() * dil.projections[size_t(a)] * lifted)(0, 0).real();
      CHECK(p_direct == doctest::Approx(p_dilated).epsilon(1e-9));
    }
  }
}

TEST_CASE("naimark: single-outcome POVM is trivial") {
  std::vector<ComplexMatrix> povm = {ComplexMatrix::identity(3)};
  auto dil = naimark_dilate(povm);
  CHECK(dil.reconstruction_residual(povm) <= 1e-12);
}

TEST_CASE("schur product of commuting PSD blocks is PSD") {
  std::mt19937_64 rng(11);
  // scalar case: classical Schur product theorem
  for (int trial = 0; trial < 5; ++trial) {
    int n = 3;
    auto pa = random_psd(n, rng), pb = random_psd(n, rng);
    std::vector<std::vector<ComplexMatrix>> a(size_t(n), std::vector<ComplexMatrix>{});
    std::vector<std::vector<ComplexMatrix>> b(size_t(n), std::vector<ComplexMatrix>{});
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        ComplexMatrix sa(1, 1), sb(1, 1);
        sa(0, 0) = pa(i, j);
        sb(0, 0) = pb(i, j);
        a[size_t(i)].push_back(sa);
        b[size_t(i)].push_back(sb);
      }
    auto res = schur_product_psd_check(a, b);
    CHECK(res.psd);
  }
  // operator case: entries are polynomials of one Hermitian H
  int q = 3;
  auto h = random_hermitian(q, rng);
  auto poly = [&](double c0, double c1, double c2) {
    return ComplexMatrix::identity(q) * Complex(c0) + h * Complex(c1) + h * h * Complex(c2);
  };
  // Gram-style PSD block matrices: blocks[i][j] = f_i(H)^* f_j(H)
  std::vector<ComplexMatrix> fa = {poly(1, 0.5, 0), poly(0, 1, 0.25)};
  std::vector<ComplexMatrix> fb = {poly(0.5, 0, 1), poly(1, -0.5, 0)};
  auto gram = [&](const std::vector<ComplexMatrix>& f) {
    std::vector<std::vector<ComplexMatrix>> blocks(f.size());
    for (size_t i = 0; i < f.size(); ++i)
      for (size_t j = 0; j < f.size(); ++j)
        blocks[i].push_back(f[i].adjoint() * f[j]);
    return blocks;
  };
  auto res = schur_product_psd_check(gram(fa), gram(fb));
  CHECK(res.psd);
  CHECK(res.min_eigenvalue >= -1e-8);

  // non-commuting entries are rejected
  std::vector<std::vector<ComplexMatrix>> nc = gram(fa);
  ComplexMatrix x(q, q);
  x(0, 1) = 1;
  x(1, 0) = 1;
  std::vector<std::vector<ComplexMatrix>> ncb = {{x * x, x}, {x, x * x}};
  CHECK_THROWS_AS(schur_product_psd_check(nc, ncb), Error);
}
