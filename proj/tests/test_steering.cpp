#include <doctest.h>

#include <random>

#include "corrkit/steering.hpp"

using namespace corrkit;

namespace {

MeasurementFamily random_povm_family(int k, int m, int dim, std::mt19937_64& rng) {
  MeasurementFamily fam(k, m, dim);
  for (int x = 0; x < k; ++x) {
    std::vector<ComplexMatrix> gs;
    ComplexMatrix total(dim, dim);
    for (int a = 0; a < m; ++a) {
      gs.push_back(random_psd(dim, rng) + ComplexMatrix::identity(dim) * Complex(0.05));
      total += gs.back();
    }
    ComplexMatrix fix = psd_inv_sqrt(total);
    for (int a = 0; a < m; ++a) {
      ComplexMatrix e = fix * gs[size_t(a)] * fix;
      fam.element(x, a) = (e + e.adjoint()) * Complex(0.5);
    }
  }
  return fam;
}

ComplexMatrix random_pure_density(int dim, std::mt19937_64& rng) {
  auto v = random_unit_vector(dim, rng);
  ComplexMatrix rho(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) rho(i, j) = v[size_t(i)] * std::conj(v[size_t(j)]);
  return rho;
}

SteeringData random_steering_data(int d, int k, int m, std::mt19937_64& rng) {
  int da = d + 1;  // generic rank
  auto rho = random_pure_density(d * da, rng);
  auto fam = random_povm_family(k, m, da, rng);
  return steering_extract_single(rho, d, fam);
}

double max_dev(const SteeringData& a, const SteeringData& b) {
  double worst = 0.0;
  for (int x = 0; x < a.k; ++x)
    for (int i = 0; i < a.m; ++i)
      worst = std::max(worst, (a.alpha_at(x, i) - b.alpha_at(x, i)).norm_max());
  return worst;
}

SteeringGame random_game(int d, int k, int m, std::mt19937_64& rng) {
  SteeringGame g;
  g.d = d;
  g.k = k;
  g.m = m;
  g.v.resize(size_t(k) * m);
  g.w.resize(size_t(k) * m);
  for (auto& mat : g.v) mat = random_hermitian(d, rng);
  for (auto& mat : g.w) mat = random_hermitian(d, rng);
  return g;
}

}  // namespace

TEST_CASE("steering_extract: product state factorizes") {
  std::mt19937_64 rng(3);
  int d = 2, da = 2, db = 2;
  auto rho_v = random_pure_density(d, rng);
  auto rho_a = random_pure_density(da, rng);
  auto rho_b = random_pure_density(db, rng);
  auto rho = kron(rho_v, kron(rho_a, rho_b));
  auto fa = random_povm_family(2, 2, da, rng);
  auto fb = random_povm_family(2, 2, db, rng);
  auto sd = steering_extract(rho, d, fa, fb);
  sd.validate();
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) {
      double p = (rho_a * fa.element(x, a)).trace().real();
      CHECK((sd.alpha_at(x, a) - rho_v * Complex(p)).norm_max() <= 1e-12);
    }
}

TEST_CASE("steering_extract: no-signaling matching holds to 1e-12") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    int d = 2, da = 2, db = 3;
    auto rho = random_pure_density(d * da * db, rng);
    auto fa = random_povm_family(2, 3, da, rng);
    auto fb = random_povm_family(2, 3, db, rng);
    auto sd = steering_extract(rho, d, fa, fb);
    auto ra = sd.reduced_state(0);
    for (int x = 1; x < sd.k; ++x) CHECK((sd.reduced_state(x) - ra).norm_max() <= 1e-12);
    for (int y = 0; y < sd.k; ++y) {
      ComplexMatrix rb(d, d);
      for (int b = 0; b < sd.m; ++b) rb += sd.beta_at(y, b);
      CHECK((rb - ra).norm_max() <= 1e-12);
    }
  }
}

TEST_CASE("steering_realize: maximally mixed case recovers transposed projectors") {
  // sigma_z / sigma_x measured on one side of the maximally entangled pair
  ComplexMatrix z(2, 2), x(2, 2);
  z(0, 0) = 1;
  z(1, 1) = -1;
  x(0, 1) = 1;
  x(1, 0) = 1;
  auto fam = MeasurementFamily::from_dichotomic_observables({z, x});
  std::vector<Complex> bell = {1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0)};
  ComplexMatrix rho(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) rho(i, j) = bell[size_t(i)] * std::conj(bell[size_t(j)]);
  auto sd = steering_extract_single(rho, 2, fam);
  CHECK((sd.reduced_state(0) - ComplexMatrix::identity(2) * Complex(0.5)).norm_max() <= 1e-12);
  auto re = steering_realize(sd);
  CHECK(re.dim == 2);
  for (int s = 0; s < 2; ++s)
    for (int a = 0; a < 2; ++a)
      CHECK((re.alice.element(s, a) - fam.element(s, a).transpose()).norm_max() <= 1e-9);
}

TEST_CASE("steering round trip on random data") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    int d = 2 + int(rng() % 2), k = 2 + int(rng() % 2), m = 2 + int(rng() % 2);
    auto sd = random_steering_data(d, k, m, rng);
    auto re = steering_realize(sd);
    auto back = steering_extract_single(re.rho, d, re.alice);
    CHECK(max_dev(sd, back) < 1e-9);
  }
}

TEST_CASE("d=1 steering data: scalar realization") {
  SteeringData sd;
  sd.d = 1;
  sd.k = 2;
  sd.m = 2;
  sd.alpha.assign(4, ComplexMatrix(1, 1));
  sd.alpha_at(0, 0)(0, 0) = 0.3;
  sd.alpha_at(0, 1)(0, 0) = 0.7;
  sd.alpha_at(1, 0)(0, 0) = 0.5;
  sd.alpha_at(1, 1)(0, 0) = 0.5;
  auto re = steering_realize(sd);
  CHECK(re.dim == 1);
  auto back = steering_extract_single(re.rho, 1, re.alice);
  CHECK(max_dev(sd, back) < 1e-12);
}

TEST_CASE("x-dependent reduced state is rejected") {
  SteeringData sd;
  sd.d = 2;
  sd.k = 2;
  sd.m = 2;
  sd.alpha.assign(4, ComplexMatrix(2, 2));
  // setting 0 steers to |0><0| vs |1><1|; setting 1 total differs
  sd.alpha_at(0, 0)(0, 0) = 0.5;
  sd.alpha_at(0, 1)(1, 1) = 0.5;
  sd.alpha_at(1, 0)(0, 0) = 0.9;
  sd.alpha_at(1, 1)(1, 1) = 0.1;
  CHECK_THROWS_AS(steering_realize(sd), Error);
}

TEST_CASE("game value identities") {
  std::mt19937_64 rng(11);
  auto game = random_game(2, 2, 2, rng);
  SeesawOptions opts;
  opts.restarts = 3;
  opts.iterations = 25;
  opts.seed = 5;
  auto res = game_value_seesaw(game, 2, 2, opts);
  // monotone objective
  for (size_t i = 1; i < res.history.size(); ++i)
    CHECK(res.history[i] >= res.history[i - 1] - 1e-8);
  // objective equals the assemblage pairing recomputed through extraction
  auto sd = steering_extract(res.rho, game.d, res.alice, res.bob);
  CHECK(game_value(game, sd) == doctest::Approx(res.lower_bound).epsilon(1e-10));
}

TEST_CASE("all-identity game has value 1") {
  SteeringGame game;
  game.d = 2;
  game.k = 2;
  game.m = 2;
  game.v.assign(4, ComplexMatrix::identity(2));
  game.w.assign(4, ComplexMatrix::identity(2));
  SeesawOptions opts;
  opts.restarts = 1;
  opts.iterations = 5;
  auto res = game_value_seesaw(game, 2, 2, opts);
  // normalization: sum_a alpha^x_a(1) = 1 per setting, so omega = 1
  CHECK(res.lower_bound == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("d=1 see-saw converges to the closed form") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 3; ++trial) {
    auto game = random_game(1, 2, 2, rng);
    SeesawOptions opts;
    opts.restarts = 2;
    opts.iterations = 20;
    opts.seed = 17 + trial;
    auto res = game_value_seesaw(game, 2, 2, opts);
    CHECK(res.lower_bound == doctest::Approx(game_value_trivial_verifier(game)).epsilon(1e-8));
  }
}
