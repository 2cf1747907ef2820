#include <doctest.h>

#include <cmath>

#include "corrkit/norms.hpp"

using namespace corrkit;

namespace {

const double kSqrt12 = std::sqrt(12.0);

AlgebraElement laplacian_hat(const FreeProductSignature& f2) {
  AlgebraElement el(f2);
  el.add_term(generator_word(f2, 0, 1), 1.0);
  el.add_term(generator_word(f2, 0, -1), 1.0);
  el.add_term(generator_word(f2, 1, 1), 1.0);
  el.add_term(generator_word(f2, 1, -1), 1.0);
  return el;
}

// Independent oracle: the delta_e-rooted radial component of the compressed
// adjacency operator of the 4-regular tree reduces to an (R+1)-dimensional
// tridiagonal matrix with first off-diagonal entry 2 and sqrt(3) afterwards.
// Its top eigenvalue is computed by bisection on the Sturm sequence.
double radial_tridiagonal_top(int radius) {
  int n = radius + 1;
  std::vector<double> off(size_t(std::max(0, n - 1)), std::sqrt(3.0));
  if (n >= 2) off[0] = 2.0;
  auto count_below = [&](double x) {
    // Sturm sequence: number of eigenvalues below x
    int count = 0;
    double d = -x;
    if (d < 0) ++count;
    for (int i = 1; i < n; ++i) {
      double denom = (std::abs(d) < 1e-300) ? 1e-300 : d;
      d = -x - off[size_t(i - 1)] * off[size_t(i - 1)] / denom;
      if (d < 0) ++count;
    }
    return count;
  };
  double lo = 0.0, hi = 4.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (count_below(mid) >= n) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("radial oracle sanity") {
  // R = 1: 2x2 matrix [[0,2],[2,0]] has top eigenvalue 2
  CHECK(radial_tridiagonal_top(1) == doctest::Approx(2.0).epsilon(1e-10));
  // grows toward sqrt(12)
  CHECK(radial_tridiagonal_top(40) > 3.45);
  CHECK(radial_tridiagonal_top(40) < kSqrt12);
}

TEST_CASE("left regular identity element acts as identity") {
  auto f2 = FreeProductSignature::free_group(2);
  TruncatedRep rep(f2, 2, RepKind::left_regular);
  auto el = AlgebraElement::delta(identity_word(f2));
  std::vector<Complex> v(rep.dimension(), Complex(0.0));
  v[3] = Complex(0.5, -0.25);
  auto w = apply_truncated(rep, el, v);
  for (size_t i = 0; i < v.size(); ++i) CHECK(std::abs(w[i] - v[i]) <= 1e-15);
  CHECK(estimate_norm(rep, el).value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("left regular laplacian applied to delta_e") {
  auto f2 = FreeProductSignature::free_group(2);
  TruncatedRep rep(f2, 1, RepKind::left_regular);
  auto dh = laplacian_hat(f2);
  std::vector<Complex> v(rep.dimension(), Complex(0.0));
  v[size_t(rep.index_of(identity_word(f2)))] = 1.0;
  auto w = apply_truncated(rep, dh, v);
  // image: delta_a + delta_{a^-1} + delta_b + delta_{b^-1}
  for (int f = 0; f < 2; ++f)
    for (int e : {1, -1}) {
      int idx = rep.index_of(generator_word(f2, f, e));
      REQUIRE(idx >= 0);
      CHECK(std::abs(w[size_t(idx)] - Complex(1.0)) <= 1e-15);
    }
  CHECK(std::abs(w[size_t(rep.index_of(identity_word(f2)))]) <= 1e-15);
}

TEST_CASE("biregular diagonal laplacian fixes delta_e with eigenvalue 4") {
  auto f2 = FreeProductSignature::free_group(2);
  auto delta = diagonal_lift(laplacian_hat(f2));
  for (int radius = 0; radius <= 4; ++radius) {
    TruncatedRep rep(f2, radius, RepKind::biregular);
    std::vector<Complex> v(rep.dimension(), Complex(0.0));
    v[0] = 1.0;
    auto w = apply_truncated(rep, delta, v);
    CHECK(w[0] == Complex(4.0));  // exact
    for (size_t i = 1; i < w.size(); ++i) CHECK(w[i] == Complex(0.0));
    // norm certificate is exactly 4
    auto est = estimate_norm(rep, delta);
    CHECK(std::abs(est.value - 4.0) <= 1e-10);
  }
}

TEST_CASE("laplacian norm estimates: bracketed by the radial oracle and sqrt12") {
  auto f2 = FreeProductSignature::free_group(2);
  auto dh = laplacian_hat(f2);
  for (int radius : {2, 4, 6}) {
    TruncatedRep rep(f2, radius, RepKind::left_regular);
    auto est = estimate_norm(rep, dh);
    double oracle = radial_tridiagonal_top(radius);
    CHECK(est.value >= oracle - 1e-6);
    CHECK(est.value <= kSqrt12 + 1e-9);
  }
}

TEST_CASE("norm scan is monotone and stays below sqrt12") {
  auto f2 = FreeProductSignature::free_group(2);
  auto dh = laplacian_hat(f2);
  auto history = norm_convergence_scan(f2, RepKind::left_regular, dh, {2, 4, 6});
  for (size_t i = 1; i < history.size(); ++i)
    CHECK(history[i].value >= history[i - 1].value - 1e-9);
  CHECK(history.back().value <= kSqrt12 + 1e-9);
  // strictly increasing at these small radii
  CHECK(history[1].value > history[0].value + 1e-6);
}

TEST_CASE("constant element has flat scan") {
  auto f2 = FreeProductSignature::free_group(2);
  auto el = AlgebraElement::delta(identity_word(f2), 2.5);
  auto history = norm_convergence_scan(f2, RepKind::left_regular, el, {0, 1, 2});
  for (const auto& est : history) CHECK(est.value == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("biregular scan of the diagonal laplacian is flat at 4") {
  auto f2 = FreeProductSignature::free_group(2);
  auto delta = diagonal_lift(laplacian_hat(f2));
  auto history = norm_convergence_scan(f2, RepKind::biregular, delta, {0, 1, 2, 3, 4});
  for (const auto& est : history) CHECK(std::abs(est.value - 4.0) <= 1e-10);
}

TEST_CASE("self-adjointness is enforced unless the fallback is requested") {
  auto f2 = FreeProductSignature::free_group(2);
  auto el = AlgebraElement::delta(generator_word(f2, 0), Complex(0, 1));
  TruncatedRep rep(f2, 2, RepKind::left_regular);
  CHECK_THROWS_AS(estimate_norm(rep, el), Error);
  // the general el* el route works and gives |coeff| for a single unitary
  auto est = estimate_norm(rep, el, {}, true);
  CHECK(est.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("kind/element mismatches are rejected") {
  auto f2 = FreeProductSignature::free_group(2);
  TruncatedRep left(f2, 1, RepKind::left_regular);
  TruncatedRep bi(f2, 1, RepKind::biregular);
  auto el = laplacian_hat(f2);
  std::vector<Complex> v(left.dimension(), Complex(0.0));
  CHECK_THROWS_AS(apply_truncated(bi, el, v), Error);
  CHECK_THROWS_AS(apply_truncated(left, diagonal_lift(el), v), Error);
  auto z3 = FreeProductSignature::cyclic_power(3, 2);
  CHECK_THROWS_AS(apply_truncated(left, laplacian_hat(z3), v), Error);
}
