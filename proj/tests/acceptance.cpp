// Acceptance suite: one entry per criterion, each printing a PASS/FAIL line.
// Usage: corrkit_acceptance [N]   (run criterion N only, or all when absent)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "corrkit/dilation.hpp"
#include "corrkit/group.hpp"
#include "corrkit/local.hpp"
#include "corrkit/norms.hpp"
#include "corrkit/npa.hpp"
#include "corrkit/quantum.hpp"
#include "corrkit/steering.hpp"

using namespace corrkit;

namespace {

const double kRoot2 = std::sqrt(2.0);
const double kSqrt12 = std::sqrt(12.0);

struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& msg) {
    if (!ok) failures.push_back(msg);
  }
};

// shared random instance helpers (seeded per criterion, deterministic)

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

AlgebraElement laplacian_hat(const FreeProductSignature& f2) {
  AlgebraElement el(f2);
  el.add_term(generator_word(f2, 0, 1), 1.0);
  el.add_term(generator_word(f2, 0, -1), 1.0);
  el.add_term(generator_word(f2, 1, 1), 1.0);
  el.add_term(generator_word(f2, 1, -1), 1.0);
  return el;
}

// Radial reduction oracle for the ball-compressed tree adjacency operator:
// (R+1)-dimensional tridiagonal with off-diagonal entries 2, sqrt(3), ...,
// top eigenvalue by Sturm bisection.
double radial_tridiagonal_top(int radius) {
  int n = radius + 1;
  std::vector<double> off(size_t(std::max(0, n - 1)), std::sqrt(3.0));
  if (n >= 2) off[0] = 2.0;
  auto count_below = [&](double xv) {
    int count = 0;
    double d = -xv;
    if (d < 0) ++count;
    for (int i = 1; i < n; ++i) {
      double denom = (std::abs(d) < 1e-300) ? 1e-300 : d;
      d = -xv - off[size_t(i - 1)] * off[size_t(i - 1)] / denom;
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

void check_kkt(Check& c, const SdpResult& raw, const std::string& what) {
  c.expect(raw.primal_residual <= 1e-7, what + ": primal residual " +
                                            std::to_string(raw.primal_residual) + " > 1e-7");
  c.expect(raw.dual_residual <= 1e-7,
           what + ": dual residual " + std::to_string(raw.dual_residual) + " > 1e-7");
  c.expect(raw.gap <= 1e-7 * (1.0 + std::abs(raw.objective)),
           what + ": complementarity gap " + std::to_string(raw.gap));
}

// ---- criteria ----

void criterion_1(Check& c) {  // W-state spatiotemporal table, 24 entries
  auto t = wstate_coarse_table();
  double gp = t.gamma_plus(), gm = t.gamma_minus();
  bool plus[2][2][3][2] = {
      {{{false, true}, {true, false}, {true, false}},
       {{false, true}, {true, false}, {true, false}}},
      {{{false, true}, {true, false}, {true, false}},
       {{true, false}, {false, true}, {true, false}}},
  };
  double worst = 0.0;
  for (int pair = 0; pair < 2; ++pair)
    for (int y = 0; y < 2; ++y)
      for (int ao = 0; ao < 3; ++ao)
        for (int bo = 0; bo < 2; ++bo) {
          double expected = plus[pair][y][ao][bo] ? gp : gm;
          worst = std::max(worst, std::abs(t.p[pair][y][ao][bo] - expected));
        }
  c.expect(worst <= 1e-12,
           "table deviates from the gamma pattern by " + std::to_string(worst));
}

void criterion_2(Check& c) {  // Hardy violation
  auto h = hardy_check(wstate_coarse_table());
  double expected = (5.0 / kRoot2 - 3.0) / 6.0;
  c.expect(std::abs(h.violation - expected) <= 1e-12,
           "violation " + std::to_string(h.violation) + " differs from (5/sqrt2 - 3)/6");
  c.expect(h.violation > 0, "violation is not positive");
}

void criterion_3(Check& c) {  // single-shot locality
  auto t = wstate_single_shot_table();
  for (double v : chsh_values(t, 0, 1, 0, 1))
    c.expect(std::abs(v) <= 2.0 + 1e-10, "CHSH value " + std::to_string(v) + " exceeds 2");
  auto res = local_membership(t);
  c.expect(res.local, "single-shot table not recognized as local");
  c.expect(res.distance <= 1e-8, "local model mismatch " + std::to_string(res.distance));
}

void criterion_4(Check& c) {  // Tsirelson sandwich
  auto problem = build_bound_problem(BellFunctional::chsh(), NpaLevel::parse("1ab"));
  auto sol = solve(problem);
  c.expect(sol.status == SdpStatus::optimal, "NPA solve did not reach optimal status");
  c.expect(std::abs(sol.objective - 2.0 * kRoot2) <= 1e-5,
           "level 1+AB bound " + std::to_string(sol.objective) + " misses 2.828427");
  SeesawOptions opts;
  opts.restarts = 8;
  opts.iterations = 50;
  opts.seed = 2024;
  auto seesaw = bell_value_seesaw(BellFunctional::chsh(), 2, 2, opts);
  c.expect(seesaw.value >= 2.0 * kRoot2 - 1e-6,
           "qubit see-saw " + std::to_string(seesaw.value) + " below 2.828427 - 1e-6");
  c.expect(seesaw.value <= sol.objective + 1e-6, "see-saw exceeds the relaxation bound");
}

void criterion_5(Check& c) {  // PR-box rejection
  auto sol = solve(build_membership_problem(pr_box_table(), NpaLevel::parse("1ab")));
  c.expect(!sol.consistent, "PR box was not rejected at level 1+AB");
  c.expect(sol.status == SdpStatus::infeasible, "PR box rejection lacks infeasible status");
  c.expect(sol.dual_bound < -1e-7,
           "dual certificate too weak: " + std::to_string(sol.dual_bound));
}

void criterion_6(Check& c) {  // norm certificates
  auto f2 = FreeProductSignature::free_group(2);
  auto dhat = laplacian_hat(f2);
  auto delta = diagonal_lift(dhat);
  // biregular: pi(Delta) delta_e = 4 delta_e exactly at radii 0..4
  for (int radius = 0; radius <= 4; ++radius) {
    TruncatedRep rep(f2, radius, RepKind::biregular);
    std::vector<Complex> v(rep.dimension(), Complex(0.0));
    v[0] = 1.0;
    auto w = apply_truncated(rep, delta, v);
    bool exact = w[0] == Complex(4.0);
    for (size_t i = 1; i < w.size(); ++i) exact = exact && w[i] == Complex(0.0);
    c.expect(exact, "biregular Delta at radius " + std::to_string(radius) +
                        " does not return exactly 4 delta_e");
    auto est = estimate_norm(rep, delta);
    c.expect(std::abs(est.value - 4.0) <= 1e-10,
             "biregular norm estimate misses 4 at radius " + std::to_string(radius));
  }
  // left-regular scan over radii 2..12
  NormOptions nopts;
  nopts.tol = 1e-12;
  nopts.max_iter = 5000;
  auto history =
      norm_convergence_scan(f2, RepKind::left_regular, dhat, {2, 4, 6, 8, 10, 12}, nopts);
  for (size_t i = 0; i < history.size(); ++i) {
    c.expect(history[i].value <= kSqrt12 + 1e-9,
             "estimate at radius " + std::to_string(history[i].radius) + " exceeds sqrt(12)");
    if (i > 0)
      c.expect(history[i].value >= history[i - 1].value - 1e-9, "scan is not nondecreasing");
  }
  double at12 = history.back().value;
  c.expect(at12 >= 3.35, "estimate at radius 12 is " + std::to_string(at12) + " < 3.35");
  double oracle = radial_tridiagonal_top(12);
  c.expect(at12 >= oracle - 1e-6,
           "estimate at radius 12 below the radial oracle " + std::to_string(oracle));
}

void criterion_7(Check& c) {  // steering round trip
  std::mt19937_64 rng(777);
  int count = 0;
  double worst = 0.0;
  while (count < 100) {
    for (int d : {2, 3})
      for (int k : {2, 3})
        for (int m : {2, 3}) {
          if (count >= 100) break;
          ++count;
          int da = d + 1;
          auto rho = random_pure_density(d * da, rng);
          auto fam = random_povm_family(k, m, da, rng);
          auto sd = steering_extract_single(rho, d, fam);
          auto re = steering_realize(sd);
          auto back = steering_extract_single(re.rho, d, re.alice);
          for (int x = 0; x < k; ++x)
            for (int a = 0; a < m; ++a)
              worst = std::max(worst, (sd.alpha_at(x, a) - back.alpha_at(x, a)).norm_max());
        }
  }
  c.expect(worst < 1e-9,
           "round-trip deviation " + std::to_string(worst) + " over 100 instances");
}

void criterion_8(Check& c) {  // dilation suite
  std::mt19937_64 rng(888);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    // random unital CP map M_3 -> M_2 from renormalized Kraus operators
    std::vector<ComplexMatrix> kraus;
    ComplexMatrix total(2, 2);
    int nk = 2 + int(rng() % 3);
    for (int k = 0; k < nk; ++k) {
      ComplexMatrix m(2, 3);
      for (auto& v : m.data()) v = Complex(g(rng), g(rng));
      total += m * m.adjoint();
      kraus.push_back(std::move(m));
    }
    ComplexMatrix fix = psd_inv_sqrt(total);
    for (auto& k : kraus) k = fix * k;
    auto phi = ChoiMap::from_kraus(3, 2, kraus);
    auto dil = stinespring_dilate(phi);
    if (dil.reconstruction_residual(phi) >= 1e-10)
      c.expect(false, "stinespring residual too large at trial " + std::to_string(trial));
    if (dil.isometry_defect() >= 1e-10)
      c.expect(false, "stinespring isometry defect at trial " + std::to_string(trial));
    for (int inner = 0; inner < 2; ++inner) {
      ComplexMatrix a(3, 3);
      for (auto& v : a.data()) v = Complex(g(rng), g(rng));
      auto gap = phi.apply(a.adjoint() * a) - phi.apply(a).adjoint() * phi.apply(a);
      if (min_eigenvalue(gap) < -1e-8)
        c.expect(false, "Schwarz inequality gap negative at trial " + std::to_string(trial));
    }
  }
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<ComplexMatrix> gs;
    ComplexMatrix total(2, 2);
    for (int a = 0; a < 3; ++a) {
      gs.push_back(random_psd(2, rng) + ComplexMatrix::identity(2) * Complex(0.05));
      total += gs.back();
    }
    ComplexMatrix fix = psd_inv_sqrt(total);
    for (auto& e : gs) {
      e = fix * e * fix;
      e = (e + e.adjoint()) * Complex(0.5);
    }
    auto dil = naimark_dilate(gs);
    for (int s = 0; s < 20; ++s) {
      auto psi = random_unit_vector(2, rng);
      ComplexMatrix col(2, 1);
      col(0, 0) = psi[0];
      col(1, 0) = psi[1];
      ComplexMatrix lifted = dil.v * col;
      for (int a = 0; a < 3; ++a) {
        double direct = (col.adjoint() * gs[size_t(a)] * col)(0, 0).real();
        double dilated = (lifted.adjoint() * dil.projections[size_t(a)] * lifted)(0, 0).real();
        if (std::abs(direct - dilated) > 1e-9)
          c.expect(false, "naimark statistics mismatch at trial " + std::to_string(trial));
      }
    }
  }
}

void criterion_9(Check& c) {  // steering-game sandwich
  std::mt19937_64 rng(999);
  for (int trial = 0; trial < 20; ++trial) {
    SteeringGame game;
    game.d = 2;
    game.k = 2;
    game.m = 2;
    game.v.resize(4);
    game.w.resize(4);
    for (auto& m : game.v) m = random_hermitian(2, rng);
    for (auto& m : game.w) m = random_hermitian(2, rng);
    auto upper = solve(build_game_problem(game, NpaLevel::parse("1")));
    if (upper.status != SdpStatus::optimal) {
      c.expect(false, "game relaxation failed to solve at trial " + std::to_string(trial));
      continue;
    }
    SeesawOptions opts;
    opts.restarts = 4;
    opts.iterations = 25;
    opts.seed = 31 + std::uint64_t(trial);
    auto lower = game_value_seesaw(game, 2, 2, opts);
    if (upper.objective < lower.lower_bound - 1e-7)
      c.expect(false, "sandwich inverted at trial " + std::to_string(trial) + ": upper " +
                          std::to_string(upper.objective) + " < lower " +
                          std::to_string(lower.lower_bound));
  }
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    SteeringGame game;
    game.d = 1;
    game.k = 2;
    game.m = 2;
    game.v.assign(4, ComplexMatrix(1, 1));
    game.w.assign(4, ComplexMatrix(1, 1));
    for (auto& m : game.v) m(0, 0) = g(rng);
    for (auto& m : game.w) m(0, 0) = g(rng);
    double closed = game_value_trivial_verifier(game);
    auto upper = solve(build_game_problem(game, NpaLevel::parse("1")));
    SeesawOptions opts;
    opts.restarts = 3;
    opts.iterations = 20;
    opts.seed = 71 + std::uint64_t(trial);
    auto lower = game_value_seesaw(game, 2, 2, opts);
    c.expect(std::abs(upper.objective - closed) <= 1e-6,
             "d=1 relaxation misses the closed form by " +
                 std::to_string(std::abs(upper.objective - closed)));
    c.expect(std::abs(lower.lower_bound - closed) <= 1e-6,
             "d=1 see-saw misses the closed form by " +
                 std::to_string(std::abs(lower.lower_bound - closed)));
  }
}

void criterion_10(Check& c) {  // freeness witnesses at length 8
  auto r1 = check_freeness(FreeWitness::two_cyclic(3), 8);
  c.expect(r1.failures.empty(),
           "two-cyclic witness failed " + std::to_string(r1.failures.size()) + " words");
  auto r2 = check_freeness(FreeWitness::three_z2(), 8);
  c.expect(r2.failures.empty(),
           "three-Z2 witness failed " + std::to_string(r2.failures.size()) + " words");
  auto r3 = check_freeness(FreeWitness::free_in_free(3), 8);
  c.expect(r3.failures.empty(),
           "free-in-free witness failed " + std::to_string(r3.failures.size()) + " words");
}

void criterion_11(Check& c) {  // invariant suites
  // no-signaling / normalization on generated tables
  std::mt19937_64 rng(1111);
  for (int trial = 0; trial < 10; ++trial) {
    auto alice = random_povm_family(2, 3, 2, rng);
    auto bob = random_povm_family(2, 3, 3, rng);
    auto psi = StateVector::normalized(random_unit_vector(6, rng));
    try {
      correlations_tensor(psi, alice, bob).validate(1e-9);
    } catch (const Error& e) {
      c.expect(false, std::string("generated table violates invariants: ") + e.what());
    }
  }
  try {
    wstate_single_shot_table().validate(1e-9);
  } catch (const Error& e) {
    c.expect(false, std::string("w-state table violates invariants: ") + e.what());
  }
  // NPA level monotonicity on 10 random functionals, with KKT checks on
  // every solved instance
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = BellFunctional::from_correlators(2, {{u(rng), u(rng)}, {u(rng), u(rng)}});
    auto s1 = solve(build_bound_problem(f, NpaLevel::parse("1")));
    auto s1ab = solve(build_bound_problem(f, NpaLevel::parse("1ab")));
    auto s2 = solve(build_bound_problem(f, NpaLevel::parse("2")));
    check_kkt(c, s1.raw, "level-1 instance " + std::to_string(trial));
    check_kkt(c, s1ab.raw, "level-1+AB instance " + std::to_string(trial));
    check_kkt(c, s2.raw, "level-2 instance " + std::to_string(trial));
    c.expect(s1ab.objective <= s1.objective + 1e-6,
             "bound increased from level 1 to 1+AB at trial " + std::to_string(trial));
    c.expect(s2.objective <= s1ab.objective + 1e-6,
             "bound increased from level 1+AB to 2 at trial " + std::to_string(trial));
  }
}

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;  // 0 = no stated budget
  std::function<void(Check&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "W-state spatiotemporal table reproduces the gamma pattern to 1e-12", 1.0, criterion_1},
      {2, "Hardy violation equals (5/sqrt2 - 3)/6 to 1e-12", 0.0, criterion_2},
      {3, "W-state single-shot table: CHSH values <= 2 and a local model", 5.0, criterion_3},
      {4, "Tsirelson sandwich: level 1+AB bound and qubit see-saw at 2.828427", 10.0, criterion_4},
      {5, "PR box rejected at level 1+AB with a dual certificate", 5.0, criterion_5},
      {6, "norm certificates: biregular Delta exact, Laplacian scan to radius 12", 180.0,
       criterion_6},
      {7, "steering extract/realize round trip on 100 random instances", 30.0, criterion_7},
      {8, "Stinespring and Naimark dilation suites", 0.0, criterion_8},
      {9, "steering-game sandwich and d=1 closed form", 0.0, criterion_9},
      {10, "freeness witnesses have zero failures up to length 8", 60.0, criterion_10},
      {11, "invariant suites: table invariants, NPA monotonicity, SDP KKT", 0.0, criterion_11},
  };
  return all;
}

int run_criterion(const Criterion& cr) {
  Check check;
  auto start = std::chrono::steady_clock::now();
  try {
    cr.run(check);
  } catch (const std::exception& e) {
    check.failures.push_back(std::string("exception: ") + e.what());
  }
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (cr.budget_seconds > 0 && elapsed > cr.budget_seconds)
    check.failures.push_back("runtime " + std::to_string(elapsed) + "s exceeds budget of " +
                             std::to_string(cr.budget_seconds) + "s");
  if (check.failures.empty()) {
    std::printf("PASS criterion %2d (%.2fs): %s\n", cr.id, elapsed, cr.title);
    return 0;
  }
  std::printf("FAIL criterion %2d (%.2fs): %s\n", cr.id, elapsed, cr.title);
  for (const auto& f : check.failures) std::printf("      - %s\n", f.c_str());
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  int failures = 0;
  for (const auto& cr : criteria()) {
    if (only != 0 && cr.id != only) continue;
    failures += run_criterion(cr);
  }
  if (only == 0)
    std::printf("%s\n", failures == 0 ? "all acceptance criteria passed"
                                      : "some acceptance criteria FAILED");
  return failures == 0 ? 0 : 1;
}
