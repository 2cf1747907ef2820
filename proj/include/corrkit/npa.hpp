#pragma once

#include <string>

#include "corrkit/algebra.hpp"
#include "corrkit/quantum.hpp"
#include "corrkit/sdp.hpp"
#include "corrkit/steering.hpp"

namespace corrkit {

/// Basis monomial of the moment matrix: a word of Alice projectors and a
/// word of Bob projectors (commutation across parties is structural, so the
/// two parts are kept separate). Both parts idempotence-reduced; outcomes
/// run over 0..m-2 only, the last outcome being eliminated by completeness.
struct MonomialIndex {
  ProjectorMonomial a_part;
  ProjectorMonomial b_part;
  bool zero = false;

  int length() const { return a_part.length() + b_part.length(); }
  bool is_identity() const { return !zero && a_part.slots.empty() && b_part.slots.empty(); }
  bool operator==(const MonomialIndex& o) const {
    return zero == o.zero && a_part == o.a_part && b_part == o.b_part;
  }
  std::string to_string() const;

  static MonomialIndex zero_monomial() {
    MonomialIndex m;
    m.zero = true;
    return m;
  }
};

/// Canonical form of u* v : star-reverses u, concatenates per party and
/// reduces by idempotence/orthogonality. Returns the zero monomial when a
/// same-setting different-outcome pair annihilates the product.
MonomialIndex canonical_form(const MonomialIndex& u, const MonomialIndex& v);

/// Hierarchy level: products of up to `degree` generators; `plus_ab` is the
/// intermediate level "1+AB" (all level-1 monomials plus every A*B product),
/// the smallest level whose cells cover all of P(a,b|x,y) directly.
struct NpaLevel {
  int degree = 1;
  bool plus_ab = false;

  static NpaLevel parse(const std::string& text);  // "1", "2", "1ab", "1+ab"
  std::string to_string() const;
};

/// All basis monomials of a level, identity first, ordered by total length
/// then lexicographically. Throws when the basis exceeds `cap`.
std::vector<MonomialIndex> npa_basis(const Scenario& alice, const Scenario& bob,
                                     const NpaLevel& level, std::size_t cap = 2000);

/// One weighted reference to a moment-matrix cell; a linear expression
/// sum Re(c * M_{ij}) is a list of these.
struct MomentCellRef {
  int i = 0, j = 0;
  Complex c;
};

/// A moment-matrix semidefinite program: the PSD variable is the Hermitian
/// moment matrix over `basis` (times the verifier block for games), realized
/// as a doubled real SDP. For membership problems the variable is shifted,
/// H = M - lambda * 1, and the objective maximizes lambda.
struct MomentProblem {
  enum class Kind { bound, membership, game };

  Kind kind = Kind::bound;
  Scenario alice, bob;
  int d = 1;  // verifier dimension (games)
  NpaLevel level;
  std::vector<MonomialIndex> basis;
  int complex_dim = 0;  // N = d * basis.size()
  SdpInstance sdp;
  std::vector<MomentCellRef> objective_cells;  // objective = offset + sum Re(c M_ij)
  double objective_offset = 0.0;

  int flat_index(int verifier_row, int monomial) const {
    return verifier_row * static_cast<int>(basis.size()) + monomial;
  }
};

/// Level-`level` outer relaxation of the maximal commuting-model value of a
/// Bell functional: maximize sum C^{ab}_{xy} M(e^x_a, e^y_b), eliminated
/// outcomes re-expanded via completeness, M(1,1) = 1.
MomentProblem build_bound_problem(const BellFunctional& c, const NpaLevel& level,
                                  std::size_t basis_cap = 2000);

/// Membership of a no-signaling table at one level, posed as
/// maximize lambda s.t. M - lambda * 1 PSD with first-degree and mixed
/// second-degree cells fixed from the table. Consistency at the level is the
/// verdict lambda* >= -1e-7; it is necessary, not sufficient, for membership
/// in the commuting set (only the full hierarchy decides).
MomentProblem build_membership_problem(const CorrelationTable& p, const NpaLevel& level,
                                       std::size_t basis_cap = 2000);

/// Matrix-valued extension for steering games: the moment matrix is indexed
/// by (verifier basis index) x (monomial) with block-trace normalization;
/// the optimum upper-bounds the commuting game value.
MomentProblem build_game_problem(const SteeringGame& game, const NpaLevel& level,
                                 std::size_t basis_cap = 2000);

struct MomentSolution {
  SdpStatus status = SdpStatus::max_iter;
  double objective = 0.0;   // bound/game optimum, or lambda* for membership
  double dual_bound = 0.0;  // dual certificate value (upper bound for max)
  bool consistent = false;  // membership verdict at this level
  ComplexMatrix moment;     // reconstructed Hermitian moment matrix
  SdpResult raw;
};

MomentSolution solve(const MomentProblem& problem, const SdpOptions& opts = {});

/// Objective re-evaluated on a concrete moment matrix (diagnostic identity:
/// equals the reported optimum at the solution).
double evaluate_objective(const MomentProblem& problem, const ComplexMatrix& moment);

}  // namespace corrkit
