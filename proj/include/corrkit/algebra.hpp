#pragma once

#include <map>
#include <utility>

#include "corrkit/group.hpp"
#include "corrkit/linalg.hpp"

namespace corrkit {

/// A two-party Bell scenario: each party has k settings with m outcomes.
/// The associated group is the k-fold free product of Z_m.
struct Scenario {
  int k = 2;
  int m = 2;

  FreeProductSignature group() const { return FreeProductSignature::cyclic_power(m, k); }
  bool operator==(const Scenario& o) const { return k == o.k && m == o.m; }
};

struct WordLess {
  bool operator()(const GroupWord& a, const GroupWord& b) const { return word_less(a, b); }
};

struct WordPairLess {
  bool operator()(const std::pair<GroupWord, GroupWord>& a,
                  const std::pair<GroupWord, GroupWord>& b) const {
    if (a.first != b.first) return word_less(a.first, b.first);
    return word_less(a.second, b.second);
  }
};

/// Finite complex linear combination of group words: an element of the group
/// algebra C[G]. Zero coefficients are never stored.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  explicit AlgebraElement(FreeProductSignature sig) : sig_(std::move(sig)) {}

  static AlgebraElement delta(const GroupWord& w, Complex coeff = 1.0);

  const FreeProductSignature& signature() const { return sig_; }
  const std::map<GroupWord, Complex, WordLess>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const GroupWord& w, Complex coeff);
  Complex coefficient(const GroupWord& w) const;

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator*(Complex s) const;

  double norm1() const;  // sum of |coefficients|
  std::string to_string() const;

 private:
  FreeProductSignature sig_;
  std::map<GroupWord, Complex, WordLess> terms_;
};

/// Finite linear combination of word pairs: an element of the algebraic
/// tensor square C[G] (x) C[G]. A pair (w1, w2) stands for w1 (x) w2.
class BiAlgebraElement {
 public:
  BiAlgebraElement() = default;
  explicit BiAlgebraElement(FreeProductSignature sig) : sig_(std::move(sig)) {}

  const FreeProductSignature& signature() const { return sig_; }
  const std::map<std::pair<GroupWord, GroupWord>, Complex, WordPairLess>& terms() const {
    return terms_;
  }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const GroupWord& w1, const GroupWord& w2, Complex coeff);

  BiAlgebraElement operator+(const BiAlgebraElement& o) const;
  BiAlgebraElement operator*(Complex s) const;

  double norm1() const;

 private:
  FreeProductSignature sig_;
  std::map<std::pair<GroupWord, GroupWord>, Complex, WordPairLess> terms_;
};

/// Star (involution): conjugates coefficients and inverts words.
AlgebraElement star(const AlgebraElement& el);
BiAlgebraElement star(const BiAlgebraElement& el);

/// Convolution products delta_g * delta_h = delta_{gh}, extended bilinearly;
/// on the tensor square the product acts factorwise.
AlgebraElement alg_multiply(const AlgebraElement& x, const AlgebraElement& y);
BiAlgebraElement alg_multiply(const BiAlgebraElement& x, const BiAlgebraElement& y);

/// x (x) y as a tensor-square element.
BiAlgebraElement tensor(const AlgebraElement& x, const AlgebraElement& y);

/// Diagonal lift sum c_w (w (x) w); the biregular image of such an element is
/// sum c_w L_w R_w.
BiAlgebraElement diagonal_lift(const AlgebraElement& el);

/// A word of measurement projectors e^{x_1}_{a_1} ... e^{x_L}_{a_L} reduced
/// under idempotence; `zero` marks a product annihilated by the orthogonality
/// e^x_a e^x_{a'} = 0 (a != a'). Kept distinct from the empty (identity)
/// monomial.
struct ProjectorMonomial {
  struct Slot {
    int setting = 0;
    int outcome = 0;
    bool operator==(const Slot& o) const { return setting == o.setting && outcome == o.outcome; }
    bool operator<(const Slot& o) const {
      return setting != o.setting ? setting < o.setting : outcome < o.outcome;
    }
  };

  std::vector<Slot> slots;
  bool zero = false;

  static ProjectorMonomial identity() { return {}; }
  static ProjectorMonomial zero_monomial() {
    ProjectorMonomial m;
    m.zero = true;
    return m;
  }

  bool is_identity() const { return !zero && slots.empty(); }
  int length() const { return static_cast<int>(slots.size()); }

  bool operator==(const ProjectorMonomial& o) const { return zero == o.zero && slots == o.slots; }
  bool operator<(const ProjectorMonomial& o) const {
    if (zero != o.zero) return o.zero;  // zero sorts last
    if (slots.size() != o.slots.size()) return slots.size() < o.slots.size();
    return slots < o.slots;
  }

  /// Reversal; projectors are self-adjoint so this is the star.
  ProjectorMonomial star() const;

  std::string to_string() const;
};

/// Concatenates and reduces: merges adjacent equal slots, annihilates
/// adjacent same-setting different-outcome slots.
ProjectorMonomial monomial_product(const ProjectorMonomial& u, const ProjectorMonomial& v);

/// Validates slot ranges against a scenario and reduces a raw slot list.
ProjectorMonomial make_monomial(const Scenario& sc, const std::vector<ProjectorMonomial::Slot>& raw);

/// The palindrome monomial e^{x_1}_{a_1} ... e^{x_t}_{a_t} ... e^{x_1}_{a_1}
/// describing a history of t sequential projective measurements; reduction
/// may collapse it to a shorter monomial or annihilate it.
ProjectorMonomial history_monomial(const Scenario& sc, const std::vector<int>& settings,
                                   const std::vector<int>& outcomes);

/// Group-algebra image of one projector under the discrete Fourier transform
/// e^x_a = (1/m) sum_j w^{-a j} u_x^j with w = exp(2 pi i / m), and of a full
/// monomial (product of the images).
AlgebraElement projector_to_algebra(const Scenario& sc, int setting, int outcome);
AlgebraElement projector_to_algebra(const Scenario& sc, const ProjectorMonomial& mono);

/// delta_{u_x}: the order-m unitary carrying setting x.
AlgebraElement unitary_of_setting(const Scenario& sc, int setting);

/// Real coefficient tensor C[a][b][x][y] of a two-party Bell functional
/// sum C^{ab}_{xy} P(a,b|x,y). The correlator shorthand (m = 2) expands to
/// probability coefficients at construction.
class BellFunctional {
 public:
  BellFunctional() = default;
  BellFunctional(Scenario sc, double fill = 0.0);

  static BellFunctional chsh();  // E11 + E12 + E21 - E22
  static BellFunctional from_correlators(int k, const std::vector<std::vector<double>>& sign);

  const Scenario& scenario() const { return sc_; }
  double& at(int a, int b, int x, int y);
  double at(int a, int b, int x, int y) const;

  /// Value sum C^{ab}_{xy} P(a,b|x,y) on a table P indexed [a][b][x][y].
  double evaluate(const std::vector<double>& table_abxy) const;

 private:
  size_t index(int a, int b, int x, int y) const;
  Scenario sc_;
  std::vector<double> c_;
};

/// The tensor-square element sum C^{ab}_{xy} e^x_a (x) e^y_b of a Bell
/// functional, self-adjoint because C is real.
BiAlgebraElement bell_element(const BellFunctional& c);

/// Evaluates an algebra element in a concrete unitary representation given by
/// one unitary per factor. Checks unitarity and the order relation
/// U^m = identity for finite factors (tolerance 1e-10).
ComplexMatrix represent(const AlgebraElement& el, const std::vector<ComplexMatrix>& rep);

/// Parses sums of words like "a + a^-1 + b + b^-1" or "2 a b^2 - 0.5 e".
AlgebraElement parse_element(const FreeProductSignature& sig, const std::string& text);

}  // namespace corrkit
