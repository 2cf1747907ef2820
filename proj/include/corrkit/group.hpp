#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace corrkit {

/// Error type for all precondition and domain failures in the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Signature of a free product of cyclic groups Z_{m_0} * ... * Z_{m_{k-1}}.
/// An order of 0 denotes an infinite cyclic factor Z, so [0,0] is the free
/// group F_2 and [3,3] is Z_3 * Z_3. Orders are immutable and shared between
/// all words over the same group.
class FreeProductSignature {
 public:
  FreeProductSignature() = default;
  explicit FreeProductSignature(std::vector<int> factor_orders);

  int num_factors() const { return static_cast<int>(orders_->size()); }
  int order(int factor) const { return (*orders_)[static_cast<size_t>(factor)]; }
  const std::vector<int>& orders() const { return *orders_; }

  bool operator==(const FreeProductSignature& other) const {
    return orders_ == other.orders_ || *orders_ == *other.orders_;
  }
  bool operator!=(const FreeProductSignature& other) const { return !(*this == other); }

  /// Free group on n generators.
  static FreeProductSignature free_group(int n) {
    return FreeProductSignature(std::vector<int>(static_cast<size_t>(n), 0));
  }
  /// k factors, all of order m (m >= 2).
  static FreeProductSignature cyclic_power(int m, int k) {
    return FreeProductSignature(std::vector<int>(static_cast<size_t>(k), m));
  }

  std::string to_string() const;

 private:
  std::shared_ptr<const std::vector<int>> orders_ =
      std::make_shared<const std::vector<int>>(std::vector<int>{0});
};

struct Syllable {
  int32_t factor = 0;
  int32_t exponent = 0;  // in {1,..,m-1} for a finite factor, any nonzero for Z

  bool operator==(const Syllable& o) const { return factor == o.factor && exponent == o.exponent; }
  bool operator<(const Syllable& o) const {
    return factor != o.factor ? factor < o.factor : exponent < o.exponent;
  }
};

/// A reduced word in a free product of cyclic groups. Adjacent syllables have
/// distinct factors and exponents are normalized to {1,..,m-1} for finite
/// factors, so equality of words is plain sequence comparison. The empty
/// syllable list is the identity.
class GroupWord {
 public:
  GroupWord() = default;
  explicit GroupWord(FreeProductSignature sig) : sig_(std::move(sig)) {}

  const FreeProductSignature& signature() const { return sig_; }
  const std::vector<Syllable>& syllables() const { return syls_; }
  bool is_identity() const { return syls_.empty(); }

  /// Word length in generator letters: a syllable (i,p) counts min(p, m-p)
  /// letters for a factor of order m, and |p| letters for an infinite factor.
  /// This is graph distance on the Cayley graph with generating set
  /// {u_i, u_i^-1}.
  int length() const;

  bool operator==(const GroupWord& o) const {
    return sig_ == o.sig_ && syls_ == o.syls_;
  }
  bool operator!=(const GroupWord& o) const { return !(*this == o); }

  std::string to_string() const;

  friend GroupWord reduce(const FreeProductSignature& sig,
                          const std::vector<Syllable>& raw_syllables);

 private:
  FreeProductSignature sig_;
  std::vector<Syllable> syls_;
};

/// Reduces an arbitrary syllable sequence to the unique normal form:
/// exponents taken mod m for finite factors, adjacent equal-factor syllables
/// merged, trivial syllables dropped. Throws on out-of-range factor indices.
GroupWord reduce(const FreeProductSignature& sig, const std::vector<Syllable>& raw_syllables);

/// Reduced product of two words over the same signature.
GroupWord multiply(const GroupWord& w1, const GroupWord& w2);

/// Group inverse.
GroupWord invert(const GroupWord& w);

/// Identity word.
GroupWord identity_word(const FreeProductSignature& sig);

/// Single-generator word u_factor^exponent.
GroupWord generator_word(const FreeProductSignature& sig, int factor, int exponent = 1);

/// Ordering used for ball enumeration and algebra-term ordering:
/// by length, then lexicographically on the syllable sequence.
bool word_less(const GroupWord& a, const GroupWord& b);

/// All reduced words of length <= radius, identity first, in (length, lex)
/// order. Throws when the ball would exceed `cap` words.
std::vector<GroupWord> ball(const FreeProductSignature& sig, int radius,
                            std::size_t cap = 4000000);

/// Parse/print words over named generators "a", "b", ... ("e" is the
/// identity); e.g. "a b^2 a" over [3,3] or "a b^-1" over [0,0].
GroupWord parse_word(const FreeProductSignature& sig, const std::string& text);
std::string generator_name(int factor);

/// The explicit free-subgroup witnesses of the ping-pong constructions:
/// generator images certifying F_2 inside Z_m*Z_m (m>=3), F_2 inside
/// Z_2*Z_2*Z_2, and F_n inside F_2.
struct FreeWitness {
  enum class Kind { TwoCyclic, ThreeZ2, FreeInFree };

  Kind kind = Kind::TwoCyclic;
  FreeProductSignature target;
  int free_rank = 2;  // rank n of the embedded free group

  /// TwoCyclic: target Z_m*Z_m with m>=3, images g_1 = ab, g_2 = ba.
  static FreeWitness two_cyclic(int m);
  /// ThreeZ2: target Z_2*Z_2*Z_2, images g_1 = abc, g_2 = acb.
  static FreeWitness three_z2();
  /// FreeInFree: target F_2, images g_i = a^i b^-i for i = 1..n.
  static FreeWitness free_in_free(int n);

  /// The image of the i-th free generator (0-based) in the target group.
  GroupWord generator_image(int i) const;
};

/// Image of a free word under the witness substitution, fully reduced in the
/// target group. A group homomorphism F_n -> target.
GroupWord embed_free(const FreeWitness& witness, const GroupWord& free_word);

struct FreenessReport {
  std::size_t checked = 0;
  std::vector<GroupWord> failures;  // free words whose image reduces to e
  bool ok() const { return failures.empty(); }
};

/// Enumerates all nontrivial reduced free words of length <= max_length and
/// records any whose embed_free image collapses to the identity. An empty
/// failure list certifies injectivity of the witness up to that length.
FreenessReport check_freeness(const FreeWitness& witness, int max_length,
                              std::size_t cap = 4000000);

}  // namespace corrkit
