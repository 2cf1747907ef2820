#pragma once

#include "corrkit/algebra.hpp"

namespace corrkit {

enum class RepKind { left_regular, biregular };

/// Compression of the left-regular (or biregular) representation to the
/// Cayley ball of a given radius: basis vectors are the ball words in
/// (length, lex) order with the identity first; images falling outside the
/// ball are dropped.
class TruncatedRep {
 public:
  TruncatedRep() = default;
  TruncatedRep(FreeProductSignature sig, int radius, RepKind kind,
               std::size_t cap = 4000000);

  const FreeProductSignature& signature() const { return sig_; }
  int radius() const { return radius_; }
  RepKind kind() const { return kind_; }
  std::size_t dimension() const { return basis_.size(); }
  const std::vector<GroupWord>& basis() const { return basis_; }

  /// Index of a word in the ball, or -1 when outside.
  int index_of(const GroupWord& w) const;

 private:
  FreeProductSignature sig_;
  int radius_ = 0;
  RepKind kind_ = RepKind::left_regular;
  std::vector<GroupWord> basis_;
};

/// Matrix-free compressed operator: per-term index maps of the ball under
/// the element's words, built once and applied in O(terms * ball).
class CompressedOperator {
 public:
  CompressedOperator(const TruncatedRep& rep, const AlgebraElement& el);
  CompressedOperator(const TruncatedRep& rep, const BiAlgebraElement& el);

  std::size_t dimension() const { return dim_; }
  std::vector<Complex> apply(const std::vector<Complex>& v) const;

 private:
  // one (left, right) translation pair per term: basis word g maps to
  // left * g * right^-1
  void build_maps(const TruncatedRep& rep,
                  const std::vector<std::pair<GroupWord, GroupWord>>& moves);
  std::size_t dim_ = 0;
  std::vector<Complex> coeffs_;             // one per term
  std::vector<std::vector<int32_t>> maps_;  // maps_[t][i] = target index or -1
};

/// One application of the compressed element to a vector over the ball.
std::vector<Complex> apply_truncated(const TruncatedRep& rep, const AlgebraElement& el,
                                     const std::vector<Complex>& v);
std::vector<Complex> apply_truncated(const TruncatedRep& rep, const BiAlgebraElement& el,
                                     const std::vector<Complex>& v);

struct NormEstimate {
  double value = 0.0;
  int radius = 0;
  int iterations = 0;
  double residual = 0.0;  // relative Rayleigh-quotient change at convergence
};

struct NormOptions {
  double tol = 1e-12;   // relative RQ change over the stability window
  int max_iter = 20000;
  int window = 5;
  std::size_t ball_cap = 4000000;
};

/// Lower bound on the representation norm of a self-adjoint element:
/// square root of the top eigenvalue of the compressed el* el, by power
/// iteration from delta_e. Nondecreasing in the radius (compressions grow).
/// `allow_non_self_adjoint` switches to the general ||el|| = sqrt top(el* el)
/// reading without the self-adjointness check.
NormEstimate estimate_norm(const TruncatedRep& rep, const AlgebraElement& el,
                           const NormOptions& opts = {}, bool allow_non_self_adjoint = false);
NormEstimate estimate_norm(const TruncatedRep& rep, const BiAlgebraElement& el,
                           const NormOptions& opts = {}, bool allow_non_self_adjoint = false);

/// Estimates at each radius; throws if the sequence ever decreases by more
/// than 1e-9 (compression monotonicity is a structural fact).
std::vector<NormEstimate> norm_convergence_scan(const FreeProductSignature& sig, RepKind kind,
                                                const AlgebraElement& el,
                                                const std::vector<int>& radii,
                                                const NormOptions& opts = {});
std::vector<NormEstimate> norm_convergence_scan(const FreeProductSignature& sig, RepKind kind,
                                                const BiAlgebraElement& el,
                                                const std::vector<int>& radii,
                                                const NormOptions& opts = {});

}  // namespace corrkit
