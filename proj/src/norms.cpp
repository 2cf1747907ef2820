#include "corrkit/norms.hpp"

#include <algorithm>
#include <cmath>

namespace corrkit {

TruncatedRep::TruncatedRep(FreeProductSignature sig, int radius, RepKind kind, std::size_t cap)
    : sig_(std::move(sig)), radius_(radius), kind_(kind) {
  basis_ = ball(sig_, radius, cap);
}

int TruncatedRep::index_of(const GroupWord& w) const {
  auto it = std::lower_bound(basis_.begin(), basis_.end(), w, word_less);
  if (it == basis_.end() || !(*it == w)) return -1;
  return static_cast<int>(it - basis_.begin());
}

void CompressedOperator::build_maps(const TruncatedRep& rep,
                                    const std::vector<std::pair<GroupWord, GroupWord>>& moves) {
  dim_ = rep.dimension();
  maps_.reserve(moves.size());
  for (const auto& [left, right] : moves) {
    GroupWord right_inv = invert(right);
    std::vector<int32_t> map(dim_);
    bool left_trivial = left.is_identity();
    bool right_trivial = right_inv.is_identity();
    for (std::size_t i = 0; i < dim_; ++i) {
      GroupWord img = rep.basis()[i];
      if (!left_trivial) img = multiply(left, img);
      if (!right_trivial) img = multiply(img, right_inv);
      map[i] = static_cast<int32_t>(rep.index_of(img));
    }
    maps_.push_back(std::move(map));
  }
}

CompressedOperator::CompressedOperator(const TruncatedRep& rep, const AlgebraElement& el) {
  if (rep.kind() != RepKind::left_regular)
    throw Error("a plain algebra element acts through the left-regular truncation");
  if (el.signature() != rep.signature()) throw Error("signature mismatch in compressed operator");
  std::vector<std::pair<GroupWord, GroupWord>> moves;
  for (const auto& [w, c] : el.terms()) {
    coeffs_.push_back(c);
    moves.emplace_back(w, identity_word(rep.signature()));
  }
  build_maps(rep, moves);
}

CompressedOperator::CompressedOperator(const TruncatedRep& rep, const BiAlgebraElement& el) {
  if (rep.kind() != RepKind::biregular)
    throw Error("a tensor-square element acts through the biregular truncation");
  if (el.signature() != rep.signature()) throw Error("signature mismatch in compressed operator");
  std::vector<std::pair<GroupWord, GroupWord>> moves;
  for (const auto& [pair, c] : el.terms()) {
    coeffs_.push_back(c);
    moves.emplace_back(pair.first, pair.second);
  }
  build_maps(rep, moves);
}

std::vector<Complex> CompressedOperator::apply(const std::vector<Complex>& v) const {
  if (v.size() != dim_) throw Error("vector has wrong dimension for compressed operator");
  std::vector<Complex> out(dim_, Complex(0.0));
  for (std::size_t t = 0; t < maps_.size(); ++t) {
    Complex c = coeffs_[t];
    const auto& map = maps_[t];
    for (std::size_t i = 0; i < dim_; ++i) {
      int32_t tgt = map[i];
      if (tgt >= 0) out[size_t(tgt)] += c * v[i];
    }
  }
  return out;
}

std::vector<Complex> apply_truncated(const TruncatedRep& rep, const AlgebraElement& el,
                                     const std::vector<Complex>& v) {
  return CompressedOperator(rep, el).apply(v);
}

std::vector<Complex> apply_truncated(const TruncatedRep& rep, const BiAlgebraElement& el,
                                     const std::vector<Complex>& v) {
  return CompressedOperator(rep, el).apply(v);
}

namespace {

double norm2(const std::vector<Complex>& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

// Power iteration on the compressed el* el starting from delta_e. The
// Rayleigh quotient of a PSD compression never exceeds the representation
// norm squared, so the square root is always a certified lower bound.
NormEstimate power_iterate(const CompressedOperator& sq, int radius, const NormOptions& opts) {
  std::size_t n = sq.dimension();
  std::vector<Complex> v(n, Complex(0.0));
  v[0] = 1.0;  // delta_e
  double rq_prev = -1.0;
  double rq = 0.0;
  NormEstimate est;
  est.radius = radius;
  int stable = 0;
  for (int it = 0; it < opts.max_iter; ++it) {
    std::vector<Complex> w = sq.apply(v);
    double num = 0.0;
    for (std::size_t i = 0; i < n; ++i) num += (std::conj(v[i]) * w[i]).real();
    rq = num;  // v is unit
    est.iterations = it + 1;
    double change = std::abs(rq - rq_prev) / std::max(1.0, std::abs(rq));
    est.residual = change;
    if (change < opts.tol) {
      if (++stable >= opts.window) break;
    } else {
      stable = 0;
    }
    rq_prev = rq;
    double nn = norm2(w);
    if (nn <= 1e-300) {  // element annihilates the ball: norm bound 0
      rq = 0.0;
      break;
    }
    for (auto& x : w) x /= nn;
    v = std::move(w);
  }
  est.value = std::sqrt(std::max(0.0, rq));
  return est;
}

}  // namespace

NormEstimate estimate_norm(const TruncatedRep& rep, const AlgebraElement& el,
                           const NormOptions& opts, bool allow_non_self_adjoint) {
  if (!allow_non_self_adjoint && (star(el) - el).norm1() > 1e-12)
    throw Error("estimate_norm: element is not self-adjoint (use the el*el fallback)");
  AlgebraElement sq = alg_multiply(star(el), el);
  CompressedOperator op(rep, sq);
  return power_iterate(op, rep.radius(), opts);
}

NormEstimate estimate_norm(const TruncatedRep& rep, const BiAlgebraElement& el,
                           const NormOptions& opts, bool allow_non_self_adjoint) {
  if (!allow_non_self_adjoint) {
    BiAlgebraElement diff = star(el) + el * Complex(-1.0);
    if (diff.norm1() > 1e-12)
      throw Error("estimate_norm: element is not self-adjoint (use the el*el fallback)");
  }
  BiAlgebraElement sq = alg_multiply(star(el), el);
  CompressedOperator op(rep, sq);
  return power_iterate(op, rep.radius(), opts);
}

namespace {

template <typename Element>
std::vector<NormEstimate> scan_impl(const FreeProductSignature& sig, RepKind kind,
                                    const Element& el, const std::vector<int>& radii,
                                    const NormOptions& opts) {
  std::vector<NormEstimate> history;
  for (int r : radii) {
    TruncatedRep rep(sig, r, kind, opts.ball_cap);
    history.push_back(estimate_norm(rep, el, opts));
    if (history.size() >= 2) {
      double prev = history[history.size() - 2].value;
      if (history.back().value < prev - 1e-9)
        throw Error("norm estimates decreased with the radius (" + std::to_string(prev) +
                    " -> " + std::to_string(history.back().value) + ")");
    }
  }
  return history;
}

}  // namespace

std::vector<NormEstimate> norm_convergence_scan(const FreeProductSignature& sig, RepKind kind,
                                                const AlgebraElement& el,
                                                const std::vector<int>& radii,
                                                const NormOptions& opts) {
  return scan_impl(sig, kind, el, radii, opts);
}

std::vector<NormEstimate> norm_convergence_scan(const FreeProductSignature& sig, RepKind kind,
                                                const BiAlgebraElement& el,
                                                const std::vector<int>& radii,
                                                const NormOptions& opts) {
  return scan_impl(sig, kind, el, radii, opts);
}

}  // namespace corrkit
