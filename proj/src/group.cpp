#include "corrkit/group.hpp"

#include <algorithm>
#include <sstream>

namespace corrkit {

FreeProductSignature::FreeProductSignature(std::vector<int> factor_orders) {
  if (factor_orders.empty()) throw Error("signature needs at least one factor");
  for (int m : factor_orders)
    if (m < 0 || m == 1) throw Error("factor orders must be 0 (infinite) or >= 2");
  orders_ = std::make_shared<const std::vector<int>>(std::move(factor_orders));
}

std::string FreeProductSignature::to_string() const {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < orders_->size(); ++i) os << (i ? "," : "") << (*orders_)[i];
  os << ']';
  return os.str();
}

namespace {

// Letter count of a single normalized syllable.
int syllable_length(const FreeProductSignature& sig, const Syllable& s) {
  int m = sig.order(s.factor);
  if (m == 0) return std::abs(s.exponent);
  return std::min(s.exponent, m - s.exponent);
}

// Normalizes an exponent for a factor; returns 0 when the syllable is trivial.
int32_t normalize_exponent(int order, int64_t exp) {
  if (order == 0) {
    if (exp < INT32_MIN || exp > INT32_MAX) throw Error("exponent overflow");
    return static_cast<int32_t>(exp);
  }
  int64_t e = exp % order;
  if (e < 0) e += order;
  return static_cast<int32_t>(e);
}

void push_reduced(const FreeProductSignature& sig, std::vector<Syllable>& out,
                  int32_t factor, int64_t exponent) {
  int order = sig.order(factor);
  if (!out.empty() && out.back().factor == factor) {
    int64_t merged = static_cast<int64_t>(out.back().exponent) + exponent;
    out.pop_back();
    int32_t e = normalize_exponent(order, merged);
    if (e != 0) out.push_back({factor, e});
    return;
  }
  int32_t e = normalize_exponent(order, exponent);
  if (e != 0) out.push_back({factor, e});
}

}  // namespace

int GroupWord::length() const {
  int len = 0;
  for (const auto& s : syls_) len += syllable_length(sig_, s);
  return len;
}

std::string GroupWord::to_string() const {
  if (syls_.empty()) return "e";
  std::ostringstream os;
  for (size_t i = 0; i < syls_.size(); ++i) {
    if (i) os << ' ';
    os << generator_name(syls_[i].factor);
    if (syls_[i].exponent != 1) os << '^' << syls_[i].exponent;
  }
  return os.str();
}

GroupWord reduce(const FreeProductSignature& sig, const std::vector<Syllable>& raw_syllables) {
  GroupWord w(sig);
  w.syls_.reserve(raw_syllables.size());
  for (const auto& s : raw_syllables) {
    if (s.factor < 0 || s.factor >= sig.num_factors())
      throw Error("factor index " + std::to_string(s.factor) + " out of range for signature " +
                  sig.to_string());
    push_reduced(sig, w.syls_, s.factor, s.exponent);
    // A merge may expose a new adjacent pair; push_reduced only merges once,
    // so fold repeatedly until stable.
    while (w.syls_.size() >= 2 &&
           w.syls_[w.syls_.size() - 1].factor == w.syls_[w.syls_.size() - 2].factor) {
      Syllable top = w.syls_.back();
      w.syls_.pop_back();
      push_reduced(sig, w.syls_, top.factor, top.exponent);
    }
  }
  return w;
}

GroupWord multiply(const GroupWord& w1, const GroupWord& w2) {
  if (w1.signature() != w2.signature()) throw Error("signature mismatch in multiply");
  std::vector<Syllable> all = w1.syllables();
  all.insert(all.end(), w2.syllables().begin(), w2.syllables().end());
  return reduce(w1.signature(), all);
}

GroupWord invert(const GroupWord& w) {
  std::vector<Syllable> inv;
  inv.reserve(w.syllables().size());
  for (auto it = w.syllables().rbegin(); it != w.syllables().rend(); ++it)
    inv.push_back({it->factor, -it->exponent});
  return reduce(w.signature(), inv);
}

GroupWord identity_word(const FreeProductSignature& sig) { return GroupWord(sig); }

GroupWord generator_word(const FreeProductSignature& sig, int factor, int exponent) {
  return reduce(sig, {{static_cast<int32_t>(factor), static_cast<int32_t>(exponent)}});
}

bool word_less(const GroupWord& a, const GroupWord& b) {
  int la = a.length(), lb = b.length();
  if (la != lb) return la < lb;
  return std::lexicographical_compare(a.syllables().begin(), a.syllables().end(),
                                      b.syllables().begin(), b.syllables().end());
}

namespace {

// Depth-first enumeration of reduced words: every reduced word is visited
// exactly once because the syllable form is unique.
void extend_ball(const FreeProductSignature& sig, std::vector<Syllable>& prefix, int budget,
                 std::size_t cap, std::vector<GroupWord>& out) {
  if (out.size() > cap)
    throw Error("ball cap exceeded (" + std::to_string(cap) + " words)");
  out.push_back(reduce(sig, prefix));
  if (budget == 0) return;
  int last = prefix.empty() ? -1 : prefix.back().factor;
  for (int32_t f = 0; f < sig.num_factors(); ++f) {
    if (f == last) continue;
    int m = sig.order(f);
    if (m == 0) {
      for (int32_t p = 1; p <= budget; ++p) {
        for (int32_t sgn : {+1, -1}) {
          prefix.push_back({f, sgn * p});
          extend_ball(sig, prefix, budget - p, cap, out);
          prefix.pop_back();
        }
      }
    } else {
      for (int32_t p = 1; p < m; ++p) {
        int cost = std::min<int>(p, m - p);
        if (cost > budget) continue;
        prefix.push_back({f, p});
        extend_ball(sig, prefix, budget - cost, cap, out);
        prefix.pop_back();
      }
    }
  }
}

}  // namespace

std::vector<GroupWord> ball(const FreeProductSignature& sig, int radius, std::size_t cap) {
  if (radius < 0) throw Error("ball radius must be nonnegative");
  std::vector<GroupWord> words;
  std::vector<Syllable> prefix;
  extend_ball(sig, prefix, radius, cap, words);
  std::sort(words.begin(), words.end(), word_less);
  return words;
}

std::string generator_name(int factor) {
  if (factor < 26) return std::string(1, static_cast<char>('a' + factor));
  return "g" + std::to_string(factor);
}

GroupWord parse_word(const FreeProductSignature& sig, const std::string& text) {
  std::vector<Syllable> syls;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    if (tok == "e" || tok == "1") continue;
    size_t caret = tok.find('^');
    std::string name = tok.substr(0, caret);
    int32_t exp = 1;
    if (caret != std::string::npos) {
      try {
        exp = std::stoi(tok.substr(caret + 1));
      } catch (const std::exception&) {
        throw Error("bad exponent in word token '" + tok + "'");
      }
    }
    int32_t factor = -1;
    if (name.size() == 1 && name[0] >= 'a' && name[0] <= 'z') factor = name[0] - 'a';
    else if (name.size() > 1 && name[0] == 'g') {
      try {
        factor = std::stoi(name.substr(1));
      } catch (const std::exception&) {
        factor = -1;
      }
    }
    if (factor < 0 || factor >= sig.num_factors())
      throw Error("unknown generator '" + name + "' for signature " + sig.to_string());
    syls.push_back({factor, exp});
  }
  return reduce(sig, syls);
}

FreeWitness FreeWitness::two_cyclic(int m) {
  if (m < 3) throw Error("two-cyclic witness needs factor order m >= 3");
  FreeWitness w;
  w.kind = Kind::TwoCyclic;
  w.target = FreeProductSignature::cyclic_power(m, 2);
  w.free_rank = 2;
  return w;
}

FreeWitness FreeWitness::three_z2() {
  FreeWitness w;
  w.kind = Kind::ThreeZ2;
  w.target = FreeProductSignature::cyclic_power(2, 3);
  w.free_rank = 2;
  return w;
}

FreeWitness FreeWitness::free_in_free(int n) {
  if (n < 1) throw Error("free-in-free witness needs rank n >= 1");
  FreeWitness w;
  w.kind = Kind::FreeInFree;
  w.target = FreeProductSignature::free_group(2);
  w.free_rank = n;
  return w;
}

GroupWord FreeWitness::generator_image(int i) const {
  if (i < 0 || i >= free_rank) throw Error("witness generator index out of range");
  switch (kind) {
    case Kind::TwoCyclic:
      // g_1 = ab, g_2 = ba
      return i == 0 ? reduce(target, {{0, 1}, {1, 1}}) : reduce(target, {{1, 1}, {0, 1}});
    case Kind::ThreeZ2:
      // g_1 = abc, g_2 = acb
      return i == 0 ? reduce(target, {{0, 1}, {1, 1}, {2, 1}})
                    : reduce(target, {{0, 1}, {2, 1}, {1, 1}});
    case Kind::FreeInFree:
      // g_i = a^i b^-i
      return reduce(target, {{0, i + 1}, {1, -(i + 1)}});
  }
  throw Error("unreachable witness kind");
}

GroupWord embed_free(const FreeWitness& witness, const GroupWord& free_word) {
  const auto& sig = free_word.signature();
  if (sig.num_factors() != witness.free_rank)
    throw Error("free word rank does not match witness rank");
  for (int f = 0; f < sig.num_factors(); ++f)
    if (sig.order(f) != 0) throw Error("embed_free expects a word over a free group");
  GroupWord image = identity_word(witness.target);
  for (const auto& s : free_word.syllables()) {
    GroupWord g = witness.generator_image(s.factor);
    if (s.exponent < 0) g = invert(g);
    int reps = std::abs(s.exponent);
    for (int r = 0; r < reps; ++r) image = multiply(image, g);
  }
  return image;
}

FreenessReport check_freeness(const FreeWitness& witness, int max_length, std::size_t cap) {
  if (max_length < 1) throw Error("check_freeness needs max_length >= 1");
  FreenessReport report;
  auto free_words = ball(FreeProductSignature::free_group(witness.free_rank), max_length, cap);
  for (const auto& w : free_words) {
    if (w.is_identity()) continue;
    ++report.checked;
    if (embed_free(witness, w).is_identity()) report.failures.push_back(w);
  }
  return report;
}

}  // namespace corrkit
