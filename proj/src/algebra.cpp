#include "corrkit/algebra.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace corrkit {

namespace {
constexpr double kDropTol = 0.0;  // exact zero pruning only; callers keep tiny terms

bool negligible(Complex c) { return c == Complex(0.0, 0.0) || std::abs(c) <= kDropTol; }
}  // namespace

AlgebraElement AlgebraElement::delta(const GroupWord& w, Complex coeff) {
  AlgebraElement el(w.signature());
  el.add_term(w, coeff);
  return el;
}

void AlgebraElement::add_term(const GroupWord& w, Complex coeff) {
  if (w.signature() != sig_) throw Error("signature mismatch in add_term");
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    if (!negligible(coeff)) terms_.emplace(w, coeff);
    return;
  }
  it->second += coeff;
  if (negligible(it->second)) terms_.erase(it);
}

Complex AlgebraElement::coefficient(const GroupWord& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  if (sig_ != o.sig_) throw Error("signature mismatch in +");
  AlgebraElement r = *this;
  for (const auto& [w, c] : o.terms_) r.add_term(w, c);
  return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  if (sig_ != o.sig_) throw Error("signature mismatch in -");
  AlgebraElement r = *this;
  for (const auto& [w, c] : o.terms_) r.add_term(w, -c);
  return r;
}

AlgebraElement AlgebraElement::operator*(Complex s) const {
  AlgebraElement r(sig_);
  if (negligible(s)) return r;
  for (const auto& [w, c] : terms_) r.terms_.emplace(w, c * s);
  return r;
}

double AlgebraElement::norm1() const {
  double s = 0.0;
  for (const auto& [w, c] : terms_) s += std::abs(c);
  return s;
}

std::string AlgebraElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real();
    if (c.imag() != 0.0) os << (c.imag() > 0 ? "+" : "") << c.imag() << "i";
    os << ")*" << w.to_string();
  }
  return os.str();
}

void BiAlgebraElement::add_term(const GroupWord& w1, const GroupWord& w2, Complex coeff) {
  if (w1.signature() != sig_ || w2.signature() != sig_)
    throw Error("signature mismatch in add_term");
  auto key = std::make_pair(w1, w2);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    if (!negligible(coeff)) terms_.emplace(std::move(key), coeff);
    return;
  }
  it->second += coeff;
  if (negligible(it->second)) terms_.erase(it);
}

BiAlgebraElement BiAlgebraElement::operator+(const BiAlgebraElement& o) const {
  if (sig_ != o.sig_) throw Error("signature mismatch in +");
  BiAlgebraElement r = *this;
  for (const auto& [p, c] : o.terms_) r.add_term(p.first, p.second, c);
  return r;
}

BiAlgebraElement BiAlgebraElement::operator*(Complex s) const {
  BiAlgebraElement r(sig_);
  if (negligible(s)) return r;
  for (const auto& [p, c] : terms_) r.terms_.emplace(p, c * s);
  return r;
}

double BiAlgebraElement::norm1() const {
  double s = 0.0;
  for (const auto& [p, c] : terms_) s += std::abs(c);
  return s;
}

AlgebraElement star(const AlgebraElement& el) {
  AlgebraElement r(el.signature());
  for (const auto& [w, c] : el.terms()) r.add_term(invert(w), std::conj(c));
  return r;
}

BiAlgebraElement star(const BiAlgebraElement& el) {
  BiAlgebraElement r(el.signature());
  for (const auto& [p, c] : el.terms())
    r.add_term(invert(p.first), invert(p.second), std::conj(c));
  return r;
}

AlgebraElement alg_multiply(const AlgebraElement& x, const AlgebraElement& y) {
  if (x.signature() != y.signature()) throw Error("signature mismatch in alg_multiply");
  AlgebraElement r(x.signature());
  for (const auto& [wx, cx] : x.terms())
    for (const auto& [wy, cy] : y.terms()) r.add_term(multiply(wx, wy), cx * cy);
  return r;
}

BiAlgebraElement alg_multiply(const BiAlgebraElement& x, const BiAlgebraElement& y) {
  if (x.signature() != y.signature()) throw Error("signature mismatch in alg_multiply");
  BiAlgebraElement r(x.signature());
  for (const auto& [px, cx] : x.terms())
    for (const auto& [py, cy] : y.terms())
      r.add_term(multiply(px.first, py.first), multiply(px.second, py.second), cx * cy);
  return r;
}

BiAlgebraElement tensor(const AlgebraElement& x, const AlgebraElement& y) {
  if (x.signature() != y.signature()) throw Error("signature mismatch in tensor");
  BiAlgebraElement r(x.signature());
  for (const auto& [wx, cx] : x.terms())
    for (const auto& [wy, cy] : y.terms()) r.add_term(wx, wy, cx * cy);
  return r;
}

BiAlgebraElement diagonal_lift(const AlgebraElement& el) {
  BiAlgebraElement r(el.signature());
  for (const auto& [w, c] : el.terms()) r.add_term(w, w, c);
  return r;
}

ProjectorMonomial ProjectorMonomial::star() const {
  ProjectorMonomial r = *this;
  std::reverse(r.slots.begin(), r.slots.end());
  return r;
}

std::string ProjectorMonomial::to_string() const {
  if (zero) return "0";
  if (slots.empty()) return "1";
  std::ostringstream os;
  for (size_t i = 0; i < slots.size(); ++i) {
    if (i) os << ' ';
    os << "e[" << slots[i].setting << "," << slots[i].outcome << "]";
  }
  return os.str();
}

namespace {
void push_slot(std::vector<ProjectorMonomial::Slot>& slots, const ProjectorMonomial::Slot& s,
               bool& zero) {
  if (zero) return;
  if (!slots.empty() && slots.back().setting == s.setting) {
    if (slots.back().outcome == s.outcome) return;  // idempotent
    zero = true;                                    // orthogonal projectors
    slots.clear();
    return;
  }
  slots.push_back(s);
}
}  // namespace

ProjectorMonomial monomial_product(const ProjectorMonomial& u, const ProjectorMonomial& v) {
  if (u.zero || v.zero) return ProjectorMonomial::zero_monomial();
  ProjectorMonomial r;
  for (const auto& s : u.slots) push_slot(r.slots, s, r.zero);
  for (const auto& s : v.slots) push_slot(r.slots, s, r.zero);
  if (r.zero) return ProjectorMonomial::zero_monomial();
  return r;
}

ProjectorMonomial make_monomial(const Scenario& sc,
                                const std::vector<ProjectorMonomial::Slot>& raw) {
  ProjectorMonomial r;
  for (const auto& s : raw) {
    if (s.setting < 0 || s.setting >= sc.k) throw Error("monomial setting out of range");
    if (s.outcome < 0 || s.outcome >= sc.m) throw Error("monomial outcome out of range");
    push_slot(r.slots, s, r.zero);
  }
  if (r.zero) return ProjectorMonomial::zero_monomial();
  return r;
}

ProjectorMonomial history_monomial(const Scenario& sc, const std::vector<int>& settings,
                                   const std::vector<int>& outcomes) {
  if (settings.empty() || settings.size() != outcomes.size())
    throw Error("history_monomial needs equal-length nonempty settings/outcomes");
  std::vector<ProjectorMonomial::Slot> raw;
  size_t t = settings.size();
  raw.reserve(2 * t - 1);
  for (size_t i = 0; i < t; ++i) raw.push_back({settings[i], outcomes[i]});
  for (size_t i = t - 1; i-- > 0;) raw.push_back({settings[i], outcomes[i]});
  return make_monomial(sc, raw);
}

AlgebraElement projector_to_algebra(const Scenario& sc, int setting, int outcome) {
  if (sc.m < 2) throw Error("scenario outcomes must be >= 2");
  if (setting < 0 || setting >= sc.k) throw Error("setting out of range");
  if (outcome < 0 || outcome >= sc.m) throw Error("outcome out of range");
  auto sig = sc.group();
  AlgebraElement el(sig);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int j = 0; j < sc.m; ++j) {
    // (1/m) w^{-a j} u^j with w = exp(2 pi i / m)
    double phase = -two_pi * outcome * j / sc.m;
    Complex coeff = Complex(std::cos(phase), std::sin(phase)) / double(sc.m);
    el.add_term(generator_word(sig, setting, j), coeff);
  }
  return el;
}

AlgebraElement projector_to_algebra(const Scenario& sc, const ProjectorMonomial& mono) {
  auto sig = sc.group();
  if (mono.zero) return AlgebraElement(sig);
  AlgebraElement acc = AlgebraElement::delta(identity_word(sig));
  for (const auto& s : mono.slots)
    acc = alg_multiply(acc, projector_to_algebra(sc, s.setting, s.outcome));
  return acc;
}

AlgebraElement unitary_of_setting(const Scenario& sc, int setting) {
  if (setting < 0 || setting >= sc.k) throw Error("setting out of range");
  return AlgebraElement::delta(generator_word(sc.group(), setting, 1));
}

BellFunctional::BellFunctional(Scenario sc, double fill)
    : sc_(sc), c_(size_t(sc.m) * sc.m * sc.k * sc.k, fill) {}

size_t BellFunctional::index(int a, int b, int x, int y) const {
  if (a < 0 || a >= sc_.m || b < 0 || b >= sc_.m || x < 0 || x >= sc_.k || y < 0 || y >= sc_.k)
    throw Error("BellFunctional index out of range");
  return ((size_t(a) * sc_.m + b) * sc_.k + x) * sc_.k + y;
}

double& BellFunctional::at(int a, int b, int x, int y) { return c_[index(a, b, x, y)]; }
double BellFunctional::at(int a, int b, int x, int y) const { return c_[index(a, b, x, y)]; }

BellFunctional BellFunctional::from_correlators(int k, const std::vector<std::vector<double>>& sign) {
  if (static_cast<int>(sign.size()) != k) throw Error("correlator matrix must be k x k");
  BellFunctional f(Scenario{k, 2});
  for (int x = 0; x < k; ++x) {
    if (static_cast<int>(sign[size_t(x)].size()) != k) throw Error("correlator matrix must be k x k");
    for (int y = 0; y < k; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          f.at(a, b, x, y) = sign[size_t(x)][size_t(y)] * ((a + b) % 2 == 0 ? 1.0 : -1.0);
  }
  return f;
}

BellFunctional BellFunctional::chsh() {
  return from_correlators(2, {{1.0, 1.0}, {1.0, -1.0}});
}

double BellFunctional::evaluate(const std::vector<double>& table_abxy) const {
  if (table_abxy.size() != c_.size()) throw Error("table size mismatch in evaluate");
  double s = 0.0;
  for (size_t i = 0; i < c_.size(); ++i) s += c_[i] * table_abxy[i];
  return s;
}

BiAlgebraElement bell_element(const BellFunctional& c) {
  const auto& sc = c.scenario();
  auto sig = sc.group();
  // Images of each projector, computed once.
  std::vector<std::vector<AlgebraElement>> img(size_t(sc.k),
                                               std::vector<AlgebraElement>(size_t(sc.m)));
  for (int x = 0; x < sc.k; ++x)
    for (int a = 0; a < sc.m; ++a) img[size_t(x)][size_t(a)] = projector_to_algebra(sc, x, a);
  BiAlgebraElement r(sig);
  for (int x = 0; x < sc.k; ++x)
    for (int y = 0; y < sc.k; ++y)
      for (int a = 0; a < sc.m; ++a)
        for (int b = 0; b < sc.m; ++b) {
          double w = c.at(a, b, x, y);
          if (w == 0.0) continue;
          r = r + tensor(img[size_t(x)][size_t(a)], img[size_t(y)][size_t(b)]) * Complex(w);
        }
  return r;
}

ComplexMatrix represent(const AlgebraElement& el, const std::vector<ComplexMatrix>& rep) {
  const auto& sig = el.signature();
  if (static_cast<int>(rep.size()) != sig.num_factors())
    throw Error("represent: one unitary per factor required");
  int dim = rep.empty() ? 0 : rep[0].rows();
  for (int f = 0; f < sig.num_factors(); ++f) {
    const auto& u = rep[size_t(f)];
    if (!u.is_square() || u.rows() != dim) throw Error("represent: dimension mismatch");
    ComplexMatrix should_be_id = u.adjoint() * u - ComplexMatrix::identity(dim);
    if (should_be_id.norm_max() > 1e-10)
      throw Error("represent: assigned matrix for factor " + std::to_string(f) +
                  " is not unitary (defect " + std::to_string(should_be_id.norm_max()) + ")");
    int m = sig.order(f);
    if (m > 0) {
      ComplexMatrix p = ComplexMatrix::identity(dim);
      for (int j = 0; j < m; ++j) p = p * u;
      if ((p - ComplexMatrix::identity(dim)).norm_max() > 1e-10)
        throw Error("represent: order relation U^" + std::to_string(m) +
                    " = 1 violated for factor " + std::to_string(f));
    }
  }
  ComplexMatrix out(dim, dim);
  for (const auto& [w, c] : el.terms()) {
    ComplexMatrix p = ComplexMatrix::identity(dim);
    for (const auto& s : w.syllables()) {
      const auto& u = rep[size_t(s.factor)];
      ComplexMatrix base = s.exponent >= 0 ? u : u.adjoint();
      for (int j = 0; j < std::abs(s.exponent); ++j) p = p * base;
    }
    out += p * c;
  }
  return out;
}

AlgebraElement parse_element(const FreeProductSignature& sig, const std::string& text) {
  // Split into +/- separated terms, each "coeff word" or just "word"/"coeff".
  // A '-' directly after '^' belongs to an exponent, not a term split.
  AlgebraElement el(sig);
  std::string cur;
  double sign = 1.0;
  std::vector<std::pair<double, std::string>> raw;
  for (size_t i = 0; i <= text.size(); ++i) {
    char ch = i < text.size() ? text[i] : '+';
    bool is_split = (ch == '+' || (ch == '-' && (i == 0 || text[i - 1] != '^')));
    if (is_split) {
      if (!cur.empty()) raw.emplace_back(sign, cur);
      cur.clear();
      sign = (ch == '-') ? -1.0 : 1.0;
    } else {
      cur.push_back(ch);
    }
  }
  for (auto& [sgn, term] : raw) {
    std::istringstream is(term);
    std::string tok;
    double coeff = sgn;
    std::vector<std::string> word_toks;
    while (is >> tok) {
      // leading numeric factor(s)
      if (word_toks.empty() && (std::isdigit(tok[0]) || tok[0] == '.')) {
        try {
          coeff *= std::stod(tok);
          continue;
        } catch (const std::exception&) {
          throw Error("bad coefficient '" + tok + "'");
        }
      }
      word_toks.push_back(tok);
    }
    std::string word_text;
    for (size_t i = 0; i < word_toks.size(); ++i)
      word_text += (i ? " " : "") + word_toks[i];
    if (word_text.empty()) word_text = "e";
    el.add_term(parse_word(sig, word_text), coeff);
  }
  return el;
}

}  // namespace corrkit
