#include "charvar/modular_group.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace charvar {

namespace {

constexpr std::array<std::string_view, 15> kNames{
    "Sigma1", "Sigma2", "Sigma3", "P12", "P13", "P23", "P123", "P132",
    "Qx",     "Qy",     "Qz",     "TauX", "TauY", "Nu", "Epsilon",
};

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("GL(2,Z) entry overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("GL(2,Z) entry overflow");
  return r;
}

using Matrix = Gl2zClass::Matrix;

Matrix multiply(const Matrix& a, const Matrix& b) {
  Matrix r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = checked_add(checked_mul(a[i][0], b[0][j]), checked_mul(a[i][1], b[1][j]));
  return r;
}

std::uint8_t mod2(std::int64_t v) { return static_cast<std::uint8_t>(((v % 2) + 2) % 2); }

}  // namespace

std::string_view mnemonic(GeneratorId g) { return kNames[static_cast<std::size_t>(g)]; }

GeneratorId parse_generator(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (kNames[i] == name) return static_cast<GeneratorId>(i);
  throw std::invalid_argument("unknown generator '" + std::string(name) + "'");
}

bool is_sign_change(GeneratorId g) {
  return g == GeneratorId::Sigma1 || g == GeneratorId::Sigma2 || g == GeneratorId::Sigma3;
}

// --- Gl2zClass ---------------------------------------------------------------

Gl2zClass::Gl2zClass(const Matrix& m) : m_(m) {
  const std::int64_t d = det();
  if (d != 1 && d != -1) throw std::invalid_argument("matrix is not unimodular (det " + std::to_string(d) + ")");
  const std::int64_t lead = m_[0][0] != 0 ? m_[0][0] : m_[0][1];
  if (lead < 0)
    for (auto& row : m_)
      for (auto& v : row) v = -v;
}

std::int64_t Gl2zClass::det() const {
  return checked_add(checked_mul(m_[0][0], m_[1][1]), -checked_mul(m_[0][1], m_[1][0]));
}

bool Gl2zClass::is_identity() const { return m_ == Matrix{{{1, 0}, {0, 1}}}; }

std::array<int, 3> Gl2zClass::mod2_permutation() const {
  static constexpr std::array<std::array<std::uint8_t, 2>, 3> points{{{1, 0}, {0, 1}, {1, 1}}};
  std::array<int, 3> perm{};
  for (int i = 0; i < 3; ++i) {
    const auto& p = points[i];
    const std::array<std::uint8_t, 2> image{mod2(m_[0][0] * p[0] + m_[0][1] * p[1]),
                                            mod2(m_[1][0] * p[0] + m_[1][1] * p[1])};
    for (int j = 0; j < 3; ++j)
      if (points[j] == image) perm[i] = j;
  }
  return perm;
}

Gl2zClass operator*(const Gl2zClass& a, const Gl2zClass& b) { return Gl2zClass(multiply(a.m_, b.m_)); }

std::string Gl2zClass::str() const {
  std::ostringstream os;
  os << "[[" << m_[0][0] << "," << m_[0][1] << "],[" << m_[1][0] << "," << m_[1][1] << "]]";
  return os.str();
}

// --- generator data ----------------------------------------------------------

Gl2zClass homology(GeneratorId g) {
  switch (g) {
    case GeneratorId::Sigma1:
    case GeneratorId::Sigma2:
    case GeneratorId::Sigma3:
      return Gl2zClass();
    case GeneratorId::P12:
      return Gl2zClass({{{0, 1}, {1, 0}}});
    case GeneratorId::P13:
      return Gl2zClass({{{-1, 0}, {-1, 1}}});
    case GeneratorId::P23:
      return Gl2zClass({{{1, -1}, {0, -1}}});
    case GeneratorId::P123:
      return Gl2zClass({{{0, -1}, {1, -1}}});
    case GeneratorId::P132:
      return Gl2zClass({{{-1, 1}, {-1, 0}}});
    case GeneratorId::Qx:
      return Gl2zClass({{{1, 0}, {2, -1}}});
    case GeneratorId::Qy:
      return Gl2zClass({{{1, -2}, {0, -1}}});
    case GeneratorId::Qz:
      return Gl2zClass({{{1, 0}, {0, -1}}});
    case GeneratorId::TauX:
      return Gl2zClass({{{1, 1}, {0, 1}}});
    case GeneratorId::TauY:
      return Gl2zClass({{{1, 0}, {1, 1}}});
    case GeneratorId::Nu:
      return Gl2zClass({{{0, 1}, {-1, 0}}});
    case GeneratorId::Epsilon:
      return Gl2zClass({{{-1, 0}, {0, -1}}});
  }
  return Gl2zClass();
}

SignPair generator_signs(GeneratorId g) {
  switch (g) {
    case GeneratorId::Sigma1:
      return {0, 1};
    case GeneratorId::Sigma2:
      return {1, 0};
    case GeneratorId::Sigma3:
      return {1, 1};
    default:
      return {0, 0};
  }
}

std::array<int, 3> s3_image(GeneratorId g) { return homology(g).mod2_permutation(); }
std::array<int, 3> s3_image(const GammaElement& g) { return g.pgl().mod2_permutation(); }

bool in_level_two(const GammaElement& g) { return s3_image(g) == std::array<int, 3>{0, 1, 2}; }

// --- GammaElement ------------------------------------------------------------

GammaElement GammaElement::generator(GeneratorId g) {
  GammaElement e;
  e.word_ = {g};
  e.pgl_ = homology(g);
  e.signs_ = generator_signs(g);
  return e;
}

GammaElement GammaElement::from_word(const std::vector<GeneratorId>& word) {
  GammaElement e;
  // Right to left so each step is a single-letter composition.
  for (auto it = word.rbegin(); it != word.rend(); ++it) e = compose(generator(*it), e);
  return e;
}

GammaElement GammaElement::parse(std::string_view text) {
  std::vector<GeneratorId> word;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) word.push_back(parse_generator(token));
  return from_word(word);
}

std::string GammaElement::word_string() const {
  std::string s;
  for (std::size_t i = 0; i < word_.size(); ++i) {
    if (i) s += ' ';
    s += mnemonic(word_[i]);
  }
  return s;
}

std::string GammaElement::normal_form_json() const {
  const auto& m = pgl_.matrix();
  std::ostringstream os;
  os << "{\"m\":[[" << m[0][0] << "," << m[0][1] << "],[" << m[1][0] << "," << m[1][1] << "]],\"signs\":["
     << int(signs_.x) << "," << int(signs_.y) << "]}";
  return os.str();
}

GammaElement compose(const GammaElement& g, const GammaElement& h) {
  // A(m1) s1 A(m2) s2 = A(m1 m2) (s1 . m2 + s2): conjugating a sign change by
  // A(m)^-1 acts on the row vector (eps_X, eps_Y) by right multiplication.
  GammaElement r;
  r.word_.reserve(g.word_.size() + h.word_.size());
  r.word_ = g.word_;
  r.word_.insert(r.word_.end(), h.word_.begin(), h.word_.end());
  r.pgl_ = g.pgl_ * h.pgl_;
  const auto& m2 = h.pgl_.matrix();
  const auto s1 = g.signs_;
  r.signs_.x = mod2(s1.x * mod2(m2[0][0]) + s1.y * mod2(m2[1][0]) + h.signs_.x);
  r.signs_.y = mod2(s1.x * mod2(m2[0][1]) + s1.y * mod2(m2[1][1]) + h.signs_.y);
  return r;
}

namespace {

std::vector<GeneratorId> inverse_word(GeneratorId g) {
  using G = GeneratorId;
  switch (g) {
    case G::P123:
      return {G::P132};
    case G::P132:
      return {G::P123};
    case G::TauX:
      return {G::Qz, G::TauX, G::Qz};
    case G::TauY:
      return {G::Qz, G::TauY, G::Qz};
    default:
      return {g};  // involutions (Nu squares to the trivial Epsilon)
  }
}

}  // namespace

GammaElement inverse(const GammaElement& g) {
  std::vector<GeneratorId> word;
  for (auto it = g.word().rbegin(); it != g.word().rend(); ++it) {
    const auto inv = inverse_word(*it);
    word.insert(word.end(), inv.begin(), inv.end());
  }
  return GammaElement::from_word(word);
}

Character apply(GeneratorId g, const Character& c) {
  Scalar x = c.x();
  Scalar y = c.y();
  Scalar z = c.z();
  act(g, x, y, z);
  return {std::move(x), std::move(y), std::move(z)};
}

Character apply(const GammaElement& g, const Character& c) {
  Scalar x = c.x();
  Scalar y = c.y();
  Scalar z = c.z();
  for (auto it = g.word().rbegin(); it != g.word().rend(); ++it) act(*it, x, y, z);
  return {std::move(x), std::move(y), std::move(z)};
}

// --- decomposition -----------------------------------------------------------

namespace {

// Left-multiplications used to drive a matrix to +-I, each paired with the
// word of its inverse.
struct Move {
  enum Kind { RowZeroPlusRowOne, RowOnePlusRowZero, SwapRows, NegateRowOne } kind;
  std::int64_t amount = 0;
};

void apply_move(Matrix& m, const Move& mv) {
  switch (mv.kind) {
    case Move::RowZeroPlusRowOne:
      for (int j = 0; j < 2; ++j) m[0][j] = checked_add(m[0][j], checked_mul(mv.amount, m[1][j]));
      break;
    case Move::RowOnePlusRowZero:
      for (int j = 0; j < 2; ++j) m[1][j] = checked_add(m[1][j], checked_mul(mv.amount, m[0][j]));
      break;
    case Move::SwapRows:
      std::swap(m[0], m[1]);
      break;
    case Move::NegateRowOne:
      m[1][0] = -m[1][0];
      m[1][1] = -m[1][1];
      break;
  }
}

// Inverse word of a unit move (amount +-1 for step 1, +-2 for step 2).
std::vector<GeneratorId> unit_inverse_word(Move::Kind kind, std::int64_t unit) {
  using G = GeneratorId;
  switch (kind) {
    case Move::RowZeroPlusRowOne:  // T^unit
      if (unit == 1) return {G::Qz, G::TauX, G::Qz};
      if (unit == -1) return {G::TauX};
      if (unit == 2) return {G::Qz, G::Qy};
      return {G::Qy, G::Qz};
    case Move::RowOnePlusRowZero:  // L^unit
      if (unit == 1) return {G::Qz, G::TauY, G::Qz};
      if (unit == -1) return {G::TauY};
      if (unit == 2) return {G::Qz, G::Qx};
      return {G::Qx, G::Qz};
    case Move::SwapRows:
      return {G::P12};
    case Move::NegateRowOne:
      return {G::Qz};
  }
  return {};
}

std::int64_t nearest_quotient(std::int64_t num, std::int64_t den) {
  // Nearest integer to num/den, ties toward zero.
  const long double q = static_cast<long double>(num) / static_cast<long double>(den);
  long double r = q < 0 ? -std::floor(-q + 0.5L) : std::floor(q + 0.5L);
  if (std::fabs(static_cast<double>(q - r)) == 0.5) r = q < 0 ? std::ceil(q) : std::floor(q);
  return static_cast<std::int64_t>(r);
}

// Euclidean reduction with steps of size `step` (1 or 2). Returns the word of
// an element with homology +-m, or throws if `step` = 2 and m is not level 2.
std::vector<GeneratorId> decompose(Matrix m, int step) {
  std::vector<GeneratorId> word;
  auto record = [&](Move::Kind kind, std::int64_t count, std::int64_t unit) {
    for (std::int64_t i = 0; i < count; ++i) {
      apply_move(m, Move{kind, unit});
      const auto w = unit_inverse_word(kind, unit);
      word.insert(word.end(), w.begin(), w.end());
    }
  };
  // At most 2^63 per entry; each pass strictly shrinks max(|a|, |c|).
  while (m[1][0] != 0) {
    const std::int64_t a = m[0][0];
    const std::int64_t c = m[1][0];
    if (a == 0) {
      if (step != 1) throw std::invalid_argument("not in the level-2 subgroup");
      record(Move::SwapRows, 1, 0);
      continue;
    }
    if (step == 1) {
      if (std::llabs(a) >= std::llabs(c)) {
        const std::int64_t q = a / c;
        record(Move::RowZeroPlusRowOne, std::llabs(q), q > 0 ? -1 : 1);
      } else {
        const std::int64_t q = c / a;
        record(Move::RowOnePlusRowZero, std::llabs(q), q > 0 ? -1 : 1);
      }
    } else {
      if ((a % 2 == 0) || (c % 2 != 0)) throw std::invalid_argument("not in the level-2 subgroup");
      if (std::llabs(a) > std::llabs(c)) {
        const std::int64_t q = nearest_quotient(a, 2 * c);
        record(Move::RowZeroPlusRowOne, std::llabs(q), q > 0 ? -2 : 2);
      } else {
        const std::int64_t q = nearest_quotient(c, 2 * a);
        if (q == 0) throw std::logic_error("level-2 reduction stalled");
        record(Move::RowOnePlusRowZero, std::llabs(q), q > 0 ? -2 : 2);
      }
    }
  }
  // m = +-[[1, b], [0, +-1]]
  if (m[0][0] < 0)
    for (auto& row : m)
      for (auto& v : row) v = -v;
  if (m[0][0] != 1) throw std::logic_error("first column not primitive");
  if (m[1][1] == -1) record(Move::NegateRowOne, 1, 0);
  const std::int64_t b = m[0][1];
  if (b % step != 0) throw std::invalid_argument("not in the level-2 subgroup");
  if (b != 0) record(Move::RowZeroPlusRowOne, std::llabs(b) / step, b > 0 ? -step : step);
  return word;
}

GammaElement with_signs(std::vector<GeneratorId> word, SignPair s) {
  if (s.x && s.y)
    word.push_back(GeneratorId::Sigma3);
  else if (s.x)
    word.push_back(GeneratorId::Sigma2);
  else if (s.y)
    word.push_back(GeneratorId::Sigma1);
  return GammaElement::from_word(word);
}

}  // namespace

GammaElement from_gl2z(const Gl2zClass& m, SignPair s) {
  GammaElement e = with_signs(decompose(m.matrix(), 1), s);
  if (!(e.pgl() == m) || !(e.signs() == s)) throw std::logic_error("from_gl2z produced the wrong normal form");
  return e;
}

GammaElement from_gl2z(const Gl2zClass::Matrix& m, SignPair s) { return from_gl2z(Gl2zClass(m), s); }

std::optional<GammaElement> level_two_word(const GammaElement& g) {
  if (!in_level_two(g)) return std::nullopt;
  GammaElement e = with_signs(decompose(g.pgl().matrix(), 2), g.signs());
  if (!e.same_normal_form(g)) throw std::logic_error("level-2 decomposition produced the wrong normal form");
  return e;
}

GammaElement random_element(std::size_t length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, kAllGenerators.size() - 1);
  std::vector<GeneratorId> word(length);
  for (auto& g : word) g = kAllGenerators[pick(rng)];
  return GammaElement::from_word(word);
}

std::vector<GammaElement> enumerate_nontrivial(const std::vector<GeneratorId>& alphabet, std::size_t max_length) {
  using Key = std::tuple<Matrix, std::uint8_t, std::uint8_t>;
  std::map<Key, bool> seen;
  auto key = [](const GammaElement& e) { return Key{e.pgl().matrix(), e.signs().x, e.signs().y}; };
  std::vector<GammaElement> frontier{GammaElement()};
  seen[key(frontier.front())] = true;
  std::vector<GammaElement> out;
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<GammaElement> next;
    for (const auto& e : frontier) {
      for (auto g : alphabet) {
        GammaElement w = compose(e, GammaElement::generator(g));
        if (seen.emplace(key(w), true).second) {
          out.push_back(w);
          next.push_back(std::move(w));
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace charvar
