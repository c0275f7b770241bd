#include "charvar/trace_calculus.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <mutex>
#include <numbers>
#include <random>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace charvar {

namespace {

using Syllables = std::vector<Syllable>;

Syllables free_reduce(const Syllables& in) {
  Syllables out;
  for (const auto& s : in) {
    if (s.exp == 0) continue;
    if (!out.empty() && out.back().gen == s.gen) {
      out.back().exp += s.exp;
      if (out.back().exp == 0) out.pop_back();
    } else {
      out.push_back(s);
    }
  }
  return out;
}

Syllables cyclic_reduce(Syllables w) {
  w = free_reduce(w);
  while (w.size() >= 2 && w.front().gen == w.back().gen) {
    w.front().exp += w.back().exp;
    w.pop_back();
    if (w.front().exp == 0) w.erase(w.begin());
    w = free_reduce(w);
  }
  return w;
}

std::vector<std::pair<char, int>> letters_of(const Syllables& w) {
  std::vector<std::pair<char, int>> out;
  for (const auto& s : w)
    for (long k = 0; k < std::labs(s.exp); ++k) out.emplace_back(s.gen, s.exp > 0 ? 1 : -1);
  return out;
}

std::string key_of(const Syllables& w) {
  std::string s;
  for (const auto& syl : w) {
    s += syl.gen;
    s += std::to_string(syl.exp);
    s += ',';
  }
  return s;
}

// Lexicographically least rotation by whole syllables; the trace is a class function.
std::string cyclic_key(const Syllables& w) {
  std::string best;
  for (std::size_t r = 0; r < w.size(); ++r) {
    Syllables rot(w.begin() + static_cast<long>(r), w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + static_cast<long>(r));
    std::string k = key_of(rot);
    if (r == 0 || k < best) best = std::move(k);
  }
  return best;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("trace polynomial coefficient overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("trace polynomial coefficient overflow");
  return r;
}

}  // namespace

// ---------------------------------------------------------------- FreeWord

FreeWord::FreeWord(const std::vector<Syllable>& syllables) {
  for (const auto& s : syllables)
    if (s.gen != 'X' && s.gen != 'Y') throw std::invalid_argument("free word generators are X and Y");
  s_ = free_reduce(syllables);
}

FreeWord FreeWord::parse(std::string_view text) {
  std::vector<Syllable> out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (text.substr(i) == "1") return {};
  while (i < text.size()) {
    const char c = text[i];
    Syllable s;
    if (c == 'X' || c == 'Y') {
      s.gen = c;
    } else if (c == 'x' || c == 'y') {
      s.gen = static_cast<char>(std::toupper(c));
      s.exp = -1;
    } else {
      throw ParseError("unexpected character in word: '" + std::string(1, c) + "'");
    }
    ++i;
    if (i < text.size() && text[i] == '^') {
      ++i;
      long e = 0;
      const char* first = text.data() + i;
      const char* last = text.data() + text.size();
      if (first != last && *first == '+') ++first;
      auto [p, ec] = std::from_chars(first, last, e);
      if (ec != std::errc() || p == first) throw ParseError("bad exponent in word: " + std::string(text));
      i = static_cast<std::size_t>(p - text.data());
      s.exp *= e;
    }
    out.push_back(s);
    skip();
  }
  return FreeWord(out);
}

FreeWord FreeWord::commutator() { return FreeWord({{'X', 1}, {'Y', 1}, {'X', -1}, {'Y', -1}}); }

long FreeWord::length() const {
  long n = 0;
  for (const auto& s : s_) n += std::labs(s.exp);
  return n;
}

FreeWord FreeWord::inverse() const {
  std::vector<Syllable> out(s_.rbegin(), s_.rend());
  for (auto& s : out) s.exp = -s.exp;
  return FreeWord(out);
}

FreeWord FreeWord::rotate(long k) const {
  auto letters = letters_of(s_);
  if (letters.empty()) return *this;
  const long n = static_cast<long>(letters.size());
  k = ((k % n) + n) % n;
  std::rotate(letters.begin(), letters.begin() + k, letters.end());
  std::vector<Syllable> out;
  for (const auto& [g, e] : letters) out.push_back({g, e});
  return FreeWord(out);
}

FreeWord FreeWord::operator*(const FreeWord& o) const {
  std::vector<Syllable> out = s_;
  out.insert(out.end(), o.s_.begin(), o.s_.end());
  return FreeWord(out);
}

std::string FreeWord::str() const {
  if (s_.empty()) return "1";
  std::string out;
  for (const auto& s : s_) {
    if (!out.empty()) out += ' ';
    out += s.gen;
    if (s.exp != 1) out += "^" + std::to_string(s.exp);
  }
  return out;
}

FreeWord random_free_word(long letters, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, 3);
  std::vector<Syllable> out;
  int prev = -1;
  for (long k = 0; k < letters; ++k) {
    int l;
    do {
      l = pick(rng);
    } while (prev >= 0 && l == (prev ^ 1));  // 0/1 = X^+-1, 2/3 = Y^+-1
    out.push_back({l < 2 ? 'X' : 'Y', (l & 1) ? -1L : 1L});
    prev = l;
  }
  return FreeWord(out);
}

// --------------------------------------------------------- TracePolynomial

TracePolynomial TracePolynomial::constant(std::int64_t c) {
  TracePolynomial p;
  p.add_term({0, 0, 0}, c);
  return p;
}

TracePolynomial TracePolynomial::variable(int i) {
  TracePolynomial p;
  Monomial m{0, 0, 0};
  m.at(static_cast<std::size_t>(i)) = 1;
  p.add_term(m, 1);
  return p;
}

std::int64_t TracePolynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

int TracePolynomial::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[0] + m[1] + m[2]);
  return d;
}

void TracePolynomial::add_term(const Monomial& m, std::int64_t c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second = checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

TracePolynomial& TracePolynomial::operator+=(const TracePolynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

TracePolynomial& TracePolynomial::operator-=(const TracePolynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, checked_mul(c, -1));
  return *this;
}

TracePolynomial operator*(const TracePolynomial& a, const TracePolynomial& b) {
  TracePolynomial r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_)
      r.add_term({ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]}, checked_mul(ca, cb));
  return r;
}

Rational TracePolynomial::evaluate_exact(const Rational& x, const Rational& y, const Rational& z) const {
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    mpz_class cz;
    mpz_set_si(cz.get_mpz_t(), c);
    Rational term(cz);
    for (int k = 0; k < m[0]; ++k) term *= x;
    for (int k = 0; k < m[1]; ++k) term *= y;
    for (int k = 0; k < m[2]; ++k) term *= z;
    sum += term;
  }
  return sum;
}

Scalar TracePolynomial::evaluate(const Character& c) const {
  if (c.mode() == Mode::Exact) return Scalar(evaluate_exact(c.x().rational(), c.y().rational(), c.z().rational()));
  return Scalar(evaluate<double>(c.x().to_double(), c.y().to_double(), c.z().to_double()));
}

std::string TracePolynomial::str() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Monomial, std::int64_t>> sorted(terms_.begin(), terms_.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    const int da = a.first[0] + a.first[1] + a.first[2];
    const int db = b.first[0] + b.first[1] + b.first[2];
    if (da != db) return da > db;
    return a.first > b.first;
  });
  static constexpr const char* kNames[3] = {"x", "y", "z"};
  std::string out;
  bool first = true;
  for (const auto& [m, c] : sorted) {
    std::string mono;
    for (int v = 0; v < 3; ++v) {
      if (m[v] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += kNames[v];
      if (m[v] > 1) mono += "^" + std::to_string(m[v]);
    }
    const bool neg = c < 0;
    const std::string mag = std::to_string(c);
    const std::string digits = neg ? mag.substr(1) : mag;
    std::string body;
    if (mono.empty())
      body = digits;
    else if (digits == "1")
      body = mono;
    else
      body = digits + "*" + mono;
    if (first)
      out += (neg ? "-" : "") + body;
    else
      out += (neg ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

// ------------------------------------------------------- trace_polynomial

namespace {

std::atomic<bool> g_memo_enabled{true};
std::shared_mutex g_memo_mutex;
std::unordered_map<std::string, TracePolynomial> g_memo;

TracePolynomial chebyshev(const TracePolynomial& t, long n) {
  TracePolynomial prev = TracePolynomial::constant(2);
  if (n == 0) return prev;
  TracePolynomial cur = t;
  for (long k = 1; k < n; ++k) {
    TracePolynomial next = t * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

TracePolynomial gen_var(char g) { return TracePolynomial::variable(g == 'X' ? 0 : 1); }

TracePolynomial trace_rec(Syllables w, ReductionOrder order);

TracePolynomial trace_uncached(const Syllables& w, ReductionOrder order) {
  // Cayley-Hamilton on a syllable with |e| >= 2: A^e = tr(A) A^(e-1) - A^(e-2).
  std::size_t pick = w.size();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (std::labs(w[i].exp) < 2) continue;
    if (order == ReductionOrder::RightmostFirst || pick == w.size() || std::labs(w[i].exp) > std::labs(w[pick].exp))
      pick = i;
  }
  if (pick < w.size()) {
    const long s = w[pick].exp > 0 ? 1 : -1;
    Syllables w1 = w;
    Syllables w2 = w;
    w1[pick].exp -= s;
    w2[pick].exp -= 2 * s;
    return gen_var(w[pick].gen) * trace_rec(std::move(w1), order) - trace_rec(std::move(w2), order);
  }

  // All exponents +-1. Rotate an inverse letter B^-1 to the end:
  // tr(U B^-1) = tr(U) tr(B) - tr(U B).
  pick = w.size();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].exp > 0) continue;
    if (pick == w.size() || order == ReductionOrder::RightmostFirst) pick = i;
  }
  if (pick < w.size()) {
    Syllables rot(w.begin() + static_cast<long>(pick) + 1, w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + static_cast<long>(pick));
    const char b = w[pick].gen;
    Syllables ub = rot;
    ub.push_back({b, 1});
    return trace_rec(rot, order) * gen_var(b) - trace_rec(std::move(ub), order);
  }

  // (XY)^k up to rotation.
  return chebyshev(TracePolynomial::variable(2), static_cast<long>(w.size() / 2));
}

TracePolynomial trace_rec(Syllables w, ReductionOrder order) {
  w = cyclic_reduce(std::move(w));
  if (w.empty()) return TracePolynomial::constant(2);
  if (w.size() == 1) return chebyshev(gen_var(w[0].gen), std::labs(w[0].exp));

  const bool memo = g_memo_enabled.load(std::memory_order_relaxed);
  std::string key;
  if (memo) {
    key = (order == ReductionOrder::RightmostFirst ? "R:" : "H:") + cyclic_key(w);
    std::shared_lock lock(g_memo_mutex);
    auto it = g_memo.find(key);
    if (it != g_memo.end()) return it->second;
  }
  TracePolynomial result = trace_uncached(w, order);
  if (memo) {
    std::unique_lock lock(g_memo_mutex);
    g_memo.emplace(std::move(key), result);
  }
  return result;
}

}  // namespace

TracePolynomial trace_polynomial(const FreeWord& w, ReductionOrder order) { return trace_rec(w.syllables(), order); }

void set_trace_memo_enabled(bool enabled) { g_memo_enabled.store(enabled); }

void clear_trace_memo() {
  std::unique_lock lock(g_memo_mutex);
  g_memo.clear();
}

std::size_t trace_memo_size() {
  std::shared_lock lock(g_memo_mutex);
  return g_memo.size();
}

// ----------------------------------------------------------- numeric oracle

namespace {

using Cx = std::complex<double>;
using Mat = std::array<Cx, 4>;  // row-major a b c d

Mat mul(const Mat& p, const Mat& q) {
  return {p[0] * q[0] + p[1] * q[2], p[0] * q[1] + p[1] * q[3], p[2] * q[0] + p[3] * q[2], p[2] * q[1] + p[3] * q[3]};
}

Mat inv(const Mat& p) { return {p[3], -p[1], -p[2], p[0]}; }

}  // namespace

std::complex<double> numeric_trace(const FreeWord& w, double x, double y, double z, bool other_root) {
  const Cx disc = std::sqrt(Cx(z * z - 4.0, 0.0));
  Cx zeta1 = (z + disc) / 2.0;
  Cx zeta2 = (z - disc) / 2.0;
  const double a1 = std::abs(zeta1);
  const double a2 = std::abs(zeta2);
  Cx zeta = zeta1;
  if (a2 > a1 + 1e-15 || (std::abs(a1 - a2) <= 1e-15 && zeta2.imag() > zeta1.imag())) zeta = zeta2;
  if (other_root) zeta = 1.0 / zeta;

  const Mat X{Cx(x), Cx(-1), Cx(1), Cx(0)};
  const Mat Y{Cx(0), 1.0 / zeta, -zeta, Cx(y)};
  Mat acc{Cx(1), Cx(0), Cx(0), Cx(1)};
  for (const auto& s : w.syllables()) {
    const Mat base = s.gen == 'X' ? X : Y;
    const Mat step = s.exp > 0 ? base : inv(base);
    for (long k = 0; k < std::labs(s.exp); ++k) acc = mul(acc, step);
  }
  return acc[0] + acc[3];
}

std::complex<double> numeric_trace(const FreeWord& w, const Character& c, bool other_root) {
  const auto d = c.to_doubles();
  return numeric_trace(w, d[0], d[1], d[2], other_root);
}

// ------------------------------------------------------------ reducibles

Character reducible_param(const Scalar& xi, const Scalar& eta) {
  if (sign(xi) == 0 || sign(eta) == 0) throw std::invalid_argument("reducible_param: eigenvalues must be nonzero");
  const Scalar one = Scalar::integer_like(xi, 1);
  const Scalar prod = xi * eta;
  return {xi + one / xi, eta + one / eta, prod + one / prod};
}

std::array<Rational, 2> factorization_sides(Rational xi, Rational eta, Rational zeta) {
  xi.canonicalize();
  eta.canonicalize();
  zeta.canonicalize();
  if (xi == 0 || eta == 0 || zeta == 0) throw std::invalid_argument("factorization: arguments must be nonzero");
  const Rational x = xi + 1 / xi;
  const Rational y = eta + 1 / eta;
  const Rational z = zeta + 1 / zeta;
  const Rational lhs = x * x + y * y + z * z - x * y * z - 4;
  const Rational rhs = -(1 - xi * eta * zeta) * (1 - eta * zeta / xi) * (1 - xi * zeta / eta) * (1 - xi * eta / zeta) /
                       (xi * eta * zeta);
  return {lhs, rhs};
}

bool factorization_check(Rational xi, Rational eta, Rational zeta) {
  xi.canonicalize();
  eta.canonicalize();
  zeta.canonicalize();
  if (zeta != xi * eta) throw std::invalid_argument("factorization_check requires zeta = xi * eta");
  const auto sides = factorization_sides(xi, eta, zeta);
  return sides[0] == sides[1];
}

Character torus_cover(double a, double b) {
  constexpr double tau = 2.0 * std::numbers::pi;
  return Character::floating(2.0 * std::cos(tau * a), 2.0 * std::cos(tau * b), 2.0 * std::cos(tau * (a + b)));
}

Gl2zClass::Matrix torus_exponent_matrix(const Gl2zClass& m) {
  const auto& a = m.matrix();
  const std::int64_t d = m.det();
  // inverse = d * [[a11, -a01], [-a10, a00]]; then transpose.
  return {{{d * a[1][1], -d * a[1][0]}, {-d * a[0][1], d * a[0][0]}}};
}

}  // namespace charvar
