#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "charvar/character.hpp"
#include "charvar/modular_group.hpp"

namespace charvar {

/// One syllable g^e of a free-group word, g in {'X', 'Y'}, e != 0.
struct Syllable {
  char gen = 'X';
  long exp = 1;

  friend bool operator==(const Syllable&, const Syllable&) = default;
};

/// A freely reduced word in the free group <X, Y>.
class FreeWord {
 public:
  FreeWord() = default;
  /// Freely reduces the input: merges equal neighbours, drops zero exponents.
  explicit FreeWord(const std::vector<Syllable>& syllables);

  /// "X Y^-2 X^3"; also accepts lowercase x, y for inverses ("x" = X^-1).
  static FreeWord parse(std::string_view text);
  static FreeWord commutator();  // X Y X^-1 Y^-1

  const std::vector<Syllable>& syllables() const { return s_; }
  bool empty() const { return s_.empty(); }
  /// Number of letters, counted with multiplicity.
  long length() const;

  FreeWord inverse() const;
  /// Cyclic rotation by k letters (not syllables); w = u v  ->  v u with |u| = k.
  FreeWord rotate(long k) const;
  FreeWord operator*(const FreeWord& o) const;

  std::string str() const;

  friend bool operator==(const FreeWord&, const FreeWord&) = default;

 private:
  std::vector<Syllable> s_;
};

/// Random freely reduced word with `letters` letters, exponents +-1 before reduction.
FreeWord random_free_word(long letters, std::uint64_t seed);

/// Sparse integer polynomial in x, y, z. Arithmetic throws std::overflow_error
/// if a coefficient leaves int64.
class TracePolynomial {
 public:
  using Monomial = std::array<int, 3>;

  TracePolynomial() = default;
  static TracePolynomial constant(std::int64_t c);
  /// 0 -> x, 1 -> y, 2 -> z.
  static TracePolynomial variable(int i);

  const std::map<Monomial, std::int64_t>& terms() const { return terms_; }
  std::int64_t coefficient(const Monomial& m) const;
  int degree() const;

  TracePolynomial& operator+=(const TracePolynomial& o);
  TracePolynomial& operator-=(const TracePolynomial& o);
  friend TracePolynomial operator+(TracePolynomial a, const TracePolynomial& b) { return a += b; }
  friend TracePolynomial operator-(TracePolynomial a, const TracePolynomial& b) { return a -= b; }
  friend TracePolynomial operator*(const TracePolynomial& a, const TracePolynomial& b);
  friend bool operator==(const TracePolynomial&, const TracePolynomial&) = default;

  template <class T>
  T evaluate(const T& x, const T& y, const T& z) const {
    T sum = T(0);
    for (const auto& [m, c] : terms_) {
      T term = T(static_cast<double>(c));
      for (int k = 0; k < m[0]; ++k) term = term * x;
      for (int k = 0; k < m[1]; ++k) term = term * y;
      for (int k = 0; k < m[2]; ++k) term = term * z;
      sum = sum + term;
    }
    return sum;
  }
  Rational evaluate_exact(const Rational& x, const Rational& y, const Rational& z) const;
  Scalar evaluate(const Character& c) const;

  /// Degree-lexicographic, highest degree first: "-x*y*z + x^2 + y^2 + z^2 - 2".
  std::string str() const;

 private:
  void add_term(const Monomial& m, std::int64_t c);
  std::map<Monomial, std::int64_t> terms_;
};

/// Which syllable the rewriting touches first. Both orders give the same
/// polynomial; the second exists so that this can be checked.
enum class ReductionOrder { HighestExponentFirst, RightmostFirst };

/// f_w with tr(rho(w)) = f_w(tr X, tr Y, tr XY).
TracePolynomial trace_polynomial(const FreeWord& w, ReductionOrder order = ReductionOrder::HighestExponentFirst);

/// Controls the shared memo table used by trace_polynomial.
void set_trace_memo_enabled(bool enabled);
void clear_trace_memo();
std::size_t trace_memo_size();

/// Trace of w under rho(X) = [[x,-1],[1,0]], rho(Y) = [[0,1/zeta],[-zeta,y]]
/// where zeta + 1/zeta = z. By default zeta is the root with |zeta| >= 1
/// (ties: Im zeta >= 0); `other_root` takes 1/zeta instead.
std::complex<double> numeric_trace(const FreeWord& w, const Character& c, bool other_root = false);
std::complex<double> numeric_trace(const FreeWord& w, double x, double y, double z, bool other_root = false);

/// (xi + 1/xi, eta + 1/eta, xi eta + 1/(xi eta)). Throws std::invalid_argument on zero.
Character reducible_param(const Scalar& xi, const Scalar& eta);

/// Both sides of
///   kappa(xi+1/xi, eta+1/eta, zeta+1/zeta) - 2
///     = -(xi eta zeta)^-1 (1 - xi eta zeta)(1 - eta zeta/xi)(1 - xi zeta/eta)(1 - xi eta/zeta)
/// over the rationals. Both sides vanish when zeta = xi eta.
std::array<Rational, 2> factorization_sides(Rational xi, Rational eta, Rational zeta);

/// Checks the identity above. Requires zeta == xi eta (std::invalid_argument otherwise).
bool factorization_check(Rational xi, Rational eta, Rational zeta);

/// (2 cos 2 pi a, 2 cos 2 pi b, 2 cos 2 pi (a + b)): the reducible characters
/// with unit eigenvalues exp(2 pi i a), exp(2 pi i b).
Character torus_cover(double a, double b);

/// Exponent matrix E of the monomial map on eigenvalues that torus_cover
/// intertwines with an element of homology class m: E = (m^-1)^T, defined up
/// to sign.
Gl2zClass::Matrix torus_exponent_matrix(const Gl2zClass& m);

}  // namespace charvar
