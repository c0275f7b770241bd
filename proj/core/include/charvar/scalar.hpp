#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace charvar {

using Rational = mpq_class;

/// Arithmetic mode of a computation. A whole computation runs in one mode.
enum class Mode { Exact, Float };

/// Absolute tolerance used by every float-mode comparison.
inline constexpr double kFloatTolerance = 1e-9;

std::string_view to_string(Mode m);
Mode parse_mode(std::string_view text);

/// Thrown when exact and float scalars meet in one expression.
class ModeMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Thrown for malformed numeric text.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Element of the coordinate field: an exact rational or a 64-bit float.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  explicit Scalar(Rational q) : value_(std::move(q)) { std::get<Rational>(value_).canonicalize(); }
  explicit Scalar(double d) : value_(d) {}
  // Integer literals must pick a mode explicitly via integer().
  Scalar(int) = delete;
  Scalar(long) = delete;

  /// Integer constant in the given mode.
  static Scalar integer(long v, Mode m);
  /// Integer constant in the mode of `like`.
  static Scalar integer_like(const Scalar& like, long v) { return integer(v, like.mode()); }

  /// Accepts integers, "p/q" rationals and decimals (with optional exponent).
  /// Decimals are converted exactly in exact mode.
  static Scalar parse(std::string_view text, Mode m);

  Mode mode() const { return value_.index() == 0 ? Mode::Exact : Mode::Float; }
  bool is_exact() const { return mode() == Mode::Exact; }

  const Rational& rational() const;
  double to_double() const;

  /// "p/q" or "p" in exact mode; shortest round-trip decimal in float mode.
  std::string str() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Structural equality: same mode and identical value. Never tolerant.
  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  std::variant<Rational, double> value_;
};

/// Three-way comparison. In float mode values within kFloatTolerance compare
/// equal and `near` (if given) is set; in exact mode `near` is set only on
/// true equality.
int compare(const Scalar& a, const Scalar& b, bool* near = nullptr);
int compare(const Scalar& a, long b, bool* near = nullptr);

/// Sign with the float tolerance applied.
int sign(const Scalar& a, bool* near = nullptr);

Scalar abs(const Scalar& a);

std::string rational_to_string(const Rational& q);
std::string double_to_string(double d);

}  // namespace charvar
