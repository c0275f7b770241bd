#include "charvar/scalar.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <string>

namespace charvar {

std::string_view to_string(Mode m) { return m == Mode::Exact ? "exact" : "float"; }

Mode parse_mode(std::string_view text) {
  if (text == "exact") return Mode::Exact;
  if (text == "float") return Mode::Float;
  throw ParseError("unknown arithmetic mode '" + std::string(text) + "'");
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

// [-+]digits[.digits][(e|E)[-+]digits] as an exact rational.
Rational parse_decimal(std::string_view s) {
  const std::string original(s);
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text[0] == '-' || exp_text[0] == '+')) {
      exp_negative = exp_text[0] == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) throw ParseError("bad exponent in '" + original + "'");
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)) ||
        (int_part.empty() && frac_part.empty()))
      throw ParseError("bad decimal '" + original + "'");
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) throw ParseError("bad number '" + original + "'");
    digits = std::string(s);
  }
  mpz_class mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  Rational q = exponent >= 0 ? Rational(mantissa * scale) : Rational(mantissa, scale);
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view s) {
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return parse_decimal(s);
  Rational num = parse_decimal(s.substr(0, slash));
  Rational den = parse_decimal(s.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
  Rational q = num / den;
  q.canonicalize();
  return q;
}

[[noreturn]] void mismatch() { throw ModeMismatch("exact and float scalars mixed in one computation"); }

}  // namespace

Scalar Scalar::integer(long v, Mode m) {
  if (m == Mode::Exact) return Scalar(Rational(v));
  return Scalar(static_cast<double>(v));
}

Scalar Scalar::parse(std::string_view text, Mode m) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty number");
  Rational q = parse_rational(text);
  if (m == Mode::Exact) return Scalar(std::move(q));
  if (text.find('/') == std::string_view::npos) {
    double d = 0.0;
    auto [ptr, ec] = std::from_chars(text.data() + (text.front() == '+' ? 1 : 0), text.data() + text.size(), d);
    if (ec == std::errc() && ptr == text.data() + text.size()) return Scalar(d);
  }
  return Scalar(q.get_d());
}

const Rational& Scalar::rational() const {
  if (!is_exact()) throw ModeMismatch("rational() requested from a float scalar");
  return std::get<Rational>(value_);
}

double Scalar::to_double() const {
  if (is_exact()) return std::get<Rational>(value_).get_d();
  return std::get<double>(value_);
}

std::string Scalar::str() const {
  if (is_exact()) return rational_to_string(std::get<Rational>(value_));
  return double_to_string(std::get<double>(value_));
}

Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(Rational(-std::get<Rational>(value_)));
  return Scalar(-std::get<double>(value_));
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (mode() != o.mode()) mismatch();
  if (is_exact())
    std::get<Rational>(value_) += std::get<Rational>(o.value_);
  else
    std::get<double>(value_) += std::get<double>(o.value_);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (mode() != o.mode()) mismatch();
  if (is_exact())
    std::get<Rational>(value_) -= std::get<Rational>(o.value_);
  else
    std::get<double>(value_) -= std::get<double>(o.value_);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (mode() != o.mode()) mismatch();
  if (is_exact())
    std::get<Rational>(value_) *= std::get<Rational>(o.value_);
  else
    std::get<double>(value_) *= std::get<double>(o.value_);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (mode() != o.mode()) mismatch();
  if (is_exact()) {
    if (std::get<Rational>(o.value_) == 0) throw std::domain_error("division by zero");
    std::get<Rational>(value_) /= std::get<Rational>(o.value_);
  } else {
    std::get<double>(value_) /= std::get<double>(o.value_);
  }
  return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.mode() != b.mode()) return false;
  if (a.is_exact()) return std::get<Rational>(a.value_) == std::get<Rational>(b.value_);
  return std::get<double>(a.value_) == std::get<double>(b.value_);
}

int compare(const Scalar& a, const Scalar& b, bool* near) {
  if (a.mode() != b.mode()) mismatch();
  if (a.is_exact()) {
    const int c = cmp(a.rational(), b.rational());
    if (near) *near = c == 0;
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  const double d = a.to_double() - b.to_double();
  const bool close = std::fabs(d) <= kFloatTolerance;
  if (near) *near = close;
  if (close) return 0;
  return d < 0 ? -1 : 1;
}

int compare(const Scalar& a, long b, bool* near) { return compare(a, Scalar::integer_like(a, b), near); }

int sign(const Scalar& a, bool* near) { return compare(a, 0L, near); }

Scalar abs(const Scalar& a) { return sign(a) < 0 ? -a : a; }

std::string rational_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str(10);
  return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

std::string double_to_string(double d) {
  if (std::isnan(d)) return "nan";
  if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), d);
  (void)ec;
  return std::string(buf.data(), ptr);
}

}  // namespace charvar
