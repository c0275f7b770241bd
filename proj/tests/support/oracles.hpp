#pragma once

// Test-side reference implementations, written without calling into the
// library so that library results can be compared against them.

#include <gmpxx.h>

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "charvar/modular_group.hpp"

namespace oracle {

using Q = mpq_class;
using Triple = std::array<Q, 3>;
using Mat = std::array<std::array<long, 2>, 2>;
using Cx = std::complex<double>;

inline Q q(long p, long d = 1) {
  Q r(p, d);
  r.canonicalize();
  return r;
}

inline Q kappa(const Q& x, const Q& y, const Q& z) { return x * x + y * y + z * z - x * y * z - 2; }
inline Q kappa(const Triple& c) { return kappa(c[0], c[1], c[2]); }

// Expansion of det [[2, z, y], [z, 2, x], [y, x, 2]] along the first row.
inline Q bilinear_det(const Triple& c) {
  const Q &x = c[0], &y = c[1], &z = c[2];
  return 2 * (4 - x * x) - z * (2 * z - x * y) + y * (z * x - 2 * y);
}

inline Q random_q(std::mt19937_64& rng, long span = 20, long max_den = 9) {
  std::uniform_int_distribution<long> num(-span, span);
  std::uniform_int_distribution<long> den(1, max_den);
  return q(num(rng), den(rng));
}

inline Triple random_triple(std::mt19937_64& rng, long span = 20, long max_den = 9) {
  return {random_q(rng, span, max_den), random_q(rng, span, max_den), random_q(rng, span, max_den)};
}

// Generator actions from the character tables.
inline Triple act(charvar::GeneratorId g, const Triple& c) {
  using G = charvar::GeneratorId;
  const Q &x = c[0], &y = c[1], &z = c[2];
  switch (g) {
    case G::Sigma1: return {x, -y, -z};
    case G::Sigma2: return {-x, y, -z};
    case G::Sigma3: return {-x, -y, z};
    case G::P12: return {y, x, z};
    case G::P13: return {z, y, x};
    case G::P23: return {x, z, y};
    case G::P123: return {z, x, y};
    case G::P132: return {y, z, x};
    case G::Qx: return {y * z - x, y, z};
    case G::Qy: return {x, x * z - y, z};
    case G::Qz: return {x, y, x * y - z};
    case G::TauX: return {x, x * y - z, y};
    case G::TauY: return {x * y - z, y, x};
    case G::Nu: return {y, x, x * y - z};
    case G::Epsilon: return c;
  }
  throw std::logic_error("unknown generator");
}

// Word acts right to left.
inline Triple act_word(const std::vector<charvar::GeneratorId>& word, Triple c) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) c = oracle::act(*it, c);
  return c;
}

// Homology classes from the generator catalog (sign changes are trivial).
inline Mat homology(charvar::GeneratorId g) {
  using G = charvar::GeneratorId;
  switch (g) {
    case G::Sigma1:
    case G::Sigma2:
    case G::Sigma3:
    case G::Epsilon: return {{{1, 0}, {0, 1}}};
    case G::P12: return {{{0, 1}, {1, 0}}};
    case G::P13: return {{{-1, 0}, {-1, 1}}};
    case G::P23: return {{{1, -1}, {0, -1}}};
    case G::P123: return {{{0, -1}, {1, -1}}};
    case G::P132: return {{{-1, 1}, {-1, 0}}};
    case G::Qx: return {{{1, 0}, {2, -1}}};
    case G::Qy: return {{{1, -2}, {0, -1}}};
    case G::Qz: return {{{1, 0}, {0, -1}}};
    case G::TauX: return {{{1, 1}, {0, 1}}};
    case G::TauY: return {{{1, 0}, {1, 1}}};
    case G::Nu: return {{{0, 1}, {-1, 0}}};
  }
  throw std::logic_error("unknown generator");
}

inline Mat mul(const Mat& a, const Mat& b) {
  Mat r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return r;
}

// Representative of {m, -m} whose first row starts with a positive entry.
inline Mat canonical(Mat m) {
  const long lead = m[0][0] != 0 ? m[0][0] : m[0][1];
  if (lead < 0)
    for (auto& row : m)
      for (auto& v : row) v = -v;
  return m;
}

inline Mat homology_word(const std::vector<charvar::GeneratorId>& word) {
  Mat m{{{1, 0}, {0, 1}}};
  for (auto g : word) m = mul(m, oracle::homology(g));
  return canonical(m);
}

inline std::vector<charvar::GeneratorId> random_word(std::mt19937_64& rng, std::size_t len) {
  std::uniform_int_distribution<std::size_t> pick(0, charvar::kAllGenerators.size() - 1);
  std::vector<charvar::GeneratorId> w(len);
  for (auto& g : w) g = charvar::kAllGenerators[pick(rng)];
  return w;
}

// SL(2, C) pair with traces x, y and tr(AB) = z:
//   A = [[x, 1], [-1, 0]],  B = [[0, -w], [1/w, y]],  w + 1/w = z.
struct Cm {
  Cx a, b, c, d;
  Cm operator*(const Cm& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Cm inv() const { return {d, -b, -c, a}; }
  Cx tr() const { return a + d; }
};

// Trace of a word written as a string over X, Y, x = X^-1, y = Y^-1.
inline Cx word_trace(const std::string& letters, double x, double y, double z) {
  const Cx zz(z, 0.0);
  const Cx w = (zz + std::sqrt(zz * zz - 4.0)) / 2.0;
  const Cm A{x, 1.0, -1.0, 0.0};
  const Cm B{0.0, -w, 1.0 / w, y};
  Cm m{1.0, 0.0, 0.0, 1.0};
  for (char ch : letters) {
    switch (ch) {
      case 'X': m = m * A; break;
      case 'x': m = m * A.inv(); break;
      case 'Y': m = m * B; break;
      case 'y': m = m * B.inv(); break;
      default: throw std::invalid_argument("bad letter");
    }
  }
  return m.tr();
}

// Library word syntax for a letter string: "XYx" -> "X Y X^-1".
inline std::string to_word_syntax(const std::string& letters) {
  std::string out;
  for (char ch : letters) {
    if (!out.empty()) out += ' ';
    out += (ch == 'X' || ch == 'x') ? "X" : "Y";
    if (ch == 'x' || ch == 'y') out += "^-1";
  }
  return out.empty() ? "1" : out;
}

inline std::string random_letters(std::mt19937_64& rng, std::size_t max_len) {
  static constexpr char kLetters[] = "XYxy";
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> pick(0, 3);
  std::string s;
  const std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) s += kLetters[pick(rng)];
  return s;
}

// Real 2x2 matrices for geometric checks.
struct Rm {
  double a, b, c, d;
  Rm operator*(const Rm& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Rm inv() const {
    const double det = a * d - b * c;
    return {d / det, -b / det, -c / det, a / det};
  }
  double tr() const { return a + d; }
};

inline double commutator_trace(const Rm& p, const Rm& q) { return (p * q * p.inv() * q.inv()).tr(); }

// Random SL(2, R) matrix: random entries rescaled to determinant 1.
// Rescaled to det 1; products of float matrices drift off SL(2).
inline Rm unit_det(const Rm& m) {
  const double s = 1.0 / std::sqrt(m.a * m.d - m.b * m.c);
  return {m.a * s, m.b * s, m.c * s, m.d * s};
}

inline Rm random_sl2(std::mt19937_64& rng, double spread = 2.0) {
  std::uniform_real_distribution<double> u(-spread, spread);
  for (;;) {
    Rm m{u(rng), u(rng), u(rng), u(rng)};
    double det = m.a * m.d - m.b * m.c;
    if (std::abs(det) < 0.1) continue;
    if (det < 0) {
      m.a = -m.a;
      m.c = -m.c;
      det = -det;
    }
    const double s = 1.0 / std::sqrt(det);
    return {m.a * s, m.b * s, m.c * s, m.d * s};
  }
}

}  // namespace oracle
