#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "charvar/character.hpp"

namespace charvar {

/// Named elements of the automorphism group of kappa.
///
/// Sigma1..3 flip the signs of two coordinates; P* permute coordinates;
/// Qx, Qy, Qz are the quadratic reflections; TauX, TauY the Dehn twists;
/// Nu = P12 o Qz; Epsilon is the elliptic involution (trivial action).
enum class GeneratorId : std::uint8_t {
  Sigma1,
  Sigma2,
  Sigma3,
  P12,
  P13,
  P23,
  P123,
  P132,
  Qx,
  Qy,
  Qz,
  TauX,
  TauY,
  Nu,
  Epsilon,
};

inline constexpr std::array<GeneratorId, 15> kAllGenerators{
    GeneratorId::Sigma1, GeneratorId::Sigma2, GeneratorId::Sigma3, GeneratorId::P12,  GeneratorId::P13,
    GeneratorId::P23,    GeneratorId::P123,   GeneratorId::P132,   GeneratorId::Qx,   GeneratorId::Qy,
    GeneratorId::Qz,     GeneratorId::TauX,   GeneratorId::TauY,   GeneratorId::Nu,   GeneratorId::Epsilon,
};

/// Generators of the level-2 subgroup: the reflections and the sign changes.
inline constexpr std::array<GeneratorId, 6> kLevelTwoGenerators{
    GeneratorId::Qx, GeneratorId::Qy, GeneratorId::Qz, GeneratorId::Sigma1, GeneratorId::Sigma2, GeneratorId::Sigma3,
};

std::string_view mnemonic(GeneratorId g);
GeneratorId parse_generator(std::string_view name);
bool is_sign_change(GeneratorId g);

/// Polynomial action of a generator, in place. T needs +, -, *.
template <class T>
void act(GeneratorId g, T& x, T& y, T& z) {
  switch (g) {
    case GeneratorId::Sigma1:
      y = -y;
      z = -z;
      return;
    case GeneratorId::Sigma2:
      x = -x;
      z = -z;
      return;
    case GeneratorId::Sigma3:
      x = -x;
      y = -y;
      return;
    case GeneratorId::P12:
      std::swap(x, y);
      return;
    case GeneratorId::P13:
      std::swap(x, z);
      return;
    case GeneratorId::P23:
      std::swap(y, z);
      return;
    case GeneratorId::P123: {  // (x, y, z) -> (z, x, y)
      T t = z;
      z = y;
      y = x;
      x = t;
      return;
    }
    case GeneratorId::P132: {  // (x, y, z) -> (y, z, x)
      T t = x;
      x = y;
      y = z;
      z = t;
      return;
    }
    case GeneratorId::Qx:
      x = y * z - x;
      return;
    case GeneratorId::Qy:
      y = x * z - y;
      return;
    case GeneratorId::Qz:
      z = x * y - z;
      return;
    case GeneratorId::TauX: {  // (x, y, z) -> (x, xy - z, y)
      T t = x * y - z;
      z = y;
      y = t;
      return;
    }
    case GeneratorId::TauY: {  // (x, y, z) -> (xy - z, y, x)
      T t = x * y - z;
      z = x;
      x = t;
      return;
    }
    case GeneratorId::Nu: {  // (x, y, z) -> (y, x, xy - z)
      z = x * y - z;
      std::swap(x, y);
      return;
    }
    case GeneratorId::Epsilon:
      return;
  }
}

/// Class of a unimodular integer matrix modulo +-I.
///
/// Stored as the representative whose first row has its first nonzero entry
/// positive. Arithmetic throws std::overflow_error on int64 overflow.
class Gl2zClass {
 public:
  using Matrix = std::array<std::array<std::int64_t, 2>, 2>;

  Gl2zClass() : m_{{{1, 0}, {0, 1}}} {}
  /// Throws std::invalid_argument unless |det m| = 1.
  explicit Gl2zClass(const Matrix& m);

  const Matrix& matrix() const { return m_; }
  std::int64_t det() const;
  bool is_identity() const;

  /// Reduction mod 2 as a permutation of P^1(Z/2) = {(1,0), (0,1), (1,1)}.
  /// perm[i] is the image of point i (0-based).
  std::array<int, 3> mod2_permutation() const;

  friend Gl2zClass operator*(const Gl2zClass& a, const Gl2zClass& b);
  friend bool operator==(const Gl2zClass& a, const Gl2zClass& b) { return a.m_ == b.m_; }

  std::string str() const;

 private:
  Matrix m_;
};

/// Element of Z/2 + Z/2 as the pair (eps_X, eps_Y): eps = 1 negates rho(X)
/// resp. rho(Y). Sigma1 = (0,1), Sigma2 = (1,0), Sigma3 = (1,1).
struct SignPair {
  std::uint8_t x = 0;
  std::uint8_t y = 0;

  bool is_zero() const { return x == 0 && y == 0; }
  friend bool operator==(const SignPair&, const SignPair&) = default;
};

/// An element of Gamma = PGL(2,Z) x| (Z/2 + Z/2): a generator word plus its
/// semidirect normal form. The element acts as A(pgl) o sigma(signs).
///
/// Words read like function composition: the last letter acts first.
class GammaElement {
 public:
  GammaElement() = default;
  static GammaElement generator(GeneratorId g);
  static GammaElement from_word(const std::vector<GeneratorId>& word);
  /// Whitespace-separated mnemonics, e.g. "Qz TauX Sigma1".
  static GammaElement parse(std::string_view text);

  const std::vector<GeneratorId>& word() const { return word_; }
  const Gl2zClass& pgl() const { return pgl_; }
  SignPair signs() const { return signs_; }

  bool is_identity() const { return pgl_.is_identity() && signs_.is_zero(); }
  bool same_normal_form(const GammaElement& o) const { return pgl_ == o.pgl_ && signs_ == o.signs_; }

  std::string word_string() const;
  /// {"m":[[a,b],[c,d]],"signs":[s1,s2]}
  std::string normal_form_json() const;

  friend GammaElement compose(const GammaElement& g, const GammaElement& h);

 private:
  std::vector<GeneratorId> word_;
  Gl2zClass pgl_;
  SignPair signs_;
};

/// g o h: h acts first.
GammaElement compose(const GammaElement& g, const GammaElement& h);
GammaElement inverse(const GammaElement& g);

Character apply(GeneratorId g, const Character& c);
Character apply(const GammaElement& g, const Character& c);

Gl2zClass homology(GeneratorId g);
inline const Gl2zClass& homology(const GammaElement& g) { return g.pgl(); }
SignPair generator_signs(GeneratorId g);

/// Image in GL(2, Z/2) = S3 as a permutation of {0, 1, 2}.
std::array<int, 3> s3_image(GeneratorId g);
std::array<int, 3> s3_image(const GammaElement& g);
bool in_level_two(const GammaElement& g);

/// An element with normal form (m, s). The PGL part is a word in TauX, TauY,
/// Qz and P12 found by the Euclidean algorithm on the first column.
GammaElement from_gl2z(const Gl2zClass& m, SignPair s);
GammaElement from_gl2z(const Gl2zClass::Matrix& m, SignPair s);

/// For level-2 elements, an equivalent word in Qx, Qy, Qz and the sign
/// changes only; nullopt otherwise.
std::optional<GammaElement> level_two_word(const GammaElement& g);

/// Uniform word of the given length over all fifteen generators.
GammaElement random_element(std::size_t length, std::uint64_t seed);

/// All words of length <= max_length over `alphabet` whose normal form is not
/// the identity, one representative per distinct normal form.
std::vector<GammaElement> enumerate_nontrivial(const std::vector<GeneratorId>& alphabet, std::size_t max_length);

}  // namespace charvar
