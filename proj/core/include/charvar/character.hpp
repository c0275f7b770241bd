#pragma once

#include <array>
#include <string>
#include <string_view>

#include "charvar/scalar.hpp"

namespace charvar {

/// A point (x, y, z) of the character variety: the traces of X, Y and XY.
/// All three coordinates share one arithmetic mode.
class Character {
 public:
  Character() = default;
  Character(Scalar x, Scalar y, Scalar z);

  static Character exact(Rational x, Rational y, Rational z);
  static Character exact(long x, long y, long z);
  static Character floating(double x, double y, double z);
  static Character parse(std::string_view x, std::string_view y, std::string_view z, Mode m);

  const Scalar& x() const { return c_[0]; }
  const Scalar& y() const { return c_[1]; }
  const Scalar& z() const { return c_[2]; }
  const Scalar& operator[](std::size_t i) const { return c_[i]; }
  const std::array<Scalar, 3>& coords() const { return c_; }

  Mode mode() const { return c_[0].mode(); }
  Character to_float() const;
  std::array<double, 3> to_doubles() const;

  std::string str() const;

  friend bool operator==(const Character& a, const Character& b) { return a.c_ == b.c_; }

 private:
  std::array<Scalar, 3> c_{};
};

/// x^2 + y^2 + z^2 - xyz - 2, the trace of the commutator.
Scalar kappa(const Character& c);

/// 2 + ((2z - xy)^2 - (x^2 - 4)(y^2 - 4)) / 4. Identical to kappa().
Scalar kappa_via_projection(const Character& c);

/// kappa for plain field types (double, std::complex, Rational).
template <class T>
T kappa_of(const T& x, const T& y, const T& z) {
  return x * x + y * y + z * z - x * y * z - T(2);
}

/// The symmetric matrix [[2, z, y], [z, 2, x], [y, x, 2]].
struct BilinearForm {
  std::array<std::array<Scalar, 3>, 3> b;

  Scalar determinant() const;
};

BilinearForm bilinear_form(const Character& c);

enum class FormType { Definite, Indefinite, Degenerate };
std::string_view to_string(FormType f);

FormType classify_form(const Character& c);

enum class ComponentTag {
  Su2Compact,
  TeichOctant,
  ReducibleCK,
  ReducibleC,
  SingularS0,
  ConnectedAboveTwo,
  Origin,
};

/// Component of the real level set containing a point.
///
/// `signs` is meaningful for TeichOctant (sign of each coordinate) and
/// ReducibleC (the octant of C0..C3); `index` is the i of C_i.
/// `boundary_ambiguous` is set in float mode when a decisive comparison
/// against +-2 or the level 2 fell within kFloatTolerance.
struct ComponentLabel {
  ComponentTag tag = ComponentTag::Origin;
  std::array<int, 3> signs{1, 1, 1};
  int index = 0;
  bool boundary_ambiguous = false;

  std::string name() const;

  friend bool operator==(const ComponentLabel& a, const ComponentLabel& b) {
    return a.tag == b.tag && a.signs == b.signs && a.index == b.index;
  }
};

ComponentLabel component_of(const Character& c);

/// {"x":"..","y":"..","z":"..","mode":"exact|float"}; rationals as "p/q".
std::string to_json(const Character& c);
Character character_from_json(std::string_view text);

}  // namespace charvar
