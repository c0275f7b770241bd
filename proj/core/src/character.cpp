#include "charvar/character.hpp"

#include <stdexcept>

#include "json.hpp"

namespace charvar {

Character::Character(Scalar x, Scalar y, Scalar z) : c_{std::move(x), std::move(y), std::move(z)} {
  if (c_[0].mode() != c_[1].mode() || c_[0].mode() != c_[2].mode())
    throw ModeMismatch("character coordinates in different arithmetic modes");
}

Character Character::exact(Rational x, Rational y, Rational z) {
  return {Scalar(std::move(x)), Scalar(std::move(y)), Scalar(std::move(z))};
}

Character Character::exact(long x, long y, long z) { return exact(Rational(x), Rational(y), Rational(z)); }

Character Character::floating(double x, double y, double z) { return {Scalar(x), Scalar(y), Scalar(z)}; }

Character Character::parse(std::string_view x, std::string_view y, std::string_view z, Mode m) {
  return {Scalar::parse(x, m), Scalar::parse(y, m), Scalar::parse(z, m)};
}

Character Character::to_float() const {
  return floating(c_[0].to_double(), c_[1].to_double(), c_[2].to_double());
}

std::array<double, 3> Character::to_doubles() const {
  return {c_[0].to_double(), c_[1].to_double(), c_[2].to_double()};
}

std::string Character::str() const { return "(" + c_[0].str() + ", " + c_[1].str() + ", " + c_[2].str() + ")"; }

Scalar kappa(const Character& c) {
  const Scalar& x = c.x();
  const Scalar& y = c.y();
  const Scalar& z = c.z();
  return x * x + y * y + z * z - x * y * z - Scalar::integer_like(x, 2);
}

Scalar kappa_via_projection(const Character& c) {
  const Scalar& x = c.x();
  const Scalar& y = c.y();
  const Scalar& z = c.z();
  const Scalar two = Scalar::integer_like(x, 2);
  const Scalar four = Scalar::integer_like(x, 4);
  const Scalar lead = two * z - x * y;
  return two + (lead * lead - (x * x - four) * (y * y - four)) / four;
}

Scalar BilinearForm::determinant() const {
  return b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
         b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
}

BilinearForm bilinear_form(const Character& c) {
  const Scalar two = Scalar::integer_like(c.x(), 2);
  return BilinearForm{{{
      {two, c.z(), c.y()},
      {c.z(), two, c.x()},
      {c.y(), c.x(), two},
  }}};
}

std::string_view to_string(FormType f) {
  switch (f) {
    case FormType::Definite:
      return "Definite";
    case FormType::Indefinite:
      return "Indefinite";
    case FormType::Degenerate:
      return "Degenerate";
  }
  return "?";
}

namespace {

// -2 <= v <= 2 with the float tolerance; `near` accumulates boundary hits.
bool in_box(const Scalar& v, bool& near) {
  bool lo_near = false;
  bool hi_near = false;
  const bool inside = compare(v, -2L, &lo_near) >= 0 && compare(v, 2L, &hi_near) <= 0;
  near = near || lo_near || hi_near;
  return inside;
}

bool in_box(const Character& c, bool& near) {
  bool inside = true;
  for (const auto& v : c.coords()) inside = in_box(v, near) && inside;
  return inside;
}

}  // namespace

FormType classify_form(const Character& c) {
  const Scalar k = kappa(c);
  const int vs2 = compare(k, 2L);
  if (vs2 == 0) return FormType::Degenerate;
  bool near = false;
  if (vs2 < 0 && in_box(c, near)) return FormType::Definite;
  return FormType::Indefinite;
}

std::string ComponentLabel::name() const {
  auto pattern = [this] {
    std::string s = "(";
    for (int i = 0; i < 3; ++i) {
      s += signs[i] < 0 ? '-' : '+';
      if (i < 2) s += ',';
    }
    return s + ")";
  };
  switch (tag) {
    case ComponentTag::Su2Compact:
      return "Su2Compact";
    case ComponentTag::TeichOctant:
      return "TeichOctant" + pattern();
    case ComponentTag::ReducibleCK:
      return "ReducibleCK";
    case ComponentTag::ReducibleC:
      return "ReducibleC" + std::to_string(index);
    case ComponentTag::SingularS0:
      return "SingularS0";
    case ComponentTag::ConnectedAboveTwo:
      return "ConnectedAboveTwo";
    case ComponentTag::Origin:
      return "Origin";
  }
  return "?";
}

ComponentLabel component_of(const Character& c) {
  ComponentLabel label;
  const Scalar k = kappa(c);
  bool near_level = false;
  const int vs2 = compare(k, 2L, &near_level);
  // A float point within tolerance of the level 2 is treated as lying on it.
  label.boundary_ambiguous = near_level && !c.x().is_exact();

  bool near_box = false;
  const bool boxed = in_box(c, near_box);

  std::array<int, 3> signs{};
  for (int i = 0; i < 3; ++i) signs[i] = sign(c[i]) < 0 ? -1 : 1;

  if (vs2 > 0) {
    label.tag = ComponentTag::ConnectedAboveTwo;
    return label;
  }

  if (vs2 < 0) {
    bool origin = true;
    for (const auto& v : c.coords()) origin = origin && sign(v) == 0;
    if (origin) {
      label.tag = ComponentTag::Origin;
      label.boundary_ambiguous = label.boundary_ambiguous || !c.x().is_exact();
      return label;
    }
    if (boxed) {
      label.tag = ComponentTag::Su2Compact;
    } else {
      // Off the compact component every coordinate has |v| > 2.
      label.tag = ComponentTag::TeichOctant;
      label.signs = signs;
    }
    label.boundary_ambiguous = label.boundary_ambiguous || (near_box && !c.x().is_exact());
    return label;
  }

  // Level 2: the reducible locus.
  bool s0 = true;
  for (int i = 0; i < 3; ++i) s0 = s0 && compare(abs(c[i]), 2L) == 0;
  if (s0 && signs[0] * signs[1] * signs[2] > 0) {
    label.tag = ComponentTag::SingularS0;
    label.signs = signs;
    label.boundary_ambiguous = label.boundary_ambiguous || !c.x().is_exact();
    return label;
  }
  label.boundary_ambiguous = label.boundary_ambiguous || (near_box && !c.x().is_exact());
  if (boxed) {
    label.tag = ComponentTag::ReducibleCK;
    return label;
  }
  label.tag = ComponentTag::ReducibleC;
  label.signs = signs;
  // C0 = (+,+,+); C_i = sigma_i C0 keeps coordinate i positive.
  if (signs == std::array<int, 3>{1, 1, 1})
    label.index = 0;
  else if (signs == std::array<int, 3>{1, -1, -1})
    label.index = 1;
  else if (signs == std::array<int, 3>{-1, 1, -1})
    label.index = 2;
  else
    label.index = 3;
  return label;
}

std::string to_json(const Character& c) {
  nlohmann::ordered_json j;
  j["x"] = c.x().str();
  j["y"] = c.y().str();
  j["z"] = c.z().str();
  j["mode"] = std::string(to_string(c.mode()));
  return j.dump();
}

Character character_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed character JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("character JSON must be an object");
  const Mode m = j.contains("mode") ? parse_mode(j.at("mode").get<std::string>()) : Mode::Exact;
  auto field = [&](const char* key) -> std::string {
    if (!j.contains(key)) throw ParseError(std::string("character JSON missing '") + key + "'");
    const auto& v = j.at(key);
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number()) return v.dump();
    throw ParseError(std::string("character JSON field '") + key + "' must be a string or number");
  };
  return Character::parse(field("x"), field("y"), field("z"), m);
}

}  // namespace charvar
