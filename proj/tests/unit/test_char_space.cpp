#include <doctest.h>

#include <random>

#include "charvar/character.hpp"
#include "charvar/modular_group.hpp"
#include "charvar/trace_calculus.hpp"
#include "oracles.hpp"

using namespace charvar;

namespace {

Character from(const oracle::Triple& t) { return Character::exact(t[0], t[1], t[2]); }

Scalar exact(long p, long d = 1) { return Scalar(Rational(p, d)); }

}  // namespace

TEST_CASE("scalar parsing and modes") {
  CHECK(Scalar::parse("-24/5", Mode::Exact) == exact(-24, 5));
  CHECK(Scalar::parse("0.1", Mode::Exact) == exact(1, 10));
  CHECK(Scalar::parse("1.5e2", Mode::Exact) == exact(150));
  CHECK(Scalar::parse("6/4", Mode::Exact).str() == "3/2");
  CHECK(Scalar::parse("1/4", Mode::Float).to_double() == 0.25);
  CHECK_THROWS_AS(Scalar::parse("abc", Mode::Exact), ParseError);
  CHECK_THROWS_AS(Scalar::parse("1/0", Mode::Exact), ParseError);
  CHECK_THROWS_AS(exact(1) + Scalar(1.0), ModeMismatch);
}

TEST_CASE("kappa examples") {
  CHECK(kappa(Character::exact(0, 0, 0)) == exact(-2));
  CHECK(kappa(Character::exact(2, 2, 2)) == exact(2));
  CHECK(kappa(Character::exact(-2, -2, -2)) == exact(18));
  CHECK(kappa(Character::exact(3, 3, 9)) == exact(16));
  CHECK(oracle::kappa(3, 3, 9) == 16);
}

TEST_CASE("kappa via projection") {
  CHECK(kappa_via_projection(Character::exact(3, 3, 9)) == exact(16));
  CHECK(kappa_via_projection(Character::exact(0, 0, 0)) == exact(-2));
  for (int z : {-3, 0, 2, 5}) {
    const oracle::Q expected = 2 + oracle::Q(2 * z - 4) * (2 * z - 4) / 4;
    CHECK(kappa_via_projection(Character::exact(2, 2, z)) == Scalar(expected));
  }
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const Character c = from(oracle::random_triple(rng));
    REQUIRE(kappa(c) == kappa_via_projection(c));
  }
}

TEST_CASE("bilinear form determinant") {
  CHECK(bilinear_form(Character::exact(0, 0, 0)).determinant() == exact(8));
  CHECK(bilinear_form(Character::exact(2, 2, 2)).determinant() == exact(0));
  CHECK(bilinear_form(Character::exact(3, 3, 9)).determinant() == exact(-28));
  std::mt19937_64 rng(12);
  for (int i = 0; i < 1000; ++i) {
    const auto t = oracle::random_triple(rng);
    const Character c = from(t);
    const Scalar det = bilinear_form(c).determinant();
    REQUIRE(det == Scalar(oracle::bilinear_det(t)));
    REQUIRE(det + exact(2) * (kappa(c) - exact(2)) == exact(0));
  }
}

TEST_CASE("form classification") {
  CHECK(classify_form(Character::exact(1, 1, 1)) == FormType::Definite);
  CHECK(classify_form(Character::exact(3, 3, 9)) == FormType::Indefinite);
  CHECK(classify_form(Character::exact(2, 2, 2)) == FormType::Degenerate);
  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    const Character c = from(oracle::random_triple(rng, 4, 3));
    CHECK((classify_form(c) == FormType::Degenerate) == (kappa(c) == exact(2)));
  }
  for (int i = 0; i < 100; ++i) {
    const auto xi = oracle::random_q(rng, 6, 5), eta = oracle::random_q(rng, 6, 5);
    if (xi == 0 || eta == 0) continue;
    CHECK(classify_form(reducible_param(Scalar(xi), Scalar(eta))) == FormType::Degenerate);
  }
}

TEST_CASE("component examples") {
  CHECK(component_of(Character::exact(0, 0, 0)).name() == "Origin");
  CHECK(component_of(Character::exact(1, 1, 1)).name() == "Su2Compact");
  CHECK(component_of(Character::exact(2, -2, -2)).tag == ComponentTag::SingularS0);
  const auto c0 = component_of(Character::exact(Rational(5, 2), Rational(10, 3), Rational(37, 6)));
  CHECK(c0.name() == "ReducibleC0");
  CHECK(component_of(Character::exact(1, 1, 1)).tag == ComponentTag::Su2Compact);
  CHECK(component_of(Character::exact(3, 3, 9)).tag == ComponentTag::ConnectedAboveTwo);
  CHECK(component_of(Character::exact(3, 3, 4)).tag == ComponentTag::TeichOctant);
  CHECK(component_of(Character::exact(0, 0, -2)).tag == ComponentTag::ReducibleCK);
}

TEST_CASE("float classification near boundaries is flagged") {
  CHECK(component_of(Character::floating(1, 1, 1)).boundary_ambiguous == false);
  CHECK(component_of(Character::floating(2.0 + 1e-12, 2.0, 2.0)).boundary_ambiguous);
}

TEST_CASE("sign changes permute component labels") {
  using G = GeneratorId;
  std::mt19937_64 rng(14);
  std::vector<Character> pts;
  for (int i = 0; i < 400; ++i) pts.push_back(from(oracle::random_triple(rng, 12, 4)));
  for (int i = 0; i < 100; ++i) {
    const auto xi = oracle::random_q(rng, 9, 4), eta = oracle::random_q(rng, 9, 4);
    if (xi == 0 || eta == 0) continue;
    pts.push_back(reducible_param(Scalar(xi), Scalar(eta)));
  }
  int octant = 0, reducible = 0;
  for (const auto& c : pts) {
    const auto before = component_of(c);
    for (G s : {G::Sigma1, G::Sigma2, G::Sigma3}) {
      const auto after = component_of(apply(s, c));
      const auto flip = generator_signs(s);
      switch (before.tag) {
        case ComponentTag::TeichOctant:
        case ComponentTag::ReducibleC: {
          ++(before.tag == ComponentTag::TeichOctant ? octant : reducible);
          std::array<int, 3> signs = before.signs;
          if (flip.x) signs[0] = -signs[0], signs[2] = -signs[2];
          if (flip.y) signs[1] = -signs[1], signs[2] = -signs[2];
          CHECK(after.tag == before.tag);
          CHECK(after.signs == signs);
          break;
        }
        default:
          CHECK(after.tag == before.tag);
      }
    }
  }
  CHECK(octant > 0);
  CHECK(reducible > 0);
}

TEST_CASE("character json round trip") {
  const Character c = Character::exact(Rational(-24, 5), Rational(3), Rational(1, 7));
  CHECK(to_json(c) == R"({"x":"-24/5","y":"3","z":"1/7","mode":"exact"})");
  CHECK(character_from_json(to_json(c)) == c);
  const Character f = Character::floating(0.5, -1.25, 3.0);
  CHECK(character_from_json(to_json(f)) == f);
}
