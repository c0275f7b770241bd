#include <doctest.h>

#include <random>

#include "charvar/modular_group.hpp"
#include "oracles.hpp"

using namespace charvar;
using G = GeneratorId;

namespace {

Character from(const oracle::Triple& t) { return Character::exact(t[0], t[1], t[2]); }

std::vector<Character> random_characters(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::vector<Character> out;
  for (int i = 0; i < n; ++i) out.push_back(from(oracle::random_triple(rng)));
  return out;
}

bool same_action(const GammaElement& a, const GammaElement& b, const std::vector<Character>& pts) {
  for (const auto& c : pts)
    if (!(apply(a, c) == apply(b, c))) return false;
  return true;
}

Gl2zClass::Matrix to_matrix(const oracle::Mat& m) { return {{{m[0][0], m[0][1]}, {m[1][0], m[1][1]}}}; }

}  // namespace

TEST_CASE("generator action examples") {
  CHECK(apply(G::Qz, Character::exact(3, 3, 9)) == Character::exact(3, 3, 0));
  CHECK(apply(G::Sigma1, Character::exact(1, 2, 3)) == Character::exact(1, -2, -3));
  CHECK(apply(G::TauX, Character::exact(3, 3, 9)) == Character::exact(3, 0, 3));
  const Character c = Character::exact(Rational(7, 3), Rational(-2), Rational(11, 5));
  CHECK(apply(G::Epsilon, c) == c);
}

TEST_CASE("actions agree with the character tables") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 200; ++i) {
    const auto t = oracle::random_triple(rng);
    for (G g : kAllGenerators) REQUIRE(apply(g, from(t)) == from(oracle::act(g, t)));
    const auto w = oracle::random_word(rng, 1 + rng() % 8);
    REQUIRE(apply(GammaElement::from_word(w), from(t)) == from(oracle::act_word(w, t)));
  }
}

TEST_CASE("kappa invariance of every generator") {
  for (const auto& c : random_characters(22, 1000))
    for (G g : kAllGenerators) REQUIRE(kappa(apply(g, c)) == kappa(c));
}

TEST_CASE("every generator fixes the origin") {
  for (G g : kAllGenerators) CHECK(apply(g, Character::exact(0, 0, 0)) == Character::exact(0, 0, 0));
}

TEST_CASE("composition examples") {
  CHECK(compose(GammaElement::generator(G::Qz), GammaElement::generator(G::Qz)).is_identity());
  const auto p = GammaElement::generator(G::P123);
  const auto p3 = compose(p, compose(p, p));
  const auto pts = random_characters(23, 100);
  CHECK(same_action(p3, GammaElement(), pts));
  CHECK(p3.is_identity());
  const auto tau_y = compose(GammaElement::generator(G::P13), GammaElement::generator(G::Qz));
  CHECK(tau_y.same_normal_form(GammaElement::generator(G::TauY)));
}

TEST_CASE("relation suite") {
  const auto pts = random_characters(24, 100);
  auto gen = [](G g) { return GammaElement::generator(g); };
  for (G g : {G::Qx, G::Qy, G::Qz, G::Sigma1, G::Sigma2, G::Sigma3}) {
    CHECK(same_action(compose(gen(g), gen(g)), GammaElement(), pts));
    CHECK(compose(gen(g), gen(g)).is_identity());
  }
  CHECK(same_action(gen(G::TauY), compose(gen(G::P13), gen(G::Qz)), pts));
  CHECK(same_action(gen(G::TauX), compose(gen(G::P23), gen(G::Qz)), pts));
  CHECK(same_action(gen(G::Nu), compose(gen(G::P12), gen(G::Qz)), pts));
  CHECK(same_action(gen(G::Epsilon), GammaElement(), pts));
}

TEST_CASE("homology classes") {
  CHECK(homology(G::TauX).matrix() == Gl2zClass::Matrix{{{1, 1}, {0, 1}}});
  CHECK(homology(G::Sigma2).is_identity());
  CHECK(homology(G::P12).matrix() == Gl2zClass::Matrix{{{0, 1}, {1, 0}}});
  for (G g : kAllGenerators) CHECK(homology(g) == Gl2zClass(to_matrix(oracle::canonical(oracle::homology(g)))));
}

TEST_CASE("homology is multiplicative") {
  std::mt19937_64 rng(25);
  for (int i = 0; i < 500; ++i) {
    const auto a = oracle::random_word(rng, rng() % 10);
    const auto b = oracle::random_word(rng, rng() % 10);
    const auto ga = GammaElement::from_word(a), gb = GammaElement::from_word(b);
    auto ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    REQUIRE(homology(compose(ga, gb)) == homology(ga) * homology(gb));
    REQUIRE(homology(compose(ga, gb)).matrix() == to_matrix(oracle::homology_word(ab)));
  }
}

TEST_CASE("canonical representative") {
  CHECK(Gl2zClass({{{-1, 0}, {0, -1}}}).is_identity());
  CHECK(Gl2zClass({{{0, -1}, {1, 0}}}).matrix() == Gl2zClass::Matrix{{{0, 1}, {-1, 0}}});
  CHECK_THROWS_AS(Gl2zClass({{{2, 0}, {0, 1}}}), std::invalid_argument);
}

TEST_CASE("S3 images") {
  CHECK(s3_image(G::Qz) == std::array<int, 3>{0, 1, 2});
  CHECK(s3_image(G::Sigma1) == std::array<int, 3>{0, 1, 2});
  const auto p = s3_image(G::P123);
  CHECK(p[0] != 0);
  CHECK(p[p[p[0]]] == 0);
  CHECK(p[p[0]] != 0);
}

TEST_CASE("jacobian at the origin is a signed permutation matching S3") {
  // Action is x -> linear part + quadratic terms; the linear part is read off
  // from exact images of small unit vectors.
  const Rational h(1, 1000000);
  for (G g : kAllGenerators) {
    if (is_sign_change(g)) continue;
    std::array<std::array<Rational, 3>, 3> jac{};
    for (int j = 0; j < 3; ++j) {
      std::array<Rational, 3> e{0, 0, 0};
      e[static_cast<std::size_t>(j)] = h;
      const auto img = apply(g, Character::exact(e[0], e[1], e[2]));
      for (int i = 0; i < 3; ++i) jac[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = img[static_cast<std::size_t>(i)].rational() / h;
    }
    std::array<int, 3> perm{};
    for (int i = 0; i < 3; ++i) {
      int nonzero = 0;
      for (int j = 0; j < 3; ++j) {
        const auto& v = jac[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (v != 0) {
          ++nonzero;
          CHECK(abs(v) == 1);
          perm[static_cast<std::size_t>(j)] = i;
        }
      }
      CHECK(nonzero == 1);
    }
    CHECK_MESSAGE(perm == s3_image(g), mnemonic(g));
  }
}

TEST_CASE("from_gl2z reproduces the normal form and the action") {
  CHECK(from_gl2z(Gl2zClass(), SignPair{}).word().empty());
  const auto pts = random_characters(26, 100);
  CHECK(same_action(from_gl2z(Gl2zClass::Matrix{{{1, 1}, {0, 1}}}, SignPair{}), GammaElement::generator(G::TauX), pts));
  CHECK(same_action(from_gl2z(Gl2zClass::Matrix{{{1, -2}, {0, -1}}}, SignPair{}), GammaElement::generator(G::Qy), pts));
  std::mt19937_64 rng(27);
  const auto few = random_characters(28, 10);
  for (int i = 0; i < 200; ++i) {
    const auto g = GammaElement::from_word(oracle::random_word(rng, 1 + rng() % 12));
    const auto r = from_gl2z(g.pgl(), g.signs());
    REQUIRE(r.same_normal_form(g));
    REQUIRE(same_action(r, g, few));
  }
}

TEST_CASE("level-two membership") {
  std::mt19937_64 rng(29);
  const auto pts = random_characters(30, 10);
  int inside = 0;
  for (int i = 0; i < 300; ++i) {
    const auto g = GammaElement::from_word(oracle::random_word(rng, 1 + rng() % 6));
    const auto lw = level_two_word(g);
    CHECK(lw.has_value() == in_level_two(g));
    if (lw) {
      ++inside;
      for (G l : lw->word())
        CHECK(std::find(kLevelTwoGenerators.begin(), kLevelTwoGenerators.end(), l) != kLevelTwoGenerators.end());
      CHECK(same_action(*lw, g, pts));
    }
  }
  CHECK(inside > 0);
  std::uniform_int_distribution<std::size_t> pick(0, kLevelTwoGenerators.size() - 1);
  for (int i = 0; i < 100; ++i) {
    std::vector<G> w(1 + rng() % 8);
    for (auto& l : w) l = kLevelTwoGenerators[pick(rng)];
    CHECK(in_level_two(GammaElement::from_word(w)));
  }
}

TEST_CASE("random elements") {
  CHECK(random_element(0, 5).is_identity());
  CHECK(random_element(10, 42).word() == random_element(10, 42).word());
  const auto g = random_element(10, 42);
  CHECK(g.word().size() == 10);
  for (const auto& c : random_characters(31, 50)) CHECK(kappa(apply(g, c)) == kappa(c));
}

TEST_CASE("word and normal form serialization") {
  const auto g = GammaElement::parse("Qz TauX Sigma1");
  CHECK(g.word_string() == "Qz TauX Sigma1");
  CHECK(GammaElement::parse(g.word_string()).same_normal_form(g));
  CHECK(GammaElement::generator(G::TauX).normal_form_json() == R"({"m":[[1,1],[0,1]],"signs":[0,0]})");
  CHECK_THROWS(GammaElement::parse("Qw"));
}

TEST_CASE("inverse") {
  std::mt19937_64 rng(32);
  const auto pts = random_characters(33, 20);
  for (int i = 0; i < 100; ++i) {
    const auto g = GammaElement::from_word(oracle::random_word(rng, rng() % 10));
    CHECK(compose(g, inverse(g)).is_identity());
    CHECK(same_action(compose(inverse(g), g), GammaElement(), pts));
  }
}
