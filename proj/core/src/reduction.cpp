#include "charvar/reduction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "json.hpp"

namespace charvar {

namespace {

const Scalar& two_like(const Scalar& v) {
  static const Scalar exact_two = Scalar::integer(2, Mode::Exact);
  static const Scalar float_two = Scalar::integer(2, Mode::Float);
  return v.is_exact() ? exact_two : float_two;
}

bool rational_sqrt(const Rational& q, Rational& out) {
  if (q < 0) return false;
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
  mpz_class rn;
  mpz_class rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  out = Rational(rn, rd);
  out.canonicalize();
  return true;
}

// -2 <= v <= 2, tolerant in float mode.
bool in_closed_box(const Scalar& v) { return compare(v, -2L) >= 0 && compare(v, 2L) <= 0; }

int count_negative(const Character& c) {
  int n = 0;
  for (const auto& v : c.coords()) n += sign(v) < 0 ? 1 : 0;
  return n;
}

// Sign change turning every coordinate of c to the sign pattern `target`
// (+1 all positive, -1 all negative). c must have matching parity.
GammaElement sign_fix(const Character& c, int target) {
  std::array<bool, 3> flip{};
  int flips = 0;
  for (int i = 0; i < 3; ++i) {
    const int s = sign(c[static_cast<std::size_t>(i)]) < 0 ? -1 : 1;
    flip[static_cast<std::size_t>(i)] = s != target;
    flips += flip[static_cast<std::size_t>(i)] ? 1 : 0;
  }
  if (flips == 0) return {};
  if (flips != 2) throw std::logic_error("sign_fix: parity mismatch");
  // Sigma_i fixes coordinate i and flips the other two.
  if (!flip[0]) return GammaElement::generator(GeneratorId::Sigma1);
  if (!flip[1]) return GammaElement::generator(GeneratorId::Sigma2);
  return GammaElement::generator(GeneratorId::Sigma3);
}

// The coordinate-permuting generator g with act(g) (v0, v1, v2) = (v[p0], v[p1], v[p2]).
GammaElement permutation_element(const std::array<int, 3>& p) {
  static constexpr std::array<GeneratorId, 5> kPerms{GeneratorId::P12, GeneratorId::P13, GeneratorId::P23,
                                                     GeneratorId::P123, GeneratorId::P132};
  if (p == std::array<int, 3>{0, 1, 2}) return {};
  for (GeneratorId g : kPerms) {
    int a = 0;
    int b = 1;
    int c = 2;
    act(g, a, b, c);
    if (std::array<int, 3>{a, b, c} == p) return GammaElement::generator(g);
  }
  throw std::logic_error("permutation_element: not a permutation");
}

// Stable argsort; ascending or descending.
std::array<int, 3> stable_order(const Character& c, bool ascending) {
  std::array<int, 3> idx{0, 1, 2};
  std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) {
    const int r = compare(c[static_cast<std::size_t>(i)], c[static_cast<std::size_t>(j)]);
    return ascending ? r < 0 : r > 0;
  });
  return idx;
}

struct Tracker {
  Character point;
  GammaElement applied;

  void apply_element(const GammaElement& g) {
    if (g.word().empty()) return;
    point = charvar::apply(g, point);
    applied = compose(g, applied);
  }
};

}  // namespace

bool ZetaInterval::strictly_contains(const Scalar& v) const {
  const Scalar d = v - center;
  return compare(d * d, half_width_sq) < 0;
}

ZetaInterval zeta_pm(const Scalar& x, const Scalar& y) {
  if (compare(x, 2L) <= 0 || compare(y, 2L) <= 0) throw std::invalid_argument("zeta_pm requires x > 2 and y > 2");
  const Scalar four = Scalar::integer_like(x, 4);
  ZetaInterval r;
  r.center = x * y / two_like(x);
  r.half_width_sq = (x * x - four) * (y * y - four) / four;
  if (x.is_exact()) {
    Rational root;
    if (rational_sqrt(r.half_width_sq.rational(), root)) {
      r.roots_exact = true;
      r.lo = r.center - Scalar(root);
      r.hi = r.center + Scalar(root);
      return r;
    }
  }
  const double c = r.center.to_double();
  const double h = std::sqrt(r.half_width_sq.to_double());
  r.lo = Scalar(c - h);
  r.hi = Scalar(c + h);
  r.roots_exact = false;
  return r;
}

Character qz_step(const Character& c) { return apply(GeneratorId::Qz, c); }

std::pair<Character, GammaElement> sort_normalize(const Character& c) {
  for (const auto& v : c.coords())
    if (compare(abs(v), 2L) <= 0) throw std::invalid_argument("sort_normalize: a coordinate lies in [-2, 2]");
  if (count_negative(c) % 2 != 0)
    throw std::invalid_argument("sort_normalize: odd number of negative coordinates, no linear move reaches (2,inf)^3");
  Tracker t{c, {}};
  t.apply_element(sign_fix(c, 1));
  t.apply_element(permutation_element(stable_order(t.point, true)));
  return {t.point, t.applied};
}

std::string ReductionResult::verdict_name() const {
  if (verdict == Verdict::FrickePants) return "FrickePants";
  return "NonHyperbolicCoordinate(" + std::string(1, "xyz"[axis]) + ")";
}

std::string ReductionResult::to_json() const {
  nlohmann::ordered_json j;
  auto point = [](const Character& c) {
    return nlohmann::ordered_json{{"x", c.x().str()}, {"y", c.y().str()}, {"z", c.z().str()}};
  };
  j["input"] = point(input);
  j["normal_form"] = point(normal_form);
  j["word"] = applied.word_string();
  j["steps"] = steps;
  j["verdict"] = verdict == Verdict::FrickePants ? "FrickePants" : "NonHyperbolicCoordinate";
  if (verdict == Verdict::NonHyperbolicCoordinate) j["axis"] = std::string(1, "xyz"[axis]);
  j["mode"] = std::string(to_string(input.mode()));
  return j.dump();
}

ReductionResult reduce(const Character& c, long max_iterations) {
  if (compare(kappa(c), 2L) <= 0) throw std::invalid_argument("reduce requires kappa > 2");
  ReductionResult res;
  res.input = c;
  Tracker t{c, {}};
  for (long iter = 0;; ++iter) {
    if (iter >= max_iterations)
      throw ReductionCapExceeded("reduce: iteration cap " + std::to_string(max_iterations) + " reached after " +
                                 std::to_string(res.steps) + " steps at " + t.point.str());
    bool all_low = true;
    for (const auto& v : t.point.coords()) all_low = all_low && compare(v, -2L) <= 0;
    if (all_low) {
      res.verdict = Verdict::FrickePants;
      break;
    }
    int axis = -1;
    for (int i = 0; i < 3 && axis < 0; ++i)
      if (in_closed_box(t.point[static_cast<std::size_t>(i)])) axis = i;
    if (axis >= 0) {
      res.verdict = Verdict::NonHyperbolicCoordinate;
      res.axis = axis;
      break;
    }
    if (count_negative(t.point) % 2 != 0) {
      // A double sign change moves the point into (-inf, -2)^3.
      t.apply_element(sign_fix(t.point, -1));
      continue;
    }
    auto [sorted, linear] = sort_normalize(t.point);
    t.apply_element(linear);
    t.apply_element(GammaElement::generator(GeneratorId::Qz));
    ++res.steps;
    if (compare(t.point.z(), 2L) <= 0) {
      // (x, y, z') with z' <= 2  ~  (-x, -y, z') in (-inf, 2]^3, sorted descending.
      t.apply_element(GammaElement::generator(GeneratorId::Sigma3));
      t.apply_element(permutation_element(stable_order(t.point, false)));
    }
  }
  res.normal_form = t.point;
  res.applied = t.applied;
  return res;
}

bool within_step_bound(const Character& start, long steps) {
  if (steps <= 0) return true;
  const Scalar six = Scalar::integer_like(start.x(), 6);
  const Scalar s = start.x() + start.y() + start.z() - six;
  if (sign(s) <= 0) return false;
  const Scalar k2 = kappa(start) - Scalar::integer_like(start.x(), 2);
  if (sign(k2) <= 0) return false;
  // steps <= ceil(s / mu)  <=>  (steps - 1) mu < s  <=>  (steps - 1)^2 4 (kappa - 2) < s^2.
  const Scalar m = Scalar::integer_like(start.x(), steps - 1);
  return compare(m * m * Scalar::integer_like(start.x(), 4) * k2, s * s) < 0;
}

bool in_omega_zero(const Character& c) {
  for (const auto& v : c.coords())
    if (compare(v, -2L) >= 0) return false;
  return true;
}

bool in_omega(const Character& c) {
  const Scalar k = kappa(c);
  if (compare(k, 2L) <= 0) throw std::invalid_argument("in_omega requires kappa > 2");
  if (compare(k, 18L) <= 0) return false;
  const ReductionResult r = reduce(c);
  return r.verdict == Verdict::FrickePants && in_omega_zero(r.normal_form);
}

std::vector<Character> sample_omega_zero(double t, std::size_t n, std::uint64_t seed) {
  if (!(t > 18.0)) throw std::invalid_argument("sample_omega_zero requires t > 18");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double side = std::sqrt(t - 2.0) - 4.0;
  std::vector<Character> out;
  out.reserve(n);
  while (out.size() < n) {
    double a = u(rng);
    double b = u(rng);
    if (a + b >= 1.0) {
      a = 1.0 - a;
      b = 1.0 - b;
    }
    const double x = -2.0 - a * side;
    const double y = -2.0 - b * side;
    const double disc = x * x * y * y - 4.0 * (x * x + y * y - 2.0 - t);
    if (disc < 0.0) continue;
    const double z = (x * y - std::sqrt(disc)) / 2.0;
    const Character c = Character::floating(x, y, z);
    if (in_omega_zero(c)) out.push_back(c);
  }
  return out;
}

}  // namespace charvar
