#include "charvar/verify.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "charvar/dynamics.hpp"
#include "charvar/hyperbolic.hpp"
#include "charvar/reduction.hpp"
#include "charvar/render.hpp"
#include "charvar/trace_calculus.hpp"

namespace charvar {

namespace {

class Checker {
 public:
  explicit Checker(std::string name) { r_.name = std::move(name); }

  void expect(bool ok, const std::function<std::string()>& what) {
    ++r_.checks;
    if (ok) return;
    ++r_.failures;
    if (r_.messages.size() < 8) r_.messages.push_back(what());
  }

  // Records a failure when fn throws.
  void guard(const std::string& label, const std::function<void()>& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      expect(false, [&] { return label + ": unexpected exception: " + e.what(); });
    }
  }

  SuiteReport report() { return std::move(r_); }

 private:
  SuiteReport r_;
};

Rational random_rational(std::mt19937_64& rng, long span) {
  std::uniform_int_distribution<long> num(-span, span);
  std::uniform_int_distribution<long> den(1, 7);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

Character random_exact(std::mt19937_64& rng, long span) {
  return Character::exact(random_rational(rng, span), random_rational(rng, span), random_rational(rng, span));
}

SuiteReport group_suite(std::uint64_t seed) {
  Checker ck("group");
  std::mt19937_64 rng(seed);
  ck.guard("group", [&] {
    for (int i = 0; i < 200; ++i) {
      const auto g = random_element(1 + rng() % 6, rng());
      const auto h = random_element(1 + rng() % 6, rng());
      const Character c = random_exact(rng, 12);
      const auto gh = compose(g, h);
      ck.expect(apply(gh, c) == apply(g, apply(h, c)),
                [&] { return "action is not a homomorphism for " + gh.word_string(); });
      ck.expect(kappa(apply(g, c)) == kappa(c), [&] { return "kappa not invariant under " + g.word_string(); });
      ck.expect(homology(gh) == homology(g) * homology(h),
                [&] { return "homology not multiplicative for " + gh.word_string(); });
      ck.expect(compose(g, inverse(g)).is_identity(), [&] { return "g o g^-1 != 1 for " + g.word_string(); });
      ck.expect(apply(inverse(g), apply(g, c)) == c, [&] { return "g^-1 does not undo " + g.word_string(); });
      const auto rebuilt = from_gl2z(g.pgl(), g.signs());
      ck.expect(rebuilt.same_normal_form(g) && apply(rebuilt, c) == apply(g, c),
                [&] { return "normal form word disagrees for " + g.word_string(); });
      if (auto lw = level_two_word(g))
        ck.expect(in_level_two(g) && apply(*lw, c) == apply(g, c),
                  [&] { return "level-two word disagrees for " + g.word_string(); });
      ck.expect(kappa(c) == kappa_via_projection(c), [&] { return "kappa projection identity fails at " + c.str(); });
    }
    const Character probe = Character::exact(Rational(3, 1), Rational(5, 2), Rational(-7, 3));
    for (const auto& g : enumerate_nontrivial({kAllGenerators.begin(), kAllGenerators.end()}, 2))
      ck.expect(!(apply(g, probe) == probe), [&] { return "nontrivial element fixes a generic point: " + g.word_string(); });
    ck.expect(component_of(Character::exact(0, 0, 0)).tag == ComponentTag::Origin,
              [] { return "(0,0,0) is not the Origin component"; });
    ck.expect(component_of(Character::exact(2, 2, 2)).tag == ComponentTag::SingularS0,
              [] { return "(2,2,2) is not in S0"; });
    ck.expect(component_of(Character::exact(3, 3, 4)).tag == ComponentTag::TeichOctant,
              [] { return "(3,3,4) is not in a Teichmuller octant"; });
  });
  return ck.report();
}

SuiteReport trace_suite(std::uint64_t seed) {
  Checker ck("trace");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  ck.guard("trace", [&] {
    const auto k = trace_polynomial(FreeWord::commutator());
    const auto x = TracePolynomial::variable(0);
    const auto y = TracePolynomial::variable(1);
    const auto z = TracePolynomial::variable(2);
    ck.expect(k == x * x + y * y + z * z - x * y * z - TracePolynomial::constant(2),
              [&] { return "commutator trace is " + k.str(); });
    for (int i = 0; i < 150; ++i) {
      const FreeWord w = random_free_word(1 + static_cast<long>(rng() % 12), rng());
      const auto f = trace_polynomial(w);
      ck.expect(f == trace_polynomial(w, ReductionOrder::RightmostFirst),
                [&] { return "reduction orders disagree on " + w.str(); });
      ck.expect(f == trace_polynomial(w.inverse()), [&] { return "f_w != f_w^-1 for " + w.str(); });
      if (w.length() > 0) {
        const long r = static_cast<long>(rng() % static_cast<std::uint64_t>(w.length()));
        ck.expect(f == trace_polynomial(w.rotate(r)), [&] { return "f_w not conjugation invariant for " + w.str(); });
      }
      const double a = coord(rng), b = coord(rng), c = coord(rng);
      for (bool other : {false, true}) {
        const auto t = numeric_trace(w, a, b, c, other);
        const double v = f.evaluate(a, b, c);
        ck.expect(std::abs(t - std::complex<double>(v)) <= 1e-8 * std::max(1.0, std::abs(v)),
                  [&] { return "f_w disagrees with matrix trace for " + w.str(); });
      }
    }
    for (int i = 0; i < 50; ++i) {
      Rational xi = random_rational(rng, 9), eta = random_rational(rng, 9);
      if (xi == 0 || eta == 0) continue;
      const Character c = reducible_param(Scalar(xi), Scalar(eta));
      ck.expect(kappa(c) == Scalar::integer(2, Mode::Exact), [&] { return "reducible point off kappa = 2: " + c.str(); });
      const Rational zeta = random_rational(rng, 9);
      if (zeta == 0) continue;
      const auto s = factorization_sides(xi, eta, zeta);
      ck.expect(s[0] == s[1], [&] { return "factorization identity fails"; });
    }
  });
  return ck.report();
}

SuiteReport reduction_suite(std::uint64_t seed) {
  Checker ck("reduction");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> big(5, 400);
  std::uniform_int_distribution<long> den(1, 5);
  ck.guard("reduction", [&] {
    int tried = 0;
    while (tried < 200) {
      const Character c = Character::exact(Rational(big(rng), den(rng)), Rational(big(rng), den(rng)),
                                           Rational(big(rng), den(rng)));
      if (compare(kappa(c), 2) <= 0) continue;
      ++tried;
      const auto r = reduce(c);
      ck.expect(apply(r.applied, c) == r.normal_form, [&] { return "recorded word does not reproduce " + c.str(); });
      ck.expect(kappa(r.normal_form) == kappa(c), [&] { return "reduction changed kappa of " + c.str(); });
      bool bounded = true;
      if (compare(c.x(), 2) > 0 && compare(c.y(), 2) > 0 && compare(c.z(), 2) > 0)
        bounded = within_step_bound(c, r.steps);
      ck.expect(bounded, [&] { return "step bound exceeded from " + c.str(); });
      if (r.verdict == Verdict::FrickePants) {
        for (const auto& v : r.normal_form.coords())
          ck.expect(compare(v, -2) <= 0, [&] { return "pants verdict with a coordinate above -2"; });
      } else {
        const auto& v = r.normal_form[static_cast<std::size_t>(r.axis)];
        ck.expect(compare(abs(v), 2) <= 0, [&] { return "non-hyperbolic axis outside [-2,2]"; });
      }
    }
    const auto r = reduce(Character::exact(3, 3, 9));
    ck.expect(r.steps == 1 && r.verdict == Verdict::NonHyperbolicCoordinate,
              [&] { return "(3,3,9) reduced to " + r.normal_form.str(); });
  });
  return ck.report();
}

SuiteReport hyperbolic_suite(std::uint64_t seed) {
  Checker ck("hyperbolic");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> xy(2.05, 5.0);
  std::uniform_real_distribution<double> level(-1.95, 1.95);
  std::uniform_real_distribution<double> sign(0.0, 1.0);
  ck.guard("hyperbolic", [&] {
    int tried = 0;
    while (tried < 200) {
      const double x = xy(rng), y = xy(rng), k = level(rng);
      const double disc = (x * x - 4) * (y * y - 4) + 4 * k - 8;
      if (disc < 0) continue;
      ++tried;
      const double z = (x * y + std::sqrt(disc)) / 2;
      const double s = sign(rng) < 0.5 ? 1.0 : -1.0;
      const Character c = Character::floating(s * x, s * y, z);
      const auto [a, b] = lift_character(c);
      ck.expect(std::abs(commutator_trace(a, b) - k) <= 1e-8 * std::max(1.0, z * z),
                [&] { return "lift has wrong commutator trace at " + c.str(); });
      ck.expect(axes_cross(a, b), [&] { return "axes do not cross at " + c.str(); });
      const Quad q = quad_vertices(a, b);
      ck.expect(is_embedded_quadrilateral(q), [&] { return "quadrilateral not embedded at " + c.str(); });
      ck.expect(!vertices_collinear(q), [&] { return "degenerate quadrilateral at " + c.str(); });
      ck.expect(side_pairing_error(a, b, q) <= 1e-9, [&] { return "side pairings off at " + c.str(); });
    }
    for (double w : {-2.5, -3.0, -10.0}) {
      const auto h = pants_hexagon(Character::floating(-3.0, w, -4.0));
      ck.expect(h.convex && h.max_residual() <= 1e-9, [&] { return "pants hexagon not right-angled"; });
    }
  });
  return ck.report();
}

SuiteReport dynamics_suite(std::uint64_t seed) {
  Checker ck("dynamics");
  std::mt19937_64 rng(seed);
  ck.guard("dynamics", [&] {
    const Character start = Character::exact(Rational(1, 3), Rational(-5, 2), Rational(7, 4));
    const auto o = orbit(start, OrbitPolicy::uniform(seed), 60);
    for (const auto& p : o.points)
      ck.expect(kappa(p.point) == kappa(start), [&] { return "exact orbit left its level at step " + std::to_string(p.step); });

    for (double x0 : {0.0, 1.0, std::sqrt(2.0), -0.6}) {
      const Ellipse e = ellipse_E(x0, 1.5);
      const double turn = dehn_rotation_angle(x0);
      const double phi = 0.3;
      const auto p = e.point(phi);
      double a = x0, b = p[0], c = p[1];
      act(GeneratorId::TauX, a, b, c);
      const auto q = e.point(phi - turn);
      ck.expect(std::abs(b - q[0]) <= 1e-9 && std::abs(c - q[1]) <= 1e-9,
                [&] { return "TauX is not a rotation of the ellipse at x0 = " + double_to_string(x0); });
      ck.expect(std::abs(kappa_of(x0, p[0], p[1]) - 1.5) <= 1e-9, [&] { return "ellipse point off the level"; });
    }

    const auto s = sample_level_set(0.5, 2000, Window{}, seed, 2);
    for (const auto& smp : s.samples) {
      const auto v = smp.point.to_doubles();
      ck.expect(std::abs(kappa_of(v[0], v[1], v[2]) - 0.5) <= 1e-9 && smp.weight > 0,
                [&] { return "sample off the level set"; });
    }

    Canvas cv;
    cv.width = cv.height = 64;
    const auto c1 = level_contour(1.0, Plane::XY, 0.5, cv);
    for (const auto& seg : c1.segments)
      for (const auto& p : {seg.a, seg.b}) {
        const double f = kappa_of(p[0], p[1], 0.5) - 1.0;
        ck.expect(std::abs(f) <= 0.2, [&] { return "contour vertex far from the level"; });
      }
    ck.expect(render_level_contour(1.0, Plane::XY, 0.5, cv, ImageFormat::Svg) ==
                  render_level_contour(1.0, Plane::XY, 0.5, cv, ImageFormat::Svg),
              [] { return "rendering is not deterministic"; });
    const auto origin = level_contour(-2.0, Plane::XY, 0.0, cv);
    ck.expect(origin.markers.size() == 1 && origin.segments.empty(),
              [] { return "t = -2 slice z = 0 is not the single origin"; });
    (void)rng;
  });
  return ck.report();
}

}  // namespace

const std::vector<std::string_view>& verify_suite_names() {
  static const std::vector<std::string_view> names{"group", "trace", "reduction", "hyperbolic", "dynamics"};
  return names;
}

SuiteReport run_verify_suite(std::string_view name, std::uint64_t seed) {
  if (name == "group") return group_suite(seed);
  if (name == "trace") return trace_suite(seed);
  if (name == "reduction") return reduction_suite(seed);
  if (name == "hyperbolic") return hyperbolic_suite(seed);
  if (name == "dynamics") return dynamics_suite(seed);
  throw std::invalid_argument("unknown verify suite '" + std::string(name) + "'");
}

}  // namespace charvar
