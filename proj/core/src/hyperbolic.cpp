#include "charvar/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace charvar {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kTraceTol = 1e-9;
constexpr double kSegmentTol = 1e-10;

double cross(Complex u, Complex v) { return u.real() * v.imag() - u.imag() * v.real(); }
double dot(Complex u, Complex v) { return u.real() * v.real() + u.imag() * v.imag(); }

// Hyperboloid model, <u, v> = u0 v0 + u1 v1 - u2 v2.
using Vec3 = std::array<double, 3>;

double lorentz(const Vec3& u, const Vec3& v) { return u[0] * v[0] + u[1] * v[1] - u[2] * v[2]; }

// J (u x v): Lorentz-orthogonal to both u and v.
Vec3 lorentz_cross(const Vec3& u, const Vec3& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], -(u[0] * v[1] - u[1] * v[0])};
}

Vec3 null_vector(const BoundaryPoint& p) {
  const Complex w = to_circle(p);
  const double th = std::arg(w);
  return {std::cos(th), std::sin(th), 1.0};
}

Vec3 geodesic_normal(const Geodesic& g) { return lorentz_cross(null_vector(g.p), null_vector(g.q)); }

BoundaryPoint boundary_from_angle(double th) {
  const double s = std::sin(th / 2.0);
  if (std::abs(s) < 1e-15) return BoundaryPoint::at_infinity();
  return {-std::cos(th / 2.0) / s, false};
}

Geodesic geodesic_from_normal(const Vec3& m) {
  const double r = std::hypot(m[0], m[1]);
  const double alpha = std::atan2(m[1], m[0]);
  const double delta = std::acos(std::clamp(m[2] / r, -1.0, 1.0));
  return {boundary_from_angle(alpha + delta), boundary_from_angle(alpha - delta)};
}

// Intersection of the geodesics with normals n and m, in the upper half-plane.
Complex meet(const Vec3& n, const Vec3& m) {
  Vec3 p = lorentz_cross(n, m);
  if (p[2] < 0) p = {-p[0], -p[1], -p[2]};
  const double q = -lorentz(p, p);
  if (!(q > 0)) throw std::invalid_argument("geodesics do not meet");
  const double s = 1.0 / std::sqrt(q);
  const Complex w(p[0] * s / (1.0 + p[2] * s), p[1] * s / (1.0 + p[2] * s));
  return Complex(0, 1) * (1.0 + w) / (1.0 - w);
}

Complex tangent(const Geodesic& g, Complex v) {
  if (g.p.infinite || g.q.infinite) return {0.0, 1.0};
  const double c = (g.p.x + g.q.x) / 2.0;
  return Complex(0, 1) * (v - c);
}

double orient(Complex a, Complex b, Complex c) { return cross(b - a, c - a); }

bool on_segment(Complex p, Complex a, Complex b) {
  return std::min(a.real(), b.real()) - kSegmentTol <= p.real() && p.real() <= std::max(a.real(), b.real()) + kSegmentTol &&
         std::min(a.imag(), b.imag()) - kSegmentTol <= p.imag() && p.imag() <= std::max(a.imag(), b.imag()) + kSegmentTol;
}

bool segments_meet(Complex p, Complex q, Complex r, Complex s) {
  const double d1 = orient(r, s, p);
  const double d2 = orient(r, s, q);
  const double d3 = orient(p, q, r);
  const double d4 = orient(p, q, s);
  if (((d1 > kSegmentTol && d2 < -kSegmentTol) || (d1 < -kSegmentTol && d2 > kSegmentTol)) &&
      ((d3 > kSegmentTol && d4 < -kSegmentTol) || (d3 < -kSegmentTol && d4 > kSegmentTol)))
    return true;
  if (std::abs(d1) <= kSegmentTol && on_segment(p, r, s)) return true;
  if (std::abs(d2) <= kSegmentTol && on_segment(q, r, s)) return true;
  if (std::abs(d3) <= kSegmentTol && on_segment(r, p, q)) return true;
  if (std::abs(d4) <= kSegmentTol && on_segment(s, p, q)) return true;
  return false;
}

// Adjacent sides v-u and v-w overlap beyond v.
bool folds_back(Complex v, Complex u, Complex w) {
  const Complex a = u - v;
  const Complex b = w - v;
  return std::abs(cross(a, b)) <= kSegmentTol * std::abs(a) * std::abs(b) && dot(a, b) > 0;
}

bool nearly_collinear(Complex a, Complex b, Complex c) {
  const double scale = std::abs(b - a) * std::abs(c - a);
  return scale == 0.0 || std::abs(orient(a, b, c)) <= 1e-9 * scale;
}

}  // namespace

std::string_view to_string(IsometryClass k) {
  switch (k) {
    case IsometryClass::Central:
      return "Central";
    case IsometryClass::Elliptic:
      return "Elliptic";
    case IsometryClass::Parabolic:
      return "Parabolic";
    case IsometryClass::Hyperbolic:
      return "Hyperbolic";
  }
  return "?";
}

std::string_view to_string(AxisRelation r) {
  switch (r) {
    case AxisRelation::Cross:
      return "Cross";
    case AxisRelation::Disjoint:
      return "Disjoint";
    case AxisRelation::Asymptotic:
      return "Asymptotic";
  }
  return "?";
}

HPoint::HPoint(Complex z) : z_(z) {
  if (!(z.imag() > 0)) throw std::invalid_argument("upper half-plane point needs positive imaginary part");
}

Isometry::Isometry(const RealMat& m) : m_(m) {
  const double scale = std::max({1.0, std::abs(m.a * m.d), std::abs(m.b * m.c)});
  if (!(std::abs(m.det() - 1.0) <= 1e-12 * scale)) throw std::invalid_argument("isometry matrix must have det 1");
}

Isometry Isometry::normalized(const RealMat& m) {
  const double det = m.det();
  if (!(det > 0)) throw std::invalid_argument("isometry matrix must have positive determinant");
  const double s = 1.0 / std::sqrt(det);
  return Isometry(RealMat{m.a * s, m.b * s, m.c * s, m.d * s});
}

IsometryClass Isometry::classify() const {
  const double eps = 1e-12;
  const bool plus = std::abs(m_.a - 1) <= eps && std::abs(m_.d - 1) <= eps;
  const bool minus = std::abs(m_.a + 1) <= eps && std::abs(m_.d + 1) <= eps;
  if ((plus || minus) && std::abs(m_.b) <= eps && std::abs(m_.c) <= eps) return IsometryClass::Central;
  const double t = std::abs(trace());
  if (std::abs(t - 2.0) <= kTraceTol) return IsometryClass::Parabolic;
  return t < 2.0 ? IsometryClass::Elliptic : IsometryClass::Hyperbolic;
}

Complex Isometry::apply(Complex z) const { return (m_.a * z + m_.b) / (m_.c * z + m_.d); }

BoundaryPoint Isometry::apply(const BoundaryPoint& p) const {
  if (p.infinite) {
    if (m_.c == 0.0) return BoundaryPoint::at_infinity();
    return {m_.a / m_.c, false};
  }
  const double den = m_.c * p.x + m_.d;
  if (den == 0.0) return BoundaryPoint::at_infinity();
  return {(m_.a * p.x + m_.b) / den, false};
}

Geodesic Isometry::axis() const {
  if (classify() != IsometryClass::Hyperbolic) throw std::invalid_argument("axis requires a hyperbolic isometry");
  const double scale = std::max({std::abs(m_.a), std::abs(m_.b), std::abs(m_.d), 1.0});
  if (std::abs(m_.c) <= 1e-14 * scale) return {BoundaryPoint::at_infinity(), {m_.b / (m_.d - m_.a), false}};
  const double t = trace();
  const double root = std::sqrt(t * t - 4.0);
  return {{((m_.a - m_.d) + root) / (2.0 * m_.c), false}, {((m_.a - m_.d) - root) / (2.0 * m_.c), false}};
}

HPoint Isometry::fixed_point() const {
  if (classify() != IsometryClass::Elliptic) throw std::invalid_argument("fixed_point requires an elliptic isometry");
  const double t = trace();
  Complex z = Complex(m_.a - m_.d, std::sqrt(4.0 - t * t)) / (2.0 * m_.c);
  if (z.imag() < 0) z = std::conj(z);
  return HPoint(z);
}

double commutator_trace(const Isometry& a, const Isometry& b) { return commutator_trace(a.matrix(), b.matrix()); }

Complex to_circle(const BoundaryPoint& p) {
  if (p.infinite) return {1.0, 0.0};
  const Complex z(p.x, 0.0);
  return (z - Complex(0, 1)) / (z + Complex(0, 1));
}

Complex to_disk(Complex z) { return (z - Complex(0, 1)) / (z + Complex(0, 1)); }

Complex to_klein(Complex z) {
  const Complex w = to_disk(z);
  return 2.0 * w / (1.0 + std::norm(w));
}

AxisRelation axes_relation(const Isometry& a, const Isometry& b) {
  if (a.classify() != IsometryClass::Hyperbolic || b.classify() != IsometryClass::Hyperbolic)
    throw std::invalid_argument("axes_cross requires hyperbolic isometries");
  const Geodesic ga = a.axis();
  const Geodesic gb = b.axis();
  const std::array<Complex, 2> wa{to_circle(ga.p), to_circle(ga.q)};
  const std::array<Complex, 2> wb{to_circle(gb.p), to_circle(gb.q)};
  for (const auto& u : wa)
    for (const auto& v : wb)
      if (std::abs(u - v) < 1e-9) return AxisRelation::Asymptotic;
  auto angle = [](Complex w) {
    const double t = std::arg(w);
    return t < 0 ? t + kTwoPi : t;
  };
  auto offset = [&](Complex w) { return std::fmod(angle(w) - angle(wa[0]) + kTwoPi, kTwoPi); };
  const double end = offset(wa[1]);
  const bool in0 = offset(wb[0]) < end;
  const bool in1 = offset(wb[1]) < end;
  return in0 != in1 ? AxisRelation::Cross : AxisRelation::Disjoint;
}

bool axes_cross(const Isometry& a, const Isometry& b) { return axes_relation(a, b) == AxisRelation::Cross; }

Quad quad_vertices(const Isometry& a, const Isometry& b) {
  const double t = commutator_trace(a, b);
  if (!(t > -2.0 && t < 2.0)) throw std::invalid_argument("quad_vertices requires an elliptic commutator");
  const Isometry ai = a.inverse();
  const Isometry bi = b.inverse();
  const Isometry k(a.matrix() * b.matrix() * ai.matrix() * bi.matrix());
  const HPoint p4 = k.fixed_point();
  const HPoint p3 = bi.apply(p4);
  const HPoint p2 = ai.apply(p3);
  const HPoint p1 = b.apply(p2);
  return {p1, p2, p3, p4};
}

bool is_embedded_quadrilateral(const Quad& q) {
  std::array<Complex, 4> k;
  for (int i = 0; i < 4; ++i) k[static_cast<std::size_t>(i)] = to_klein(q[static_cast<std::size_t>(i)].z());
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (std::abs(k[static_cast<std::size_t>(i)] - k[static_cast<std::size_t>(j)]) < kSegmentTol)
        throw std::invalid_argument("quadrilateral vertices coincide");
  if (segments_meet(k[0], k[1], k[2], k[3])) return false;
  if (segments_meet(k[1], k[2], k[3], k[0])) return false;
  for (int i = 0; i < 4; ++i) {
    const Complex v = k[static_cast<std::size_t>(i)];
    if (folds_back(v, k[static_cast<std::size_t>((i + 3) % 4)], k[static_cast<std::size_t>((i + 1) % 4)])) return false;
  }
  return true;
}

bool vertices_collinear(const Quad& q) {
  const Complex a = to_klein(q[0].z());
  const Complex b = to_klein(q[1].z());
  const Complex c = to_klein(q[2].z());
  const Complex d = to_klein(q[3].z());
  return nearly_collinear(a, b, c) && nearly_collinear(a, b, d) && nearly_collinear(a, c, d);
}

double side_pairing_error(const Isometry& a, const Isometry& b, const Quad& q) {
  auto err = [](Complex u, Complex v) { return std::abs(u - v) / (1.0 + std::abs(v)); };
  return std::max({err(a.apply(q[0].z()), q[3].z()), err(a.apply(q[1].z()), q[2].z()), err(b.apply(q[1].z()), q[0].z()),
                   err(b.apply(q[2].z()), q[3].z())});
}

std::pair<Isometry, Isometry> lift_character(const Character& c) {
  if (compare(abs(c.z()), 2L) < 0) throw std::invalid_argument("lift_character requires |z| >= 2");
  const auto [x, y, z] = c.to_doubles();
  const double root = std::sqrt(std::max(0.0, z * z - 4.0));
  const double zeta = z >= 0 ? (z + root) / 2.0 : (z - root) / 2.0;
  return {Isometry(RealMat{x, -1.0, 1.0, 0.0}), Isometry(RealMat{0.0, 1.0 / zeta, -zeta, y})};
}

double PantsHexagon::max_residual() const { return *std::max_element(residuals.begin(), residuals.end()); }

PantsHexagon pants_hexagon(const Character& c) {
  for (const auto& v : c.coords())
    if (compare(v, -2L) >= 0) throw std::invalid_argument("pants_hexagon requires all coordinates < -2");
  const auto [a, b] = lift_character(c);
  const Isometry ab(a.matrix() * b.matrix());
  const std::array<Geodesic, 3> axes{a.axis(), b.axis(), ab.axis()};
  std::array<Vec3, 3> n;
  for (int i = 0; i < 3; ++i) n[static_cast<std::size_t>(i)] = geodesic_normal(axes[static_cast<std::size_t>(i)]);
  for (int i = 0; i < 3; ++i) {
    const Vec3& u = n[static_cast<std::size_t>(i)];
    const Vec3& v = n[static_cast<std::size_t>((i + 1) % 3)];
    const double cosh_d = std::abs(lorentz(u, v)) / std::sqrt(lorentz(u, u) * lorentz(v, v));
    if (!(cosh_d > 1.0 + 1e-12)) throw std::invalid_argument("pants_hexagon: boundary axes are not ultraparallel");
  }
  PantsHexagon h{
      {},
      {HPoint({0, 1}), HPoint({0, 1}), HPoint({0, 1}), HPoint({0, 1}), HPoint({0, 1}), HPoint({0, 1})},
      {},
      false,
  };
  std::array<Vec3, 6> normals;
  for (int i = 0; i < 3; ++i) {
    const auto k = static_cast<std::size_t>(i);
    normals[2 * k] = n[k];
    normals[2 * k + 1] = lorentz_cross(n[k], n[(k + 1) % 3]);
    h.sides[2 * k] = axes[k];
    h.sides[2 * k + 1] = geodesic_from_normal(normals[2 * k + 1]);
  }
  std::array<Complex, 6> klein;
  for (std::size_t k = 0; k < 6; ++k) {
    const std::size_t next = (k + 1) % 6;
    const Complex v = meet(normals[k], normals[next]);
    h.vertices[k] = HPoint(v);
    klein[k] = to_klein(v);
    const Complex t1 = tangent(h.sides[k], v);
    const Complex t2 = tangent(h.sides[next], v);
    const double cosang = std::abs(dot(t1, t2)) / (std::abs(t1) * std::abs(t2));
    h.residuals[k] = std::abs(kPi / 2.0 - std::acos(std::min(1.0, cosang)));
  }
  int positive = 0;
  int negative = 0;
  for (std::size_t k = 0; k < 6; ++k) {
    const double o = orient(klein[k], klein[(k + 1) % 6], klein[(k + 2) % 6]);
    positive += o > 0 ? 1 : 0;
    negative += o < 0 ? 1 : 0;
  }
  h.convex = positive == 6 || negative == 6;
  return h;
}

namespace closed_form {

double diagonal(double lambda, const RealMat& eta) {
  const double d = lambda - 1.0 / lambda;
  return 2.0 - eta.b * eta.c * d * d;
}

double unipotent(double s, const RealMat& eta) { return 2.0 + s * s * eta.c * eta.c; }

double rotation(double theta, const RealMat& eta) {
  const double s = std::sin(theta);
  return 2.0 + s * s * (eta.a * eta.a + eta.b * eta.b + eta.c * eta.c + eta.d * eta.d - 2.0);
}

double two_parameter(double theta, double phi, double r) {
  const double st = std::sinh(theta);
  const double sp = std::sinh(phi);
  return 2.0 + 4.0 * (r * r - 1.0) * st * st * sp * sp;
}

RealMat rotation_matrix(double theta) { return {std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta)}; }

RealMat hyperbolic_xi(double theta) {
  return {std::cosh(theta), std::sinh(theta), std::sinh(theta), std::cosh(theta)};
}

RealMat hyperbolic_eta(double phi, double r) { return {std::exp(phi), -2.0 * r * std::sinh(phi), 0.0, std::exp(-phi)}; }

}  // namespace closed_form

}  // namespace charvar
