#pragma once

#include <array>
#include <complex>
#include <string_view>
#include <utility>

#include "charvar/character.hpp"

namespace charvar {

using Complex = std::complex<double>;

/// Row-major 2x2 matrix [[a, b], [c, d]] over double or std::complex<double>.
template <class T>
struct Mat2 {
  T a{1}, b{0}, c{0}, d{1};

  T trace() const { return a + d; }
  T det() const { return a * d - b * c; }
  /// Adjugate; the inverse when det = 1.
  Mat2 adjugate() const { return {d, -b, -c, a}; }

  friend Mat2 operator*(const Mat2& p, const Mat2& q) {
    return {p.a * q.a + p.b * q.c, p.a * q.b + p.b * q.d, p.c * q.a + p.d * q.c, p.c * q.b + p.d * q.d};
  }
};

using RealMat = Mat2<double>;
using ComplexMat = Mat2<Complex>;

/// tr(a b a^-1 b^-1) for unimodular a, b.
template <class T>
T commutator_trace(const Mat2<T>& p, const Mat2<T>& q) {
  return (p * q * p.adjugate() * q.adjugate()).trace();
}

enum class IsometryClass { Central, Elliptic, Parabolic, Hyperbolic };
std::string_view to_string(IsometryClass k);

/// A point of R u {inf}, the boundary of the upper half-plane.
struct BoundaryPoint {
  double x = 0.0;
  bool infinite = false;

  static BoundaryPoint at_infinity() { return {0.0, true}; }
};

/// Complete geodesic given by its two (distinct) endpoints.
struct Geodesic {
  BoundaryPoint p;
  BoundaryPoint q;
};

/// Point of the upper half-plane. Throws std::invalid_argument unless Im z > 0.
class HPoint {
 public:
  explicit HPoint(Complex z);
  Complex z() const { return z_; }

 private:
  Complex z_;
};

/// Real unimodular matrix acting by Moebius transformations.
class Isometry {
 public:
  Isometry() = default;
  /// Throws std::invalid_argument unless |det - 1| <= 1e-12 (relative to the entry scale).
  explicit Isometry(const RealMat& m);
  /// Rescales a matrix of positive determinant to determinant 1.
  static Isometry normalized(const RealMat& m);

  const RealMat& matrix() const { return m_; }
  double trace() const { return m_.trace(); }
  IsometryClass classify() const;
  Isometry inverse() const { return Isometry(m_.adjugate()); }

  Complex apply(Complex z) const;
  HPoint apply(const HPoint& p) const { return HPoint(apply(p.z())); }
  BoundaryPoint apply(const BoundaryPoint& p) const;

  /// Endpoints of the invariant axis. Throws std::invalid_argument unless hyperbolic.
  Geodesic axis() const;
  /// The fixed point in the upper half-plane. Throws std::invalid_argument unless elliptic.
  HPoint fixed_point() const;

  friend Isometry operator*(const Isometry& p, const Isometry& q) { return Isometry::normalized(p.m_ * q.m_); }

 private:
  RealMat m_{};
};

double commutator_trace(const Isometry& a, const Isometry& b);

/// Position of a boundary point on the unit circle after w = (p - i) / (p + i).
Complex to_circle(const BoundaryPoint& p);
/// Poincare disk coordinate of an upper half-plane point.
Complex to_disk(Complex z);
/// Klein (projective) disk coordinate of an upper half-plane point.
Complex to_klein(Complex z);

enum class AxisRelation { Cross, Disjoint, Asymptotic };
std::string_view to_string(AxisRelation r);

/// Endpoint interleaving on the boundary circle. Endpoints closer than 1e-9
/// on the circle are reported Asymptotic. Throws unless both are hyperbolic.
AxisRelation axes_relation(const Isometry& a, const Isometry& b);
bool axes_cross(const Isometry& a, const Isometry& b);

using Quad = std::array<HPoint, 4>;

/// p4 = p, p3 = b^-1 p, p2 = a^-1 b^-1 p, p1 = b a^-1 b^-1 p, where p is the
/// fixed point of [a, b]. Throws std::invalid_argument unless -2 < tr [a,b] < 2.
Quad quad_vertices(const Isometry& a, const Isometry& b);

/// Segments p1p2, p2p3, p3p4, p4p1 meet only at shared endpoints (checked in
/// the Klein model, tolerance 1e-10). A straight angle is allowed.
/// Throws std::invalid_argument if two vertices coincide.
bool is_embedded_quadrilateral(const Quad& q);

/// All four vertices on one geodesic.
bool vertices_collinear(const Quad& q);

/// Largest endpoint error of the side pairings a: p1 -> p4, p2 -> p3 and
/// b: p2 -> p1, p3 -> p4.
double side_pairing_error(const Isometry& a, const Isometry& b, const Quad& q);

/// rho(X) = [[x,-1],[1,0]], rho(Y) = [[0,1/zeta],[-zeta,y]], zeta the real root
/// of zeta^2 - z zeta + 1 with |zeta| >= 1. Throws std::invalid_argument if |z| < 2.
std::pair<Isometry, Isometry> lift_character(const Character& c);

struct PantsHexagon {
  /// Alternating: axis(X), perp(X,Y), axis(Y), perp(Y,XY), axis(XY), perp(XY,X).
  std::array<Geodesic, 6> sides;
  /// Corner k joins sides k and k+1 (mod 6).
  std::array<HPoint, 6> vertices;
  /// |angle - pi/2| at each corner, measured from the half-plane tangents.
  std::array<double, 6> residuals;
  /// Vertices form a convex polygon in the Klein model.
  bool convex = false;

  double max_residual() const;
};

/// Right-angled hexagon cut out by the three boundary axes of a pants
/// character. Throws std::invalid_argument unless every coordinate is < -2 or
/// if two axes are not ultraparallel.
PantsHexagon pants_hexagon(const Character& c);

namespace closed_form {

/// tr [diag(l, 1/l), [[a,b],[c,d]]] = 2 - bc (l - 1/l)^2.
double diagonal(double lambda, const RealMat& eta);
/// tr [[[1,s],[0,1]], [[a,b],[c,d]]] = 2 + s^2 c^2.
double unipotent(double s, const RealMat& eta);
/// tr [rotation(theta), [[a,b],[c,d]]] = 2 + sin^2(theta) (a^2+b^2+c^2+d^2-2).
double rotation(double theta, const RealMat& eta);
/// tr [xi, eta] = 2 + 4 (r^2 - 1) sinh^2(theta) sinh^2(phi) for the pair below.
double two_parameter(double theta, double phi, double r);

RealMat rotation_matrix(double theta);
/// xi = [[cosh t, sinh t], [sinh t, cosh t]].
RealMat hyperbolic_xi(double theta);
/// eta = [[e^phi, -2 r sinh phi], [0, e^-phi]], fixing r and infinity.
RealMat hyperbolic_eta(double phi, double r);

}  // namespace closed_form

}  // namespace charvar
