#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "charvar/reduction.hpp"
#include "charvar/render.hpp"

using namespace charvar;

namespace {

Canvas small(int side = 64) {
  Canvas c;
  c.width = side;
  c.height = side;
  return c;
}

}  // namespace

TEST_CASE("planes") {
  CHECK(parse_plane("yz") == Plane::YZ);
  CHECK(to_string(Plane::ZX) == "zx");
  CHECK_THROWS(parse_plane("xz"));
  const auto p = lift(Plane::ZX, 1, 2, 3);
  CHECK(p == std::array<double, 3>{2, 3, 1});
  CHECK(project(Plane::ZX, p) == std::array<double, 2>{1, 2});
  CHECK(project(Plane::YZ, {1, 2, 3}) == std::array<double, 2>{2, 3});
  CHECK(parse_image_format("ppm") == ImageFormat::Ppm);
  CHECK_THROWS(parse_image_format("png"));
}

TEST_CASE("canvas validation") {
  Canvas c = small(8);
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = small();
  c.u_hi = c.u_lo;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  CHECK_NOTHROW(small().validate());
}

TEST_CASE("isolated zero at t = -2") {
  const Contour c = level_contour(-2, Plane::XY, 0, small());
  CHECK(c.segments.empty());
  REQUIRE(c.markers.size() == 1);
  CHECK(std::abs(c.markers[0][0]) < 1e-12);
  CHECK(std::abs(c.markers[0][1]) < 1e-12);
}

TEST_CASE("tangential zeros at t = 2") {
  // kappa(x, y, 2) - 2 = (x - y)^2: zero on the diagonal without sign change.
  const Contour c = level_contour(2, Plane::XY, 2, small(60));
  CHECK(c.segments.empty());
  CHECK(c.markers.size() >= 60);
  for (const auto& m : c.markers) CHECK(std::abs(m[0] - m[1]) < 1e-9);
  CHECK(std::any_of(c.markers.begin(), c.markers.end(),
                    [](const auto& m) { return std::abs(m[0] - 2) < 1e-9 && std::abs(m[1] - 2) < 1e-9; }));
}

TEST_CASE("contour segments lie near the level set") {
  for (double t : {1.0, 6.0, 19.0})
    for (Plane p : {Plane::XY, Plane::YZ, Plane::ZX}) {
      const Canvas cv = small(96);
      const Contour c = level_contour(t, p, 0.4, cv);
      REQUIRE_FALSE(c.segments.empty());
      const double cell = (cv.u_hi - cv.u_lo) / cv.width;
      for (const auto& s : c.segments)
        for (const auto& e : {s.a, s.b}) {
          const auto q = lift(p, e[0], e[1], 0.4);
          // Linear interpolation error is bounded by the gradient times one cell.
          const double g = std::hypot(2 * q[0] - q[1] * q[2], 2 * q[1] - q[0] * q[2], 2 * q[2] - q[0] * q[1]);
          REQUIRE(std::abs(kappa_of(q[0], q[1], q[2]) - t) <= g * cell + 0.1);
        }
    }
}

TEST_CASE("region boundary at t = 19") {
  const Canvas cv = small(128);
  const Contour c = region_boundary(19, cv);
  REQUIRE_FALSE(c.segments.empty());
  for (const auto& s : c.segments) {
    const double x = s.a[0], y = s.a[1];
    const double f = (x * x - 4) * (y * y - 4) + 17;
    const double g = std::hypot(2 * x * (y * y - 4), 2 * y * (x * x - 4));
    REQUIRE(std::abs(f) <= g * (cv.u_hi - cv.u_lo) / cv.width + 0.5);
  }
}

TEST_CASE("rendering is byte deterministic") {
  const Canvas cv = small(80);
  const auto a = render_level_contour(19, Plane::XY, 0, cv, ImageFormat::Svg, true);
  CHECK(a == render_level_contour(19, Plane::XY, 0, cv, ImageFormat::Svg, true));
  CHECK(a.find("<svg") != std::string::npos);
  CHECK(a.find("<path") != std::string::npos);
  const auto p = render_level_contour(1, Plane::YZ, 0.5, cv, ImageFormat::Ppm);
  CHECK(p.rfind("P6\n80 80\n255\n", 0) == 0);
  CHECK(p.size() == std::string("P6\n80 80\n255\n").size() + 80 * 80 * 3);
  CHECK_THROWS_AS(render_level_contour(1, Plane::YZ, 0, cv, ImageFormat::Svg, true), std::invalid_argument);
}

TEST_CASE("empty scatter draws the axes only") {
  const auto s = render_orbit_scatter({}, Plane::XY, small(), ImageFormat::Svg);
  CHECK(s.plotted == 0);
  CHECK(s.bytes.find("<circle") == std::string::npos);
  CHECK(s.bytes.find("<path") != std::string::npos);
  const auto p = render_orbit_scatter({}, Plane::XY, small(), ImageFormat::Ppm);
  CHECK(p.bytes.rfind("P6\n64 64\n255\n", 0) == 0);
}

TEST_CASE("t = 0 orbit stays in the square") {
  const double x = 0.3, y = 0.5;
  const double z = (x * y + std::sqrt((x * x - 4) * (y * y - 4) - 8)) / 2;
  const auto o = orbit(Character::floating(x, y, z), OrbitPolicy::uniform(3), 2000);
  const auto pts = as_samples(o);
  for (const auto& p : pts)
    for (double v : p.point.to_doubles()) CHECK(std::abs(v) <= 2 + 1e-9);
  const auto img = render_orbit_scatter(pts, Plane::XY, small(), ImageFormat::Svg, 0.0);
  CHECK(img.plotted == pts.size());
  CHECK(img.skipped == 0);
}

TEST_CASE("omega orbit points stay in omega") {
  const auto start = sample_omega_zero(52, 1, 3).front();
  const auto o = orbit(start, OrbitPolicy::uniform(4), 30);
  const auto pts = as_samples(o);
  for (const auto& p : pts) {
    const auto v = p.point.to_doubles();
    if (std::abs(kappa_of(v[0], v[1], v[2]) - 52) <= 1e-6) CHECK(in_omega(p.point));
  }
  const auto img = render_orbit_scatter(pts, Plane::XY, small(), ImageFormat::Svg, 52.0);
  CHECK(img.plotted + img.skipped == pts.size());
  CHECK(img.plotted > 0);
}

TEST_CASE("scatter drops points off the level") {
  std::vector<LevelSample> pts{{Character::floating(0, 0, 0), 1}, {Character::floating(1, 1, 1), 1}};
  const auto img = render_orbit_scatter(pts, Plane::XY, small(), ImageFormat::Svg, -2.0);
  CHECK(img.plotted == 1);
  CHECK(img.skipped == 1);
}
