#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "charvar/dynamics.hpp"

namespace charvar {

/// Coordinate plane of a slice: XY at fixed z, YZ at fixed x, ZX at fixed y.
/// Horizontal/vertical axes are (x, y), (y, z), (z, x) respectively.
enum class Plane { XY, YZ, ZX };
std::string_view to_string(Plane p);
Plane parse_plane(std::string_view text);

/// Lifts plane coordinates (u, v) at the slice value to a point of R^3.
std::array<double, 3> lift(Plane p, double u, double v, double slice);
/// Projects a point of R^3 to (u, v).
std::array<double, 2> project(Plane p, const std::array<double, 3>& q);

enum class ImageFormat { Svg, Ppm };
std::string_view to_string(ImageFormat f);
ImageFormat parse_image_format(std::string_view text);

struct Canvas {
  int width = 512;
  int height = 512;
  double u_lo = -3, u_hi = 3;
  double v_lo = -3, v_hi = 3;

  std::array<std::uint8_t, 3> background{255, 255, 255};
  std::array<std::uint8_t, 3> axis_color{160, 160, 160};
  std::array<std::uint8_t, 3> curve_color{20, 60, 180};
  std::array<std::uint8_t, 3> overlay_color{200, 40, 40};
  std::array<std::uint8_t, 3> point_color{0, 0, 0};

  /// Throws std::invalid_argument if width or height < 16 or the window is degenerate.
  void validate() const;
  double px(double u) const { return (u - u_lo) / (u_hi - u_lo) * width; }
  double py(double v) const { return height - (v - v_lo) / (v_hi - v_lo) * height; }
};

struct Segment {
  std::array<double, 2> a;
  std::array<double, 2> b;
};

/// Marching-squares output in plane coordinates. `markers` are grid nodes
/// where the function vanishes without changing sign nearby (isolated or
/// tangential zeros such as the origin at t = -2).
struct Contour {
  std::vector<Segment> segments;
  std::vector<std::array<double, 2>> markers;
};

/// Zero set of kappa - t on the slice, one grid node per pixel corner.
/// Ambiguous (saddle) cells are resolved by the sign at the cell center.
Contour level_contour(double t, Plane plane, double slice, const Canvas& canvas);

/// Boundary of the projection region (x^2 - 4)(y^2 - 4) + t - 2 >= 0 in the
/// xy-plane.
Contour region_boundary(double t, const Canvas& canvas);

/// Byte-deterministic image of the contour; with `overlay_region` (XY plane
/// only) the projection-region boundary is drawn too.
std::string render_level_contour(double t, Plane plane, double slice, const Canvas& canvas, ImageFormat format,
                                 bool overlay_region = false);

struct ScatterImage {
  std::string bytes;
  std::size_t plotted = 0;
  /// Points dropped because |kappa - level| > 1e-6 or a coordinate is not finite.
  std::size_t skipped = 0;
};

/// Scatter of the points projected to the plane. SVG draws one circle per
/// point with opacity proportional to weight; PPM accumulates a weighted
/// density heatmap. When `level` is given only points on it (to 1e-6) are drawn.
ScatterImage render_orbit_scatter(const std::vector<LevelSample>& points, Plane plane, const Canvas& canvas,
                                  ImageFormat format, std::optional<double> level = std::nullopt);

}  // namespace charvar
