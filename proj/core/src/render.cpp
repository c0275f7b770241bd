#include "charvar/render.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace charvar {

namespace {

using Field = std::function<double(double, double)>;

// Fixed two-decimal rendering of pixel coordinates.
std::string num(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
  if (ec != std::errc()) return "0";
  std::string s(buf, p);
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string hex(const std::array<std::uint8_t, 3>& c) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s = "#";
  for (auto b : c) {
    s += kDigits[b >> 4];
    s += kDigits[b & 15];
  }
  return s;
}

Contour march(const Field& f, const Canvas& cv) {
  const int nu = cv.width;
  const int nv = cv.height;
  const double du = (cv.u_hi - cv.u_lo) / nu;
  const double dv = (cv.v_hi - cv.v_lo) / nv;
  auto u_at = [&](int i) { return cv.u_lo + (cv.u_hi - cv.u_lo) * i / nu; };
  auto v_at = [&](int j) { return cv.v_lo + (cv.v_hi - cv.v_lo) * j / nv; };

  std::vector<double> g(static_cast<std::size_t>((nu + 1) * (nv + 1)));
  auto at = [&](int i, int j) -> double& { return g[static_cast<std::size_t>(j * (nu + 1) + i)]; };
  double scale = 0;
  for (int j = 0; j <= nv; ++j)
    for (int i = 0; i <= nu; ++i) {
      at(i, j) = f(u_at(i), v_at(j));
      scale = std::max(scale, std::abs(at(i, j)));
    }
  // Values within rounding of zero count as zero (nonnegative).
  const double eps = 1e-9 * std::max(1.0, scale);
  for (auto& v : g)
    if (std::abs(v) <= eps) v = 0;

  Contour out;
  auto cross_point = [](double ua, double va, double fa, double ub, double vb, double fb) {
    const double s = fa / (fa - fb);
    return std::array<double, 2>{ua + s * (ub - ua), va + s * (vb - va)};
  };
  for (int j = 0; j < nv; ++j) {
    for (int i = 0; i < nu; ++i) {
      const double u0 = u_at(i), u1 = u_at(i + 1), v0 = v_at(j), v1 = v_at(j + 1);
      const double f00 = at(i, j), f10 = at(i + 1, j), f11 = at(i + 1, j + 1), f01 = at(i, j + 1);
      const bool n00 = f00 < 0, n10 = f10 < 0, n11 = f11 < 0, n01 = f01 < 0;
      // Edges: 0 bottom (00-10), 1 right (10-11), 2 top (01-11), 3 left (00-01).
      std::array<std::array<double, 2>, 4> p{};
      std::array<bool, 4> hit{n00 != n10, n10 != n11, n01 != n11, n00 != n01};
      if (hit[0]) p[0] = cross_point(u0, v0, f00, u1, v0, f10);
      if (hit[1]) p[1] = cross_point(u1, v0, f10, u1, v1, f11);
      if (hit[2]) p[2] = cross_point(u0, v1, f01, u1, v1, f11);
      if (hit[3]) p[3] = cross_point(u0, v0, f00, u0, v1, f01);
      const int count = hit[0] + hit[1] + hit[2] + hit[3];
      if (count == 2) {
        int e[2];
        int k = 0;
        for (int m = 0; m < 4; ++m)
          if (hit[static_cast<std::size_t>(m)]) e[k++] = m;
        out.segments.push_back({p[static_cast<std::size_t>(e[0])], p[static_cast<std::size_t>(e[1])]});
      } else if (count == 4) {
        const bool nc = f(u0 + du / 2, v0 + dv / 2) < 0;
        if (nc == n00) {
          // 00 and 11 joined through the center: cut off corners 10 and 01.
          out.segments.push_back({p[0], p[1]});
          out.segments.push_back({p[2], p[3]});
        } else {
          out.segments.push_back({p[0], p[3]});
          out.segments.push_back({p[1], p[2]});
        }
      }
    }
  }

  // Zeros of the grid that no sign change accounts for.
  for (int j = 0; j <= nv; ++j)
    for (int i = 0; i <= nu; ++i) {
      if (std::abs(at(i, j)) > eps) continue;
      bool sign_change = false;
      for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di) {
          const int a = i + di, b = j + dj;
          if (a < 0 || b < 0 || a > nu || b > nv) continue;
          if (at(a, b) < -eps) sign_change = true;
        }
      if (!sign_change) out.markers.push_back({u_at(i), v_at(j)});
    }
  return out;
}

struct Raster {
  int w;
  int h;
  std::vector<std::uint8_t> rgb;

  Raster(int w_, int h_, const std::array<std::uint8_t, 3>& bg)
      : w(w_), h(h_), rgb(static_cast<std::size_t>(w_ * h_ * 3)) {
    for (std::size_t k = 0; k < rgb.size(); k += 3) std::copy(bg.begin(), bg.end(), rgb.begin() + static_cast<long>(k));
  }

  void set(int x, int y, const std::array<std::uint8_t, 3>& c) {
    if (x < 0 || y < 0 || x >= w || y >= h) return;
    const auto k = static_cast<std::size_t>((y * w + x) * 3);
    rgb[k] = c[0];
    rgb[k + 1] = c[1];
    rgb[k + 2] = c[2];
  }

  void line(double x0, double y0, double x1, double y1, const std::array<std::uint8_t, 3>& c) {
    const int n = static_cast<int>(std::ceil(std::max(std::abs(x1 - x0), std::abs(y1 - y0)))) + 1;
    for (int k = 0; k <= n; ++k) {
      const double s = static_cast<double>(k) / n;
      set(static_cast<int>(std::floor(x0 + s * (x1 - x0))), static_cast<int>(std::floor(y0 + s * (y1 - y0))), c);
    }
  }

  void dot(double x, double y, int r, const std::array<std::uint8_t, 3>& c) {
    const int cx = static_cast<int>(std::floor(x));
    const int cy = static_cast<int>(std::floor(y));
    for (int dy = -r; dy <= r; ++dy)
      for (int dx = -r; dx <= r; ++dx) set(cx + dx, cy + dy, c);
  }

  std::string ppm() const {
    std::string s = "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
    s.append(rgb.begin(), rgb.end());
    return s;
  }
};

std::array<std::string_view, 2> axis_names(Plane p) {
  switch (p) {
    case Plane::XY:
      return {"x", "y"};
    case Plane::YZ:
      return {"y", "z"};
    case Plane::ZX:
      return {"z", "x"};
  }
  return {"u", "v"};
}

std::string svg_open(const Canvas& cv, Plane plane) {
  const std::string w = std::to_string(cv.width);
  const std::string h = std::to_string(cv.height);
  std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + w + "\" height=\"" + h +
       "\" viewBox=\"0 0 " + w + " " + h + "\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + w + "\" height=\"" + h + "\" fill=\"" + hex(cv.background) + "\"/>\n";
  std::string d;
  if (cv.u_lo <= 0 && 0 <= cv.u_hi) d += "M" + num(cv.px(0)) + " 0 L" + num(cv.px(0)) + " " + h + " ";
  if (cv.v_lo <= 0 && 0 <= cv.v_hi) d += "M0 " + num(cv.py(0)) + " L" + w + " " + num(cv.py(0));
  if (!d.empty())
    s += "<path d=\"" + d + "\" stroke=\"" + hex(cv.axis_color) + "\" stroke-width=\"1\" fill=\"none\"/>\n";
  const auto names = axis_names(plane);
  s += "<text x=\"" + num(cv.width - 12.0) + "\" y=\"" + num(cv.height - 4.0) + "\" font-size=\"12\" fill=\"" +
       hex(cv.axis_color) + "\">" + std::string(names[0]) + "</text>\n";
  s += "<text x=\"4\" y=\"14\" font-size=\"12\" fill=\"" + hex(cv.axis_color) + "\">" + std::string(names[1]) +
       "</text>\n";
  return s;
}

void raster_axes(Raster& r, const Canvas& cv) {
  if (cv.u_lo <= 0 && 0 <= cv.u_hi) r.line(cv.px(0), 0, cv.px(0), cv.height - 1, cv.axis_color);
  if (cv.v_lo <= 0 && 0 <= cv.v_hi) r.line(0, cv.py(0), cv.width - 1, cv.py(0), cv.axis_color);
}

std::string svg_contour(const Contour& c, const Canvas& cv, const std::array<std::uint8_t, 3>& color) {
  std::string s;
  if (!c.segments.empty()) {
    std::string d;
    for (const auto& seg : c.segments)
      d += "M" + num(cv.px(seg.a[0])) + " " + num(cv.py(seg.a[1])) + " L" + num(cv.px(seg.b[0])) + " " +
           num(cv.py(seg.b[1])) + " ";
    d.pop_back();
    s += "<path d=\"" + d + "\" stroke=\"" + hex(color) + "\" stroke-width=\"1\" fill=\"none\"/>\n";
  }
  for (const auto& m : c.markers)
    s += "<circle cx=\"" + num(cv.px(m[0])) + "\" cy=\"" + num(cv.py(m[1])) + "\" r=\"2.00\" fill=\"" + hex(color) +
         "\"/>\n";
  return s;
}

void raster_contour(Raster& r, const Contour& c, const Canvas& cv, const std::array<std::uint8_t, 3>& color) {
  for (const auto& seg : c.segments) r.line(cv.px(seg.a[0]), cv.py(seg.a[1]), cv.px(seg.b[0]), cv.py(seg.b[1]), color);
  for (const auto& m : c.markers) r.dot(cv.px(m[0]), cv.py(m[1]), 1, color);
}

}  // namespace

std::string_view to_string(Plane p) {
  switch (p) {
    case Plane::XY:
      return "xy";
    case Plane::YZ:
      return "yz";
    case Plane::ZX:
      return "zx";
  }
  return "?";
}

Plane parse_plane(std::string_view text) {
  if (text == "xy") return Plane::XY;
  if (text == "yz") return Plane::YZ;
  if (text == "zx") return Plane::ZX;
  throw ParseError("unknown plane '" + std::string(text) + "' (xy | yz | zx)");
}

std::array<double, 3> lift(Plane p, double u, double v, double slice) {
  switch (p) {
    case Plane::XY:
      return {u, v, slice};
    case Plane::YZ:
      return {slice, u, v};
    case Plane::ZX:
      return {v, slice, u};
  }
  return {u, v, slice};
}

std::array<double, 2> project(Plane p, const std::array<double, 3>& q) {
  switch (p) {
    case Plane::XY:
      return {q[0], q[1]};
    case Plane::YZ:
      return {q[1], q[2]};
    case Plane::ZX:
      return {q[2], q[0]};
  }
  return {q[0], q[1]};
}

std::string_view to_string(ImageFormat f) { return f == ImageFormat::Svg ? "svg" : "ppm"; }

ImageFormat parse_image_format(std::string_view text) {
  if (text == "svg") return ImageFormat::Svg;
  if (text == "ppm") return ImageFormat::Ppm;
  throw ParseError("unknown image format '" + std::string(text) + "' (svg | ppm)");
}

void Canvas::validate() const {
  if (width < 16 || height < 16) throw std::invalid_argument("canvas must be at least 16x16 pixels");
  if (!(u_hi > u_lo) || !(v_hi > v_lo) || !std::isfinite(u_lo) || !std::isfinite(u_hi) || !std::isfinite(v_lo) ||
      !std::isfinite(v_hi))
    throw std::invalid_argument("canvas window must be a nondegenerate finite rectangle");
}

Contour level_contour(double t, Plane plane, double slice, const Canvas& canvas) {
  canvas.validate();
  return march(
      [&](double u, double v) {
        const auto q = lift(plane, u, v, slice);
        return kappa_of(q[0], q[1], q[2]) - t;
      },
      canvas);
}

Contour region_boundary(double t, const Canvas& canvas) {
  canvas.validate();
  return march([&](double x, double y) { return (x * x - 4.0) * (y * y - 4.0) + t - 2.0; }, canvas);
}

std::string render_level_contour(double t, Plane plane, double slice, const Canvas& canvas, ImageFormat format,
                                 bool overlay_region) {
  const Contour c = level_contour(t, plane, slice, canvas);
  std::optional<Contour> overlay;
  if (overlay_region) {
    if (plane != Plane::XY) throw std::invalid_argument("region overlay is defined in the xy-plane only");
    overlay = region_boundary(t, canvas);
  }
  if (format == ImageFormat::Svg) {
    std::string s = svg_open(canvas, plane);
    if (overlay) s += svg_contour(*overlay, canvas, canvas.overlay_color);
    s += svg_contour(c, canvas, canvas.curve_color);
    s += "</svg>\n";
    return s;
  }
  Raster r(canvas.width, canvas.height, canvas.background);
  raster_axes(r, canvas);
  if (overlay) raster_contour(r, *overlay, canvas, canvas.overlay_color);
  raster_contour(r, c, canvas, canvas.curve_color);
  return r.ppm();
}

ScatterImage render_orbit_scatter(const std::vector<LevelSample>& points, Plane plane, const Canvas& canvas,
                                  ImageFormat format, std::optional<double> level) {
  canvas.validate();
  ScatterImage out;
  std::vector<std::pair<std::array<double, 2>, double>> kept;
  for (const auto& s : points) {
    const auto q = s.point.to_doubles();
    bool ok = std::isfinite(q[0]) && std::isfinite(q[1]) && std::isfinite(q[2]);
    if (ok && level) ok = std::abs(kappa_of(q[0], q[1], q[2]) - *level) <= 1e-6;
    if (!ok) {
      ++out.skipped;
      continue;
    }
    kept.emplace_back(project(plane, q), s.weight);
  }
  out.plotted = kept.size();
  double wmax = 0;
  for (const auto& k : kept) wmax = std::max(wmax, k.second);

  if (format == ImageFormat::Svg) {
    std::string s = svg_open(canvas, plane);
    for (const auto& [p, w] : kept) {
      const double x = canvas.px(p[0]);
      const double y = canvas.py(p[1]);
      if (x < 0 || y < 0 || x > canvas.width || y > canvas.height) continue;
      const double opacity = wmax > 0 ? std::clamp(w / wmax, 0.05, 1.0) : 1.0;
      s += "<circle cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"1.00\" fill=\"" + hex(canvas.point_color) +
           "\" fill-opacity=\"" + num(opacity) + "\"/>\n";
    }
    s += "</svg>\n";
    out.bytes = std::move(s);
    return out;
  }

  // Weighted density, log-scaled into the point colour over the background.
  std::vector<double> density(static_cast<std::size_t>(canvas.width * canvas.height), 0.0);
  for (const auto& [p, w] : kept) {
    const auto x = static_cast<long>(std::floor(canvas.px(p[0])));
    const auto y = static_cast<long>(std::floor(canvas.py(p[1])));
    if (x < 0 || y < 0 || x >= canvas.width || y >= canvas.height) continue;
    density[static_cast<std::size_t>(y * canvas.width + x)] += w;
  }
  const double dmax = *std::max_element(density.begin(), density.end());
  Raster r(canvas.width, canvas.height, canvas.background);
  raster_axes(r, canvas);
  if (dmax > 0) {
    for (int y = 0; y < canvas.height; ++y)
      for (int x = 0; x < canvas.width; ++x) {
        const double d = density[static_cast<std::size_t>(y * canvas.width + x)];
        if (d <= 0) continue;
        const double s = std::log1p(d) / std::log1p(dmax);
        const double a = 0.25 + 0.75 * s;
        std::array<std::uint8_t, 3> c{};
        for (std::size_t k = 0; k < 3; ++k)
          c[k] = static_cast<std::uint8_t>(std::lround((1 - a) * canvas.background[k] + a * canvas.point_color[k]));
        r.set(x, y, c);
      }
  }
  out.bytes = r.ppm();
  return out;
}

}  // namespace charvar
