#include "ray.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace oracle {

namespace {

struct Point {
  double x, y;
};

double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }

Point image_point(const homlab::CircleMap& m, homlab::Arc arc) {
  const homlab::Vertex a = m.chart()[arc.tail];
  const homlab::Vertex b = m.chart()[arc.head];
  if (m.rule() == homlab::StepRule::semicircle) return {a < b ? 1.0 : -1.0, 0.0};
  const double p = static_cast<double>(m.p());
  const double ta = 2 * std::numbers::pi * a / p;
  const double tb = 2 * std::numbers::pi * b / p;
  Point d{std::cos(tb) - std::cos(ta), std::sin(tb) - std::sin(ta)};
  const double len = std::hypot(d.x, d.y);
  return {d.x / len, d.y / len};
}

}  // namespace

long long ray_winding_ccw(const homlab::CircleMap& m, std::span<const homlab::Arc> walk) {
  std::vector<Point> polygon;
  for (std::size_t i = 0; i < walk.size(); ++i) {
    const homlab::Arc from = walk[i];
    const homlab::Arc to = walk[(i + 1) % walk.size()];
    const Point p = image_point(m, from);
    const Point q = image_point(m, to);
    polygon.push_back(p);
    if (m.rule() == homlab::StepRule::semicircle && p.x != q.x) {
      const homlab::Arc a{m.chart()[from.tail], m.chart()[from.head]};
      const homlab::Arc b{m.chart()[to.tail], m.chart()[to.head]};
      polygon.push_back({0.0, a.tail == b.tail ? 1.0 : -1.0});
    }
  }
  const double theta = 0.5772156649;
  const Point d{std::cos(theta), std::sin(theta)};
  long long crossings = 0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const Point p = polygon[i];
    const Point q = polygon[(i + 1) % polygon.size()];
    const double cp = cross(d, p), cq = cross(d, q);
    if ((cp < 0) == (cq < 0)) continue;
    const double t = cp / (cp - cq);
    const Point x{p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)};
    if (x.x * d.x + x.y * d.y <= 0) continue;
    crossings += cp < 0 ? 1 : -1;
  }
  return crossings;
}

}  // namespace oracle
