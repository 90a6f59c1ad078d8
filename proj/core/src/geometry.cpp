#include "pinball/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>

#include "pinball/error.hpp"

namespace pinball {

namespace {

// Closed-segment intersection test for the simplicity check.
bool segments_touch(Vec2 a, Vec2 b, Vec2 c, Vec2 d, double eps) {
  const Vec2 r = b - a;
  const Vec2 q = d - c;
  const double denom = cross(r, q);
  const double scale = norm(r) * norm(q);
  if (std::abs(denom) <= 1e-14 * scale) {
    if (std::abs(cross(c - a, r)) > eps * norm(r)) return false;  // parallel, apart
    const double rr = dot(r, r);
    const double t0 = dot(c - a, r) / rr;
    const double t1 = dot(d - a, r) / rr;
    const double lo = std::min(t0, t1);
    const double hi = std::max(t0, t1);
    return hi >= -eps && lo <= 1.0 + eps;
  }
  const double t = cross(c - a, q) / denom;
  const double u = cross(c - a, r) / denom;
  return t >= -eps && t <= 1.0 + eps && u >= -eps && u <= 1.0 + eps;
}

// Adjacent sides may only share their common vertex.
bool adjacent_overlap(Vec2 a, Vec2 shared, Vec2 c) {
  const Vec2 r = a - shared;
  const Vec2 q = c - shared;
  const double scale = norm(r) * norm(q);
  return std::abs(cross(r, q)) <= 1e-14 * scale && dot(r, q) > 0.0;
}

double reduce_angle(double a) {
  // atan2 range is [-pi, pi]; fold -pi onto pi.
  if (a <= -kPi + 1e-15) return kPi;
  if (a == 0.0) return 0.0;  // drop negative zero
  return a;
}

}  // namespace

Polygon::Polygon(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
  const std::size_t d = vertices_.size();
  if (d < 3) throw Error(ErrorCode::NonSimplePolygon, "a polygon needs at least 3 vertices");

  lengths_.resize(d);
  directions_.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    const Vec2 e = vertices_[(i + 1) % d] - vertices_[i];
    lengths_[i] = norm(e);
    perimeter_ += lengths_[i];
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (!(lengths_[i] > 1e-12 * perimeter_)) {
      throw Error(ErrorCode::DegenerateSide, "side " + std::to_string(i + 1) + " has zero length");
    }
    directions_[i] = (vertices_[(i + 1) % d] - vertices_[i]) / lengths_[i];
  }

  const double eps = 1e-12;
  for (std::size_t i = 0; i < d; ++i) {
    const Vec2 a = vertices_[i];
    const Vec2 b = vertices_[(i + 1) % d];
    for (std::size_t j = i + 1; j < d; ++j) {
      const Vec2 c = vertices_[j];
      const Vec2 e = vertices_[(j + 1) % d];
      bool bad = false;
      if (j == i + 1) {
        bad = adjacent_overlap(a, b, e);
      } else if (i == 0 && j == d - 1) {
        bad = adjacent_overlap(b, a, c);
      } else {
        bad = segments_touch(a, b, c, e, eps);
      }
      if (bad) {
        throw Error(ErrorCode::NonSimplePolygon, "sides " + std::to_string(i + 1) + " and " +
                                                     std::to_string(j + 1) + " intersect");
      }
    }
  }

  for (std::size_t i = 0; i < d; ++i) area_ += cross(vertices_[i], vertices_[(i + 1) % d]);
  area_ *= 0.5;
  if (!(area_ > 0.0)) throw Error(ErrorCode::ClockwiseOrientation, "vertices must be counterclockwise");

  for (std::size_t i = 0; i < d; ++i) {
    if (cross(directions_[i], directions_[(i + 1) % d]) < 0.0) convex_ = false;
    for (std::size_t j = 0; j < d; ++j) {
      diameter_ = std::max(diameter_, distance(vertices_[i], vertices_[j]));
    }
  }

  beta_.assign(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (i == j) continue;
      // beta = pi + (phi_i - phi_j)
      const double c = cross(directions_[j], directions_[i]);
      const double s = dot(directions_[j], directions_[i]);
      beta_[i * d + j] = reduce_angle(std::atan2(-c, -s));
    }
  }
  // Keep the table exactly antisymmetric.
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      if (std::abs(beta_[i * d + j]) < kPi) beta_[j * d + i] = -beta_[i * d + j];
    }
  }
}

Vec2 Polygon::velocity(int side, double theta) const {
  return normal(side) * std::cos(theta) + direction(side) * std::sin(theta);
}

Polygon build_polygon(std::vector<Vec2> vertices) { return Polygon(std::move(vertices)); }

Polygon read_polygon(std::istream& in) {
  std::vector<Vec2> pts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    Vec2 p;
    std::string rest;
    if (!(ls >> p.x >> p.y) || (ls >> rest)) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected \"x y\"");
    }
    pts.push_back(p);
  }
  return Polygon(std::move(pts));
}

Polygon read_polygon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  return read_polygon(in);
}

RayHit cast_ray(const Polygon& polygon, BoundaryPoint from, double theta) {
  const double vtol = polygon.vertex_tolerance();
  const double len = polygon.side_length(from.side);
  if (!(from.s > vtol && from.s < len - vtol)) {
    throw Error(ErrorCode::VertexStart, "ray starts at a corner");
  }
  if (!(std::abs(theta) < kPi / 2 - kGrazingTolerance)) {
    throw Error(ErrorCode::GrazingRay, "departure angle too close to +-pi/2");
  }

  const Vec2 p = polygon.point(from);
  const Vec2 d = polygon.velocity(from.side, theta);
  const int n = static_cast<int>(polygon.size());
  const int own = static_cast<int>(polygon.wrap(from.side));

  RayHit best;
  best.segment_length = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    if (j == own) continue;
    const Vec2 a = polygon.side_start(j);
    const Vec2 u = polygon.direction(j);
    const double denom = cross(d, u);
    if (std::abs(denom) < 1e-15) continue;
    const double t = cross(a - p, u) / denom;
    const double sigma = cross(a - p, d) / denom;
    const double lj = polygon.side_length(j);
    if (t <= vtol || sigma < -vtol || sigma > lj + vtol) continue;
    if (t < best.segment_length) {
      best.segment_length = t;
      best.target = {j, std::clamp(sigma, 0.0, lj)};
      best.classification =
          (sigma < vtol || sigma > lj - vtol) ? HitKind::Vertex : HitKind::Interior;
    }
  }
  if (!std::isfinite(best.segment_length)) {
    throw Error(ErrorCode::NoHit, "ray does not meet the boundary");
  }
  return best;
}

Projection project(const Polygon& polygon, int from_side, double s, double theta, int to_side) {
  const double out = polygon.beta(from_side, to_side) - theta;
  if (!(std::abs(out) < kPi / 2)) {
    throw Error(ErrorCode::ParallelLines, "link from side " + std::to_string(from_side + 1) +
                                              " to side " + std::to_string(to_side + 1) +
                                              " is not a valid reflection");
  }
  const Vec2 p = polygon.point(from_side, s);
  const Vec2 d = polygon.velocity(from_side, theta);
  const Vec2 a = polygon.side_start(to_side);
  const Vec2 nj = polygon.normal(to_side);
  // dot(nj, d) = -cos(out) != 0
  const double t = dot(nj, a - p) / dot(nj, d);
  const Vec2 hit = p + d * t;
  return {dot(hit - a, polygon.direction(to_side)), t, out};
}

double oriented_length(const Polygon& polygon, BoundaryPoint from, double theta, int to_side) {
  return project(polygon, from.side, from.s, theta, to_side).length;
}

double oriented_length(const Polygon& polygon, BoundaryPoint from, double theta) {
  const RayHit hit = cast_ray(polygon, from, theta);
  return oriented_length(polygon, from, theta, hit.target.side);
}

Unfolding unfold(const Polygon& polygon, std::span<const int> word, BoundaryPoint start,
                 double theta) {
  if (word.size() < 2 || polygon.wrap(word[0]) != polygon.wrap(start.side)) {
    throw Error(ErrorCode::IllegalItinerary, "word must start on the starting side");
  }
  const double vtol = polygon.vertex_tolerance();
  const int n = static_cast<int>(polygon.size());
  const std::size_t period = word.size();

  Unfolding out;
  out.origin = polygon.point(start);
  out.direction = polygon.velocity(start.side, theta);
  out.copies.push_back(Isometry::identity());

  double prev_t = 0.0;
  int current_side = static_cast<int>(polygon.wrap(word[0]));
  for (std::size_t k = 1; k <= period; ++k) {
    const int target = static_cast<int>(polygon.wrap(word[k % period]));
    const Isometry& g = out.copies.back();

    double best_t = std::numeric_limits<double>::infinity();
    int best_side = -1;
    double best_sigma = 0.0;
    for (int m = 0; m < n; ++m) {
      if (m == current_side) continue;
      const Vec2 a = g(polygon.side_start(m));
      const Vec2 u = g.linear(polygon.direction(m));
      const double denom = cross(out.direction, u);
      if (std::abs(denom) < 1e-15) continue;
      const double t = cross(a - out.origin, u) / denom;
      const double sigma = cross(a - out.origin, out.direction) / denom;
      const double lm = polygon.side_length(m);
      if (t <= prev_t + vtol || sigma < -vtol || sigma > lm + vtol) continue;
      if (t < best_t) {
        best_t = t;
        best_side = m;
        best_sigma = sigma;
      }
    }
    if (best_side != target) {
      throw Error(ErrorCode::IllegalItinerary,
                  "straightened line misses the image of side " + std::to_string(target + 1));
    }
    const double lt = polygon.side_length(target);
    if (best_sigma < vtol || best_sigma > lt - vtol) {
      throw Error(ErrorCode::VertexCrossing, "straightened line crosses a corner");
    }
    out.crossings.push_back(best_t);
    out.bounces.push_back({target, best_sigma});
    out.copies.push_back(
        g.compose(Isometry::reflection(polygon.side_start(target), polygon.direction(target))));
    prev_t = best_t;
    current_side = target;
  }
  return out;
}

}  // namespace pinball
