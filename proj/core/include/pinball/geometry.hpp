#pragma once
/**
 * @file geometry.hpp
 * @brief Polygon tables, boundary coordinates, ray casting and unfolding.
 *
 * Conventions used throughout the library:
 *   - Vertices are stored counterclockwise. Side i runs from vertex i to
 *     vertex i+1 (cyclic). Indices are 0-based in code; text formats use
 *     1-based side labels.
 *   - A boundary point is (side, s) with s the arc length from the side's
 *     start vertex. The supporting line of a side extends s to all reals.
 *   - The reflection angle theta is measured from the inward normal n_i to
 *     the velocity, positive toward the side direction u_i, i.e. the
 *     velocity is cos(theta) n_i + sin(theta) u_i. With this choice a bounce
 *     from side i to side j maps theta to beta(i, j) - theta exactly, where
 *     beta(i, j) = pi + phi_i - phi_j reduced to (-pi, pi] and phi_k is the
 *     direction angle of side k.
 */

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pinball/vec2.hpp"

namespace pinball {

inline constexpr double kPi = 3.14159265358979323846;

/// Hits closer than this fraction of the perimeter to a corner count as vertex hits.
inline constexpr double kVertexTolerance = 1e-9;
/// Angles within this distance of +-pi/2 are grazing.
inline constexpr double kGrazingTolerance = 1e-6;

struct BoundaryPoint {
  int side = 0;
  double s = 0.0;
};

enum class HitKind { Interior, Vertex };

struct RayHit {
  BoundaryPoint target;
  double segment_length = 0.0;
  HitKind classification = HitKind::Interior;
};

/// Image of a point of one supporting line on another, along a fixed direction.
struct Projection {
  double s = 0.0;          ///< coordinate on the target supporting line
  double length = 0.0;     ///< oriented length, negative when the target lies behind
  double theta_out = 0.0;  ///< reflected angle beta(i, j) - theta
};

class Polygon {
 public:
  /// Validates and builds; throws Error on degenerate, self-intersecting or
  /// clockwise input.
  explicit Polygon(std::vector<Vec2> vertices);

  std::size_t size() const { return vertices_.size(); }
  std::span<const Vec2> vertices() const { return vertices_; }
  Vec2 vertex(int i) const { return vertices_[wrap(i)]; }

  Vec2 side_start(int i) const { return vertex(i); }
  Vec2 side_end(int i) const { return vertex(i + 1); }
  double side_length(int i) const { return lengths_[wrap(i)]; }
  /// Unit direction of side i.
  Vec2 direction(int i) const { return directions_[wrap(i)]; }
  /// Unit inward normal of side i.
  Vec2 normal(int i) const { return perp(direction(i)); }

  double beta(int i, int j) const { return beta_[wrap(i) * size() + wrap(j)]; }

  double perimeter() const { return perimeter_; }
  double diameter() const { return diameter_; }
  double signed_area() const { return area_; }
  bool is_convex() const { return convex_; }
  /// Absolute distance below which a boundary point is treated as a corner.
  double vertex_tolerance() const { return kVertexTolerance * perimeter_; }

  /// Point with coordinate s on the supporting line of side i.
  Vec2 point(int side, double s) const { return side_start(side) + direction(side) * s; }
  Vec2 point(BoundaryPoint p) const { return point(p.side, p.s); }

  /// Unit velocity leaving side i at angle theta.
  Vec2 velocity(int side, double theta) const;

  std::size_t wrap(int i) const {
    const int d = static_cast<int>(size());
    return static_cast<std::size_t>(((i % d) + d) % d);
  }

 private:
  std::vector<Vec2> vertices_;
  std::vector<double> lengths_;
  std::vector<Vec2> directions_;
  std::vector<double> beta_;
  double perimeter_ = 0.0;
  double diameter_ = 0.0;
  double area_ = 0.0;
  bool convex_ = true;
};

Polygon build_polygon(std::vector<Vec2> vertices);

/// Reads "x y" per line, '#' starts a comment line.
Polygon read_polygon(std::istream& in);
Polygon read_polygon_file(const std::string& path);

/// First intersection of the ray leaving `from` at angle theta with the boundary.
RayHit cast_ray(const Polygon& polygon, BoundaryPoint from, double theta);

/// Extended map between supporting lines: projects the point with coordinate
/// s on line `from_side` along angle theta onto line `to_side`.
Projection project(const Polygon& polygon, int from_side, double s, double theta, int to_side);

/// Oriented length of the link from (from, theta) to the supporting line of `to_side`.
double oriented_length(const Polygon& polygon, BoundaryPoint from, double theta, int to_side);
/// Oriented length to whatever side the ray actually hits first.
double oriented_length(const Polygon& polygon, BoundaryPoint from, double theta);

struct Unfolding {
  /// copies[k] maps the original polygon onto the k-th reflected copy;
  /// copies[0] is the identity, one more copy per crossed side.
  std::vector<Isometry> copies;
  Vec2 origin;
  Vec2 direction;
  /// Line parameter of each crossing, strictly increasing.
  std::vector<double> crossings;
  /// Crossing points folded back to the original polygon.
  std::vector<BoundaryPoint> bounces;

  Vec2 at(double t) const { return origin + direction * t; }
};

/// Straightens the trajectory leaving `start` at angle theta that visits
/// sides word[1], word[2], ..., and finally word[0] again (one full period).
/// `start.side` must equal word[0].
Unfolding unfold(const Polygon& polygon, std::span<const int> word, BoundaryPoint start,
                 double theta);

}  // namespace pinball
