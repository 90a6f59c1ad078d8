#pragma once

#include <cmath>

namespace pinball {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double k) const { return {x * k, y * k}; }
  constexpr Vec2 operator/(double k) const { return {x / k, y / k}; }
  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator*(double k, Vec2 v) { return v * k; }

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
/// z-component of the 3D cross product.
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }
/// Counterclockwise quarter turn.
constexpr Vec2 perp(Vec2 v) { return {-v.y, v.x}; }

/// Rigid motion p -> M p + t of the plane, M orthogonal.
struct Isometry {
  double m00 = 1.0, m01 = 0.0, m10 = 0.0, m11 = 1.0;
  Vec2 t{};

  static Isometry identity() { return {}; }

  /// Reflection across the line through `p` with unit direction `u`.
  static Isometry reflection(Vec2 p, Vec2 u) {
    Isometry r;
    r.m00 = u.x * u.x - u.y * u.y;
    r.m01 = 2.0 * u.x * u.y;
    r.m10 = 2.0 * u.x * u.y;
    r.m11 = u.y * u.y - u.x * u.x;
    r.t = p - r.linear(p);
    return r;
  }

  Vec2 linear(Vec2 v) const { return {m00 * v.x + m01 * v.y, m10 * v.x + m11 * v.y}; }
  Vec2 operator()(Vec2 p) const { return linear(p) + t; }

  /// (*this ∘ other)(p) == (*this)(other(p)).
  Isometry compose(const Isometry& o) const {
    Isometry r;
    r.m00 = m00 * o.m00 + m01 * o.m10;
    r.m01 = m00 * o.m01 + m01 * o.m11;
    r.m10 = m10 * o.m00 + m11 * o.m10;
    r.m11 = m10 * o.m01 + m11 * o.m11;
    r.t = linear(o.t) + t;
    return r;
  }

  Isometry inverse() const {
    Isometry r;
    r.m00 = m00;
    r.m01 = m10;
    r.m10 = m01;
    r.m11 = m11;
    r.t = -r.linear(t);
    return r;
  }

  double determinant() const { return m00 * m11 - m01 * m10; }
};

}  // namespace pinball
