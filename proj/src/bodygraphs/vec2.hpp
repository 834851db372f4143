#pragma once

#include <cmath>
#include <numbers>

namespace bodygraphs {

struct Vec2 {
  double x{0.0};
  double y{0.0};

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  friend constexpr Vec2 operator*(double s, Vec2 v) { return {v.x * s, v.y * s}; }

  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
  Vec2& operator*=(double s) { x *= s; y *= s; return *this; }

  constexpr bool operator==(const Vec2&) const = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double length(Vec2 v) { return std::hypot(v.x, v.y); }
inline double angle_of(Vec2 v) { return std::atan2(v.y, v.x); }
inline Vec2 unit_at(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Counter-clockwise quarter turn.
constexpr Vec2 perp(Vec2 v) { return {-v.y, v.x}; }

/// Angle folded into [0, 2pi).
inline double wrap_two_pi(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double t = std::fmod(theta, two_pi);
  if (t < 0) t += two_pi;
  if (t >= two_pi) t -= two_pi;
  return t;
}

/// Row-major 2x2 real matrix acting on column vectors.
struct LinearMap2 {
  double a11{1.0}, a12{0.0};
  double a21{0.0}, a22{1.0};

  static constexpr LinearMap2 identity() { return {}; }
  static constexpr LinearMap2 diag(double d1, double d2) { return {d1, 0.0, 0.0, d2}; }
  static LinearMap2 rotation(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return {c, -s, s, c};
  }
  /// Map whose columns are the images of (1,0) and (0,1).
  static constexpr LinearMap2 from_columns(Vec2 c1, Vec2 c2) { return {c1.x, c2.x, c1.y, c2.y}; }

  constexpr double determinant() const { return a11 * a22 - a12 * a21; }

  constexpr Vec2 operator()(Vec2 v) const { return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y}; }

  constexpr LinearMap2 operator*(const LinearMap2& o) const {
    return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
            a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
  }

  constexpr LinearMap2 operator*(double s) const { return {a11 * s, a12 * s, a21 * s, a22 * s}; }

  /// Caller checks the determinant first.
  constexpr LinearMap2 inverse() const {
    const double d = determinant();
    return {a22 / d, -a12 / d, -a21 / d, a11 / d};
  }

  /// Largest absolute entry; a cheap stand-in for the operator norm in tolerance scaling.
  double max_abs_entry() const {
    return std::fmax(std::fmax(std::fabs(a11), std::fabs(a12)), std::fmax(std::fabs(a21), std::fabs(a22)));
  }

  constexpr bool operator==(const LinearMap2&) const = default;
};

}  // namespace bodygraphs
