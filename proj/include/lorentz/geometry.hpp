#pragma once

#include <cmath>
#include <optional>

namespace lorentz {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
};

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double norm(const Vec2& a) { return std::sqrt(dot(a, a)); }

struct Disk {
    Vec2 center;
    double radius = 0.0;
};

/// Specular reflection v - 2<v,n>n. Grazing hits (<v,n> ~ 0) pass through
/// unchanged, which is what the reflection formula gives anyway.
inline Vec2 reflect(const Vec2& v, const Vec2& n) {
    const double vn = dot(v, n);
    return {v.x - 2.0 * vn * n.x, v.y - 2.0 * vn * n.y};
}

/// First intersection parameter t > eps of the ray q + t v with the circle
/// |p - c| = r. Tangential passes (discriminant below tangent_tol) count as
/// misses; the normal there is numerically unstable and the set has measure
/// zero.
inline std::optional<double> ray_circle_first_hit(const Vec2& q, const Vec2& v,
                                                  const Vec2& c, double r,
                                                  double eps = 1e-12,
                                                  double tangent_tol = 1e-12) {
    const Vec2 rel = q - c;
    const double b = dot(rel, v);               // |v| = 1
    const double c2 = dot(rel, rel) - r * r;
    const double disc = b * b - c2;
    if (disc < tangent_tol) return std::nullopt;
    const double sq = std::sqrt(disc);
    const double t1 = -b - sq;
    if (t1 > eps) return t1;
    const double t2 = -b + sq;
    // q inside the disk (start point on the boundary): leave through t2 only
    // if the ray genuinely enters, i.e. the start is within the circle.
    if (c2 < -tangent_tol && t2 > eps) return t2;
    return std::nullopt;
}

}  // namespace lorentz
