#pragma once

#include <cmath>

#include "vfblock/interval.hpp"
#include "vfblock/rational.hpp"

namespace vfb {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 normalized(Vec2 a) {
    const double n = norm(a);
    return {a.x / n, a.y / n};
}
/// Counterclockwise quarter turn.
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

/// Signed angle from a to b in (-pi, pi].
inline double signed_angle(Vec2 a, Vec2 b) { return std::atan2(cross(a, b), dot(a, b)); }

/// Angle between the lines spanned by a and b, in [0, pi/2].
inline double line_angle(Vec2 a, Vec2 b) { return std::atan2(std::abs(cross(a, b)), std::abs(dot(a, b))); }

struct Mat2 {
    double a = 0.0, b = 0.0;  // first row
    double c = 0.0, d = 0.0;  // second row

    Vec2 operator*(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    double det() const { return a * d - b * c; }
    double frobenius() const { return std::sqrt(a * a + b * b + c * c + d * d); }
};

/// Solves M x = v; caller guarantees det != 0.
inline Vec2 solve(const Mat2& m, Vec2 v) {
    const double det = m.det();
    return {(m.d * v.x - m.b * v.y) / det, (-m.c * v.x + m.a * v.y) / det};
}

struct IVec {
    Interval x;
    Interval y;

    bool contains_zero() const { return x.contains_zero() && y.contains_zero(); }
    /// Enclosure of |v|^2.
    Interval norm2() const { return sqr(x) + sqr(y); }
};

using IBox = IVec;

/// Axis-aligned box with exact rational corners.
struct RBox {
    Rational x0, y0, x1, y1;

    IBox enclose() const { return {{round_down(x0), round_up(x1)}, {round_down(y0), round_up(y1)}}; }
    RPoint center() const { return {(x0 + x1) / 2, (y0 + y1) / 2}; }
    bool intersects(const RBox& o) const { return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1; }
    bool contains(const RPoint& p) const { return x0 <= p.x && p.x <= x1 && y0 <= p.y && p.y <= y1; }
    double diameter() const { return std::hypot(to_double(x1 - x0), to_double(y1 - y0)); }
};

/// Angular span of the directions of the points of a box that avoids the origin.
/// Returns a value >= pi when the box touches the origin.
double angular_span(const IBox& box);

}  // namespace vfb
