#pragma once

#include <string>
#include <variant>
#include <vector>

#include "vfblock/geometry.hpp"
#include "vfblock/rational.hpp"

namespace vfb {

/// One closed boundary component, parameterized counterclockwise over
/// [0, period()]. `orientation` is +1 when the region lies to the left of the
/// counterclockwise traversal (outer components) and -1 otherwise (holes).
class BoundaryCurve {
public:
    enum class Kind { Circle, RectLoop };

    static BoundaryCurve circle(const RPoint& center, const Rational& radius, int orientation);
    static BoundaryCurve rect_loop(const RBox& box);

    Kind kind() const { return kind_; }
    int orientation() const { return orientation_; }
    double period() const;
    Vec2 at(double t) const;
    IBox enclose(Interval t) const;

    // circle data (rational, exact)
    const RPoint& center() const { return center_; }
    const Rational& radius() const { return radius_; }
    const RBox& rect() const { return rect_; }

private:
    Kind kind_ = Kind::Circle;
    int orientation_ = 1;
    RPoint center_;
    Rational radius_;
    RBox rect_;
    Interval icx_, icy_, ir_;
};

struct Disk {
    RPoint center;
    Rational r;
};
struct Annulus {
    RPoint center;
    Rational r_in;
    Rational r_out;
};
struct Rect {
    RBox box;
};
struct TorusFull {};

/// Planar region U with exact rational parameters. Boundary orientation keeps
/// the region on the left.
class Region {
public:
    using Shape = std::variant<Disk, Annulus, Rect, TorusFull>;

    static Region disk(RPoint center, Rational r);
    static Region annulus(RPoint center, Rational r_in, Rational r_out);
    static Region rect(Rational x0, Rational y0, Rational x1, Rational y1);
    static Region torus();

    const Shape& shape() const { return shape_; }
    std::string type_name() const;
    bool is_torus() const { return std::holds_alternative<TorusFull>(shape_); }

    /// Bounding box of the closure (the fundamental domain for the torus).
    RBox bounding_box() const;
    std::vector<BoundaryCurve> boundary() const;

    /// Point lies in the closure (float test, for sampling).
    bool contains(Vec2 p) const;
    /// False only when the box is certainly disjoint from the closure.
    bool may_meet(const IBox& box) const;
    /// True only when every point of the box is certainly inside, at distance
    /// at least `collar` from the frontier.
    bool clear_of_boundary(const IBox& box, double collar) const;

private:
    explicit Region(Shape s) : shape_(std::move(s)) {}
    Shape shape_;
};

}  // namespace vfb
