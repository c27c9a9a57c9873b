#include "vfblock/region.hpp"

#include <numbers>

#include "vfblock/errors.hpp"

namespace vfb {

BoundaryCurve BoundaryCurve::circle(const RPoint& center, const Rational& radius, int orientation) {
    BoundaryCurve c;
    c.kind_ = Kind::Circle;
    c.orientation_ = orientation;
    c.center_ = center;
    c.radius_ = radius;
    c.icx_ = Interval::from(center.x);
    c.icy_ = Interval::from(center.y);
    c.ir_ = Interval::from(radius);
    return c;
}

BoundaryCurve BoundaryCurve::rect_loop(const RBox& box) {
    BoundaryCurve c;
    c.kind_ = Kind::RectLoop;
    c.orientation_ = 1;
    c.rect_ = box;
    return c;
}

double BoundaryCurve::period() const { return kind_ == Kind::Circle ? 2.0 * std::numbers::pi : 4.0; }

Vec2 BoundaryCurve::at(double t) const {
    if (kind_ == Kind::Circle) {
        const double r = to_double(radius_);
        return {to_double(center_.x) + r * std::cos(t), to_double(center_.y) + r * std::sin(t)};
    }
    const double x0 = to_double(rect_.x0), x1 = to_double(rect_.x1);
    const double y0 = to_double(rect_.y0), y1 = to_double(rect_.y1);
    t = std::fmod(t, 4.0);
    if (t < 0) t += 4.0;
    if (t <= 1.0) return {x0 + t * (x1 - x0), y0};
    if (t <= 2.0) return {x1, y0 + (t - 1.0) * (y1 - y0)};
    if (t <= 3.0) return {x1 - (t - 2.0) * (x1 - x0), y1};
    return {x0, y1 - (t - 3.0) * (y1 - y0)};
}

IBox BoundaryCurve::enclose(Interval t) const {
    if (kind_ == Kind::Circle) return {icx_ + ir_ * cos(t), icy_ + ir_ * sin(t)};
    // Rectangle loop: hull of the enclosures of every edge the parameter touches.
    IBox out{{0, 0}, {0, 0}};
    bool first = true;
    auto add = [&](IBox b) {
        if (first) {
            out = b;
            first = false;
        } else {
            out = {hull(out.x, b.x), hull(out.y, b.y)};
        }
    };
    const Interval x0 = Interval::from(rect_.x0), x1 = Interval::from(rect_.x1);
    const Interval y0 = Interval::from(rect_.y0), y1 = Interval::from(rect_.y1);
    const Interval w = x1 - x0;
    const Interval h = y1 - y0;
    for (int e = 0; e < 4; ++e) {
        const double a = std::max(t.lo, static_cast<double>(e));
        const double b = std::min(t.hi, static_cast<double>(e + 1));
        if (a > b) continue;
        const Interval s = Interval(a, b) - Interval(static_cast<double>(e));
        const Interval sc{std::max(0.0, s.lo), std::min(1.0, s.hi)};
        switch (e) {
            case 0: add({x0 + sc * w, y0}); break;
            case 1: add({x1, y0 + sc * h}); break;
            case 2: add({x1 - sc * w, y1}); break;
            default: add({x0, y1 - sc * h}); break;
        }
    }
    return out;
}

Region Region::disk(RPoint center, Rational r) {
    if (r <= 0) throw Error(Errc::InvalidRegion, "disk radius must be positive");
    return Region(Disk{std::move(center), std::move(r)});
}

Region Region::annulus(RPoint center, Rational r_in, Rational r_out) {
    if (r_in <= 0 || r_out <= r_in) throw Error(Errc::InvalidRegion, "annulus needs 0 < r_in < r_out");
    return Region(Annulus{std::move(center), std::move(r_in), std::move(r_out)});
}

Region Region::rect(Rational x0, Rational y0, Rational x1, Rational y1) {
    if (x1 <= x0 || y1 <= y0) throw Error(Errc::InvalidRegion, "degenerate rectangle");
    return Region(Rect{RBox{std::move(x0), std::move(y0), std::move(x1), std::move(y1)}});
}

Region Region::torus() { return Region(TorusFull{}); }

std::string Region::type_name() const {
    switch (shape_.index()) {
        case 0: return "disk";
        case 1: return "annulus";
        case 2: return "rect";
        default: return "torus";
    }
}

RBox Region::bounding_box() const {
    if (const auto* d = std::get_if<Disk>(&shape_))
        return {d->center.x - d->r, d->center.y - d->r, d->center.x + d->r, d->center.y + d->r};
    if (const auto* a = std::get_if<Annulus>(&shape_))
        return {a->center.x - a->r_out, a->center.y - a->r_out, a->center.x + a->r_out, a->center.y + a->r_out};
    if (const auto* r = std::get_if<Rect>(&shape_)) return r->box;
    return {0, 0, 1, 1};
}

std::vector<BoundaryCurve> Region::boundary() const {
    if (const auto* d = std::get_if<Disk>(&shape_)) return {BoundaryCurve::circle(d->center, d->r, +1)};
    if (const auto* a = std::get_if<Annulus>(&shape_))
        return {BoundaryCurve::circle(a->center, a->r_out, +1), BoundaryCurve::circle(a->center, a->r_in, -1)};
    if (const auto* r = std::get_if<Rect>(&shape_)) return {BoundaryCurve::rect_loop(r->box)};
    return {};
}

bool Region::contains(Vec2 p) const {
    auto d2 = [&](const RPoint& c) {
        const double dx = p.x - to_double(c.x), dy = p.y - to_double(c.y);
        return dx * dx + dy * dy;
    };
    if (const auto* d = std::get_if<Disk>(&shape_)) {
        const double r = to_double(d->r);
        return d2(d->center) <= r * r;
    }
    if (const auto* a = std::get_if<Annulus>(&shape_)) {
        const double ri = to_double(a->r_in), ro = to_double(a->r_out);
        const double q = d2(a->center);
        return ri * ri <= q && q <= ro * ro;
    }
    if (const auto* r = std::get_if<Rect>(&shape_)) {
        return to_double(r->box.x0) <= p.x && p.x <= to_double(r->box.x1) && to_double(r->box.y0) <= p.y &&
               p.y <= to_double(r->box.y1);
    }
    return true;
}

namespace {

Interval dist2(const IBox& box, const RPoint& c) {
    return sqr(box.x - Interval::from(c.x)) + sqr(box.y - Interval::from(c.y));
}

}  // namespace

bool Region::may_meet(const IBox& box) const {
    if (const auto* d = std::get_if<Disk>(&shape_)) return dist2(box, d->center).lo <= sqr(Interval::from(d->r)).hi;
    if (const auto* a = std::get_if<Annulus>(&shape_)) {
        const Interval q = dist2(box, a->center);
        return q.lo <= sqr(Interval::from(a->r_out)).hi && q.hi >= sqr(Interval::from(a->r_in)).lo;
    }
    if (const auto* r = std::get_if<Rect>(&shape_)) {
        const IBox rb = r->box.enclose();
        return box.x.lo <= rb.x.hi && rb.x.lo <= box.x.hi && box.y.lo <= rb.y.hi && rb.y.lo <= box.y.hi;
    }
    return true;
}

bool Region::clear_of_boundary(const IBox& box, double collar) const {
    const Interval c(collar);
    if (const auto* d = std::get_if<Disk>(&shape_)) {
        const Interval lim = Interval::from(d->r) - c;
        if (lim.lo <= 0) return false;
        return dist2(box, d->center).hi <= sqr(lim).lo;
    }
    if (const auto* a = std::get_if<Annulus>(&shape_)) {
        const Interval q = dist2(box, a->center);
        const Interval outer = Interval::from(a->r_out) - c;
        if (outer.lo <= 0) return false;
        return q.lo >= sqr(Interval::from(a->r_in) + c).hi && q.hi <= sqr(outer).lo;
    }
    if (const auto* r = std::get_if<Rect>(&shape_)) {
        const IBox rb = r->box.enclose();
        return box.x.lo >= (Interval(rb.x.lo) + c).hi && box.x.hi <= (Interval(rb.x.hi) - c).lo &&
               box.y.lo >= (Interval(rb.y.lo) + c).hi && box.y.hi <= (Interval(rb.y.hi) - c).lo;
    }
    return true;
}

}  // namespace vfb
