#include "vfblock/index.hpp"

#include <numbers>

#include "vfblock/errors.hpp"

namespace vfb {

namespace {

Interval meet(Interval a, Interval b) {
    const Interval m{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
    return m.lo <= m.hi ? m : a;
}

IVec field_box(const PlanarField& x, const IBox& box) {
    const IVec a = x.enclose(box);
    const IVec b = x.enclose_centered(box);
    return {meet(a.x, b.x), meet(a.y, b.y)};
}

bool excludes_zero(const IVec& v) { return !v.x.contains_zero() || !v.y.contains_zero(); }

CurveImage field_on_curve(const PlanarField& x, const BoundaryCurve& curve) {
    CurveImage img;
    img.t0 = 0.0;
    img.t1 = curve.period();
    img.at = [x, curve](double t) { return x.eval(curve.at(t)); };
    img.enclose = [x, curve](Interval t) { return field_box(x, curve.enclose(t)); };
    return img;
}

}  // namespace

WindingResult winding_along(const CurveImage& img, const CertOptions& opts) {
    struct Piece {
        double a, b;
        int depth;
    };
    constexpr int initial = 32;
    constexpr double quarter = std::numbers::pi / 2 - 1e-9;
    std::vector<Piece> stack;
    const double span = img.t1 - img.t0;
    for (int i = initial; i-- > 0;)
        stack.push_back({img.t0 + span * i / initial, i + 1 == initial ? img.t1 : img.t0 + span * (i + 1) / initial, 0});

    WindingResult out;
    const Vec2 first = img.at(img.t0);
    Vec2 prev = first;
    double total = 0.0;
    std::size_t processed = 0;
    while (!stack.empty()) {
        const Piece pc = stack.back();
        stack.pop_back();
        if (++processed > opts.max_cells) throw Error(Errc::CertificationFailed, "winding: piece budget exhausted");
        const IVec box = img.enclose(Interval(pc.a, pc.b));
        const double s = angular_span(box);
        if (s < quarter) {
            const Vec2 next = img.at(pc.b);
            total += signed_angle(prev, next);
            prev = next;
            out.max_step = std::max(out.max_step, s);
            ++out.samples;
            continue;
        }
        if (pc.depth >= opts.max_depth)
            throw Error(Errc::CertificationFailed, "winding: image of a boundary piece not separated from 0");
        const double mid = 0.5 * (pc.a + pc.b);
        stack.push_back({mid, pc.b, pc.depth + 1});
        stack.push_back({pc.a, mid, pc.depth + 1});
    }
    // closing gap between the floating end of the parameter range and its start
    const double closing = signed_angle(prev, first);
    if (std::abs(closing) > 1e-6) throw Error(Errc::CertificationFailed, "winding: curve image is not closed");
    total += closing;
    const double turns = total / (2.0 * std::numbers::pi);
    out.winding = static_cast<int>(std::lround(turns));
    out.residual = std::abs(turns - out.winding);
    if (out.residual >= 0.25) throw Error(Errc::CertificationFailed, "winding: accumulated angle not near a whole turn");
    return out;
}

WindingResult winding_number(const PlanarField& x, const BoundaryCurve& curve, const Rational& margin,
                             const CertOptions& opts) {
    if (margin <= 0) throw Error(Errc::BoundaryZero, "winding needs a positive boundary margin");
    WindingResult w = winding_along(field_on_curve(x, curve), opts);
    w.winding *= curve.orientation();
    return w;
}

namespace {

IndexResult index_from_margin(const PlanarField& x, const Region& u, const Rational& margin, const CertOptions& opts) {
    IndexResult r;
    r.margin = margin;
    for (const BoundaryCurve& c : u.boundary()) {
        const WindingResult w = winding_number(x, c, margin, opts);
        r.index += w.winding;
        r.max_step_rotation = std::max(r.max_step_rotation, w.max_step);
        r.samples_per_curve = std::max(r.samples_per_curve, w.samples);
    }
    r.essential = r.index != 0;
    r.certified = true;
    return r;
}

}  // namespace

IndexResult block_index(const Block& block, const CertOptions& opts) {
    return index_from_margin(block.field, block.region, block.boundary_margin, opts);
}

IndexResult region_index(const PlanarField& x, const Region& u, const CertOptions& opts) {
    if (u.is_torus()) throw Error(Errc::InvalidRegion, "index over the full torus needs a planar sub-region");
    const auto margin = min_norm_on_boundary(x, u, Rational(1, 100), opts);
    if (!margin) throw Error(Errc::BoundaryZero, "field not certified nonzero on the frontier");
    return index_from_margin(x, u, *margin, opts);
}

Rational perturbation_bound(const Block& block) { return block.boundary_margin; }

// ---- homotopy ------------------------------------------------------------------------

namespace {

// True when (1 - t) X0 + t X1 is certified nonzero on the frontier of U for every t in tt.
bool family_clear(const PlanarField& x0, const PlanarField& x1, const Region& u, Interval tt, int max_depth,
                  std::size_t budget) {
    struct Piece {
        double a, b;
        Interval t;
        int depth;
    };
    for (const BoundaryCurve& curve : u.boundary()) {
        const double period = curve.kind() == BoundaryCurve::Kind::Circle ? two_pi().hi : 4.0;
        std::vector<Piece> stack;
        constexpr int initial = 32;
        for (int i = 0; i < initial; ++i)
            stack.push_back({period * i / initial, i + 1 == initial ? period : period * (i + 1) / initial, tt, 0});
        std::size_t processed = 0;
        while (!stack.empty()) {
            const Piece pc = stack.back();
            stack.pop_back();
            if (++processed > budget) return false;
            const IBox box = curve.enclose(Interval(pc.a, pc.b));
            const IVec v0 = field_box(x0, box);
            const IVec v1 = field_box(x1, box);
            const Interval s = Interval(1.0) - pc.t;
            const IVec v{s * v0.x + pc.t * v1.x, s * v0.y + pc.t * v1.y};
            if (excludes_zero(v)) continue;
            if (pc.depth >= max_depth) return false;
            if ((pc.b - pc.a) / period >= pc.t.width()) {
                const double mid = 0.5 * (pc.a + pc.b);
                stack.push_back({pc.a, mid, pc.t, pc.depth + 1});
                stack.push_back({mid, pc.b, pc.t, pc.depth + 1});
            } else {
                const double mid = pc.t.mid();
                stack.push_back({pc.a, pc.b, {pc.t.lo, mid}, pc.depth + 1});
                stack.push_back({pc.a, pc.b, {mid, pc.t.hi}, pc.depth + 1});
            }
        }
    }
    return true;
}

}  // namespace

HomotopyVerdict homotopy_invariance_check(const PlanarField& x0, const PlanarField& x1, const Region& u, int steps,
                                          const CertOptions& opts) {
    if (steps < 2) throw Error(Errc::InvalidArgument, "homotopy needs at least 2 steps");
    if (x0.surface() != x1.surface()) throw Error(Errc::InvalidArgument, "homotopy endpoints on different surfaces");
    if (u.is_torus()) throw Error(Errc::InvalidRegion, "homotopy needs a region with a frontier");
    HomotopyVerdict v;
    const int depth = std::min(opts.max_depth, 30);
    const std::size_t budget = 200'000;

    // Locates a parameter where the family touches the frontier, as the simplest
    // rational in a narrow uncertified parameter window.
    auto degenerate_at = [&](Rational lo, Rational hi) -> std::optional<Rational> {
        const Rational pad = (hi - lo) / 64;
        for (int it = 0; it < 16; ++it) {
            const Rational mid = (lo + hi) / 2;
            const Interval left{round_down(lo), round_up(mid)};
            const Interval right{round_down(mid), round_up(hi)};
            if (!family_clear(x0, x1, u, left, depth, budget)) {
                hi = mid;
            } else if (!family_clear(x0, x1, u, right, depth, budget)) {
                lo = mid;
            } else {
                return std::nullopt;
            }
        }
        // prefer a nearby simple parameter where the frontier bound genuinely fails
        const Rational cand = simplest_between(lo - pad, hi + pad);
        if (!min_norm_on_boundary(straight_homotopy(x0, x1, cand), u, Rational(1, 100), opts)) return cand;
        return simplest_between(lo, hi);
    };

    for (int i = 0; i <= steps; ++i) {
        const Rational t = ratio(i, steps);
        const PlanarField xt = straight_homotopy(x0, x1, t);
        const auto margin = min_norm_on_boundary(xt, u, Rational(1, 100), opts);
        if (!margin) {
            v.kind = HomotopyVerdict::Kind::BoundaryDegenerate;
            v.t = t;
            return v;
        }
        v.indices.push_back(index_from_margin(xt, u, *margin, opts).index);
        if (i > 0) {
            const Rational t0 = ratio(i - 1, steps);
            if (!family_clear(x0, x1, u, {round_down(t0), round_up(t)}, depth, budget)) {
                if (auto where = degenerate_at(t0, t)) {
                    v.kind = HomotopyVerdict::Kind::BoundaryDegenerate;
                    v.t = *where;
                    return v;
                }
            }
        }
        if (v.indices.back() != v.indices.front()) {
            v.kind = HomotopyVerdict::Kind::IndexChanged;
            v.t = t;
            return v;
        }
    }
    v.kind = HomotopyVerdict::Kind::Invariant;
    v.index = v.indices.front();
    return v;
}

// ---- wedge ------------------------------------------------------------------------------

namespace {

// D vanishes identically on the circle |p - c| = r.
bool vanishes_on_circle(const Poly2& d, const RPoint& c, const Rational& r) {
    const Poly2 shifted = d.translate(c);
    const Poly2 rest = Poly2::constant(r * r) - Poly2::x() * Poly2::x();
    Poly2 even, odd;
    for (const auto& [ij, coef] : shifted.terms()) {
        const auto [i, j] = ij;
        const Poly2 part = coef * (Poly2::monomial(i, 0) * rest.pow(j / 2));
        if (j % 2 == 0)
            even += part;
        else
            odd += part;
    }
    return even.is_zero() && odd.is_zero();
}

// D vanishes identically on the four edges of the box.
bool vanishes_on_rect(const Poly2& d, const RBox& b) {
    auto zero = [](const std::vector<Rational>& cs) {
        for (const auto& c : cs)
            if (c != 0) return false;
        return true;
    };
    // swap variables to restrict x
    Poly2::Terms swapped;
    for (const auto& [ij, coef] : d.terms()) swapped[{ij.second, ij.first}] = coef;
    const Poly2 ds(swapped);
    return zero(d.restrict_y(b.y0)) && zero(d.restrict_y(b.y1)) && zero(ds.restrict_y(b.x0)) &&
           zero(ds.restrict_y(b.x1));
}

// Some frontier piece where det(Y, Y') is certified nonzero, returned as a parameter.
std::optional<double> certified_nonzero_det(const PlanarField& y, const PlanarField& y2, const Region& u) {
    for (const BoundaryCurve& curve : u.boundary()) {
        const double period = curve.kind() == BoundaryCurve::Kind::Circle ? two_pi().hi : 4.0;
        for (int level = 4; level <= 12; ++level) {
            const int n = 1 << level;
            for (int i = 0; i < n; ++i) {
                const IBox box = curve.enclose(Interval(period * i / n, period * (i + 1) / n));
                const IVec a = field_box(y, box);
                const IVec b = field_box(y2, box);
                const Interval det = a.x * b.y - a.y * b.x;
                if (!det.contains_zero()) return period * (i + 0.5) / n;
            }
        }
    }
    return std::nullopt;
}

}  // namespace

WedgeVerdict wedge_check(const PlanarField& y, const PlanarField& y2, const Region& u, const CertOptions& opts) {
    if (u.is_torus()) throw Error(Errc::InvalidRegion, "wedge check needs a region with a frontier");
    if (y.surface() != y2.surface()) throw Error(Errc::InvalidArgument, "fields on different surfaces");
    WedgeVerdict v;
    bool dependent = false;
    if (y.is_polynomial()) {
        const Poly2 d = wedge(y, y2).poly();
        dependent = true;
        if (const auto* disk = std::get_if<Disk>(&u.shape())) {
            dependent = vanishes_on_circle(d, disk->center, disk->r);
        } else if (const auto* ann = std::get_if<Annulus>(&u.shape())) {
            dependent = vanishes_on_circle(d, ann->center, ann->r_in) && vanishes_on_circle(d, ann->center, ann->r_out);
        } else if (const auto* rect = std::get_if<Rect>(&u.shape())) {
            dependent = vanishes_on_rect(d, rect->box);
        }
        v.symbolic = dependent;
    } else {
        const Scalar d = wedge(y, y2);
        dependent = d.is_zero();
        v.symbolic = dependent;
    }
    if (!dependent) {
        if (const auto t = certified_nonzero_det(y, y2, u)) {
            v.kind = WedgeVerdict::Kind::NotDependentOnBoundary;
            v.detail = "det(Y, Y') certified nonzero near boundary parameter " + std::to_string(*t);
        } else {
            v.kind = WedgeVerdict::Kind::Inconclusive;
            v.detail = "det(Y, Y') neither symbolically zero nor certified nonzero on the frontier";
        }
        return v;
    }
    const auto m1 = min_norm_on_boundary(y, u, Rational(1, 100), opts);
    const auto m2 = min_norm_on_boundary(y2, u, Rational(1, 100), opts);
    if (!m1 || !m2) {
        v.kind = WedgeVerdict::Kind::NotIsolating;
        v.detail = !m1 ? "first field not certified nonzero on the frontier"
                       : "second field not certified nonzero on the frontier";
        return v;
    }
    v.index = index_from_margin(y, u, *m1, opts).index;
    v.other_index = index_from_margin(y2, u, *m2, opts).index;
    v.kind = v.index == v.other_index ? WedgeVerdict::Kind::IndicesEqual : WedgeVerdict::Kind::IndicesDiffer;
    return v;
}

// ---- double cover ------------------------------------------------------------------------

Vec2 LiftedField::eval(Vec2 q) const {
    const Vec2 c{to_double(center_.x), to_double(center_.y)};
    const Vec2 d = q - c;
    const double r = norm(d);
    const double th = std::atan2(d.y, d.x);
    const Vec2 er2{std::cos(2 * th), std::sin(2 * th)};
    const Vec2 v = base_.eval(c + r * er2);
    const double ar = dot(v, er2);
    const double at = dot(v, perp(er2));
    const Vec2 er{std::cos(th), std::sin(th)};
    return ar * er + (0.5 * at) * perp(er);
}

IVec LiftedField::enclose_on_circle(const Rational& radius, Interval t) const {
    const Interval cx = Interval::from(center_.x), cy = Interval::from(center_.y);
    const Interval r = Interval::from(radius);
    const Interval t2 = Interval(2.0) * t;
    const Interval c2 = cos(t2), s2 = sin(t2);
    const IVec v = field_box(base_, {cx + r * c2, cy + r * s2});
    const Interval ar = v.x * c2 + v.y * s2;
    const Interval at = Interval(0.5) * (v.y * c2 - v.x * s2);
    const Interval c1 = cos(t), s1 = sin(t);
    return {ar * c1 - at * s1, ar * s1 + at * c1};
}

DoubleCoverResult lift_double_cover(const PlanarField& x, const Region& annulus, const CertOptions& opts) {
    const auto* a = std::get_if<Annulus>(&annulus.shape());
    if (!a) throw Error(Errc::InvalidRegion, "double cover is defined on annuli");
    DoubleCoverResult out{LiftedField(x, a->center), {}, {}, false};
    out.base = region_index(x, annulus, opts);

    IndexResult lifted;
    lifted.margin = out.base.margin;
    for (const BoundaryCurve& curve : annulus.boundary()) {
        CurveImage img;
        img.t0 = 0.0;
        img.t1 = curve.period();
        const LiftedField f = out.lifted;
        const Rational radius = curve.radius();
        img.at = [f, curve](double t) { return f.eval(curve.at(t)); };
        img.enclose = [f, radius](Interval t) { return f.enclose_on_circle(radius, t); };
        const WindingResult w = winding_along(img, opts);
        lifted.index += curve.orientation() * w.winding;
        lifted.max_step_rotation = std::max(lifted.max_step_rotation, w.max_step);
        lifted.samples_per_curve = std::max(lifted.samples_per_curve, w.samples);
    }
    lifted.essential = lifted.index != 0;
    lifted.certified = true;
    out.lifted_index = lifted;
    out.doubling_holds = lifted.index == 2 * out.base.index;
    return out;
}

// ---- per-component blocks ------------------------------------------------------------------

namespace {

Rational ceil_dyadic(double v) {
    const double scaled = std::ceil(v * 1024.0);
    return Rational(from_double(scaled)) / 1024;
}

Rational floor_dyadic(double v) {
    const double scaled = std::floor(v * 1024.0);
    return Rational(from_double(scaled)) / 1024;
}

// Every zero box of X over the sub-region lies near the component's bounding box.
bool only_this_component(const PlanarField& x, const Region& sub, const RBox& bbox, const Rational& res,
                         const Rational& slack, const CertOptions& opts) {
    const ZeroEnclosure local = zero_enclosure(x, sub, res, opts);
    const RBox grown{bbox.x0 - slack, bbox.y0 - slack, bbox.x1 + slack, bbox.y1 + slack};
    for (const RBox& b : local.boxes())
        if (!b.intersects(grown)) return false;
    return true;
}

}  // namespace

std::vector<ComponentIndex> component_indices(const PlanarField& x, const ZeroEnclosure& enc,
                                              const CertOptions& opts) {
    std::vector<ComponentIndex> out;
    const double cell = enc.box_diameter();
    const Rational slack = ceil_dyadic(2.0 * cell);
    for (const EnclosureComponent& comp : components(enc)) {
        ComponentIndex ci;
        ci.component = comp;
        const RPoint c = comp.bbox.center();
        const double cx = to_double(c.x), cy = to_double(c.y);

        std::vector<Region> candidates;
        if (!comp.loop_like) {
            const double base = 0.5 * comp.bbox.diameter() + 2.0 * cell;
            for (double f : {1.0, 1.5, 2.0, 0.75}) candidates.push_back(Region::disk(c, ceil_dyadic(base * f)));
        } else {
            bool wraps = false;
            double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
            for (std::size_t k : comp.members) {
                RBox b = enc.box(k);
                if (enc.periodic()) {
                    const RPoint bc = b.center();
                    const double sx = std::round(cx - to_double(bc.x)), sy = std::round(cy - to_double(bc.y));
                    b = {b.x0 + Rational(from_double(sx)), b.y0 + Rational(from_double(sy)),
                         b.x1 + Rational(from_double(sx)), b.y1 + Rational(from_double(sy))};
                }
                const double x0 = to_double(b.x0) - cx, x1 = to_double(b.x1) - cx;
                const double y0 = to_double(b.y0) - cy, y1 = to_double(b.y1) - cy;
                const double nx = std::clamp(0.0, x0, x1), ny = std::clamp(0.0, y0, y1);
                rmin = std::min(rmin, std::hypot(nx, ny));
                rmax = std::max(rmax, std::hypot(std::max(std::abs(x0), std::abs(x1)),
                                                 std::max(std::abs(y0), std::abs(y1))));
            }
            if (enc.periodic() && (comp.bbox.x1 - comp.bbox.x0 >= 1 || comp.bbox.y1 - comp.bbox.y0 >= 1)) wraps = true;
            if (wraps) {
                ci.failure = "component winds around the torus; no planar sub-region";
                out.push_back(std::move(ci));
                continue;
            }
            for (double f : {2.0, 1.5, 3.0}) {
                const double rin = rmin - f * cell, rout = rmax + f * cell;
                if (rin <= 0.0) continue;
                const Rational ri = floor_dyadic(rin), ro = ceil_dyadic(rout);
                if (ri > 0 && ri < ro) candidates.push_back(Region::annulus(c, ri, ro));
            }
            if (candidates.empty()) {
                ci.failure = "loop-like component too close to its center for an annulus";
                out.push_back(std::move(ci));
                continue;
            }
        }

        for (const Region& sub : candidates) {
            try {
                const auto margin = min_norm_on_boundary(x, sub, Rational(1, 100), opts);
                if (!margin) {
                    ci.failure = "sub-region frontier not certified zero-free";
                    continue;
                }
                if (!only_this_component(x, sub, comp.bbox, enc.resolution(), slack, opts)) {
                    ci.failure = "sub-region meets another component";
                    continue;
                }
                ci.index = index_from_margin(x, sub, *margin, opts);
                ci.subregion = sub;
                ci.failure.clear();
                break;
            } catch (const Error& e) {
                ci.failure = e.what();
            }
        }
        out.push_back(std::move(ci));
    }
    return out;
}

}  // namespace vfb
