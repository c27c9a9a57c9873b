#include "vfblock/linefield.hpp"

#include <cmath>
#include <numbers>

#include "vfblock/errors.hpp"

namespace vfb {

double line_distance(Vec2 a, Vec2 b) { return std::atan2(std::abs(cross(a, b)), std::abs(dot(a, b))); }

LineFieldRep LineFieldRep::of_field(const PlanarField& x, std::optional<Region> domain) {
    return LineFieldRep(
        [x](Vec2 p) -> std::optional<Vec2> {
            const Vec2 v = x.eval(p);
            if (!(norm(v) > 0.0)) return std::nullopt;
            return normalized(v);
        },
        std::move(domain));
}

LineFieldRep LineFieldRep::constant(Vec2 dir, std::optional<Region> domain) {
    const Vec2 u = normalized(dir);
    return LineFieldRep([u](Vec2) -> std::optional<Vec2> { return u; }, std::move(domain));
}

std::optional<Vec2> LineFieldRep::at(Vec2 p) const {
    if (domain_ && !domain_->contains(p)) return std::nullopt;
    return rep_(p);
}

double LineFieldRep::max_jump(int n) const {
    if (!domain_) throw Error(Errc::InvalidArgument, "line field has no domain to sample");
    const RBox b = domain_->bounding_box();
    const double x0 = to_double(b.x0), x1 = to_double(b.x1), y0 = to_double(b.y0), y1 = to_double(b.y1);
    std::vector<std::optional<Vec2>> grid(static_cast<std::size_t>((n + 1) * (n + 1)));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            grid[i * (n + 1) + j] = at({x0 + (x1 - x0) * i / n, y0 + (y1 - y0) * j / n});
    double worst = 0.0;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            const auto& a = grid[i * (n + 1) + j];
            if (!a) continue;
            if (i < n)
                if (const auto& b2 = grid[(i + 1) * (n + 1) + j]) worst = std::max(worst, line_distance(*a, *b2));
            if (j < n)
                if (const auto& b2 = grid[i * (n + 1) + j + 1]) worst = std::max(worst, line_distance(*a, *b2));
        }
    return worst;
}

// ---- factorization ---------------------------------------------------------------------------

Factorization factor_y_power(const Poly2& fp, const Poly2& fq, int l, const Rational& x0, const Rational& x1) {
    if (l < 1) throw Error(Errc::InvalidArgument, "l must be at least 1");
    if (x1 < x0) throw Error(Errc::InvalidArgument, "empty x-interval");
    Factorization f{fp.divide_y_power(l), fq.divide_y_power(l), l, x0, x1};

    auto on_axis = [](const Poly2& g) {
        const auto cs = g.restrict_y(0);
        Poly2::Terms t;
        for (std::size_t i = 0; i < cs.size(); ++i)
            if (cs[i] != 0) t[{static_cast<int>(i), 0}] = cs[i];
        return CompiledPoly2(Poly2(t));
    };
    const CompiledPoly2 ap = on_axis(f.gp), aq = on_axis(f.gq);
    struct Piece {
        double a, b;
        int depth;
    };
    std::vector<Piece> stack{{round_down(x0), round_up(x1), 0}};
    while (!stack.empty()) {
        const Piece pc = stack.back();
        stack.pop_back();
        const IBox box{Interval(pc.a, pc.b), Interval(0.0)};
        if ((sqr(ap(box)) + sqr(aq(box))).lo > 0.0) continue;
        if (pc.depth >= 40 || pc.a == pc.b) {
            throw Error(Errc::FactorVanishes,
                        "g(x, 0) not certified nonzero near x = " + std::to_string(0.5 * (pc.a + pc.b)));
        }
        const double mid = 0.5 * (pc.a + pc.b);
        stack.push_back({pc.a, mid, pc.depth + 1});
        stack.push_back({mid, pc.b, pc.depth + 1});
    }
    return f;
}

ExtendedLineField extend_line_field(const Poly2& fp, const Poly2& fq, int l, const Region& rect) {
    const auto* r = std::get_if<Rect>(&rect.shape());
    if (!r) throw Error(Errc::InvalidRegion, "line field extension is defined on rectangles");
    Factorization fac = factor_y_power(fp, fq, l, r->box.x0, r->box.x1);
    const CompiledPoly2 cp(fp), cq(fq), gp(fac.gp), gq(fac.gq);
    const int sign_power = l % 2;
    LineFieldRep field(
        [cp, cq, gp, gq, sign_power](Vec2 p) -> std::optional<Vec2> {
            if (p.y == 0.0) {
                const Vec2 g{gp(p), gq(p)};
                if (!(norm(g) > 0.0)) return std::nullopt;
                return normalized(g);
            }
            Vec2 f{cp(p), cq(p)};
            if (!(norm(f) > 0.0)) return std::nullopt;
            if (sign_power == 1 && p.y < 0.0) f = -f;
            return normalized(f);
        },
        rect);
    ExtendedLineField out{field, fac, {}, false};
    for (int n : {16, 32, 64, 128}) out.jumps.push_back(field.max_jump(n));
    bool shrinking = true;
    for (std::size_t i = 1; i < out.jumps.size(); ++i) shrinking = shrinking && out.jumps[i] <= out.jumps[i - 1] * 1.01;
    out.continuous = shrinking && out.jumps.back() < 0.25;
    return out;
}

// ---- control and orientation -------------------------------------------------------------------

namespace {

double halton(int i, int base) {
    double f = 1.0, r = 0.0;
    while (i > 0) {
        f /= base;
        r += f * (i % base);
        i /= base;
    }
    return r;
}

}  // namespace

ControlResult controls_check(const LineFieldRep& lambda, const PlanarField& x, const Region& u, double tol,
                             int n_samples) {
    if (n_samples < 1) throw Error(Errc::InvalidArgument, "n_samples must be positive");
    const RBox b = u.bounding_box();
    const double x0 = to_double(b.x0), w = to_double(b.x1 - b.x0);
    const double y0 = to_double(b.y0), h = to_double(b.y1 - b.y0);
    std::vector<Vec2> pts;
    for (int i = 1; static_cast<int>(pts.size()) < n_samples && i < 64 * n_samples; ++i) {
        const Vec2 p{x0 + w * halton(i, 2), y0 + h * halton(i, 3)};
        if (u.contains(p)) pts.push_back(p);
    }
    double scale = 0.0;
    for (const Vec2& p : pts) scale = std::max(scale, norm(x.eval(p)));
    const double threshold = 1e-8 * scale;
    ControlResult r;
    for (const Vec2& p : pts) {
        const Vec2 v = x.eval(p);
        if (!(norm(v) > threshold)) continue;
        const auto dir = lambda.at(p);
        if (!dir) continue;
        ++r.samples;
        const double d = line_distance(v, *dir);
        if (d > r.max_deviation || r.samples == 1) {
            r.max_deviation = std::max(r.max_deviation, d);
            r.worst_point = p;
        }
    }
    r.controls = r.max_deviation < tol;
    return r;
}

bool orientability_check(const LineFieldRep& lambda, const Region& annulus, int n_samples) {
    const auto* a = std::get_if<Annulus>(&annulus.shape());
    if (!a) throw Error(Errc::InvalidRegion, "orientability is checked on annuli");
    if (n_samples < 8) throw Error(Errc::SamplingTooCoarse, "need at least 8 samples on the core circle");
    const double cx = to_double(a->center.x), cy = to_double(a->center.y);
    const double r = 0.5 * (to_double(a->r_in) + to_double(a->r_out));
    auto sample = [&](int k) {
        const double th = 2.0 * std::numbers::pi * k / n_samples;
        const auto u = lambda.at({cx + r * std::cos(th), cy + r * std::sin(th)});
        if (!u) throw Error(Errc::SamplingTooCoarse, "line field undefined on the core circle");
        return *u;
    };
    const Vec2 start = sample(0);
    Vec2 prev = start;
    for (int k = 1; k <= n_samples; ++k) {
        Vec2 u = k == n_samples ? start : sample(k);
        if (line_distance(prev, u) >= std::numbers::pi / 4)
            throw Error(Errc::SamplingTooCoarse, "angular jump of a quarter turn or more between samples");
        if (dot(prev, u) < 0.0) u = -u;
        prev = u;
    }
    // prev is the transported orientation at the start point, +-start
    return dot(prev, start) > 0.0;
}

// ---- flowbox line fields ------------------------------------------------------------------------

LineFieldRep flowbox_line_field(const PlanarField& x, const Flowbox& fb, int l) {
    if (l < 1) throw Error(Errc::InvalidArgument, "l must be at least 1");
    const double tw = to_double(fb.time_window()), hl = to_double(fb.half_length());
    const double s_min = 1e-3 * hl;
    return LineFieldRep(
        [x, fb, l, tw, hl, s_min](Vec2 q) -> std::optional<Vec2> {
            Vec2 ts;
            try {
                ts = fb.to_chart(q);
            } catch (const Error&) {
                return std::nullopt;
            }
            const double t = ts.x, s = ts.y;
            if (std::abs(t) > tw * (1 + 1e-9) || std::abs(s) > hl * (1 + 1e-9)) return std::nullopt;
            Vec2 w;
            if (std::abs(s) < s_min) {
                const double hp = std::pow(s_min, l);
                const Vec2 fp = fb.pushforward(x, t, s_min), fm = fb.pushforward(x, t, -s_min);
                w = 0.5 * ((1.0 / hp) * fp + ((l % 2 ? -1.0 : 1.0) / hp) * fm);
            } else {
                w = fb.pushforward(x, t, s);
                if (l % 2 == 1 && s < 0.0) w = -w;
            }
            const Vec2 v = fb.jacobian(t, s) * w;
            if (!(norm(v) > 0.0)) return std::nullopt;
            return normalized(v);
        },
        std::nullopt);
}

std::vector<Vec2> flowbox_samples(const Flowbox& fb, int n) {
    const double tw = to_double(fb.time_window()), hl = to_double(fb.half_length());
    std::vector<Vec2> out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double t = n == 1 ? 0.0 : -tw + 2.0 * tw * i / (n - 1);
            const double s = n == 1 ? 0.0 : -hl + 2.0 * hl * j / (n - 1);
            out.push_back(fb.chart(t, s));
        }
    return out;
}

double overlap_disagreement(const LineFieldRep& a, const LineFieldRep& b, const std::vector<Vec2>& points,
                            int* compared) {
    double worst = 0.0;
    int n = 0;
    for (const Vec2& p : points) {
        const auto u = a.at(p);
        const auto v = b.at(p);
        if (!u || !v) continue;
        ++n;
        worst = std::max(worst, line_distance(*u, *v));
    }
    if (compared) *compared = n;
    return worst;
}

}  // namespace vfb
