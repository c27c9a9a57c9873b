#include "vfblock/tracking.hpp"

#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numbers>

#include "vfblock/errors.hpp"

namespace vfb {

namespace ode = boost::numeric::odeint;

TrackingCertificate tracks_symbolic(const PlanarField& y, const PlanarField& x) {
    if (y.surface() != x.surface()) throw Error(Errc::InvalidArgument, "fields on different surfaces");
    if (x.is_zero()) throw Error(Errc::DegenerateField, "tracked field is identically zero");
    TrackingCertificate c;
    c.mode = TrackingCertificate::Mode::SymbolicZero;
    c.determinant = wedge(lie_bracket(y, x), x);
    c.verdict = c.determinant.is_zero();
    return c;
}

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

double tracking_residual(const PlanarField& y, const PlanarField& x, const Region& u, int n_samples) {
    if (n_samples < 1) throw Error(Errc::InvalidArgument, "n_samples must be positive");
    const PlanarField b = lie_bracket(y, x);
    const RBox box = u.bounding_box();
    const double x0 = to_double(box.x0), w = to_double(box.x1 - box.x0);
    const double y0 = to_double(box.y0), h = to_double(box.y1 - box.y0);
    // threshold relative to the typical size of X on the samples
    std::vector<Vec2> pts;
    for (int i = 1; static_cast<int>(pts.size()) < n_samples && i < 64 * n_samples; ++i) {
        const Vec2 p{x0 + w * halton(i, 2), y0 + h * halton(i, 3)};
        if (u.contains(p)) pts.push_back(p);
    }
    double scale = 0.0;
    for (const Vec2& p : pts) scale = std::max(scale, norm(x.eval(p)));
    const double threshold = 1e-8 * std::max(scale, 1e-300);
    double worst = 0.0;
    for (const Vec2& p : pts) {
        const Vec2 xv = x.eval(p);
        const double nx = norm(xv);
        if (nx <= threshold) continue;
        const Vec2 bv = b.eval(p);
        worst = std::max(worst, std::abs(cross(bv, xv)) / (norm(bv) * nx + 1e-12));
    }
    return worst;
}

// ---- integration ----------------------------------------------------------------------

namespace {

template <class State, class Rhs>
void integrate_to(Rhs rhs, State& s, double t, double tol, const FlowOptions& opts) {
    if (!(tol > 0)) throw Error(Errc::InvalidArgument, "integration tolerance must be positive");
    if (t == 0.0) return;
    auto stepper = ode::make_controlled(tol, tol, ode::runge_kutta_dopri5<State>());
    const double dir = t > 0 ? 1.0 : -1.0;
    const double floor_step = opts.min_step * std::max(1.0, std::abs(t));
    double cur = 0.0;
    double dt = dir * std::min(std::abs(t), 1e-2);
    long steps = 0;
    while (dir * (t - cur) > 0.0) {
        if (dir * (cur + dt - t) > 0.0) dt = t - cur;
        if (std::abs(t - cur) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) break;
        if (++steps > 10'000'000) throw Error(Errc::StepUnderflow, "integration step budget exhausted");
        if (stepper.try_step(rhs, s, cur, dt) == ode::fail) {
            if (std::abs(dt) < floor_step) throw Error(Errc::StepUnderflow, "step size underflow");
            continue;
        }
        for (std::size_t i = 0; i < 2; ++i)
            if (!std::isfinite(s[i]) || std::abs(s[i]) > opts.escape_radius)
                throw Error(Errc::Escape, "trajectory left the working box");
    }
}

}  // namespace

Vec2 flow_integrate(const PlanarField& y, Vec2 p, double t, double tol, const FlowOptions& opts) {
    using State = std::array<double, 2>;
    State s{p.x, p.y};
    auto rhs = [&y](const State& z, State& dz, double) {
        const Vec2 v = y.eval(Vec2{z[0], z[1]});
        dz = {v.x, v.y};
    };
    integrate_to(rhs, s, t, tol, opts);
    return {s[0], s[1]};
}

namespace {

// Flow of (point, tangent vector) under Y and its variational equation.
std::pair<Vec2, Vec2> flow_with_tangent(const PlanarField& y, Vec2 p, Vec2 v, double t, double tol) {
    using State = std::array<double, 4>;
    State s{p.x, p.y, v.x, v.y};
    auto rhs = [&y](const State& z, State& dz, double) {
        const Vec2 q{z[0], z[1]};
        const Vec2 f = y.eval(q);
        const Mat2 j = y.jacobian(q);
        const Vec2 dv = j * Vec2{z[2], z[3]};
        dz = {f.x, f.y, dv.x, dv.y};
    };
    integrate_to(rhs, s, t, tol, FlowOptions{});
    return {{s[0], s[1]}, {s[2], s[3]}};
}

}  // namespace

// ---- flowbox ---------------------------------------------------------------------------------

Vec2 Flowbox::chart(double t, double s) const { return flow_integrate(y_, p_ + s * n_, t, tol_); }

Mat2 Flowbox::jacobian(double t, double s) const {
    const auto [h, v] = flow_with_tangent(y_, p_ + s * n_, n_, t, tol_);
    const Vec2 f = y_.eval(h);
    return {f.x, v.x, f.y, v.y};
}

Vec2 Flowbox::pushforward(const PlanarField& x, double t, double s) const {
    const auto [h, v] = flow_with_tangent(y_, p_ + s * n_, n_, t, tol_);
    const Vec2 f = y_.eval(h);
    const Mat2 j{f.x, v.x, f.y, v.y};
    return solve(j, x.eval(h));
}

Vec2 Flowbox::to_chart(Vec2 q) const {
    const Vec2 yp = y_.eval(p_);
    double t = dot(q - p_, yp) / dot(yp, yp);
    double s = dot(q - p_, n_);
    for (int it = 0; it < 60; ++it) {
        const auto [h, v] = flow_with_tangent(y_, p_ + s * n_, n_, t, tol_);
        const Vec2 r = h - q;
        if (norm(r) <= 10.0 * tol_ * std::max(1.0, norm(q))) return {t, s};
        const Vec2 f = y_.eval(h);
        const Vec2 d = solve(Mat2{f.x, v.x, f.y, v.y}, r);
        t -= d.x;
        s -= d.y;
        if (!std::isfinite(t) || !std::isfinite(s)) break;
    }
    throw Error(Errc::NumericalAmbiguity, "inverse chart did not converge");
}

bool Flowbox::valid() const {
    const double tw = to_double(time_window_), hl = to_double(half_length_);
    const Vec2 yhat = normalized(y_.eval(p_));
    try {
        // Y crosses the transversal segment in one direction
        for (int j = 0; j <= 32; ++j) {
            const double s = -hl + 2.0 * hl * j / 32;
            const Vec2 f = y_.eval(p_ + s * n_);
            if (dot(f, yhat) < 0.05 * norm(f)) return false;
        }
        // the chart stays nondegenerate on the window
        constexpr int n = 7;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double t = -tw + 2.0 * tw * i / (n - 1);
                const double s = -hl + 2.0 * hl * j / (n - 1);
                const auto [h, v] = flow_with_tangent(y_, p_ + s * n_, n_, t, tol_);
                const Vec2 f = y_.eval(h);
                const double nf = norm(f), nv = norm(v);
                if (!(nf > 0.0) || !(nv > 0.0) || cross(f, v) / (nf * nv) < 0.05) return false;
            }
        // injective iff no orbit leaving the segment returns to it within time 2T
        constexpr int m = 256;
        for (int j = 0; j <= 8; ++j) {
            const double s = -hl + 2.0 * hl * j / 8;
            Vec2 q = p_ + s * n_;
            double g_prev = 0.0;
            for (int k = 1; k <= m; ++k) {
                const Vec2 next = flow_integrate(y_, q, 2.0 * tw / m, tol_);
                const double g = dot(next - p_, yhat);
                if (k > 1 && ((g_prev > 0.0) != (g > 0.0))) {
                    const double w = g_prev / (g_prev - g);
                    const Vec2 c = q + w * (next - q);
                    if (std::abs(dot(c - p_, n_)) <= hl * (1.0 + 1e-9)) return false;
                }
                g_prev = g;
                q = next;
            }
        }
    } catch (const Error&) {
        return false;
    }
    return true;
}

Flowbox Flowbox::build(const PlanarField& y, Vec2 p, const Rational& half_length, const Rational& time_window,
                       double tol) {
    if (half_length <= 0 || time_window <= 0) throw Error(Errc::InvalidArgument, "flowbox window must be positive");
    const Vec2 yp = y.eval(p);
    if (norm(yp) < 1e-12) throw Error(Errc::ZeroAtBasePoint, "Y vanishes at the flowbox base point");
    const Vec2 n = normalized(perp(yp));
    Rational hl = half_length, tw = time_window;
    for (int attempt = 0; attempt < 12; ++attempt) {
        Flowbox fb(y, p, n, hl, tw, tol);
        if (fb.valid()) return fb;
        hl /= 2;
        tw /= 2;
    }
    throw Error(Errc::FoldDetected, "no injective flowbox window found");
}

// ---- invariance -----------------------------------------------------------------------------

Vec2 polish_zero(const PlanarField& x, Vec2 q, int iterations) {
    double mu = 1e-6;
    Vec2 v = x.eval(q);
    for (int it = 0; it < iterations && norm(v) > 0.0; ++it) {
        const Mat2 j = x.jacobian(q);
        // (J^T J + mu I) d = J^T v
        const Mat2 a{j.a * j.a + j.c * j.c + mu, j.a * j.b + j.c * j.d, j.a * j.b + j.c * j.d,
                     j.b * j.b + j.d * j.d + mu};
        const Vec2 g{j.a * v.x + j.c * v.y, j.b * v.x + j.d * v.y};
        if (a.det() == 0.0) break;
        const Vec2 cand = q - solve(a, g);
        const Vec2 cv = x.eval(cand);
        if (norm(cv) < norm(v)) {
            q = cand;
            v = cv;
            mu = std::max(mu / 3.0, 1e-15);
        } else {
            mu *= 4.0;
            if (mu > 1e12) break;
        }
    }
    return q;
}

ZeroInvariance zero_invariance_check(const PlanarField& x, const PlanarField& y, const ZeroEnclosure& enc,
                                     double t_max, int n_points, double tol) {
    if (!tracks_symbolic(y, x).verdict) throw Error(Errc::PreconditionViolated, "Y does not track X");
    if (n_points < 1 || !(tol > 0)) throw Error(Errc::InvalidArgument, "need n_points >= 1 and tol > 0");
    ZeroInvariance r;
    const double flow_tol = std::min(1e-12, tol * 1e-3);
    const std::size_t n = enc.size();
    for (int k = 0; k < n_points && n > 0; ++k) {
        const std::size_t idx = static_cast<std::size_t>(k) * n / static_cast<std::size_t>(n_points);
        if (k > 0 && idx == static_cast<std::size_t>(k - 1) * n / static_cast<std::size_t>(n_points)) continue;
        const RPoint c = enc.box(idx).center();
        const Vec2 q = polish_zero(x, {to_double(c.x), to_double(c.y)});
        if (norm(x.eval(q)) > tol) continue;
        ++r.seeds;
        for (double f : {0.25, -0.25, 0.5, -0.5, 1.0, -1.0}) {
            const Vec2 q2 = flow_integrate(y, q, f * t_max, flow_tol);
            const double defect = norm(x.eval(q2)) / (1.0 + x.jacobian(q2).frobenius());
            r.max_defect = std::max(r.max_defect, defect);
            ++r.flows;
        }
    }
    r.invariant = r.max_defect < tol && (r.seeds > 0 || n == 0);
    return r;
}

OrderEstimate estimate_order(const PlanarField& x, Vec2 q) {
    constexpr int dirs = 32;
    std::array<double, 4> m{};
    for (int i = 0; i < 4; ++i) {
        const double h = std::ldexp(1.0, -5 - i);
        for (int d = 0; d < dirs; ++d) {
            const double a = 2.0 * std::numbers::pi * (d + 0.5) / dirs;
            m[i] = std::max(m[i], norm(x.eval(q + h * Vec2{std::cos(a), std::sin(a)})));
        }
    }
    OrderEstimate e;
    if (m[3] == 0.0) {
        e.order = 0;  // no detectable jet
        return e;
    }
    for (int i = 0; i < 3; ++i) e.slopes.push_back(std::log2(m[i] / m[i + 1]));
    const long j = std::lround(e.slopes.front());
    for (double s : e.slopes)
        if (std::abs(s - static_cast<double>(j)) > 0.2 || j < 1)
            throw Error(Errc::OrderEstimateAmbiguous, "log-log slopes do not settle on one integer order");
    e.order = static_cast<int>(j);
    return e;
}

OrderInvariance order_invariance_check(const PlanarField& x, const PlanarField& y, const RPoint& p, double t, int k) {
    if (k < 1) throw Error(Errc::InvalidArgument, "k must be at least 1");
    if (!tracks_symbolic(y, x).verdict) throw Error(Errc::PreconditionViolated, "Y does not track X");
    OrderInvariance r;
    r.at_p = jet_order(x, p, k);
    const Vec2 q0 = flow_integrate(y, {to_double(p.x), to_double(p.y)}, t, 1e-12);
    r.q = polish_zero(x, q0);
    const OrderEstimate e = estimate_order(x, r.q);
    r.slopes = e.slopes;
    r.at_q = (e.order == 0 || e.order > k) ? JetOrder::kflat(k) : JetOrder::of(e.order, k);
    r.same = r.at_p == r.at_q;
    return r;
}

OrderConsistency order_consistency_check(const PlanarField& x, const std::vector<RPoint>& points, int k) {
    OrderConsistency r;
    for (const RPoint& p : points) r.orders.push_back(jet_order(x, p, k));
    r.same = !r.orders.empty() && std::all_of(r.orders.begin(), r.orders.end(),
                                              [&](const JetOrder& o) { return o == r.orders.front(); });
    return r;
}

}  // namespace vfb
