#include "doctest.h"
#include "support.hpp"
#include "vfblock/errors.hpp"
#include "vfblock/tracking.hpp"

using namespace vfbt;

namespace {

const Poly2 S = C(1) - X() * X() - Y() * Y();
PlanarField rot() { return plane(-Y(), X()); }
PlanarField circle_field() { return plane(S * -Y(), S * X()); }

}  // namespace

TEST_CASE("tracks_symbolic examples") {
    CHECK(tracks_symbolic(rot(), plane(X(), Y())).verdict);
    const auto c = tracks_symbolic(rot(), circle_field());
    CHECK(c.verdict);
    CHECK(c.determinant.is_zero());
    const auto n = tracks_symbolic(plane(C(1), Poly2{}), plane(X(), Y()));
    CHECK_FALSE(n.verdict);
    // det([Y,X], X) with [Y,X] = (1,0) is y
    CHECK(n.determinant.poly() == Y());
    CHECK_THROWS_AS(tracks_symbolic(rot(), plane(Poly2{}, Poly2{})), Error);
}

TEST_CASE("multiples of X track X") {
    std::mt19937 rng(43);
    int tested = 0;
    while (tested < 20) {
        const Poly2 g = random_poly(rng, 2);
        const auto x = random_field(rng, 2);
        if (x.is_zero()) continue;
        ++tested;
        const auto y = plane(g * x.p().poly(), g * x.q().poly());
        CHECK(tracks_symbolic(y, x).verdict);
        // [gX, X] = -(X . grad g) X
        const Poly2 xg = x.p().poly() * g.dx() + x.q().poly() * g.dy();
        CHECK(lie_bracket(y, x) == plane(-(xg * x.p().poly()), -(xg * x.q().poly())));
    }
}

TEST_CASE("tracking is linear in Y") {
    std::mt19937 rng(47);
    const auto x = circle_field();
    for (int it = 0; it < 10; ++it) {
        const Poly2 g1 = random_poly(rng, 2), g2 = random_poly(rng, 2);
        // radial functions times the rotation field, plus multiples of X, all track X
        const Poly2 r2 = X() * X() + Y() * Y();
        const auto y1 = plane(-(g1 * x.p().poly()), -(g1 * x.q().poly()));
        const auto y2 = plane(-(r2 * Y()), r2 * X());
        CHECK(tracks_symbolic(y1, x).verdict);
        CHECK(tracks_symbolic(y2, x).verdict);
        std::uniform_int_distribution<int> c(-9, 9), d(1, 9);
        const Rational a = Q(c(rng), d(rng)), b = Q(c(rng), d(rng));
        CHECK(tracks_symbolic(y1.scaled(a) + y2.scaled(b), x).verdict);
        (void)g2;
    }
}

TEST_CASE("torus tracking") {
    // X = (sin 2 pi y, 0) is tracked by Y = (1, 0): [Y, X] = DX Y = 0
    const auto x = PlanarField::torus(TrigPoly2::term(0, 1, Wave::Cos, Wave::Sin, 1), TrigPoly2{});
    const auto y = PlanarField::torus(TrigPoly2::constant(1), TrigPoly2{});
    CHECK(tracks_symbolic(y, x).verdict);
    const auto y2 = PlanarField::torus(TrigPoly2{}, TrigPoly2::term(1, 0, Wave::Sin, Wave::Cos, 1));
    CHECK_FALSE(tracks_symbolic(y2, x).verdict);
}

TEST_CASE("tracking_residual examples") {
    const auto ann = annulus(Q(1, 2), Q(3, 2));
    CHECK(tracking_residual(rot(), circle_field(), ann, 1000) < 1e-12);
    CHECK(tracking_residual(plane(C(1), Poly2{}), plane(X(), Y()), unit_disk(), 1000) > 0.1);
    CHECK(tracking_residual(circle_field(), circle_field(), ann, 1000) == 0.0);
}

TEST_CASE("non-tracking pairs have a visible residual") {
    std::mt19937 rng(53);
    int seen = 0;
    for (int it = 0; it < 30; ++it) {
        const auto x = random_field(rng, 2), y = random_field(rng, 2);
        if (x.is_zero() || y.is_zero()) continue;
        if (tracks_symbolic(y, x).verdict) continue;
        ++seen;
        CHECK(tracking_residual(y, x, unit_disk(), 2000) > 1e-3);
    }
    CHECK(seen > 10);
}

TEST_CASE("flow_integrate examples") {
    Vec2 q = flow_integrate(rot(), {1, 0}, std::numbers::pi / 2, 1e-12);
    CHECK(std::abs(q.x) < 1e-9);
    CHECK(std::abs(q.y - 1) < 1e-9);
    q = flow_integrate(plane(C(1), Poly2{}), {0.3, -0.7}, 1.0, 1e-12);
    CHECK(q.x == doctest::Approx(1.3).epsilon(1e-12));
    CHECK(q.y == doctest::Approx(-0.7).epsilon(1e-12));
    q = flow_integrate(plane(X(), Y()), {1, 0}, std::log(2.0), 1e-12);
    CHECK(std::abs(q.x - 2) < 1e-9);
    CHECK(std::abs(q.y) < 1e-12);
    // backward time
    q = flow_integrate(plane(X(), Y()), {2, 0}, -std::log(2.0), 1e-12);
    CHECK(std::abs(q.x - 1) < 1e-9);
    // blow-up of x' = x^2 in finite time
    CHECK_THROWS_AS(flow_integrate(plane(X() * X(), Poly2{}), {1, 0}, 2.0, 1e-10), Error);
    try {
        flow_integrate(plane(X() * X(), Poly2{}), {1, 0}, 2.0, 1e-10);
    } catch (const Error& e) {
        CHECK((e.code() == Errc::Escape || e.code() == Errc::StepUnderflow));
    }
}

TEST_CASE("flow composition") {
    std::mt19937 rng(59);
    std::uniform_real_distribution<double> u(-0.8, 0.8), tt(-0.7, 0.7);
    const auto y = plane(-Y() + C(Q(1, 5)) * X() * X(), X() - C(Q(1, 3)) * Y());
    const double tol = 1e-11;
    for (int it = 0; it < 20; ++it) {
        const Vec2 p{u(rng), u(rng)};
        const double s = tt(rng), t = tt(rng);
        const Vec2 a = flow_integrate(y, flow_integrate(y, p, t, tol), s, tol);
        const Vec2 b = flow_integrate(y, p, s + t, tol);
        CHECK(norm(a - b) < 10 * tol * 100);
    }
}

TEST_CASE("flowbox examples") {
    const auto fb = Flowbox::build(plane(C(1), Poly2{}), {0, 0}, Q(1, 2), Q(1, 2), 1e-12);
    for (double t : {-0.3, 0.1, 0.4})
        for (double s : {-0.4, 0.0, 0.25}) {
            const Vec2 h = fb.chart(t, s);
            CHECK(h.x == doctest::Approx(t));
            // normal is the counterclockwise perpendicular of (1, 0)
            CHECK(h.y == doctest::Approx(s));
            const auto x = plane(X() * Y(), C(2) + X());
            const Vec2 f = fb.pushforward(x, t, s);
            const Vec2 e = x.eval(h);
            CHECK(f.x == doctest::Approx(e.x));
            CHECK(f.y == doctest::Approx(e.y));
        }
    CHECK_THROWS_AS(Flowbox::build(plane(X(), Y()), {0, 0}, Q(1, 2), Q(1, 2), 1e-10), Error);
}

TEST_CASE("flowbox of the rotation rectifies Y") {
    const auto fb = Flowbox::build(rot(), {1, 0}, Q(1, 2), Q(1), 1e-12);
    const double tw = to_double(fb.time_window()), hl = to_double(fb.half_length());
    std::mt19937 rng(61);
    std::uniform_real_distribution<double> ut(-tw, tw), us(-hl, hl);
    const double h = 1e-5;
    for (int i = 0; i < 100; ++i) {
        const double t = ut(rng), s = us(rng);
        // oracle: chart Jacobian by central differences
        const Vec2 dt = (1 / (2 * h)) * (fb.chart(t + h, s) - fb.chart(t - h, s));
        const Vec2 ds = (1 / (2 * h)) * (fb.chart(t, s + h) - fb.chart(t, s - h));
        const Vec2 f = solve(Mat2{dt.x, ds.x, dt.y, ds.y}, rot().eval(fb.chart(t, s)));
        CHECK(std::abs(f.x - 1) < 1e-6);
        CHECK(std::abs(f.y) < 1e-6);
        const Vec2 g = fb.pushforward(rot(), t, s);
        CHECK(std::abs(g.x - 1) < 1e-9);
        CHECK(std::abs(g.y) < 1e-9);
        // polar-like: radius is 1 + s (the normal at (1,0) points outward or inward)
        const Vec2 q = fb.chart(t, s);
        CHECK(norm(q) == doctest::Approx(std::abs(1 + dot(fb.normal(), Vec2{1, 0}) * s)).epsilon(1e-9));
        const Vec2 back = fb.to_chart(q);
        CHECK(back.x == doctest::Approx(t).epsilon(1e-8));
        CHECK(back.y == doctest::Approx(s).epsilon(1e-8));
    }
}

TEST_CASE("flowbox window shrinks to stay injective") {
    // full turns of the rotation would fold the chart
    const auto fb = Flowbox::build(rot(), {1, 0}, Q(1, 2), Q(4), 1e-10);
    CHECK(fb.time_window() < Q(4));
    CHECK(to_double(fb.time_window()) < std::numbers::pi);
}

TEST_CASE("zero_invariance_check examples") {
    const auto ann = annulus(Q(1, 2), Q(3, 2));
    const auto enc = zero_enclosure(circle_field(), ann, Q(1, 32));
    const auto r = zero_invariance_check(circle_field(), rot(), enc, 1.0, 16, 1e-8);
    CHECK(r.invariant);
    CHECK(r.seeds >= 8);
    CHECK(r.max_defect < 1e-8);

    const auto origin = zero_enclosure(plane(X(), Y()), unit_disk(), Q(1, 32));
    const auto o = zero_invariance_check(plane(X(), Y()), rot(), origin, 1.0, 4, 1e-12);
    CHECK(o.invariant);
    CHECK(o.max_defect == 0.0);

    CHECK_THROWS_AS(zero_invariance_check(plane(X(), Y()), plane(C(1), Poly2{}), origin, 1.0, 4, 1e-8), Error);
}

TEST_CASE("order estimation and invariance") {
    CHECK(estimate_order(plane(X(), Y()), {0, 0}).order == 1);
    CHECK(estimate_order(plane(X() * X() - Y() * Y(), C(2) * X() * Y()), {0, 0}).order == 2);
    CHECK(estimate_order(plane(X().pow(3), Y().pow(3)), {0, 0}).order == 3);

    const auto r = order_invariance_check(circle_field(), rot(), {1, 0}, std::numbers::pi / 2, 3);
    CHECK(r.at_p == JetOrder::of(1, 3));
    CHECK(r.at_q == JetOrder::of(1, 3));
    CHECK(r.same);
    CHECK(std::abs(r.q.x) < 1e-9);
    CHECK(std::abs(r.q.y - 1) < 1e-9);
    // (0, 1) is itself an exact zero
    CHECK(jet_order(circle_field(), {0, 1}, 3) == JetOrder::of(1, 3));

    const auto o = order_invariance_check(plane(X(), Y()), rot(), {0, 0}, 0.7, 2);
    CHECK(o.same);
    CHECK(o.at_q == JetOrder::of(1, 2));

    const auto lk = order_consistency_check(circle_field(), {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, 3);
    CHECK(lk.same);
    for (const auto& jo : lk.orders) CHECK(jo == JetOrder::of(1, 3));

    CHECK_THROWS_AS(order_invariance_check(circle_field(), rot(), {Q(1, 2), 0}, 1.0, 3), Error);
}

TEST_CASE("zero invariance holds for tracking pairs") {
    // X = S * V with Y any field commuting with the rotation and tangent to circles
    const Poly2 r2 = X() * X() + Y() * Y();
    const std::vector<std::pair<PlanarField, PlanarField>> pairs = {
        {circle_field(), rot()},
        {circle_field(), plane(-(r2 * Y()), r2 * X())},
        {plane(S * X(), S * Y()), rot()},
    };
    const auto ann = annulus(Q(1, 2), Q(3, 2));
    for (const auto& [x, y] : pairs) {
        REQUIRE(tracks_symbolic(y, x).verdict);
        const auto enc = zero_enclosure(x, ann, Q(1, 32));
        CHECK(zero_invariance_check(x, y, enc, 0.8, 8, 1e-8).invariant);
    }
}
