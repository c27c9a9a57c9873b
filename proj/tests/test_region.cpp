#include "doctest.h"
#include "support.hpp"
#include "vfblock/certify.hpp"
#include "vfblock/errors.hpp"

using namespace vfbt;

namespace {

const Poly2 S = C(1) - X() * X() - Y() * Y();

PlanarField circle_field() { return plane(S * -Y(), S * X()); }
PlanarField two_zeros() { return plane(X() * X() - C(1), X() * Y()); }

// 10^4 boundary samples never go below a certified bound.
void check_bound_sampled(const PlanarField& x, const Region& u, const Rational& m) {
    const double md = to_double(m);
    for (const auto& c : u.boundary())
        for (int i = 0; i < 10000; ++i) CHECK(norm(x.eval(c.at(c.period() * i / 10000.0))) >= md);
}

}  // namespace

TEST_CASE("region validation and boundary orientation") {
    CHECK_THROWS_AS(Region::disk({0, 0}, 0), Error);
    CHECK_THROWS_AS(Region::annulus({0, 0}, 2, 1), Error);
    CHECK_THROWS_AS(Region::rect(0, 0, 0, 1), Error);
    const auto a = annulus(Q(1, 2), Q(3, 2));
    const auto b = a.boundary();
    REQUIRE(b.size() == 2);
    CHECK(b[0].orientation() == 1);
    CHECK(b[1].orientation() == -1);
    CHECK(Region::torus().boundary().empty());
}

TEST_CASE("boundary curve enclosures contain sampled points") {
    const auto r = Region::rect(Q(-1, 3), Q(1, 5), Q(2, 7), Q(9, 5));
    const auto c = Region::disk({Q(1, 3), Q(-2, 7)}, Q(5, 4));
    for (const Region& u : {r, c}) {
        for (const auto& curve : u.boundary()) {
            const double p = curve.period();
            for (int i = 0; i < 97; ++i) {
                const double a = p * i / 97, b = p * (i + 1) / 97;
                const IBox box = curve.enclose(Interval(a, b));
                for (int s = 0; s <= 8; ++s) {
                    const Vec2 q = curve.at(a + (b - a) * s / 8);
                    CHECK(box.x.contains(q.x));
                    CHECK(box.y.contains(q.y));
                }
            }
        }
    }
}

TEST_CASE("min_norm_on_boundary examples") {
    const auto m = min_norm_on_boundary(plane(X(), Y()), unit_disk(), Q(1, 1000));
    REQUIRE(m);
    CHECK(*m >= Q(999, 1000));
    CHECK(*m <= 1);

    const auto ann = annulus(Q(1, 2), Q(3, 2));
    const auto m2 = min_norm_on_boundary(two_zeros(), ann, Q(1, 100));
    REQUIRE(m2);
    CHECK(*m2 > 0);
    check_bound_sampled(two_zeros(), ann, *m2);

    CHECK_FALSE(min_norm_on_boundary(plane(X(), Y()), Region::disk({1, 0}, 1), Q(1, 100)));
}

TEST_CASE("certified bounds never exceed sampled minima") {
    std::mt19937 rng(17);
    int certified = 0;
    for (int it = 0; it < 20; ++it) {
        const auto x = random_field(rng, 3);
        const Region u = it % 2 ? unit_disk() : Region::rect(-1, Q(-1, 2), 1, 1);
        if (const auto m = min_norm_on_boundary(x, u, Q(1, 20))) {
            ++certified;
            check_bound_sampled(x, u, *m);
        }
    }
    CHECK(certified > 10);
}

TEST_CASE("zero_enclosure examples") {
    const auto e = zero_enclosure(plane(X(), Y()), unit_disk(), Q(1, 64));
    REQUIRE_FALSE(e.empty());
    for (const RBox& b : e.boxes()) {
        CHECK(b.diameter() <= 1.0 / 64);
        const RPoint c = b.center();
        CHECK(std::hypot(to_double(c.x), to_double(c.y)) <= 1.0 / 32);
    }
    CHECK(e.covers({0, 0}));

    CHECK(zero_enclosure(plane(C(1), Poly2{}), unit_disk(), Q(1, 64)).empty());

    const auto tube = zero_enclosure(circle_field(), annulus(Q(1, 2), Q(3, 2)), Q(1, 64));
    REQUIRE_FALSE(tube.empty());
    for (const RBox& b : tube.boxes()) {
        // each box meets the unit circle: nearest point inside, farthest corner outside
        const double x0 = to_double(b.x0), x1 = to_double(b.x1), y0 = to_double(b.y0), y1 = to_double(b.y1);
        const double near = std::hypot(std::clamp(0.0, x0, x1), std::clamp(0.0, y0, y1));
        const double far = std::hypot(std::max(std::abs(x0), std::abs(x1)), std::max(std::abs(y0), std::abs(y1)));
        CHECK(near <= 1.0);
        CHECK(far >= 1.0);
    }
    CHECK_THROWS_AS(zero_enclosure(plane(X(), Y()), unit_disk(), Q(0)), Error);
    CertOptions shallow;
    shallow.max_depth = 3;
    CHECK_THROWS_AS(zero_enclosure(plane(X(), Y()), unit_disk(), Q(1, 1024), shallow), Error);
}

TEST_CASE("enclosures contain every exact zero and shrink under refinement") {
    // fields with known rational zero sets
    struct Case {
        PlanarField x;
        Region u;
        std::vector<RPoint> zeros;
    };
    const std::vector<Case> cases = {
        {two_zeros(), annulus(Q(1, 2), Q(3, 2)), {{1, 0}, {-1, 0}}},
        {plane((X() - C(Q(1, 3))) * (X() + C(Q(1, 2))), Y() - C(Q(1, 4))), unit_disk(), {{Q(1, 3), Q(1, 4)}, {Q(-1, 2), Q(1, 4)}}},
        {plane(X() * Y(), X() - Y()), Region::rect(-1, -1, 1, 1), {{0, 0}}},
        {plane(X() * X() - Y() * Y(), C(2) * X() * Y()), unit_disk(), {{0, 0}}},
    };
    for (const auto& c : cases) {
        const auto coarse = zero_enclosure(c.x, c.u, Q(1, 16));
        const auto fine = zero_enclosure(c.x, c.u, Q(1, 32));
        for (const auto& z : c.zeros) {
            CHECK(coarse.covers(z));
            CHECK(fine.covers(z));
        }
        // every fine box lies inside some coarse box
        for (const RBox& f : fine.boxes()) {
            bool inside = false;
            for (const RBox& g : coarse.boxes())
                inside = inside || (g.x0 <= f.x0 && f.x1 <= g.x1 && g.y0 <= f.y0 && f.y1 <= g.y1);
            CHECK(inside);
        }
    }
}

TEST_CASE("certify_block examples") {
    const auto b = certify_block(plane(X(), Y()), unit_disk(), Q(1, 32));
    CHECK(b.boundary_margin > 0);
    CHECK(b.enclosure.covers({0, 0}));
    CHECK_THROWS_AS(certify_block(plane(X(), Y()), Region::disk({1, 0}, 1), Q(1, 32)), Error);
    try {
        certify_block(plane(X(), Y()), Region::disk({1, 0}, 1), Q(1, 32));
    } catch (const Error& e) {
        CHECK(e.code() == Errc::BoundaryZero);
    }
    const auto ann = certify_block(circle_field(), annulus(Q(1, 2), Q(3, 2)), Q(1, 32));
    CHECK_FALSE(ann.enclosure.empty());
    CHECK_THROWS_AS(certify_block(plane(X(), Y()), Region::torus(), Q(1, 8)), Error);
}

TEST_CASE("components examples") {
    const auto origin = components(zero_enclosure(plane(X(), Y()), unit_disk(), Q(1, 64)));
    REQUIRE(origin.size() == 1);
    CHECK_FALSE(origin[0].loop_like);

    const auto tube = components(zero_enclosure(circle_field(), annulus(Q(1, 2), Q(3, 2)), Q(1, 64)));
    REQUIRE(tube.size() == 1);
    CHECK(tube[0].loop_like);

    const auto pair = components(zero_enclosure(two_zeros(), annulus(Q(1, 2), Q(3, 2)), Q(1, 64)));
    REQUIRE(pair.size() == 2);
    for (const auto& c : pair) {
        const double cx = to_double(c.bbox.center().x);
        CHECK(std::abs(std::abs(cx) - 1.0) < 0.05);
        CHECK_FALSE(c.loop_like);
    }
    CHECK(components(zero_enclosure(plane(C(1), Poly2{}), unit_disk(), Q(1, 64))).empty());
}

TEST_CASE("torus enclosures wrap around the fundamental domain") {
    // (sin 2 pi x, sin 2 pi y): four zeros (0,0), (1/2,0), (0,1/2), (1/2,1/2)
    const auto f = PlanarField::torus(TrigPoly2::term(1, 0, Wave::Sin, Wave::Cos, 1),
                                      TrigPoly2::term(0, 1, Wave::Cos, Wave::Sin, 1));
    const auto e = zero_enclosure(f, Region::torus(), Q(1, 64));
    CHECK(e.periodic());
    for (const RPoint& z : {RPoint{0, 0}, RPoint{Q(1, 2), 0}, RPoint{0, Q(1, 2)}, RPoint{Q(1, 2), Q(1, 2)}})
        CHECK(e.covers(z));
    CHECK(components(e).size() == 4);

    // sin 2 pi y vanishes on two circles y = 0 and y = 1/2, each wrapping around
    const auto g = PlanarField::torus(TrigPoly2::term(0, 1, Wave::Cos, Wave::Sin, 1),
                                      TrigPoly2::term(0, 1, Wave::Cos, Wave::Sin, 2));
    const auto comps = components(zero_enclosure(g, Region::torus(), Q(1, 32)));
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].loop_like);
    CHECK(comps[1].loop_like);
}
