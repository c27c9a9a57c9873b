#include "doctest.h"
#include "support.hpp"
#include "vfblock/errors.hpp"
#include "vfblock/index.hpp"

using namespace vfbt;

namespace {

const Poly2 S = C(1) - X() * X() - Y() * Y();
PlanarField circle_field() { return plane(S * -Y(), S * X()); }
PlanarField two_zeros() { return plane(X() * X() - C(1), X() * Y()); }

int wind(const PlanarField& x, const Region& u) {
    const auto c = u.boundary().front();
    return winding_number(x, c, Q(1, 1000)).winding;
}

}  // namespace

TEST_CASE("winding_number examples") {
    CHECK(wind(plane(X(), Y()), unit_disk()) == 1);
    CHECK(wind(plane(X(), -Y()), unit_disk()) == -1);
    const auto z2 = plane(X() * X() - Y() * Y(), C(2) * X() * Y());
    CHECK(wind(z2, unit_disk()) == 2);
    CHECK(oracle_winding(z2, 0, 0, 1) == 2);
    CHECK(wind(plane(C(1), Poly2{}), unit_disk()) == 0);
    CHECK_THROWS_AS(winding_number(plane(X(), Y()), unit_disk().boundary().front(), 0), Error);
}

TEST_CASE("winding certification respects the quarter-turn bound") {
    const auto z3 = plane(X() * X() * X() - C(3) * X() * Y() * Y(), C(3) * X() * X() * Y() - Y() * Y() * Y());
    const auto w = winding_number(z3, unit_disk().boundary().front(), Q(1, 2));
    CHECK(w.winding == 3);
    CHECK(w.max_step < std::numbers::pi / 2);
    CHECK(w.residual < 0.25);
    CHECK(w.samples >= 32);
}

TEST_CASE("winding agrees with the brute-force oracle on random fields") {
    std::mt19937 rng(23);
    int compared = 0;
    for (int it = 0; it < 40; ++it) {
        const auto x = random_field(rng, 3);
        const auto u = Region::disk({Q(1, 5), Q(-1, 7)}, Q(4, 5));
        try {
            const auto r = region_index(x, u);
            CHECK(r.index == oracle_winding(x, 0.2, -1.0 / 7, 0.8));
            CHECK(r.max_step_rotation < std::numbers::pi / 2);
            ++compared;
        } catch (const Error& e) {
            CHECK(e.code() == Errc::BoundaryZero);
        }
    }
    CHECK(compared > 25);
}

TEST_CASE("rectangle loops and circles give the same index") {
    const auto x = plane(X() * X() - Y() * Y() - C(Q(1, 10)), C(2) * X() * Y() + C(Q(1, 20)));
    CHECK(region_index(x, unit_disk()).index == region_index(x, Region::rect(-1, -1, 1, 1)).index);
    CHECK(region_index(plane(X(), -Y()), Region::rect(Q(-1, 3), Q(-1, 2), 1, Q(1, 4))).index == -1);
}

TEST_CASE("block_index examples") {
    const auto src = block_index(certify_block(plane(X(), Y()), unit_disk(), Q(1, 32)));
    CHECK(src.index == 1);
    CHECK(src.essential);
    CHECK(src.certified);
    const auto ann = annulus(Q(1, 2), Q(3, 2));
    const auto circ = block_index(certify_block(circle_field(), ann, Q(1, 32)));
    CHECK(circ.index == 0);
    CHECK_FALSE(circ.essential);
    CHECK(oracle_winding(circle_field(), 0, 0, 1.5) - oracle_winding(circle_field(), 0, 0, 0.5) == 0);
    const auto two = block_index(certify_block(two_zeros(), ann, Q(1, 32)));
    CHECK(two.index == 2);
    CHECK(oracle_winding(two_zeros(), 0, 0, 1.5) - oracle_winding(two_zeros(), 0, 0, 0.5) == 2);
}

TEST_CASE("additivity over small disks") {
    const auto whole = region_index(two_zeros(), annulus(Q(1, 2), Q(3, 2))).index;
    const auto left = region_index(two_zeros(), Region::disk({-1, 0}, Q(1, 4))).index;
    const auto right = region_index(two_zeros(), Region::disk({1, 0}, Q(1, 4))).index;
    CHECK(left == 1);
    CHECK(right == 1);
    CHECK(whole == left + right);
}

TEST_CASE("nondegenerate linear zeros have index sign det") {
    std::mt19937 rng(29);
    std::uniform_int_distribution<int> e(-4, 4);
    int n = 0;
    while (n < 50) {
        const int a = e(rng), b = e(rng), c = e(rng), d = e(rng);
        const int det = a * d - b * c;
        if (det == 0) continue;
        ++n;
        const auto x = plane(C(a) * X() + C(b) * Y(), C(c) * X() + C(d) * Y());
        const auto r = region_index(x, Region::disk({0, 0}, Q(1, 8)));
        CHECK(r.index == (det > 0 ? 1 : -1));
    }
}

TEST_CASE("nonzero index forces a nonempty enclosure") {
    std::mt19937 rng(31);
    for (int it = 0; it < 30; ++it) {
        const auto x = random_field(rng, 2);
        try {
            const auto r = region_index(x, unit_disk());
            if (r.index != 0) CHECK_FALSE(zero_enclosure(x, unit_disk(), Q(1, 16)).empty());
        } catch (const Error&) {
        }
    }
}

TEST_CASE("winding is unchanged by start point rotation and finer budgets") {
    const auto z2 = plane(X() * X() - Y() * Y() + C(Q(1, 5)) * X(), C(2) * X() * Y() - C(Q(1, 7)));
    const auto c = unit_disk().boundary().front();
    const int base = winding_number(z2, c, Q(1, 100)).winding;
    for (double shift : {0.3, 1.7, 4.1}) {
        CurveImage img;
        img.t0 = shift;
        img.t1 = shift + c.period();
        img.at = [&](double t) { return z2.eval(c.at(t)); };
        img.enclose = [&](Interval t) { return z2.enclose_centered(c.enclose(t)); };
        CHECK(winding_along(img).winding == base);
    }
    CertOptions deep;
    deep.max_depth = 40;
    CHECK(winding_number(z2, c, Q(1, 100), deep).winding == base);
}

TEST_CASE("perturbation_bound examples") {
    const auto b = certify_block(plane(X(), Y()), unit_disk(), Q(1, 32));
    const Rational delta = perturbation_bound(b);
    CHECK(delta > Q(9, 10));
    CHECK(delta <= 1);
    const auto shifted = plane(X() + C(delta / 2), Y());
    CHECK(region_index(shifted, unit_disk()).index == 1);

    // random perturbations with sup-norm < delta / 2 on the closed disk
    std::mt19937 rng(37);
    for (int it = 0; it < 100; ++it) {
        const Poly2 p = random_poly(rng, 3), q = random_poly(rng, 3);
        Rational l1 = 0;  // sup over the unit disk of a polynomial <= sum |c|
        for (const auto& [ij, c] : p.terms()) l1 += abs(c);
        for (const auto& [ij, c] : q.terms()) l1 += abs(c);
        if (l1 == 0) continue;
        const Rational s = delta / (3 * l1);
        const auto y = plane(X() + s * p, Y() + s * q);
        CHECK(region_index(y, unit_disk()).index == 1);
    }
}

TEST_CASE("homotopy_invariance_check examples") {
    const auto id = plane(X(), Y());
    auto v = homotopy_invariance_check(id, plane(C(2) * X() + Y(), X() + C(2) * Y()), unit_disk(), 11);
    CHECK(v.kind == HomotopyVerdict::Kind::Invariant);
    CHECK(v.index == 1);

    v = homotopy_invariance_check(id, plane(-X(), -Y()), unit_disk(), 11);
    CHECK(v.kind == HomotopyVerdict::Kind::BoundaryDegenerate);
    CHECK(v.t == Q(1, 2));
    v = homotopy_invariance_check(id, plane(-X(), -Y()), unit_disk(), 10);
    CHECK(v.kind == HomotopyVerdict::Kind::BoundaryDegenerate);
    CHECK(v.t == Q(1, 2));

    v = homotopy_invariance_check(id, id, unit_disk(), 5);
    CHECK(v.kind == HomotopyVerdict::Kind::Invariant);
    CHECK(v.index == 1);
    CHECK_THROWS_AS(homotopy_invariance_check(id, id, unit_disk(), 1), Error);

    // a zero crossing the frontier between grid points
    v = homotopy_invariance_check(id, plane(X() - C(3), Y()), unit_disk(), 4);
    CHECK(v.kind == HomotopyVerdict::Kind::BoundaryDegenerate);
    CHECK(v.t == Q(1, 3));
}

TEST_CASE("wedge_check examples") {
    const auto id = plane(X(), Y());
    const Poly2 rho = C(1) + X() * X() + Y() * Y();
    auto w = wedge_check(id, plane(rho * X(), rho * Y()), unit_disk());
    CHECK(w.kind == WedgeVerdict::Kind::IndicesEqual);
    CHECK(w.index == 1);
    CHECK(w.symbolic);
    w = wedge_check(id, plane(-X(), -Y()), unit_disk());
    CHECK(w.kind == WedgeVerdict::Kind::IndicesEqual);
    CHECK(w.index == 1);
    w = wedge_check(id, plane(C(1), Poly2{}), unit_disk());
    CHECK(w.kind == WedgeVerdict::Kind::NotDependentOnBoundary);

    // dependent only on the circle: Y' = Y + (1 - r^2) * (-y, x)
    w = wedge_check(id, plane(X() - S * Y(), Y() + S * X()), unit_disk());
    CHECK(w.kind == WedgeVerdict::Kind::IndicesEqual);
    CHECK(w.symbolic);
    // dependent on the frontier but not isolating
    w = wedge_check(id, plane(S * X(), S * Y()), unit_disk());
    CHECK(w.kind == WedgeVerdict::Kind::NotIsolating);
    // rectangle edges
    w = wedge_check(id, plane(C(3) * X(), C(3) * Y()), Region::rect(-1, -1, 1, 2));
    CHECK(w.kind == WedgeVerdict::Kind::IndicesEqual);
}

TEST_CASE("lift_double_cover examples") {
    const auto ann = annulus(Q(1, 2), Q(3, 2));
    auto r = lift_double_cover(two_zeros(), ann);
    CHECK(r.base.index == 2);
    CHECK(r.lifted_index.index == 4);
    CHECK(r.doubling_holds);

    r = lift_double_cover(plane(C(1), Poly2{}), ann);
    CHECK(r.base.index == 0);
    CHECK(r.lifted_index.index == 0);
    r = lift_double_cover(circle_field(), ann);
    CHECK(r.base.index == 0);
    CHECK(r.lifted_index.index == 0);
    CHECK_THROWS_AS(lift_double_cover(two_zeros(), unit_disk()), Error);
}

TEST_CASE("lifted field matches an independent polar oracle") {
    // lift computed from the polar form: pull back by kappa(r, t) = (r, 2t)
    const auto x = two_zeros();
    const LiftedField lift(x, {0, 0});
    for (double t = 0.1; t < 6.2; t += 0.37) {
        const double r = 1.2;
        const Vec2 q{r * std::cos(t), r * std::sin(t)};
        // Dkappa in Cartesian coordinates via finite differences
        auto kappa = [](Vec2 p) {
            const double rr = norm(p), th = std::atan2(p.y, p.x);
            return Vec2{rr * std::cos(2 * th), rr * std::sin(2 * th)};
        };
        const double h = 1e-6;
        const Vec2 a = (1 / (2 * h)) * (kappa(q + Vec2{h, 0}) - kappa(q - Vec2{h, 0}));
        const Vec2 b = (1 / (2 * h)) * (kappa(q + Vec2{0, h}) - kappa(q - Vec2{0, h}));
        const Mat2 dk{a.x, b.x, a.y, b.y};
        const Vec2 expect = solve(dk, x.eval(kappa(q)));
        const Vec2 got = lift.eval(q);
        CHECK(got.x == doctest::Approx(expect.x).epsilon(1e-5));
        CHECK(got.y == doctest::Approx(expect.y).epsilon(1e-5));
        const IVec box = lift.enclose_on_circle(Q(6, 5), Interval(t));
        CHECK(box.x.contains(got.x));
        CHECK(box.y.contains(got.y));
    }
}

TEST_CASE("double cover doubling over a corpus") {
    std::mt19937 rng(41);
    const auto ann = annulus(Q(1, 2), Q(3, 2));
    int checked = 0;
    for (int it = 0; it < 25; ++it) {
        const auto x = random_field(rng, 2);
        try {
            const auto r = lift_double_cover(x, ann);
            CHECK(r.doubling_holds);
            ++checked;
        } catch (const Error& e) {
            CHECK(e.code() == Errc::BoundaryZero);
        }
    }
    CHECK(checked > 10);
}

TEST_CASE("component indices") {
    const auto enc = zero_enclosure(two_zeros(), annulus(Q(1, 2), Q(3, 2)), Q(1, 32));
    const auto comps = component_indices(two_zeros(), enc);
    REQUIRE(comps.size() == 2);
    for (const auto& c : comps) {
        REQUIRE(c.index);
        CHECK(c.index->index == 1);
    }
    const auto tube = component_indices(circle_field(), zero_enclosure(circle_field(), annulus(Q(1, 2), Q(3, 2)), Q(1, 32)));
    REQUIRE(tube.size() == 1);
    REQUIRE(tube[0].index);
    CHECK(tube[0].index->index == 0);

    // torus: (sin 2 pi x, sin 2 pi y) has indices +1, -1, -1, +1 with total 0
    const auto f = PlanarField::torus(TrigPoly2::term(1, 0, Wave::Sin, Wave::Cos, 1),
                                      TrigPoly2::term(0, 1, Wave::Cos, Wave::Sin, 1));
    const auto tc = component_indices(f, zero_enclosure(f, Region::torus(), Q(1, 32)));
    REQUIRE(tc.size() == 4);
    int total = 0;
    for (const auto& c : tc) {
        REQUIRE(c.index);
        total += c.index->index;
    }
    CHECK(total == 0);
    CHECK(region_index(f, Region::disk({0, 0}, Q(1, 4))).index == 1);
    CHECK(region_index(f, Region::disk({Q(1, 2), 0}, Q(1, 4))).index == -1);
    CHECK(region_index(f, Region::disk({0, Q(1, 2)}, Q(1, 4))).index == -1);
    CHECK(region_index(f, Region::disk({Q(1, 2), Q(1, 2)}, Q(1, 4))).index == 1);
}
