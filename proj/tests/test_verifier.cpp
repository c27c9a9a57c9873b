#include "doctest.h"
#include "support.hpp"
#include "vfblock/errors.hpp"
#include "vfblock/verifier.hpp"

using namespace vfbt;

namespace {

const Poly2 S = C(1) - X() * X() - Y() * Y();
PlanarField E() { return plane(X(), Y()); }
PlanarField rot() { return plane(-Y(), X()); }
PlanarField circle_field() { return plane(S * -Y(), S * X()); }

Verdict verdict_of(const TheoremReport& r, const std::string& name) {
    if (const Check* c = r.hypothesis(name)) return c->verdict;
    if (const Check* c = r.conclusion(name)) return c->verdict;
    FAIL("no check named " << name);
    return Verdict::Inconclusive;
}

}  // namespace

TEST_CASE("summarize orders verdicts") {
    const Check p{"a", Verdict::Pass, ""}, f{"b", Verdict::Fail, ""}, i{"c", Verdict::Inconclusive, ""},
        n{"d", Verdict::NotImplemented, ""};
    CHECK(summarize({p, i, f}, {f}).kind == Overall::Kind::HypothesisFailed);
    CHECK(summarize({p, i, f}, {f}).name == "b");
    CHECK(summarize({p, i}, {f}).kind == Overall::Kind::Inconclusive);
    CHECK(summarize({p}, {i, f}).kind == Overall::Kind::ConclusionFailed);
    CHECK(summarize({p}, {n, i}).kind == Overall::Kind::Inconclusive);
    CHECK(summarize({p}, {n, p}).kind == Overall::Kind::Pass);
}

TEST_CASE("verify_main examples") {
    const auto a = verify_main(E(), rot(), unit_disk());
    CHECK(a.overall.kind == Overall::Kind::Pass);
    REQUIRE(a.other_enclosure);
    CHECK(a.other_enclosure->covers({0, 0}));
    const Check* meet = a.conclusion("zero_meets_block");
    REQUIRE(meet);
    CHECK(meet->data.contains("exact_witness"));

    const auto b = verify_main(E(), plane(C(1), Poly2{}), unit_disk());
    CHECK(b.overall.kind == Overall::Kind::HypothesisFailed);
    CHECK(b.overall.name == "tracking");

    const auto c = verify_main(circle_field(), rot(), annulus(Q(1, 2), Q(3, 2)));
    CHECK(c.overall.kind == Overall::Kind::HypothesisFailed);
    CHECK(c.overall.name == "essential");
    CHECK_FALSE(c.other_enclosure->overlaps(*c.k_enclosure));
    CHECK_FALSE(c.contradiction);
}

TEST_CASE("not_flat checks") {
    ZeroEnclosure empty;
    CHECK(check_not_flat(E(), empty, 1, {}).verdict == Verdict::Pass);
    // x^3 is 2-flat at the origin
    const auto cube = plane(X() * X() * X(), Y() * Y() * Y());
    CHECK(check_not_flat(cube, zero_enclosure(cube, unit_disk(), Q(1, 16)), 2, {{0, 0}}).verdict == Verdict::Fail);
    CHECK(check_not_flat(cube, zero_enclosure(cube, unit_disk(), Q(1, 16)), 3, {{0, 0}}).verdict == Verdict::Pass);
    // without a supplied zero the interval path cannot exclude the flat origin
    CHECK(check_not_flat(cube, zero_enclosure(cube, unit_disk(), Q(1, 16)), 2, {}).verdict ==
          Verdict::Inconclusive);
    // degree 3 field with k = 1: interval certificate on the circle component
    const Check c = check_not_flat(circle_field(), zero_enclosure(circle_field(), annulus(Q(1, 2), Q(3, 2)), Q(1, 32)),
                                   1, {{1, 0}, {0, 1}});
    CHECK(c.verdict == Verdict::Pass);
    CHECK(c.data["method"] == "interval");
    CHECK(check_not_flat(plane(Poly2{}, Poly2{}), empty, 1, {}).verdict == Verdict::Fail);
}

TEST_CASE("verify_mainbis on the annulus") {
    VerifyOptions o;
    o.zeros = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const auto r = verify_mainbis(circle_field(), rot(), annulus(Q(1, 2), Q(3, 2)), o);
    for (const auto& c : r.hypotheses) CHECK_MESSAGE(c.verdict == Verdict::Pass, c.name << ": " << c.detail);
    for (const auto& c : r.conclusions)
        if (c.name != "approximation") CHECK_MESSAGE(c.verdict == Verdict::Pass, c.name << ": " << c.detail);
    CHECK(verdict_of(r, "approximation") == Verdict::NotImplemented);
    CHECK(r.overall.kind == Overall::Kind::Pass);
    const Check* ctl = r.conclusion("line_field_control");
    REQUIRE(ctl);
    CHECK(ctl->data["max_deviation"].get<double>() < 1e-6);
    CHECK(ctl->data["overlap_points"].get<int>() > 0);
    REQUIRE(r.components.size() == 1);
    REQUIRE(r.components[0].index);
    CHECK(r.components[0].index->index == 0);
    CHECK(r.components[0].component.loop_like);
}

TEST_CASE("verify_mainbis hypothesis failures") {
    const auto a = verify_mainbis(circle_field(), rot(), Region::disk({0, 0}, Q(3, 2)));
    CHECK(a.overall.kind == Overall::Kind::HypothesisFailed);
    CHECK(a.overall.name == "zero_free_on_block");
    CHECK(a.hypothesis("zero_free_on_block")->data.contains("exact_witness"));

    const auto b = verify_mainbis(E(), rot(), unit_disk());
    CHECK(b.overall.kind == Overall::Kind::HypothesisFailed);
    CHECK(b.overall.name == "zero_free_on_block");
}

TEST_CASE("verify_liealg examples") {
    const std::vector<PlanarField> upper = {plane(X(), Poly2{}), plane(Y(), Poly2{}), plane(Poly2{}, Y())};
    const auto a = verify_liealg(upper, E(), unit_disk());
    CHECK(a.overall.kind == Overall::Kind::Pass);
    REQUIRE(a.other_enclosure);
    for (const RBox& b : a.other_enclosure->boxes()) {
        CHECK(abs(b.x0) <= Q(1, 32));
        CHECK(abs(b.x1) <= Q(1, 32));
        CHECK(abs(b.y0) <= Q(1, 32));
        CHECK(abs(b.y1) <= Q(1, 32));
    }

    const std::vector<PlanarField> e2 = {plane(C(1), Poly2{}), plane(Poly2{}, C(1)), rot()};
    const auto b = verify_liealg(e2, E(), unit_disk());
    CHECK(b.overall.kind == Overall::Kind::HypothesisFailed);
    CHECK(verdict_of(b, "supersolvable") == Verdict::Fail);
    CHECK(verdict_of(b, "tracking") == Verdict::Fail);

    const auto c = verify_liealg({E()}, E(), unit_disk());
    CHECK(c.overall.kind == Overall::Kind::Pass);

    const auto d = verify_liealg({plane(C(1), Poly2{}), plane(X() * X(), Poly2{})}, E(), unit_disk());
    CHECK(d.overall.kind == Overall::Kind::HypothesisFailed);
    CHECK(d.overall.name == "closed");
}

TEST_CASE("tracking pairs never contradict MAIN") {
    // Y = R + g X with R a linear symmetry commuting with a linear X
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> d(-3, 3);
    int checked = 0;
    for (int it = 0; it < 12; ++it) {
        const int a = d(rng), b = d(rng);
        if (a == 0 && b == 0) continue;
        // X = (a x - b y, b x + a y) commutes with every such linear field
        const auto x = plane(C(a) * X() - C(b) * Y(), C(b) * X() + C(a) * Y());
        const int c = d(rng), e = d(rng);
        const auto r = plane(C(c) * X() - C(e) * Y(), C(e) * X() + C(c) * Y());
        const Poly2 g = random_poly(rng, 1);
        const auto y = r + plane(g * x.p().poly(), g * x.q().poly());
        const auto rep = verify_main(x, y, unit_disk());
        CHECK(rep.hypothesis("tracking")->verdict == Verdict::Pass);
        CHECK_FALSE(rep.contradiction);
        CHECK(rep.overall.kind != Overall::Kind::ConclusionFailed);
        ++checked;
    }
    CHECK(checked > 5);
}
