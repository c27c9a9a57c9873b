#include "doctest.h"
#include "support.hpp"
#include "vfblock/errors.hpp"
#include "vfblock/liealg.hpp"

using namespace vfbt;

namespace {

PlanarField E() { return plane(X(), Y()); }
PlanarField N() { return plane(Y(), Poly2{}); }
std::vector<PlanarField> e2() { return {plane(C(1), Poly2{}), plane(Poly2{}, C(1)), plane(-Y(), X())}; }
std::vector<PlanarField> sl2() { return {plane(C(1), Poly2{}), plane(X(), Poly2{}), plane(X() * X(), Poly2{})}; }
std::vector<PlanarField> upper() { return {plane(X(), Poly2{}), plane(Y(), Poly2{}), plane(Poly2{}, Y())}; }

Errc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::IOError;
}

// Dimensions of the derived series from symbolic brackets of fields alone.
std::vector<int> oracle_derived_dims(std::vector<PlanarField> s) {
    auto rank = [](const std::vector<PlanarField>& fs) {
        if (fs.empty()) return 0;
        const auto vs = coefficient_vectors(fs);
        return static_cast<int>(span_basis(vs, static_cast<int>(vs.front().size())).size());
    };
    std::vector<int> dims{rank(s)};
    for (int step = 0; step < 6 && dims.back() > 0; ++step) {
        std::vector<PlanarField> next;
        for (std::size_t a = 0; a < s.size(); ++a)
            for (std::size_t b = a + 1; b < s.size(); ++b) {
                const auto f = lie_bracket(s[a], s[b]);
                if (!f.is_zero()) next.push_back(f);
            }
        dims.push_back(rank(next));
        if (dims.back() == dims[dims.size() - 2]) break;
        s = next;
    }
    return dims;
}

void check_round_trip(const LieAlgebraPresentation& g) {
    for (int i = 0; i < g.dim(); ++i)
        for (int j = 0; j < g.dim(); ++j) CHECK(g.field(g.c[i][j]) == lie_bracket(g.basis[i], g.basis[j]));
}

}  // namespace

TEST_CASE("exact linear algebra") {
    const RMatrix m = RMatrix::from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}}, 3);
    CHECK(m.rank() == 2);
    const auto ns = m.nullspace();
    REQUIRE(ns.size() == 1);
    for (const auto& v : m * ns[0]) CHECK(v == 0);
    const auto x = m.solve({6, 12, 2});
    REQUIRE(x);
    CHECK(m * *x == RVector{6, 12, 2});
    CHECK_FALSE(m.solve({1, 0, 0}));
    CHECK(in_span({{1, 0, 1}}, {Q(-1, 2), 0, Q(-1, 2)}, 3));
}

TEST_CASE("structure constants examples") {
    const auto en = structure_constants({E(), N()});
    CHECK(en.closed);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (const auto& v : en.c[i][j]) CHECK(v == 0);

    const auto g = structure_constants(e2());
    CHECK(g.closed);
    // [r, d/dx] = -d/dy
    CHECK(g.c[2][0] == RVector{0, -1, 0});
    CHECK(g.c[2][1] == RVector{1, 0, 0});
    CHECK(g.c[0][1] == RVector{0, 0, 0});
    check_round_trip(g);

    const auto nc = structure_constants({plane(C(1), Poly2{}), plane(X() * X(), Poly2{})});
    CHECK_FALSE(nc.closed);
    REQUIRE(nc.witness);
    CHECK(*nc.witness == std::pair{0, 1});
    CHECK(code_of([&] { solvability(nc); }) == Errc::NotClosed);
    CHECK(code_of([&] { supersolvable_flag(nc); }) == Errc::NotClosed);

    CHECK(code_of([] { structure_constants({plane(X(), Poly2{}), plane(C(2) * X(), Poly2{})}); }) ==
          Errc::DependentBasis);
}

TEST_CASE("structure constants satisfy antisymmetry and Jacobi") {
    for (const auto& b : {e2(), sl2(), upper(), std::vector<PlanarField>{E(), N()}}) {
        const auto g = structure_constants(b);
        REQUIRE(g.closed);
        CHECK(g.antisymmetric());
        CHECK(g.jacobi());
        check_round_trip(g);
    }
}

TEST_CASE("random bases of linear algebras") {
    // random rational bases of gl(2) and of the upper triangular subalgebra
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> d(-3, 3);
    const std::vector<PlanarField> gl2 = {plane(X(), Poly2{}), plane(Y(), Poly2{}), plane(Poly2{}, X()),
                                          plane(Poly2{}, Y())};
    for (int it = 0; it < 20; ++it) {
        const bool tri = it % 2 == 0;
        const auto& src = tri ? upper() : gl2;
        const int n = static_cast<int>(src.size());
        std::vector<PlanarField> b;
        for (int i = 0; i < n; ++i) {
            PlanarField f = plane(Poly2{}, Poly2{});
            for (int j = 0; j < n; ++j) f = f + src[j].scaled(Rational(d(rng) + (i == j ? 7 : 0)));
            b.push_back(f);
        }
        const auto g = structure_constants(b);
        REQUIRE(g.closed);
        CHECK(g.antisymmetric());
        CHECK(g.jacobi());
        check_round_trip(g);
        const auto s = solvability(g);
        CHECK(s.dims == oracle_derived_dims(b));
        CHECK(s.solvable == tri);
        const auto fl = supersolvable_flag(g);
        if (tri) {
            REQUIRE(fl.kind == FlagResult::Kind::Flag);
            CHECK(verify_flag(g, fl.flag));
        } else {
            CHECK(fl.kind == FlagResult::Kind::NotSolvable);
        }
    }
}

TEST_CASE("solvability examples") {
    const auto a = solvability(structure_constants(e2()));
    CHECK(a.solvable);
    CHECK(a.depth == 2);
    CHECK(a.dims == oracle_derived_dims(e2()));
    const auto b = solvability(structure_constants(sl2()));
    CHECK_FALSE(b.solvable);
    CHECK(b.dims == std::vector<int>{3, 3});
    const auto c = solvability(structure_constants({plane(C(1), Poly2{}), plane(Poly2{}, C(1))}));
    CHECK(c.solvable);
    CHECK(c.depth == 1);
}

TEST_CASE("supersolvable_flag examples") {
    const auto u = structure_constants(upper());
    const auto f = supersolvable_flag(u);
    REQUIRE(f.kind == FlagResult::Kind::Flag);
    REQUIRE(f.flag.chain.size() == 3);
    CHECK(verify_flag(u, f.flag));
    // the Euler field is central and has the smallest leading index
    CHECK(f.flag.chain[0][0] == RVector{1, 0, 1});

    const auto e = supersolvable_flag(structure_constants(e2()));
    CHECK(e.kind == FlagResult::Kind::NoRealFlag);
    CHECK(e.stage == 0);

    const auto t = structure_constants({plane(C(1), Poly2{}), plane(Poly2{}, C(1))});
    const auto tf = supersolvable_flag(t);
    REQUIRE(tf.kind == FlagResult::Kind::Flag);
    CHECK(tf.flag.chain[0][0] == RVector{1, 0});
    CHECK(verify_flag(t, tf.flag));

    // translations with E + N, whose linear part is a Jordan block
    const auto jordan = structure_constants({plane(C(1), Poly2{}), plane(Poly2{}, C(1)), E() + N()});
    const auto jf = supersolvable_flag(jordan);
    REQUIRE(jf.kind == FlagResult::Kind::Flag);
    CHECK(verify_flag(jordan, jf.flag));

    CHECK(supersolvable_flag(structure_constants(sl2())).kind == FlagResult::Kind::NotSolvable);

    // rotation-free but with irrational real eigenvalues on translations
    const auto irr = structure_constants({plane(C(1), Poly2{}), plane(Poly2{}, C(1)), plane(C(2) * Y(), X())});
    CHECK(code_of([&] { supersolvable_flag(irr); }) == Errc::NumericalAmbiguity);
}

TEST_CASE("corrupted flags fail verification") {
    const auto u = structure_constants(upper());
    auto f = supersolvable_flag(u).flag;
    auto bad = f;
    bad.chain[0] = {RVector{1, 0, 0}};  // x d/dx spans no ideal
    CHECK_FALSE(verify_flag(u, bad));
    bad = f;
    bad.chain.pop_back();
    CHECK_FALSE(verify_flag(u, bad));
}

TEST_CASE("flag implies solvable on the corpus") {
    const std::vector<std::vector<PlanarField>> corpus = {
        e2(), sl2(), upper(), {E(), N()}, {plane(C(1), Poly2{}), plane(X(), Poly2{})},
        {plane(C(1), Poly2{}), plane(Poly2{}, C(1)), E()}, {E()},
    };
    for (const auto& b : corpus) {
        const auto g = structure_constants(b);
        const auto f = supersolvable_flag(g);
        if (f.kind == FlagResult::Kind::Flag) {
            CHECK(solvability(g).solvable);
            CHECK(verify_flag(g, f.flag));
        }
    }
}

TEST_CASE("algebra_tracks examples") {
    const auto u = algebra_tracks(structure_constants(upper()), E());
    CHECK(u.tracks);
    CHECK(u.certificates.size() == 3);
    CHECK(algebra_tracks(structure_constants({E(), N()}), E()).tracks);
    const auto e = algebra_tracks(structure_constants(e2()), E());
    CHECK_FALSE(e.tracks);
    CHECK_FALSE(e.certificates[0].verdict);
    CHECK(e.certificates[0].determinant == Scalar(Y()));
    CHECK(e.certificates[2].verdict);
}

TEST_CASE("common_zero_set examples and monotonicity") {
    const Rational res = Q(1, 32);
    for (const auto& b : {std::vector<PlanarField>{E(), N()}, upper()}) {
        const auto g = structure_constants(b);
        const auto z = common_zero_set(g, unit_disk(), res);
        REQUIRE_FALSE(z.empty());
        CHECK(z.covers({0, 0}));
        for (const auto& box : z.boxes()) {
            CHECK(abs(box.x0) <= Q(1, 16));
            CHECK(abs(box.y0) <= Q(1, 16));
        }
        for (const auto& f : b) {
            const auto zi = zero_enclosure(f, unit_disk(), res);
            for (const auto& cell : z.cells())
                CHECK(std::binary_search(zi.cells().begin(), zi.cells().end(), cell));
        }
    }
    CHECK(common_zero_set(structure_constants({plane(C(1), Poly2{})}), unit_disk(), res).empty());
}

TEST_CASE("extend_basis keeps only independent fields") {
    const auto g = structure_constants(upper());
    const auto h = extend_basis(g, {E()});
    CHECK(h.dim() == 3);
    const auto k = extend_basis(g, {plane(Poly2{}, X()), E()});
    CHECK(k.dim() == 4);
    CHECK(k.closed);
    CHECK_FALSE(solvability(k).solvable);
}
