#include "vfblock/field.hpp"

#include <algorithm>

#include "vfblock/errors.hpp"

namespace vfb {

const char* surface_name(Surface s) noexcept { return s == Surface::Plane ? "plane" : "torus"; }

// ---- Scalar ----------------------------------------------------------------

const Poly2& Scalar::poly() const {
    if (!is_poly()) throw Error(Errc::InvalidArgument, "scalar is not a polynomial");
    return std::get<Poly2>(value_);
}

const TrigPoly2& Scalar::trig() const {
    if (is_poly()) throw Error(Errc::InvalidArgument, "scalar is not a trigonometric polynomial");
    return std::get<TrigPoly2>(value_);
}

bool Scalar::is_zero() const {
    return std::visit([](const auto& v) { return v.is_zero(); }, value_);
}

Scalar Scalar::dx() const {
    return std::visit([](const auto& v) { return Scalar(v.dx()); }, value_);
}

Scalar Scalar::dy() const {
    return std::visit([](const auto& v) { return Scalar(v.dy()); }, value_);
}

namespace {

template <class Op>
Scalar combine(const Scalar& a, const Scalar& b, Op op) {
    if (a.is_poly() != b.is_poly()) throw Error(Errc::InvalidArgument, "mixing plane and torus components");
    if (a.is_poly()) return Scalar(op(a.poly(), b.poly()));
    return Scalar(op(a.trig(), b.trig()));
}

}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
    return combine(a, b, [](const auto& u, const auto& v) { return u + v; });
}
Scalar operator-(const Scalar& a, const Scalar& b) {
    return combine(a, b, [](const auto& u, const auto& v) { return u - v; });
}
Scalar operator*(const Scalar& a, const Scalar& b) {
    return combine(a, b, [](const auto& u, const auto& v) { return u * v; });
}
Scalar operator*(const Rational& s, const Scalar& a) {
    return std::visit([&](const auto& v) { return Scalar(s * v); }, a.value_);
}

double Scalar::eval(Vec2 p) const {
    return std::visit([&](const auto& v) { return v.eval(p); }, value_);
}

CompiledScalar::CompiledScalar(const Scalar& s) {
    if (s.is_poly())
        value_ = CompiledPoly2(s.poly());
    else
        value_ = s.trig();
}

double CompiledScalar::operator()(Vec2 p) const {
    if (const auto* c = std::get_if<CompiledPoly2>(&value_)) return (*c)(p);
    return std::get<TrigPoly2>(value_).eval(p);
}

Interval CompiledScalar::operator()(const IBox& box) const {
    if (const auto* c = std::get_if<CompiledPoly2>(&value_)) return (*c)(box);
    return std::get<TrigPoly2>(value_).eval(box);
}

// ---- PlanarField -----------------------------------------------------------

PlanarField::PlanarField() : PlanarField(plane(Poly2{}, Poly2{})) {}

PlanarField PlanarField::from_scalars(Surface surface, Scalar p, Scalar q, int smoothness) {
    const bool want_poly = surface == Surface::Plane;
    if (p.is_poly() != want_poly || q.is_poly() != want_poly)
        throw Error(Errc::InvalidArgument, "field components do not live on the declared surface");
    if (smoothness < 1) throw Error(Errc::InvalidArgument, "smoothness class must be positive");
    auto impl = std::make_shared<Impl>();
    impl->surface = surface;
    impl->smoothness = smoothness;
    impl->p = std::move(p);
    impl->q = std::move(q);
    impl->cp = CompiledScalar(impl->p);
    impl->cq = CompiledScalar(impl->q);
    impl->px = CompiledScalar(impl->p.dx());
    impl->py = CompiledScalar(impl->p.dy());
    impl->qx = CompiledScalar(impl->q.dx());
    impl->qy = CompiledScalar(impl->q.dy());
    return PlanarField(std::move(impl));
}

PlanarField PlanarField::plane(Poly2 p, Poly2 q, int smoothness) {
    return from_scalars(Surface::Plane, Scalar(std::move(p)), Scalar(std::move(q)), smoothness);
}

PlanarField PlanarField::torus(TrigPoly2 p, TrigPoly2 q, int smoothness) {
    return from_scalars(Surface::Torus, Scalar(std::move(p)), Scalar(std::move(q)), smoothness);
}

int PlanarField::degree() const {
    if (is_polynomial()) return std::max(p().poly().degree(), q().poly().degree());
    return std::max(p().trig().max_frequency(), q().trig().max_frequency());
}

Vec2 PlanarField::eval(Vec2 pt) const { return {impl_->cp(pt), impl_->cq(pt)}; }

namespace {

Rational exact_component(const Scalar& s, const RPoint& pt) {
    if (s.is_poly()) return s.poly().eval(pt);
    const Rational v = s.trig().eval_rational_part(pt);
    if (v != 0 && s.trig().scale_power() != 0)
        throw Error(Errc::NotExact, "value carries a transcendental factor of 2*pi");
    return v;
}

}  // namespace

std::pair<Rational, Rational> PlanarField::eval(const RPoint& pt) const {
    return {exact_component(impl_->p, pt), exact_component(impl_->q, pt)};
}

IVec PlanarField::enclose(const IBox& box) const { return {impl_->cp(box), impl_->cq(box)}; }

Mat2 PlanarField::jacobian(Vec2 pt) const {
    return {impl_->px(pt), impl_->py(pt), impl_->qx(pt), impl_->qy(pt)};
}

IMat2 PlanarField::enclose_jacobian(const IBox& box) const {
    return {impl_->px(box), impl_->py(box), impl_->qx(box), impl_->qy(box)};
}

IVec PlanarField::enclose_centered(const IBox& box) const {
    const double cx = box.x.mid();
    const double cy = box.y.mid();
    const IVec at_center = enclose(IBox{Interval(cx), Interval(cy)});
    const IVec offset{box.x - Interval(cx), box.y - Interval(cy)};
    const IVec spread = enclose_jacobian(box) * offset;
    return {at_center.x + spread.x, at_center.y + spread.y};
}

PlanarField PlanarField::scaled(const Rational& s) const {
    return from_scalars(surface(), s * p(), s * q(), smoothness());
}

PlanarField operator+(const PlanarField& a, const PlanarField& b) {
    if (a.surface() != b.surface()) throw Error(Errc::InvalidArgument, "fields live on different surfaces");
    return PlanarField::from_scalars(a.surface(), a.p() + b.p(), a.q() + b.q(),
                                     std::min(a.smoothness(), b.smoothness()));
}

PlanarField operator-(const PlanarField& a, const PlanarField& b) { return a + b.scaled(-1); }

bool operator==(const PlanarField& a, const PlanarField& b) {
    return a.surface() == b.surface() && a.p() == b.p() && a.q() == b.q();
}

PlanarField lie_bracket(const PlanarField& y, const PlanarField& x) {
    if (x.surface() != y.surface()) throw Error(Errc::InvalidArgument, "fields live on different surfaces");
    // DX * Y
    const Scalar dxy_p = x.p().dx() * y.p() + x.p().dy() * y.q();
    const Scalar dxy_q = x.q().dx() * y.p() + x.q().dy() * y.q();
    // DY * X
    const Scalar dyx_p = y.p().dx() * x.p() + y.p().dy() * x.q();
    const Scalar dyx_q = y.q().dx() * x.p() + y.q().dy() * x.q();
    return PlanarField::from_scalars(x.surface(), dxy_p - dyx_p, dxy_q - dyx_q,
                                     std::max(1, std::min(x.smoothness(), y.smoothness()) - 1));
}

Scalar wedge(const PlanarField& a, const PlanarField& b) {
    if (a.surface() != b.surface()) throw Error(Errc::InvalidArgument, "fields live on different surfaces");
    return a.p() * b.q() - a.q() * b.p();
}

PlanarField straight_homotopy(const PlanarField& x0, const PlanarField& x1, const Rational& t) {
    return x0.scaled(1 - t) + x1.scaled(t);
}

// ---- jets ------------------------------------------------------------------

namespace {

Scalar partial(const Scalar& s, int ax, int ay) {
    Scalar r = s;
    for (int i = 0; i < ax; ++i) r = r.dx();
    for (int i = 0; i < ay; ++i) r = r.dy();
    return r;
}

}  // namespace

JetOrder jet_order(const PlanarField& x, const RPoint& pt, int k) {
    if (k < 1) throw Error(Errc::InvalidArgument, "k must be positive");
    if (x.is_polynomial()) {
        const Poly2 tp = x.p().poly().translate(pt);
        const Poly2 tq = x.q().poly().translate(pt);
        if (tp.coeff(0, 0) != 0 || tq.coeff(0, 0) != 0)
            throw Error(Errc::PointNotZero, "field does not vanish at the given point");
        int j = -1;
        for (const Poly2* c : {&tp, &tq}) {
            if (c->is_zero()) continue;
            j = j < 0 ? c->min_degree() : std::min(j, c->min_degree());
        }
        if (j < 0 || j > k) return JetOrder::kflat(k);
        return JetOrder::of(j, k);
    }
    // Torus: partial derivatives of order d carry (2 pi)^d, which is nonzero,
    // so only their rational parts decide vanishing.
    for (int d = 0; d <= k; ++d) {
        for (int a = 0; a <= d; ++a) {
            for (const Scalar* comp : {&x.p(), &x.q()}) {
                const Rational v = partial(*comp, a, d - a).trig().eval_rational_part(pt);
                if (v != 0) {
                    if (d == 0) throw Error(Errc::PointNotZero, "field does not vanish at the given point");
                    return JetOrder::of(d, k);
                }
            }
        }
    }
    return JetOrder::kflat(k);
}

std::vector<CompiledScalar> jet_partials(const PlanarField& x, int max_order) {
    std::vector<CompiledScalar> out;
    for (int d = 1; d <= max_order; ++d)
        for (int a = 0; a <= d; ++a)
            for (const Scalar* comp : {&x.p(), &x.q()}) {
                Scalar s = partial(*comp, a, d - a);
                if (!s.is_zero()) out.emplace_back(s);
            }
    return out;
}

}  // namespace vfb
