#pragma once

#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "vfblock/geometry.hpp"
#include "vfblock/poly2.hpp"
#include "vfblock/trigpoly2.hpp"

namespace vfb {

enum class Surface { Plane, Torus };

const char* surface_name(Surface s) noexcept;

/// A scalar component: polynomial on the plane or trigonometric polynomial
/// on the torus.
class Scalar {
public:
    Scalar() : value_(Poly2{}) {}
    Scalar(Poly2 p) : value_(std::move(p)) {}       // NOLINT
    Scalar(TrigPoly2 t) : value_(std::move(t)) {}   // NOLINT

    bool is_poly() const { return std::holds_alternative<Poly2>(value_); }
    const Poly2& poly() const;
    const TrigPoly2& trig() const;
    bool is_zero() const;

    Scalar dx() const;
    Scalar dy() const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Rational& s, const Scalar& a);
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.value_ == b.value_; }

    double eval(Vec2 p) const;

private:
    std::variant<Poly2, TrigPoly2> value_;
};

/// Precompiled float/interval evaluator for a Scalar.
class CompiledScalar {
public:
    CompiledScalar() = default;
    explicit CompiledScalar(const Scalar& s);

    double operator()(Vec2 p) const;
    Interval operator()(const IBox& box) const;

private:
    std::variant<CompiledPoly2, TrigPoly2> value_;
};

struct IMat2 {
    Interval a, b, c, d;
    IVec operator*(const IVec& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
};

/// Vector field X = (P, Q) on the plane (polynomial components) or on the
/// unit-period flat torus (trigonometric components). Immutable; copies share
/// the compiled evaluators.
class PlanarField {
public:
    PlanarField();
    static PlanarField plane(Poly2 p, Poly2 q, int smoothness = 1);
    static PlanarField torus(TrigPoly2 p, TrigPoly2 q, int smoothness = 1);
    static PlanarField from_scalars(Surface surface, Scalar p, Scalar q, int smoothness = 1);

    Surface surface() const { return impl_->surface; }
    int smoothness() const { return impl_->smoothness; }
    bool is_polynomial() const { return impl_->surface == Surface::Plane; }
    const Scalar& p() const { return impl_->p; }
    const Scalar& q() const { return impl_->q; }
    bool is_zero() const { return impl_->p.is_zero() && impl_->q.is_zero(); }
    /// Max total degree for plane fields, max frequency for torus fields.
    int degree() const;

    Vec2 eval(Vec2 pt) const;
    /// Exact evaluation. Plane fields: always. Torus fields: only where the
    /// trigonometric values are rational and the value carries no 2*pi factor
    /// (otherwise NotExact).
    std::pair<Rational, Rational> eval(const RPoint& pt) const;
    IVec enclose(const IBox& box) const;
    Mat2 jacobian(Vec2 pt) const;
    IMat2 enclose_jacobian(const IBox& box) const;
    /// Mean-value form X(c) + DX(box) (box - c); tighter than enclose() on small boxes.
    IVec enclose_centered(const IBox& box) const;

    PlanarField scaled(const Rational& s) const;
    friend PlanarField operator+(const PlanarField& a, const PlanarField& b);
    friend PlanarField operator-(const PlanarField& a, const PlanarField& b);
    friend bool operator==(const PlanarField& a, const PlanarField& b);

private:
    struct Impl {
        Surface surface = Surface::Plane;
        int smoothness = 1;
        Scalar p, q;
        CompiledScalar cp, cq;
        CompiledScalar px, py, qx, qy;  // Jacobian entries
    };
    explicit PlanarField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

/// [Y, X] = DX * Y - DY * X, computed exactly.
PlanarField lie_bracket(const PlanarField& y, const PlanarField& x);

/// det(A, B) = A.p * B.q - A.q * B.p as an exact scalar.
Scalar wedge(const PlanarField& a, const PlanarField& b);

/// (1 - t) X0 + t X1 with exact rational t.
PlanarField straight_homotopy(const PlanarField& x0, const PlanarField& x1, const Rational& t);

/// Order of a zero: Order(j) for 1 <= j <= k, or k-flat.
struct JetOrder {
    bool flat = false;
    int order = 0;  // meaningful when !flat
    int k = 0;

    static JetOrder of(int j, int k) { return {false, j, k}; }
    static JetOrder kflat(int k) { return {true, 0, k}; }
    friend bool operator==(const JetOrder&, const JetOrder&) = default;
};

/// Exact order of X at a zero p (PointNotZero if X(p) != 0).
JetOrder jet_order(const PlanarField& x, const RPoint& p, int k);

/// All partial derivatives of both components of total order d, for d in [1, max_order].
std::vector<CompiledScalar> jet_partials(const PlanarField& x, int max_order);

}  // namespace vfb
