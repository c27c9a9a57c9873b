#pragma once

#include <map>
#include <optional>
#include <tuple>

#include "vfblock/geometry.hpp"
#include "vfblock/rational.hpp"

namespace vfb {

/// Per-axis factor of a trigonometric monomial.
enum class Wave : char { Cos = 'c', Sin = 's' };

/// cos/sin(2 pi m x) * cos/sin(2 pi n y), frequencies canonicalized to m, n >= 0.
struct TrigKey {
    int m = 0;
    int n = 0;
    Wave wx = Wave::Cos;
    Wave wy = Wave::Cos;

    friend auto operator<=>(const TrigKey&, const TrigKey&) = default;
};

/// Trigonometric polynomial on the unit-period torus:
///   (2 pi)^scale_power * sum_k c_k * wave_x(2 pi m_k x) * wave_y(2 pi n_k y)
/// with exact rational c_k. Derivatives raise scale_power by one, so every
/// object built by differentiation and products stays exactly representable.
class TrigPoly2 {
public:
    using Terms = std::map<TrigKey, Rational>;

    TrigPoly2() = default;
    explicit TrigPoly2(Terms terms, int scale_power = 0);

    /// Adds c * wave_x(2 pi m x) wave_y(2 pi n y) with any integer m, n.
    static TrigPoly2 term(int m, int n, Wave wx, Wave wy, const Rational& c, int scale_power = 0);
    static TrigPoly2 constant(const Rational& c) { return term(0, 0, Wave::Cos, Wave::Cos, c); }

    const Terms& terms() const { return terms_; }
    int scale_power() const { return scale_power_; }
    bool is_zero() const { return terms_.empty(); }
    int max_frequency() const;

    TrigPoly2 operator-() const;
    TrigPoly2& operator+=(const TrigPoly2& o);
    TrigPoly2& operator-=(const TrigPoly2& o);
    TrigPoly2& operator*=(const Rational& s);
    friend TrigPoly2 operator+(TrigPoly2 a, const TrigPoly2& b) { return a += b; }
    friend TrigPoly2 operator-(TrigPoly2 a, const TrigPoly2& b) { return a -= b; }
    friend TrigPoly2 operator*(const TrigPoly2& a, const TrigPoly2& b);
    friend TrigPoly2 operator*(const Rational& s, TrigPoly2 a) { return a *= s; }
    friend bool operator==(const TrigPoly2& a, const TrigPoly2& b) {
        return a.terms_ == b.terms_ && (a.terms_.empty() || a.scale_power_ == b.scale_power_);
    }

    TrigPoly2 dx() const;
    TrigPoly2 dy() const;

    double eval(Vec2 p) const;
    Interval eval(const IBox& box) const;
    /// Exact value of the rational part (the sum without the (2 pi)^scale factor)
    /// at p. Throws NotExact unless every needed cos/sin(2 pi q) is rational,
    /// i.e. the reduced denominators of m p.x and n p.y divide 4 or 6.
    Rational eval_rational_part(const RPoint& p) const;

private:
    Terms terms_;
    int scale_power_ = 0;
};

/// cos(2 pi q) and sin(2 pi q) when rational; nullopt otherwise.
std::optional<Rational> exact_cos_turns(const Rational& q);
std::optional<Rational> exact_sin_turns(const Rational& q);

}  // namespace vfb
