#pragma once

#include <map>
#include <utility>
#include <vector>

#include "vfblock/geometry.hpp"
#include "vfblock/rational.hpp"

namespace vfb {

/// Bivariate polynomial with exact rational coefficients, stored sparsely as
/// x^i y^j -> c. No stored coefficient is ever zero.
class Poly2 {
public:
    using Exponent = std::pair<int, int>;
    using Terms = std::map<Exponent, Rational>;

    Poly2() = default;
    explicit Poly2(Terms terms);

    static Poly2 constant(const Rational& c);
    static Poly2 monomial(int i, int j, const Rational& c = 1);
    static Poly2 x() { return monomial(1, 0); }
    static Poly2 y() { return monomial(0, 1); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Max total degree; -1 for the zero polynomial.
    int degree() const;
    /// Min total degree of a stored term; -1 for the zero polynomial.
    int min_degree() const;
    /// Smallest y-exponent among the stored terms; -1 for the zero polynomial.
    int min_y_power() const;
    Rational coeff(int i, int j) const;

    Poly2 operator-() const;
    Poly2& operator+=(const Poly2& o);
    Poly2& operator-=(const Poly2& o);
    Poly2& operator*=(const Rational& s);
    friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
    friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
    friend Poly2 operator*(const Poly2& a, const Poly2& b);
    friend Poly2 operator*(const Rational& s, Poly2 a) { return a *= s; }
    friend bool operator==(const Poly2& a, const Poly2& b) { return a.terms_ == b.terms_; }

    Poly2 dx() const;
    Poly2 dy() const;
    Poly2 pow(int n) const;

    /// p -> P(x + p.x, y + p.y)
    Poly2 translate(const RPoint& p) const;
    /// P / y^l; requires every term to carry y^l.
    Poly2 divide_y_power(int l) const;

    Rational eval(const RPoint& p) const;
    double eval(Vec2 p) const;
    /// Univariate restriction x -> P(x, y0) as coefficients of x^0, x^1, ...
    std::vector<Rational> restrict_y(const Rational& y0) const;

private:
    Terms terms_;
};

/// Double-coefficient Horner form used for fast float and interval evaluation.
/// Coefficients are stored as outward-rounded intervals so interval
/// evaluation stays an enclosure of the exact polynomial.
class CompiledPoly2 {
public:
    CompiledPoly2() = default;
    explicit CompiledPoly2(const Poly2& p);

    double operator()(Vec2 p) const;
    Interval operator()(const IBox& box) const;
    bool is_zero() const { return rows_.empty(); }

private:
    // rows_[i][j] multiplies x^i y^j
    std::vector<std::vector<Interval>> rows_;
    std::vector<std::vector<double>> mids_;
};

}  // namespace vfb
