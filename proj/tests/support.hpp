#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "vfblock/field.hpp"
#include "vfblock/region.hpp"

namespace vfbt {

using namespace vfb;

inline Poly2 X() { return Poly2::x(); }
inline Poly2 Y() { return Poly2::y(); }
inline Poly2 C(const Rational& c) { return Poly2::constant(c); }
inline Rational Q(long n, long d = 1) { return ratio(n, d); }

inline PlanarField plane(const Poly2& p, const Poly2& q) { return PlanarField::plane(p, q); }

inline Region unit_disk() { return Region::disk({0, 0}, 1); }
inline Region annulus(const Rational& ri, const Rational& ro) { return Region::annulus({0, 0}, ri, ro); }

/// Random polynomial with small integer coefficients and degree <= deg.
inline Poly2 random_poly(std::mt19937& rng, int deg, int density_pct = 60) {
    std::uniform_int_distribution<int> coin(0, 99), coef(-5, 5);
    Poly2::Terms t;
    for (int i = 0; i <= deg; ++i)
        for (int j = 0; i + j <= deg; ++j)
            if (coin(rng) < density_pct) {
                const int c = coef(rng);
                if (c != 0) t[{i, j}] = Rational(c);
            }
    return Poly2(t);
}

inline PlanarField random_field(std::mt19937& rng, int deg) {
    return plane(random_poly(rng, deg), random_poly(rng, deg));
}

/// Brute-force oracle: angle accumulated by X along a circle over n uniform samples.
inline int oracle_winding(const PlanarField& x, double cx, double cy, double r, int n = 100000) {
    double total = 0.0;
    Vec2 prev = x.eval(Vec2{cx + r, cy});
    for (int i = 1; i <= n; ++i) {
        const double t = 2.0 * std::numbers::pi * i / n;
        const Vec2 v = x.eval(Vec2{cx + r * std::cos(t), cy + r * std::sin(t)});
        total += std::atan2(prev.x * v.y - prev.y * v.x, prev.x * v.x + prev.y * v.y);
        prev = v;
    }
    return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

}  // namespace vfbt
