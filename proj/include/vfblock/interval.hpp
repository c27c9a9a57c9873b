#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "vfblock/rational.hpp"

namespace vfb {

// Closed interval with double endpoints. Every arithmetic result is widened by
// one ulp on each side, which dominates the half-ulp error of round-to-nearest,
// so the true result of the real operation is always enclosed.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    constexpr Interval() = default;
    constexpr Interval(double v) : lo(v), hi(v) {}  // NOLINT: exact point
    constexpr Interval(double l, double h) : lo(l), hi(h) {}

    static Interval from(const Rational& q) { return {round_down(q), round_up(q)}; }
    static Interval hull(double a, double b) { return {std::min(a, b), std::max(a, b)}; }
    static Interval whole() {
        return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    }

    double mid() const { return 0.5 * lo + 0.5 * hi; }
    double width() const { return hi - lo; }
    bool contains(double v) const { return lo <= v && v <= hi; }
    bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
    /// Smallest absolute value over the interval.
    double mig() const { return contains_zero() ? 0.0 : std::min(std::abs(lo), std::abs(hi)); }
    /// Largest absolute value over the interval.
    double mag() const { return std::max(std::abs(lo), std::abs(hi)); }
};

namespace detail {
inline double down(double v) { return std::nextafter(v, -std::numeric_limits<double>::infinity()); }
inline double up(double v) { return std::nextafter(v, std::numeric_limits<double>::infinity()); }
}  // namespace detail

inline Interval operator+(Interval a, Interval b) { return {detail::down(a.lo + b.lo), detail::up(a.hi + b.hi)}; }
inline Interval operator-(Interval a, Interval b) { return {detail::down(a.lo - b.hi), detail::up(a.hi - b.lo)}; }
inline Interval operator-(Interval a) { return {-a.hi, -a.lo}; }

inline Interval operator*(Interval a, Interval b) {
    if ((a.lo == 0.0 && a.hi == 0.0) || (b.lo == 0.0 && b.hi == 0.0)) return {0.0, 0.0};
    const double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    double lo = std::min({p1, p2, p3, p4});
    double hi = std::max({p1, p2, p3, p4});
    // 0 * inf produces NaN; collapse to the whole line
    if (std::isnan(lo) || std::isnan(hi)) return Interval::whole();
    return {detail::down(lo), detail::up(hi)};
}

inline Interval& operator+=(Interval& a, Interval b) { return a = a + b; }
inline Interval& operator-=(Interval& a, Interval b) { return a = a - b; }
inline Interval& operator*=(Interval& a, Interval b) { return a = a * b; }

inline Interval sqr(Interval a) {
    const double l = a.mig();
    const double h = a.mag();
    return {l == 0.0 ? 0.0 : detail::down(l * l), detail::up(h * h)};
}

inline Interval pow(Interval a, int n) {
    if (n == 0) return {1.0, 1.0};
    if (n == 1) return a;
    if (n % 2 == 0) {
        Interval h = pow(a, n / 2);
        return sqr(h);
    }
    return pow(a, n - 1) * a;
}

inline Interval hull(Interval a, Interval b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }

inline Interval sqrt(Interval a) {
    const double l = a.lo <= 0.0 ? 0.0 : detail::down(std::sqrt(a.lo));
    return {std::max(0.0, l), detail::up(std::sqrt(std::max(0.0, a.hi)))};
}

/// Enclosure of cos over an interval argument.
Interval cos(Interval a);
/// Enclosure of sin over an interval argument.
Interval sin(Interval a);

/// Enclosure of 2*pi.
inline Interval two_pi() {
    const double tp = 2.0 * 3.14159265358979323846;
    return {detail::down(tp), detail::up(tp)};
}

}  // namespace vfb
