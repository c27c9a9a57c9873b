#include "vfblock/interval.hpp"

#include "vfblock/geometry.hpp"

#include <numbers>

namespace vfb {

namespace {

// libm cos/sin are faithful to within one ulp on glibc; widen by a few ulps.
double widen_down(double v) {
    for (int i = 0; i < 4; ++i) v = detail::down(v);
    return std::max(-1.0, v - 1e-300);
}
double widen_up(double v) {
    for (int i = 0; i < 4; ++i) v = detail::up(v);
    return std::min(1.0, v);
}

// Is some point phase + 2*pi*k inside [lo, hi]? Conservative: near misses count.
bool hits(double lo, double hi, double phase) {
    constexpr double tp = 2.0 * std::numbers::pi;
    const double slack = 1e-12 * (1.0 + std::max(std::abs(lo), std::abs(hi)));
    const double k = std::ceil((lo - phase) / tp - slack);
    return phase + k * tp <= hi + slack * tp;
}

}  // namespace

Interval cos(Interval a) {
    if (!std::isfinite(a.lo) || !std::isfinite(a.hi) || a.width() >= 2.0 * std::numbers::pi) return {-1.0, 1.0};
    const double c1 = std::cos(a.lo);
    const double c2 = std::cos(a.hi);
    double lo = std::min(c1, c2);
    double hi = std::max(c1, c2);
    lo = widen_down(lo);
    hi = widen_up(hi);
    if (hits(a.lo, a.hi, 0.0)) hi = 1.0;
    if (hits(a.lo, a.hi, std::numbers::pi)) lo = -1.0;
    return {lo, hi};
}

Interval sin(Interval a) {
    if (!std::isfinite(a.lo) || !std::isfinite(a.hi) || a.width() >= 2.0 * std::numbers::pi) return {-1.0, 1.0};
    const double s1 = std::sin(a.lo);
    const double s2 = std::sin(a.hi);
    double lo = widen_down(std::min(s1, s2));
    double hi = widen_up(std::max(s1, s2));
    if (hits(a.lo, a.hi, 0.5 * std::numbers::pi)) hi = 1.0;
    if (hits(a.lo, a.hi, 1.5 * std::numbers::pi)) lo = -1.0;
    return {lo, hi};
}

}  // namespace vfb

namespace vfb {

double angular_span(const IBox& box) {
    if (box.contains_zero()) return 4.0;
    const double corners[4][2] = {
        {box.x.lo, box.y.lo}, {box.x.hi, box.y.lo}, {box.x.lo, box.y.hi}, {box.x.hi, box.y.hi}};
    for (const auto& c : corners)
        if (!std::isfinite(c[0]) || !std::isfinite(c[1])) return 4.0;
    const Vec2 ref{box.x.mid(), box.y.mid()};
    if (ref.x == 0.0 && ref.y == 0.0) return 4.0;
    double lo = 0.0, hi = 0.0;
    for (const auto& c : corners) {
        const double a = signed_angle(ref, Vec2{c[0], c[1]});
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    }
    return hi - lo;
}

}  // namespace vfb
