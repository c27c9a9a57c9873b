#include "vfblock/trigpoly2.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "vfblock/errors.hpp"

namespace vfb {

namespace {

// One axis factor: sign * wave(2 pi freq t), freq >= 0. A zero-frequency sine
// vanishes and is reported with sign 0.
struct AxisFactor {
    int freq;
    Wave wave;
    int sign;
};

AxisFactor canonical(int f, Wave w) {
    if (f >= 0) return {f, w, (w == Wave::Sin && f == 0) ? 0 : 1};
    // cos is even, sin is odd
    return {-f, w, w == Wave::Cos ? 1 : -1};
}

// Product of two axis factors as a sum of two half-weighted factors.
std::vector<AxisFactor> multiply(AxisFactor a, AxisFactor b) {
    // cos A cos B = (cos(A-B) + cos(A+B))/2
    // sin A sin B = (cos(A-B) - cos(A+B))/2
    // sin A cos B = (sin(A+B) + sin(A-B))/2
    // cos A sin B = (sin(A+B) - sin(A-B))/2
    const int p = a.freq + b.freq;
    const int q = a.freq - b.freq;
    std::vector<AxisFactor> out;
    if (a.wave == Wave::Cos && b.wave == Wave::Cos) {
        out = {canonical(q, Wave::Cos), canonical(p, Wave::Cos)};
    } else if (a.wave == Wave::Sin && b.wave == Wave::Sin) {
        out = {canonical(q, Wave::Cos), canonical(p, Wave::Cos)};
        out[1].sign = -out[1].sign;
    } else if (a.wave == Wave::Sin) {
        out = {canonical(p, Wave::Sin), canonical(q, Wave::Sin)};
    } else {
        out = {canonical(p, Wave::Sin), canonical(q, Wave::Sin)};
        out[1].sign = -out[1].sign;
    }
    return out;
}

Rational reduce_turns(const Rational& q) {
    // q mod 1 in [0, 1)
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    Rational r = q - Rational(fl);
    r.canonicalize();
    return r;
}

Rational rational_factor(Wave w, int freq, const Rational& coord) {
    const Rational arg = Rational(freq) * coord;
    auto v = w == Wave::Cos ? exact_cos_turns(arg) : exact_sin_turns(arg);
    if (!v) throw Error(Errc::NotExact, "trigonometric value at this point is irrational");
    return *v;
}

}  // namespace

std::optional<Rational> exact_cos_turns(const Rational& q) {
    const Rational r = reduce_turns(q);
    const mpz_class den = r.get_den();
    const mpz_class num = r.get_num();
    if (den == 1) return Rational(1);
    if (den == 2) return Rational(-1);
    if (den == 4) return Rational(0);
    if (den == 3) return Rational(-1, 2);
    if (den == 6) return num == 1 || num == 5 ? Rational(1, 2) : Rational(-1, 2);
    return std::nullopt;
}

std::optional<Rational> exact_sin_turns(const Rational& q) {
    const Rational r = reduce_turns(q);
    const mpz_class den = r.get_den();
    const mpz_class num = r.get_num();
    if (den == 1 || den == 2) return Rational(0);
    if (den == 4) return num == 1 ? Rational(1) : Rational(-1);
    // sin(2 pi k/3), sin(2 pi k/6) involve sqrt(3)
    return std::nullopt;
}

TrigPoly2::TrigPoly2(Terms terms, int scale_power) : scale_power_(scale_power) {
    if (scale_power < 0) throw Error(Errc::InvalidArgument, "negative power of 2*pi");
    for (auto& [k, c] : terms) {
        if (c == 0) continue;
        const AxisFactor fx = canonical(k.m, k.wx);
        const AxisFactor fy = canonical(k.n, k.wy);
        const int s = fx.sign * fy.sign;
        if (s == 0) continue;
        TrigKey key{fx.freq, fy.freq, fx.wave, fy.wave};
        Rational& slot = terms_[key];
        slot += s * c;
        if (slot == 0) terms_.erase(key);
    }
}

TrigPoly2 TrigPoly2::term(int m, int n, Wave wx, Wave wy, const Rational& c, int scale_power) {
    Terms t;
    t[TrigKey{m, n, wx, wy}] = c;
    return TrigPoly2(std::move(t), scale_power);
}

int TrigPoly2::max_frequency() const {
    int f = 0;
    for (const auto& [k, c] : terms_) f = std::max({f, k.m, k.n});
    return f;
}

TrigPoly2 TrigPoly2::operator-() const {
    TrigPoly2 r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
}

TrigPoly2& TrigPoly2::operator+=(const TrigPoly2& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    if (scale_power_ != o.scale_power_)
        throw Error(Errc::NotExact, "sum of trigonometric polynomials with different powers of 2*pi");
    for (const auto& [k, c] : o.terms_) {
        Rational& slot = terms_[k];
        slot += c;
        if (slot == 0) terms_.erase(k);
    }
    return *this;
}

TrigPoly2& TrigPoly2::operator-=(const TrigPoly2& o) { return *this += -o; }

TrigPoly2& TrigPoly2::operator*=(const Rational& s) {
    if (s == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
}

TrigPoly2 operator*(const TrigPoly2& a, const TrigPoly2& b) {
    TrigPoly2::Terms out;
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            const auto xs = multiply({ka.m, ka.wx, 1}, {kb.m, kb.wx, 1});
            const auto ys = multiply({ka.n, ka.wy, 1}, {kb.n, kb.wy, 1});
            const Rational c = ca * cb / 4;
            for (const auto& fx : xs) {
                for (const auto& fy : ys) {
                    const int s = fx.sign * fy.sign;
                    if (s == 0) continue;
                    TrigKey key{fx.freq, fy.freq, fx.wave, fy.wave};
                    out[key] += s * c;
                }
            }
        }
    }
    return TrigPoly2(std::move(out), a.scale_power_ + b.scale_power_);
}

TrigPoly2 TrigPoly2::dx() const {
    // d/dx cos(2 pi m x) = -2 pi m sin(2 pi m x); d/dx sin = 2 pi m cos
    Terms out;
    for (const auto& [k, c] : terms_) {
        if (k.m == 0) continue;
        TrigKey key = k;
        key.wx = k.wx == Wave::Cos ? Wave::Sin : Wave::Cos;
        out[key] += (k.wx == Wave::Cos ? -1 : 1) * Rational(k.m) * c;
    }
    return TrigPoly2(std::move(out), scale_power_ + 1);
}

TrigPoly2 TrigPoly2::dy() const {
    Terms out;
    for (const auto& [k, c] : terms_) {
        if (k.n == 0) continue;
        TrigKey key = k;
        key.wy = k.wy == Wave::Cos ? Wave::Sin : Wave::Cos;
        out[key] += (k.wy == Wave::Cos ? -1 : 1) * Rational(k.n) * c;
    }
    return TrigPoly2(std::move(out), scale_power_ + 1);
}

double TrigPoly2::eval(Vec2 p) const {
    constexpr double tp = 2.0 * std::numbers::pi;
    double s = 0.0;
    for (const auto& [k, c] : terms_) {
        const double ax = tp * k.m * p.x;
        const double ay = tp * k.n * p.y;
        const double fx = k.wx == Wave::Cos ? std::cos(ax) : std::sin(ax);
        const double fy = k.wy == Wave::Cos ? std::cos(ay) : std::sin(ay);
        s += to_double(c) * fx * fy;
    }
    return s * std::pow(tp, scale_power_);
}

Interval TrigPoly2::eval(const IBox& box) const {
    Interval s(0.0);
    const Interval tp = two_pi();
    for (const auto& [k, c] : terms_) {
        const Interval ax = tp * Interval(static_cast<double>(k.m)) * box.x;
        const Interval ay = tp * Interval(static_cast<double>(k.n)) * box.y;
        const Interval fx = k.wx == Wave::Cos ? cos(ax) : sin(ax);
        const Interval fy = k.wy == Wave::Cos ? cos(ay) : sin(ay);
        s += Interval::from(c) * fx * fy;
    }
    if (scale_power_ != 0) s *= pow(tp, scale_power_);
    return s;
}

Rational TrigPoly2::eval_rational_part(const RPoint& p) const {
    Rational s = 0;
    for (const auto& [k, c] : terms_) s += c * rational_factor(k.wx, k.m, p.x) * rational_factor(k.wy, k.n, p.y);
    return s;
}

}  // namespace vfb
