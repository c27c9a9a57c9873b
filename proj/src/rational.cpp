#include "vfblock/rational.hpp"

#include <cmath>
#include <limits>

#include "vfblock/errors.hpp"

namespace vfb {

const char* errc_name(Errc e) noexcept {
    switch (e) {
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::PointNotZero: return "PointNotZero";
        case Errc::NotExact: return "NotExact";
        case Errc::DepthLimitExceeded: return "DepthLimitExceeded";
        case Errc::BoundaryZero: return "BoundaryZero";
        case Errc::InvalidRegion: return "InvalidRegion";
        case Errc::CertificationFailed: return "CertificationFailed";
        case Errc::DegenerateField: return "DegenerateField";
        case Errc::Escape: return "Escape";
        case Errc::StepUnderflow: return "StepUnderflow";
        case Errc::ZeroAtBasePoint: return "ZeroAtBasePoint";
        case Errc::FoldDetected: return "FoldDetected";
        case Errc::OrderEstimateAmbiguous: return "OrderEstimateAmbiguous";
        case Errc::PreconditionViolated: return "PreconditionViolated";
        case Errc::InsufficientPower: return "InsufficientPower";
        case Errc::FactorVanishes: return "FactorVanishes";
        case Errc::SamplingTooCoarse: return "SamplingTooCoarse";
        case Errc::NotClosed: return "NotClosed";
        case Errc::DependentBasis: return "DependentBasis";
        case Errc::NumericalAmbiguity: return "NumericalAmbiguity";
        case Errc::SchemaError: return "SchemaError";
        case Errc::IOError: return "IOError";
    }
    return "Unknown";
}

Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto bad = [&] { return Error(Errc::SchemaError, "not a rational number: '" + s + "'"); };
    if (s.empty()) throw bad();
    const auto dot = s.find('.');
    const auto exp = s.find_first_of("eE");
    if (dot != std::string::npos || exp != std::string::npos) {
        // decimal literal: mantissa digits over a power of ten
        std::string mant = s.substr(0, exp);
        long e10 = 0;
        if (exp != std::string::npos) {
            try {
                e10 = std::stol(s.substr(exp + 1));
            } catch (...) {
                throw bad();
            }
        }
        const auto d = mant.find('.');
        if (d != std::string::npos) {
            e10 -= static_cast<long>(mant.size() - d - 1);
            mant.erase(d, 1);
        }
        if (mant.empty() || mant == "-" || mant == "+") throw bad();
        if (mant[0] == '+') mant.erase(0, 1);
        mpz_class num;
        if (num.set_str(mant, 10) != 0) throw bad();
        mpz_class pow10;
        mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(e10 < 0 ? -e10 : e10));
        Rational q = e10 < 0 ? Rational(num, pow10) : Rational(num * pow10);
        q.canonicalize();
        return q;
    }
    Rational q;
    if (s[0] == '+') s.erase(0, 1);
    if (q.set_str(s, 10) != 0) throw bad();
    if (q.get_den() == 0) throw bad();
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

double to_double(const Rational& q) { return q.get_d(); }

Rational from_double(double d) {
    if (!std::isfinite(d)) throw Error(Errc::InvalidArgument, "non-finite double");
    return Rational(d);
}

double round_down(const Rational& q) {
    double d = q.get_d();  // truncates toward zero
    if (Rational(d) > q) d = std::nextafter(d, -std::numeric_limits<double>::infinity());
    return d;
}

double round_up(const Rational& q) {
    double d = q.get_d();
    if (Rational(d) < q) d = std::nextafter(d, std::numeric_limits<double>::infinity());
    return d;
}

Rational rationalize(double d, long max_den) {
    if (!std::isfinite(d)) throw Error(Errc::InvalidArgument, "non-finite double");
    // continued-fraction convergents h/k
    mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double x = d;
    for (int it = 0; it < 64; ++it) {
        const double a = std::floor(x);
        const mpz_class ai(a);
        mpz_class h2 = ai * h1 + h0;
        mpz_class k2 = ai * k1 + k0;
        if (k2 > max_den) break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        const double frac = x - a;
        if (frac < 1e-15) break;
        x = 1.0 / frac;
        if (std::abs(x) > 1e15) break;
    }
    if (k1 == 0) return Rational(mpz_class(static_cast<long>(std::llround(d))));
    Rational q(h1, k1);
    q.canonicalize();
    return q;
}

}  // namespace vfb

namespace vfb {

Rational simplest_between(const Rational& lo, const Rational& hi) {
    if (lo > hi) return simplest_between(hi, lo);
    if (hi < 0) return -simplest_between(-hi, -lo);
    if (lo <= 0) return 0;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    const Rational f(fl);
    if (f == lo) return f;
    if (f + 1 <= hi) return f + 1;
    Rational inner = simplest_between(1 / (hi - f), 1 / (lo - f));
    Rational out = f + 1 / inner;
    out.canonicalize();
    return out;
}

}  // namespace vfb
