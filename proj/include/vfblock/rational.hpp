#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace vfb {

using Rational = mpq_class;

/// Parses "num/den", "num", or a plain decimal such as "-0.125" exactly.
Rational parse_rational(std::string_view text);

/// Canonical "num/den" text ("n" when the denominator is 1).
std::string to_string(const Rational& q);

double to_double(const Rational& q);

/// Largest representable double that is <= q (resp. smallest >= q).
double round_down(const Rational& q);
double round_up(const Rational& q);

/// Exact rational value of a finite double.
Rational from_double(double d);

/// Best rational approximation with denominator <= max_den (continued fractions).
Rational rationalize(double d, long max_den);

struct RPoint {
    Rational x;
    Rational y;
};

}  // namespace vfb

namespace vfb {

/// The rational with the smallest denominator (then numerator) in [lo, hi].
Rational simplest_between(const Rational& lo, const Rational& hi);

}  // namespace vfb

namespace vfb {

/// n/d in canonical form (mpq_class(n, d) alone does not reduce).
inline Rational ratio(long n, long d) {
    Rational q(n, d);
    q.canonicalize();
    return q;
}

}  // namespace vfb
