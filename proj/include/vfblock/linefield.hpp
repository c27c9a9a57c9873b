#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "vfblock/field.hpp"
#include "vfblock/region.hpp"
#include "vfblock/tracking.hpp"

namespace vfb {

/// Angle between the lines spanned by a and b (comparison mod pi), in [0, pi/2].
double line_distance(Vec2 a, Vec2 b);

/// Unoriented direction field: the representative returns a unit vector
/// defined up to sign, or nullopt where the field is undefined.
class LineFieldRep {
public:
    using Rep = std::function<std::optional<Vec2>(Vec2)>;

    LineFieldRep(Rep rep, std::optional<Region> domain) : rep_(std::move(rep)), domain_(std::move(domain)) {}

    /// Direction of a field, undefined at its zeros.
    static LineFieldRep of_field(const PlanarField& x, std::optional<Region> domain = std::nullopt);
    static LineFieldRep constant(Vec2 dir, std::optional<Region> domain = std::nullopt);

    std::optional<Vec2> at(Vec2 p) const;
    const std::optional<Region>& domain() const { return domain_; }

    /// Largest angular jump (mod pi) between edge-adjacent samples of an n x n
    /// grid over the domain's bounding box.
    double max_jump(int n) const;

    std::optional<bool> orientable;

private:
    Rep rep_;
    std::optional<Region> domain_;
};

/// F = y^l g exactly, with g(x, 0) certified nonzero for x in [x0, x1].
struct Factorization {
    Poly2 gp, gq;
    int l = 0;
    Rational x0, x1;
};

/// InsufficientPower when some monomial has y-exponent < l; FactorVanishes when
/// the interval bound of |g(x, 0)|^2 cannot be certified positive on [x0, x1].
Factorization factor_y_power(const Poly2& fp, const Poly2& fq, int l, const Rational& x0, const Rational& x1);

struct ExtendedLineField {
    LineFieldRep field;
    Factorization factor;
    std::vector<double> jumps;  // max_jump at grids 16, 32, 64, 128
    bool continuous = false;    // jumps shrink under refinement
};

/// Line field on the rectangle D: sign(y)^l F / |F| off the axis, g(x, 0) / |g(x, 0)| on it.
ExtendedLineField extend_line_field(const Poly2& fp, const Poly2& fq, int l, const Region& rect);

struct ControlResult {
    double max_deviation = 0.0;  // radians, mod pi
    Vec2 worst_point;
    int samples = 0;
    bool controls = false;
};

/// Max angle mod pi between X(p) and Lambda(p) over deterministic samples of
/// the region where |X| is above a small threshold and Lambda is defined.
ControlResult controls_check(const LineFieldRep& lambda, const PlanarField& x, const Region& u, double tol,
                             int n_samples);

/// Transports an orientation around the core circle of an annulus; true iff
/// the holonomy is trivial. SamplingTooCoarse when consecutive samples differ
/// by pi/4 or more, or the field is undefined at a sample.
bool orientability_check(const LineFieldRep& lambda, const Region& annulus, int n_samples);

/// Numeric line field in a flowbox around a curve of zeros along {s = 0}:
/// the pushforward F of X is divided by s^l (sign(s)^l F / |F| off the
/// curve, symmetric difference quotient on it) and mapped back by the chart.
LineFieldRep flowbox_line_field(const PlanarField& x, const Flowbox& fb, int l);

/// Sample points of a flowbox chart (grid over the window, in the plane).
std::vector<Vec2> flowbox_samples(const Flowbox& fb, int n);

/// Max disagreement mod pi between two line fields where both are defined.
double overlap_disagreement(const LineFieldRep& a, const LineFieldRep& b, const std::vector<Vec2>& points,
                            int* compared = nullptr);

}  // namespace vfb
