#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vfblock/certify.hpp"

namespace vfb {

/// Closed curve image t -> v(t) over [t0, t1] with an interval enclosure.
/// v(t1) must coincide with v(t0) up to rounding.
struct CurveImage {
    double t0 = 0.0;
    double t1 = 0.0;
    std::function<Vec2(double)> at;
    std::function<IVec(Interval)> enclose;
};

struct WindingResult {
    int winding = 0;
    double max_step = 0.0;  // largest certified angular span of one piece (< pi/2)
    int samples = 0;
    double residual = 0.0;  // |total/(2 pi) - winding|
};

/// Certified degree of v/|v| along a closed curve image. Each accepted piece
/// has an interval enclosure avoiding the origin with angular span < pi/2, so
/// consecutive sample directions turn by less than a quarter turn and the
/// accumulated angle is exact up to rounding.
WindingResult winding_along(const CurveImage& image, const CertOptions& opts = {});

/// Winding number of X along an oriented boundary component (the curve's
/// orientation is applied). `margin` is the upstream certified lower bound of
/// |X| on the curve.
WindingResult winding_number(const PlanarField& x, const BoundaryCurve& curve, const Rational& margin,
                             const CertOptions& opts = {});

struct IndexResult {
    int index = 0;
    Rational margin;
    double max_step_rotation = 0.0;
    int samples_per_curve = 0;
    bool essential = false;
    bool certified = false;
};

IndexResult block_index(const Block& block, const CertOptions& opts = {});

/// Index of X over U when U is certified isolating (BoundaryZero otherwise).
IndexResult region_index(const PlanarField& x, const Region& u, const CertOptions& opts = {});

/// delta = boundary margin: every field within sup-distance < delta of X on
/// the closure of U has the same index over U.
Rational perturbation_bound(const Block& block);

struct HomotopyVerdict {
    enum class Kind { Invariant, BoundaryDegenerate, IndexChanged };
    Kind kind = Kind::Invariant;
    int index = 0;          // Invariant: common index
    Rational t;             // BoundaryDegenerate / IndexChanged: first offending parameter
    std::vector<int> indices;
};

/// Straight-line homotopy X_t = (1 - t) X0 + t X1 sampled at t = i/steps.
HomotopyVerdict homotopy_invariance_check(const PlanarField& x0, const PlanarField& x1, const Region& u, int steps,
                                          const CertOptions& opts = {});

struct WedgeVerdict {
    enum class Kind { IndicesEqual, NotDependentOnBoundary, NotIsolating, Inconclusive, IndicesDiffer };
    Kind kind = Kind::Inconclusive;
    int index = 0;
    int other_index = 0;
    bool symbolic = false;  // dependence certified symbolically
    std::string detail;
};

WedgeVerdict wedge_check(const PlanarField& y, const PlanarField& y2, const Region& u, const CertOptions& opts = {});

/// Field on the angle-doubling cover of an annulus about `center`:
/// kappa(c + r e^{i theta}) = c + r e^{2 i theta}, lifted field (D kappa)^{-1} X(kappa).
class LiftedField {
public:
    LiftedField(PlanarField base, RPoint center) : base_(std::move(base)), center_(std::move(center)) {}
    Vec2 eval(Vec2 q) const;
    /// Enclosure of the lift along the circle of the given radius for theta in t.
    IVec enclose_on_circle(const Rational& radius, Interval t) const;
    const PlanarField& base() const { return base_; }

private:
    PlanarField base_;
    RPoint center_;
};

struct DoubleCoverResult {
    LiftedField lifted;
    IndexResult base;
    IndexResult lifted_index;
    bool doubling_holds = false;
};

DoubleCoverResult lift_double_cover(const PlanarField& x, const Region& annulus, const CertOptions& opts = {});

/// Isolating sub-region and index for one connected component of an enclosure.
struct ComponentIndex {
    EnclosureComponent component;
    std::optional<Region> subregion;
    std::optional<IndexResult> index;
    std::string failure;
};

std::vector<ComponentIndex> component_indices(const PlanarField& x, const ZeroEnclosure& enclosure,
                                              const CertOptions& opts = {});

}  // namespace vfb
