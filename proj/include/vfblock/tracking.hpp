#pragma once

#include <optional>
#include <vector>

#include "vfblock/certify.hpp"
#include "vfblock/field.hpp"

namespace vfb {

/// Parallelism of [Y, X] and X. Symbolic mode keeps the exact determinant.
struct TrackingCertificate {
    enum class Mode { SymbolicZero, NumericResidual };
    Mode mode = Mode::SymbolicZero;
    Scalar determinant;      // det([Y, X], X), symbolic mode
    double residual = 0.0;   // numeric mode
    bool verdict = false;
};

/// Y tracks X iff det([Y, X], X) is the zero polynomial: a nonzero polynomial
/// vanishes only on a nowhere dense set, so parallelism off Z(X) and the
/// identity are equivalent. DegenerateField when X is identically zero.
TrackingCertificate tracks_symbolic(const PlanarField& y, const PlanarField& x);

/// Max over deterministic samples in U (with |X| above a small threshold) of
/// |det([Y,X], X)| / (|[Y,X]| |X| + eps).
double tracking_residual(const PlanarField& y, const PlanarField& x, const Region& u, int n_samples);

struct FlowOptions {
    double escape_radius = 1e6;  // sup-norm bound of the working box
    double min_step = 1e-14;     // relative to max(1, |t|)
};

/// Phi^Y_t(p) by adaptive Dormand-Prince integration with local error <= tol.
/// Escape when the trajectory leaves the working box; StepUnderflow when the
/// step size controller collapses.
Vec2 flow_integrate(const PlanarField& y, Vec2 p, double t, double tol, const FlowOptions& opts = {});

/// Chart (t, s) -> Phi^Y_t(p + s n) with n the unit normal to Y(p). In chart
/// coordinates Y becomes the constant field (1, 0).
class Flowbox {
public:
    static Flowbox build(const PlanarField& y, Vec2 p, const Rational& half_length, const Rational& time_window,
                         double tol);

    Vec2 base() const { return p_; }
    Vec2 normal() const { return n_; }
    const Rational& half_length() const { return half_length_; }
    const Rational& time_window() const { return time_window_; }
    double tol() const { return tol_; }

    Vec2 chart(double t, double s) const;
    /// Columns: d/dt = Y(h), d/ds = DPhi_t n (variational equation).
    Mat2 jacobian(double t, double s) const;
    /// Inverse chart by Newton iteration from the linear guess.
    Vec2 to_chart(Vec2 q) const;
    /// Pushforward F = J^{-1} X(h(t, s)) of a field through the chart.
    Vec2 pushforward(const PlanarField& x, double t, double s) const;

private:
    Flowbox(PlanarField y, Vec2 p, Vec2 n, Rational half_length, Rational time_window, double tol)
        : y_(std::move(y)), p_(p), n_(n), half_length_(std::move(half_length)),
          time_window_(std::move(time_window)), tol_(tol) {}
    bool valid() const;

    PlanarField y_;
    Vec2 p_, n_;
    Rational half_length_, time_window_;
    double tol_;
};

/// Levenberg-Marquardt descent of |X|^2 from q; returns the polished point.
Vec2 polish_zero(const PlanarField& x, Vec2 q, int iterations = 50);

struct ZeroInvariance {
    bool invariant = false;
    double max_defect = 0.0;  // max |X(Phi_t(q))| / (1 + |DX|)
    int seeds = 0;
    int flows = 0;
};

/// Flows polished seeds of the enclosure along Y for t in {+-t/4, +-t/2, +-t}
/// and checks that X stays below tol (scaled by the local Lipschitz size).
/// PreconditionViolated unless Y tracks X symbolically.
ZeroInvariance zero_invariance_check(const PlanarField& x, const PlanarField& y, const ZeroEnclosure& enclosure,
                                     double t_max, int n_points, double tol);

struct OrderEstimate {
    int order = 0;
    std::vector<double> slopes;
};

/// Order of X at an approximate zero q from the log-log slope of max |X| over
/// circles of radius 2^-5 .. 2^-8. OrderEstimateAmbiguous unless every slope
/// lies within 0.2 of the same integer.
OrderEstimate estimate_order(const PlanarField& x, Vec2 q);

struct OrderInvariance {
    JetOrder at_p;
    JetOrder at_q;
    Vec2 q;
    std::vector<double> slopes;
    bool same = false;
};

/// Exact order at the rational zero p against the numeric order at Phi^Y_t(p).
OrderInvariance order_invariance_check(const PlanarField& x, const PlanarField& y, const RPoint& p, double t, int k);

struct OrderConsistency {
    std::vector<JetOrder> orders;
    bool same = false;
};

/// Exact orders at several rational zeros of one component.
OrderConsistency order_consistency_check(const PlanarField& x, const std::vector<RPoint>& points, int k);

}  // namespace vfb
