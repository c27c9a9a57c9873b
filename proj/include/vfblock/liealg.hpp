#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "vfblock/certify.hpp"
#include "vfblock/field.hpp"
#include "vfblock/tracking.hpp"

namespace vfb {

using RVector = std::vector<Rational>;

/// Dense exact matrix, row-major.
class RMatrix {
public:
    RMatrix() = default;
    RMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows * cols)) {}
    static RMatrix from_rows(const std::vector<RVector>& rows, int cols);
    static RMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * cols_ + j)]; }
    const Rational& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * cols_ + j)]; }

    RVector row(int i) const;
    RVector operator*(const RVector& v) const;
    RMatrix operator*(const RMatrix& b) const;
    RMatrix operator-(const RMatrix& b) const;
    RMatrix transposed() const;

    /// Reduced row echelon form; pivot columns are appended to `pivots` when given.
    RMatrix rref(std::vector<int>* pivots = nullptr) const;
    int rank() const;
    /// Basis of {v : A v = 0}.
    std::vector<RVector> nullspace() const;
    /// Some x with A x = b, or nullopt when inconsistent.
    std::optional<RVector> solve(const RVector& b) const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

/// Row basis (RREF rows) of the span of the given vectors.
std::vector<RVector> span_basis(const std::vector<RVector>& vs, int dim);
bool in_span(const std::vector<RVector>& basis, const RVector& v, int dim);

/// Basis of a finite-dimensional algebra of planar polynomial fields with
/// [b_i, b_j] = sum_k c[i][j][k] b_k.
struct LieAlgebraPresentation {
    std::vector<PlanarField> basis;
    std::vector<std::vector<RVector>> c;  // c[i][j][k]
    bool closed = false;
    std::optional<std::pair<int, int>> witness;  // a bracket leaving the span

    int dim() const { return static_cast<int>(basis.size()); }
    /// Matrix of ad(b_i) in the basis: column j holds [b_i, b_j].
    RMatrix ad(int i) const;
    /// Bracket of coordinate vectors.
    RVector bracket(const RVector& u, const RVector& v) const;
    /// Field with the given coordinates.
    PlanarField field(const RVector& coords) const;
    bool antisymmetric() const;
    bool jacobi() const;
};

/// Exact coefficient vectors of the fields over their common monomial support.
std::vector<RVector> coefficient_vectors(const std::vector<PlanarField>& fields);

/// DependentBasis when the fields are linearly dependent; InvalidArgument for
/// non-polynomial fields. A non-closed basis is returned with closed = false
/// and the first offending pair in `witness`.
LieAlgebraPresentation structure_constants(const std::vector<PlanarField>& basis);

/// Appends the fields that are independent of the current span and recomputes.
LieAlgebraPresentation extend_basis(const LieAlgebraPresentation& g, const std::vector<PlanarField>& extra);

/// NotClosed unless the presentation is closed.
void require_closed(const LieAlgebraPresentation& g);

struct Solvability {
    bool solvable = false;
    int depth = 0;              // derived length when solvable
    std::vector<int> dims;      // dims of g, g', g'', ...
};

Solvability solvability(const LieAlgebraPresentation& g);

/// Complete flag of ideals; chain[m] has dimension m + 1 (rows are coordinate vectors).
struct FlagChain {
    std::vector<std::vector<RVector>> chain;
};

struct FlagResult {
    enum class Kind { Flag, NoRealFlag, NotSolvable };
    Kind kind = Kind::NotSolvable;
    FlagChain flag;
    int stage = 0;  // chain length reached before failing
};

/// Recursive search for 1-dimensional ideals of successive quotients. Numeric
/// eigenvalue candidates (imaginary part within tol) are rationalized and
/// verified exactly; NumericalAmbiguity when a real eigenvalue fails exact
/// verification and no rational candidate succeeds.
FlagResult supersolvable_flag(const LieAlgebraPresentation& g, double tol = 1e-6);

/// Every chain member is an ideal, recomputed from symbolic brackets of fields.
bool verify_flag(const LieAlgebraPresentation& g, const FlagChain& flag);

struct AlgebraTracking {
    bool tracks = false;
    std::vector<TrackingCertificate> certificates;  // one per basis element
};

AlgebraTracking algebra_tracks(const LieAlgebraPresentation& g, const PlanarField& x);

ZeroEnclosure common_zero_set(const LieAlgebraPresentation& g, const Region& u, const Rational& resolution,
                              const CertOptions& opts = {});

}  // namespace vfb
