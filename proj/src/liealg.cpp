#include "vfblock/liealg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "vfblock/errors.hpp"

namespace vfb {

// ---- exact linear algebra -------------------------------------------------------------------------

RMatrix RMatrix::from_rows(const std::vector<RVector>& rows, int cols) {
    RMatrix m(static_cast<int>(rows.size()), cols);
    for (int i = 0; i < m.rows_; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return m;
}

RMatrix RMatrix::identity(int n) {
    RMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RVector RMatrix::row(int i) const {
    return RVector(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
}

RVector RMatrix::operator*(const RVector& v) const {
    RVector out(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0) out[static_cast<std::size_t>(i)] += (*this)(i, j) * v[static_cast<std::size_t>(j)];
    return out;
}

RMatrix RMatrix::operator*(const RMatrix& b) const {
    RMatrix out(rows_, b.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            if ((*this)(i, k) == 0) continue;
            for (int j = 0; j < b.cols_; ++j) out(i, j) += (*this)(i, k) * b(k, j);
        }
    return out;
}

RMatrix RMatrix::operator-(const RMatrix& b) const {
    RMatrix out = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) out.a_[k] -= b.a_[k];
    return out;
}

RMatrix RMatrix::transposed() const {
    RMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

RMatrix RMatrix::rref(std::vector<int>* pivots) const {
    RMatrix m = *this;
    int r = 0;
    for (int c = 0; c < cols_ && r < rows_; ++c) {
        int piv = -1;
        for (int i = r; i < rows_; ++i)
            if (m(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < cols_; ++j) std::swap(m(piv, j), m(r, j));
        const Rational inv = 1 / m(r, c);
        for (int j = c; j < cols_; ++j) m(r, j) *= inv;
        for (int i = 0; i < rows_; ++i) {
            if (i == r || m(i, c) == 0) continue;
            const Rational f = m(i, c);
            for (int j = c; j < cols_; ++j) m(i, j) -= f * m(r, j);
        }
        if (pivots) pivots->push_back(c);
        ++r;
    }
    return m;
}

int RMatrix::rank() const {
    std::vector<int> p;
    rref(&p);
    return static_cast<int>(p.size());
}

std::vector<RVector> RMatrix::nullspace() const {
    std::vector<int> piv;
    const RMatrix r = rref(&piv);
    std::vector<bool> is_piv(static_cast<std::size_t>(cols_), false);
    for (int c : piv) is_piv[static_cast<std::size_t>(c)] = true;
    std::vector<RVector> out;
    for (int f = 0; f < cols_; ++f) {
        if (is_piv[static_cast<std::size_t>(f)]) continue;
        RVector v(static_cast<std::size_t>(cols_));
        v[static_cast<std::size_t>(f)] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i)
            v[static_cast<std::size_t>(piv[i])] = -r(static_cast<int>(i), f);
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<RVector> RMatrix::solve(const RVector& b) const {
    RMatrix aug(rows_, cols_ + 1);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
        aug(i, cols_) = b[static_cast<std::size_t>(i)];
    }
    std::vector<int> piv;
    const RMatrix r = aug.rref(&piv);
    if (!piv.empty() && piv.back() == cols_) return std::nullopt;
    RVector x(static_cast<std::size_t>(cols_));
    for (std::size_t i = 0; i < piv.size(); ++i) x[static_cast<std::size_t>(piv[i])] = r(static_cast<int>(i), cols_);
    return x;
}

std::vector<RVector> span_basis(const std::vector<RVector>& vs, int dim) {
    if (vs.empty()) return {};
    std::vector<int> piv;
    const RMatrix r = RMatrix::from_rows(vs, dim).rref(&piv);
    std::vector<RVector> out;
    for (std::size_t i = 0; i < piv.size(); ++i) out.push_back(r.row(static_cast<int>(i)));
    return out;
}

bool in_span(const std::vector<RVector>& basis, const RVector& v, int dim) {
    std::vector<RVector> rows = basis;
    const int before = static_cast<int>(span_basis(rows, dim).size());
    rows.push_back(v);
    return static_cast<int>(span_basis(rows, dim).size()) == before;
}

// ---- presentations ------------------------------------------------------------------------------

namespace {

using Key = std::tuple<int, int, int>;  // component, x-power, y-power

void require_poly(const PlanarField& f) {
    if (!f.is_polynomial()) throw Error(Errc::InvalidArgument, "Lie algebras are supported for polynomial plane fields");
}

std::vector<RVector> coeffs_over(const std::vector<PlanarField>& fields, std::map<Key, int>& index) {
    for (const PlanarField& f : fields) {
        require_poly(f);
        for (const auto& [e, c] : f.p().poly().terms()) index.emplace(Key{0, e.first, e.second}, 0);
        for (const auto& [e, c] : f.q().poly().terms()) index.emplace(Key{1, e.first, e.second}, 0);
    }
    int k = 0;
    for (auto& [key, i] : index) i = k++;
    std::vector<RVector> out;
    for (const PlanarField& f : fields) {
        RVector v(index.size());
        for (const auto& [e, c] : f.p().poly().terms()) v[static_cast<std::size_t>(index.at({0, e.first, e.second}))] = c;
        for (const auto& [e, c] : f.q().poly().terms()) v[static_cast<std::size_t>(index.at({1, e.first, e.second}))] = c;
        out.push_back(std::move(v));
    }
    return out;
}

int rank_of(const std::vector<PlanarField>& fields) {
    std::map<Key, int> idx;
    const auto vs = coeffs_over(fields, idx);
    return static_cast<int>(span_basis(vs, static_cast<int>(idx.size())).size());
}

// Coordinates of `target` in the span of `basis`, or nullopt.
std::optional<RVector> coordinates(const std::vector<PlanarField>& basis, const PlanarField& target) {
    std::vector<PlanarField> all = basis;
    all.push_back(target);
    std::map<Key, int> idx;
    const auto vs = coeffs_over(all, idx);
    const int rows = static_cast<int>(idx.size());
    const int n = static_cast<int>(basis.size());
    RMatrix m(rows, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < rows; ++i) m(i, j) = vs[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    return m.solve(vs.back());
}

}  // namespace

std::vector<RVector> coefficient_vectors(const std::vector<PlanarField>& fields) {
    std::map<Key, int> idx;
    return coeffs_over(fields, idx);
}

RMatrix LieAlgebraPresentation::ad(int i) const {
    const int n = dim();
    RMatrix m(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) m(k, j) = c[i][j][k];
    return m;
}

RVector LieAlgebraPresentation::bracket(const RVector& u, const RVector& v) const {
    const int n = dim();
    RVector out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        if (u[i] == 0) continue;
        for (int j = 0; j < n; ++j) {
            if (v[j] == 0) continue;
            const Rational w = u[i] * v[j];
            for (int k = 0; k < n; ++k) out[k] += w * c[i][j][k];
        }
    }
    return out;
}

PlanarField LieAlgebraPresentation::field(const RVector& coords) const {
    PlanarField out = PlanarField::plane(Poly2{}, Poly2{});
    for (int i = 0; i < dim(); ++i)
        if (coords[i] != 0) out = out + basis[i].scaled(coords[i]);
    return out;
}

bool LieAlgebraPresentation::antisymmetric() const {
    const int n = dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (c[i][j][k] != -c[j][i][k]) return false;
    return true;
}

bool LieAlgebraPresentation::jacobi() const {
    const int n = dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    Rational s = 0;
                    for (int m = 0; m < n; ++m)
                        s += c[i][j][m] * c[m][k][l] + c[j][k][m] * c[m][i][l] + c[k][i][m] * c[m][j][l];
                    if (s != 0) return false;
                }
    return true;
}

LieAlgebraPresentation structure_constants(const std::vector<PlanarField>& basis) {
    const int n = static_cast<int>(basis.size());
    if (rank_of(basis) < n) throw Error(Errc::DependentBasis, "basis fields are linearly dependent");
    LieAlgebraPresentation g;
    g.basis = basis;
    g.c.assign(static_cast<std::size_t>(n), std::vector<RVector>(static_cast<std::size_t>(n), RVector(static_cast<std::size_t>(n))));
    g.closed = true;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const auto co = coordinates(basis, lie_bracket(basis[i], basis[j]));
            if (!co) {
                if (g.closed) g.witness = std::pair{i, j};
                g.closed = false;
                continue;
            }
            for (int k = 0; k < n; ++k) {
                g.c[i][j][k] = (*co)[k];
                g.c[j][i][k] = -(*co)[k];
            }
        }
    return g;
}

LieAlgebraPresentation extend_basis(const LieAlgebraPresentation& g, const std::vector<PlanarField>& extra) {
    std::vector<PlanarField> b = g.basis;
    for (const PlanarField& f : extra) {
        b.push_back(f);
        if (rank_of(b) < static_cast<int>(b.size())) b.pop_back();
    }
    return structure_constants(b);
}

void require_closed(const LieAlgebraPresentation& g) {
    if (g.closed) return;
    std::string w;
    if (g.witness) w = " ([b" + std::to_string(g.witness->first) + ", b" + std::to_string(g.witness->second) + "])";
    throw Error(Errc::NotClosed, "basis is not closed under brackets" + w);
}

// ---- solvability --------------------------------------------------------------------------------

Solvability solvability(const LieAlgebraPresentation& g) {
    require_closed(g);
    const int n = g.dim();
    std::vector<RVector> s;
    for (int i = 0; i < n; ++i) {
        RVector e(static_cast<std::size_t>(n));
        e[static_cast<std::size_t>(i)] = 1;
        s.push_back(std::move(e));
    }
    Solvability r;
    r.dims.push_back(n);
    while (!s.empty()) {
        std::vector<RVector> br;
        for (std::size_t a = 0; a < s.size(); ++a)
            for (std::size_t b = a + 1; b < s.size(); ++b) br.push_back(g.bracket(s[a], s[b]));
        auto next = span_basis(br, n);
        r.dims.push_back(static_cast<int>(next.size()));
        if (next.size() == s.size()) return r;
        s = std::move(next);
        ++r.depth;
    }
    r.solvable = true;
    return r;
}

// ---- flags of ideals ------------------------------------------------------------------------------

namespace {

struct Quotient {
    std::vector<RVector> ideal;  // RREF rows
    std::vector<int> pivots;
    std::vector<int> comp;       // complement coordinates, ascending
};

Quotient quotient_by(const std::vector<RVector>& ideal, int n) {
    Quotient q;
    q.ideal = span_basis(ideal, n);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (const RVector& r : q.ideal)
        for (int c = 0; c < n; ++c)
            if (r[c] != 0) {
                q.pivots.push_back(c);
                used[c] = true;
                break;
            }
    for (int c = 0; c < n; ++c)
        if (!used[c]) q.comp.push_back(c);
    return q;
}

RVector reduce(const Quotient& q, RVector v) {
    for (std::size_t i = 0; i < q.ideal.size(); ++i) {
        const Rational f = v[q.pivots[i]];
        if (f == 0) continue;
        for (std::size_t c = 0; c < v.size(); ++c) v[c] -= f * q.ideal[i][c];
    }
    return v;
}

RMatrix induced(const LieAlgebraPresentation& g, int i, const Quotient& q) {
    const int d = static_cast<int>(q.comp.size());
    const RMatrix ad = g.ad(i);
    RMatrix a(d, d);
    for (int j = 0; j < d; ++j) {
        RVector e(static_cast<std::size_t>(g.dim()));
        e[q.comp[j]] = 1;
        const RVector v = reduce(q, ad * e);
        for (int k = 0; k < d; ++k) a(k, j) = v[q.comp[k]];
    }
    return a;
}

// Rational eigenvalues of a, found numerically and confirmed exactly.
std::vector<Rational> rational_eigenvalues(const RMatrix& a, double tol, bool& ambiguous) {
    const int d = a.rows();
    Eigen::MatrixXd m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = to_double(a(i, j));
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    std::vector<Rational> out;
    for (int k = 0; k < d; ++k) {
        const auto z = es.eigenvalues()[k];
        if (std::abs(z.imag()) > tol * (1 + std::abs(z.real())) && std::abs(z.imag()) > 1e-6) continue;
        const Rational lam = rationalize(z.real(), 10000);
        if (std::find(out.begin(), out.end(), lam) != out.end()) continue;
        RMatrix s = a;
        for (int i = 0; i < d; ++i) s(i, i) -= lam;
        if (s.rank() < d)
            out.push_back(lam);
        else
            ambiguous = true;
    }
    return out;
}

// W (columns as vectors) intersected with ker(a - lam).
std::vector<RVector> restrict_kernel(const RMatrix& a, const Rational& lam, const std::vector<RVector>& w) {
    const int d = a.rows();
    const int r = static_cast<int>(w.size());
    RMatrix wm(d, r);
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < d; ++i) wm(i, j) = w[j][i];
    RMatrix s = a;
    for (int i = 0; i < d; ++i) s(i, i) -= lam;
    std::vector<RVector> out;
    for (const RVector& c : (s * wm).nullspace()) out.push_back(wm * c);
    return out;
}

void common_eigenspaces(const std::vector<RMatrix>& maps, const std::vector<std::vector<Rational>>& eig,
                        std::size_t k, const std::vector<RVector>& w, std::vector<std::vector<RVector>>& leaves) {
    if (w.empty()) return;
    if (k == maps.size()) {
        leaves.push_back(w);
        return;
    }
    for (const Rational& lam : eig[k]) common_eigenspaces(maps, eig, k + 1, restrict_kernel(maps[k], lam, w), leaves);
}

int leading_index(const RVector& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) return static_cast<int>(i);
    return static_cast<int>(v.size());
}

}  // namespace

FlagResult supersolvable_flag(const LieAlgebraPresentation& g, double tol) {
    require_closed(g);
    FlagResult res;
    if (!solvability(g).solvable) {
        res.kind = FlagResult::Kind::NotSolvable;
        return res;
    }
    const int n = g.dim();
    std::vector<RVector> ideal;
    while (static_cast<int>(ideal.size()) < n) {
        const Quotient q = quotient_by(ideal, n);
        const int d = static_cast<int>(q.comp.size());
        std::vector<RMatrix> maps;
        std::vector<std::vector<Rational>> eig;
        bool ambiguous = false;
        for (int i = 0; i < n; ++i) {
            maps.push_back(induced(g, i, q));
            eig.push_back(rational_eigenvalues(maps.back(), tol, ambiguous));
        }
        std::vector<RVector> whole;
        for (int j = 0; j < d; ++j) {
            RVector e(static_cast<std::size_t>(d));
            e[j] = 1;
            whole.push_back(std::move(e));
        }
        std::vector<std::vector<RVector>> leaves;
        common_eigenspaces(maps, eig, 0, whole, leaves);
        if (leaves.empty()) {
            if (ambiguous)
                throw Error(Errc::NumericalAmbiguity,
                            "real eigenvalue candidates failed exact verification at flag stage " +
                                std::to_string(ideal.size()));
            res.kind = FlagResult::Kind::NoRealFlag;
            res.stage = static_cast<int>(ideal.size());
            return res;
        }
        // smallest leading index over all common eigenspaces; first found on ties
        RVector best;
        for (const auto& leaf : leaves) {
            const RVector v = span_basis(leaf, d).front();
            if (best.empty() || leading_index(v) < leading_index(best)) best = v;
        }
        RVector lifted(static_cast<std::size_t>(n));
        for (int j = 0; j < d; ++j) lifted[q.comp[j]] = best[j];
        ideal.push_back(lifted);
        res.flag.chain.push_back(ideal);
    }
    if (!verify_flag(g, res.flag))
        throw Error(Errc::NumericalAmbiguity, "constructed flag failed exact ideal verification");
    res.kind = FlagResult::Kind::Flag;
    res.stage = n;
    return res;
}

bool verify_flag(const LieAlgebraPresentation& g, const FlagChain& flag) {
    const int n = g.dim();
    if (static_cast<int>(flag.chain.size()) != n) return false;
    for (int m = 0; m < n; ++m) {
        const auto& member = flag.chain[m];
        if (static_cast<int>(span_basis(member, n).size()) != m + 1) return false;
        if (m > 0)
            for (const RVector& v : flag.chain[m - 1])
                if (!in_span(member, v, n)) return false;
        std::vector<PlanarField> fields;
        for (const RVector& v : member) fields.push_back(g.field(v));
        for (const PlanarField& b : g.basis)
            for (const PlanarField& u : fields)
                if (!coordinates(fields, lie_bracket(b, u))) return false;
    }
    return true;
}

AlgebraTracking algebra_tracks(const LieAlgebraPresentation& g, const PlanarField& x) {
    require_closed(g);
    AlgebraTracking r;
    r.tracks = true;
    for (const PlanarField& b : g.basis) {
        r.certificates.push_back(tracks_symbolic(b, x));
        r.tracks = r.tracks && r.certificates.back().verdict;
    }
    return r;
}

ZeroEnclosure common_zero_set(const LieAlgebraPresentation& g, const Region& u, const Rational& resolution,
                              const CertOptions& opts) {
    return common_zero_enclosure(g.basis, u, resolution, opts);
}

}  // namespace vfb
