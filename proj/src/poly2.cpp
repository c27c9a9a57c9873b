#include "vfblock/poly2.hpp"

#include <algorithm>
#include <limits>

#include "vfblock/errors.hpp"

namespace vfb {

namespace {

std::vector<mpz_class> binomial_row(int n) {
    std::vector<mpz_class> row(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) mpz_bin_uiui(row[k].get_mpz_t(), n, k);
    return row;
}

Rational rpow(const Rational& base, int e) {
    Rational r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace

Poly2::Poly2(Terms terms) : terms_(std::move(terms)) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->first.first < 0 || it->first.second < 0)
            throw Error(Errc::InvalidArgument, "negative exponent in polynomial");
        if (it->second == 0)
            it = terms_.erase(it);
        else
            ++it;
    }
}

Poly2 Poly2::constant(const Rational& c) { return monomial(0, 0, c); }

Poly2 Poly2::monomial(int i, int j, const Rational& c) {
    Terms t;
    t[{i, j}] = c;
    return Poly2(std::move(t));
}

int Poly2::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
    return d;
}

int Poly2::min_degree() const {
    if (terms_.empty()) return -1;
    int d = std::numeric_limits<int>::max();
    for (const auto& [e, c] : terms_) d = std::min(d, e.first + e.second);
    return d;
}

int Poly2::min_y_power() const {
    if (terms_.empty()) return -1;
    int d = std::numeric_limits<int>::max();
    for (const auto& [e, c] : terms_) d = std::min(d, e.second);
    return d;
}

Rational Poly2::coeff(int i, int j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? Rational(0) : it->second;
}

Poly2 Poly2::operator-() const {
    Poly2 r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

Poly2& Poly2::operator+=(const Poly2& o) {
    for (const auto& [e, c] : o.terms_) {
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

Poly2& Poly2::operator-=(const Poly2& o) { return *this += -o; }

Poly2& Poly2::operator*=(const Rational& s) {
    if (s == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2::Terms out;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) out[{ea.first + eb.first, ea.second + eb.second}] += ca * cb;
    return Poly2(std::move(out));
}

Poly2 Poly2::dx() const {
    Terms out;
    for (const auto& [e, c] : terms_)
        if (e.first > 0) out[{e.first - 1, e.second}] = c * e.first;
    return Poly2(std::move(out));
}

Poly2 Poly2::dy() const {
    Terms out;
    for (const auto& [e, c] : terms_)
        if (e.second > 0) out[{e.first, e.second - 1}] = c * e.second;
    return Poly2(std::move(out));
}

Poly2 Poly2::pow(int n) const {
    Poly2 r = constant(1);
    for (int i = 0; i < n; ++i) r = r * *this;
    return r;
}

Poly2 Poly2::translate(const RPoint& p) const {
    Terms out;
    for (const auto& [e, c] : terms_) {
        const auto [i, j] = e;
        const auto bi = binomial_row(i);
        const auto bj = binomial_row(j);
        for (int a = 0; a <= i; ++a) {
            const Rational ca = c * Rational(bi[a]) * rpow(p.x, i - a);
            if (ca == 0) continue;
            for (int b = 0; b <= j; ++b) out[{a, b}] += ca * Rational(bj[b]) * rpow(p.y, j - b);
        }
    }
    return Poly2(std::move(out));
}

Poly2 Poly2::divide_y_power(int l) const {
    Terms out;
    for (const auto& [e, c] : terms_) {
        if (e.second < l) throw Error(Errc::InsufficientPower, "term has y-exponent below the requested power");
        out[{e.first, e.second - l}] = c;
    }
    return Poly2(std::move(out));
}

Rational Poly2::eval(const RPoint& p) const {
    Rational s = 0;
    for (const auto& [e, c] : terms_) s += c * rpow(p.x, e.first) * rpow(p.y, e.second);
    return s;
}

double Poly2::eval(Vec2 p) const {
    double s = 0.0;
    for (const auto& [e, c] : terms_) s += to_double(c) * std::pow(p.x, e.first) * std::pow(p.y, e.second);
    return s;
}

std::vector<Rational> Poly2::restrict_y(const Rational& y0) const {
    std::vector<Rational> out;
    for (const auto& [e, c] : terms_) {
        if (out.size() <= static_cast<size_t>(e.first)) out.resize(e.first + 1, Rational(0));
        out[e.first] += c * rpow(y0, e.second);
    }
    return out;
}

CompiledPoly2::CompiledPoly2(const Poly2& p) {
    for (const auto& [e, c] : p.terms()) {
        const auto [i, j] = e;
        if (rows_.size() <= static_cast<size_t>(i)) {
            rows_.resize(i + 1);
            mids_.resize(i + 1);
        }
        if (rows_[i].size() <= static_cast<size_t>(j)) {
            rows_[i].resize(j + 1, Interval(0.0));
            mids_[i].resize(j + 1, 0.0);
        }
        rows_[i][j] = Interval::from(c);
        mids_[i][j] = to_double(c);
    }
}

double CompiledPoly2::operator()(Vec2 p) const {
    double acc = 0.0;
    for (size_t i = rows_.size(); i-- > 0;) {
        double inner = 0.0;
        for (size_t j = mids_[i].size(); j-- > 0;) inner = inner * p.y + mids_[i][j];
        acc = acc * p.x + inner;
    }
    return acc;
}

Interval CompiledPoly2::operator()(const IBox& box) const {
    Interval acc(0.0);
    for (size_t i = rows_.size(); i-- > 0;) {
        Interval inner(0.0);
        for (size_t j = rows_[i].size(); j-- > 0;) inner = inner * box.y + rows_[i][j];
        acc = acc * box.x + inner;
    }
    return acc;
}

}  // namespace vfb
