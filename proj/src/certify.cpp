#include "vfblock/certify.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <numbers>

#include "vfblock/errors.hpp"

namespace vfb {

int default_max_depth() {
    if (const char* env = std::getenv("VFBLOCK_MAX_DEPTH")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v <= 60) return static_cast<int>(v);
    }
    return 24;
}

// ---- boundary bound -----------------------------------------------------------

namespace {

// Lower bound of |X|^2 over a boundary piece, taking the better of the
// natural and the mean-value enclosure.
double piece_lower_bound2(const PlanarField& x, const IBox& piece) {
    const double natural = x.enclose(piece).norm2().lo;
    const IVec mv = x.enclose_centered(piece);
    return std::max(natural, mv.norm2().lo);
}

}  // namespace

std::optional<Rational> min_norm_on_boundary(const PlanarField& x, const Region& u, const Rational& tol,
                                             const CertOptions& opts) {
    if (tol <= 0) throw Error(Errc::InvalidArgument, "tol must be positive");
    if (u.is_torus()) throw Error(Errc::InvalidRegion, "the full torus has no frontier");
    const double rel = std::min(0.5, to_double(tol));
    double best_lower2 = std::numeric_limits<double>::infinity();

    for (const BoundaryCurve& curve : u.boundary()) {
        const double period = curve.kind() == BoundaryCurve::Kind::Circle ? two_pi().hi : 4.0;
        double sampled = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 256; ++i) sampled = std::min(sampled, norm(x.eval(curve.at(period * i / 256.0))));

        struct Piece {
            double a, b;
            int depth;
        };
        constexpr int initial = 64;
        std::vector<Piece> stack;
        for (int i = initial; i-- > 0;)
            stack.push_back({period * i / initial, i + 1 == initial ? period : period * (i + 1) / initial, 0});
        std::size_t processed = 0;
        while (!stack.empty()) {
            const Piece pc = stack.back();
            stack.pop_back();
            if (++processed > opts.max_cells) return std::nullopt;
            const IBox box = curve.enclose(Interval(pc.a, pc.b));
            const double lower2 = piece_lower_bound2(x, box);
            sampled = std::min(sampled, norm(x.eval(curve.at(0.5 * (pc.a + pc.b)))));
            const bool positive = lower2 > 0.0;
            const bool tight = positive && std::sqrt(lower2) >= (1.0 - rel) * sampled;
            if (tight || (positive && pc.depth >= opts.max_depth)) {
                best_lower2 = std::min(best_lower2, lower2);
                continue;
            }
            if (pc.depth >= opts.max_depth) return std::nullopt;
            const double mid = 0.5 * (pc.a + pc.b);
            stack.push_back({mid, pc.b, pc.depth + 1});
            stack.push_back({pc.a, mid, pc.depth + 1});
        }
    }
    if (!std::isfinite(best_lower2) || best_lower2 <= 0.0) return std::nullopt;
    double m = std::sqrt(best_lower2);
    m = detail::down(detail::down(m));
    if (m <= 0.0) return std::nullopt;
    return from_double(m);
}

// ---- enclosure ------------------------------------------------------------------

ZeroEnclosure::ZeroEnclosure(RBox root, int depth, Rational resolution, bool periodic, std::vector<Cell> cells)
    : root_(std::move(root)), depth_(depth), resolution_(std::move(resolution)), periodic_(periodic),
      cells_(std::move(cells)) {
    std::sort(cells_.begin(), cells_.end());
}

RBox ZeroEnclosure::box(std::size_t k) const {
    const auto [i, j] = cells_.at(k);
    const Rational n(static_cast<long>(grid_size()));
    const Rational cw = (root_.x1 - root_.x0) / n;
    const Rational ch = (root_.y1 - root_.y0) / n;
    const Rational x0 = root_.x0 + cw * Rational(static_cast<long>(i));
    const Rational y0 = root_.y0 + ch * Rational(static_cast<long>(j));
    return {x0, y0, x0 + cw, y0 + ch};
}

std::vector<RBox> ZeroEnclosure::boxes() const {
    std::vector<RBox> out;
    out.reserve(cells_.size());
    for (std::size_t k = 0; k < cells_.size(); ++k) out.push_back(box(k));
    return out;
}

double ZeroEnclosure::box_diameter() const {
    const double n = static_cast<double>(grid_size());
    return std::hypot(to_double(root_.x1 - root_.x0) / n, to_double(root_.y1 - root_.y0) / n);
}

bool ZeroEnclosure::covers(const RPoint& p) const {
    for (std::size_t k = 0; k < cells_.size(); ++k)
        if (box(k).contains(p)) return true;
    return false;
}

bool ZeroEnclosure::overlaps(const ZeroEnclosure& other) const {
    const auto mine = boxes();
    const auto theirs = other.boxes();
    for (const auto& a : mine)
        for (const auto& b : theirs)
            if (a.intersects(b)) return true;
    return false;
}

namespace {

bool certainly_nonzero(const IVec& v) { return !v.x.contains_zero() || !v.y.contains_zero(); }

bool may_vanish(const PlanarField& f, const IBox& box) {
    if (certainly_nonzero(f.enclose(box))) return false;
    return !certainly_nonzero(f.enclose_centered(box));
}

}  // namespace

ZeroEnclosure common_zero_enclosure(const std::vector<PlanarField>& fields, const Region& u,
                                    const Rational& resolution, const CertOptions& opts) {
    if (resolution <= 0) throw Error(Errc::InvalidArgument, "resolution must be positive");
    const RBox root = u.bounding_box();
    const double diam = detail::up(root.diameter());
    const double res = round_down(resolution);
    int target = 0;
    while (diam / std::ldexp(1.0, target) > res) {
        if (++target > opts.max_depth)
            throw Error(Errc::DepthLimitExceeded, "resolution unreachable within the subdivision depth limit");
    }

    using Cell = ZeroEnclosure::Cell;
    std::vector<Cell> level{{0, 0}};
    std::vector<Cell> kept;
    for (int d = 0; d <= target; ++d) {
        const Rational n(static_cast<long>(std::int64_t{1} << d));
        const Rational cw = (root.x1 - root.x0) / n;
        const Rational ch = (root.y1 - root.y0) / n;
        std::vector<Cell> next;
        for (const auto& [i, j] : level) {
            const Rational x0 = root.x0 + cw * Rational(static_cast<long>(i));
            const Rational y0 = root.y0 + ch * Rational(static_cast<long>(j));
            const IBox box = RBox{x0, y0, x0 + cw, y0 + ch}.enclose();
            if (!u.may_meet(box)) continue;
            bool alive = true;
            for (const auto& f : fields) {
                if (!may_vanish(f, box)) {
                    alive = false;
                    break;
                }
            }
            if (!alive) continue;
            if (d == target) {
                kept.emplace_back(i, j);
            } else {
                next.emplace_back(2 * i, 2 * j);
                next.emplace_back(2 * i + 1, 2 * j);
                next.emplace_back(2 * i, 2 * j + 1);
                next.emplace_back(2 * i + 1, 2 * j + 1);
            }
        }
        if (next.size() > opts.max_cells)
            throw Error(Errc::DepthLimitExceeded, "zero set too large to resolve within the cell budget");
        level = std::move(next);
    }
    return ZeroEnclosure(root, target, resolution, u.is_torus(), std::move(kept));
}

ZeroEnclosure zero_enclosure(const PlanarField& x, const Region& u, const Rational& resolution,
                             const CertOptions& opts) {
    return common_zero_enclosure({x}, u, resolution, opts);
}

Block certify_block(const PlanarField& x, const Region& u, const Rational& resolution, const CertOptions& opts) {
    if (u.is_torus())
        throw Error(Errc::InvalidRegion, "the full torus has no frontier; certify disk sub-regions instead");
    const auto margin = min_norm_on_boundary(x, u, Rational(1, 1000), opts);
    if (!margin) throw Error(Errc::BoundaryZero, "could not certify that the field is nonzero on the frontier");
    Rational res = resolution;
    for (;;) {
        ZeroEnclosure enc = zero_enclosure(x, u, res, opts);
        const double collar = 2.0 * round_up(res);
        bool clear = true;
        for (std::size_t k = 0; k < enc.size() && clear; ++k) clear = u.clear_of_boundary(enc.ibox(k), collar);
        if (clear) return Block{x, u, std::move(enc), *margin};
        res /= 2;  // zeros are at positive distance from the frontier; refine until the collar is clear
    }
}

// ---- components -------------------------------------------------------------------

std::vector<EnclosureComponent> components(const ZeroEnclosure& enc) {
    using Cell = ZeroEnclosure::Cell;
    const std::int64_t n = enc.grid_size();
    std::map<Cell, std::size_t> index;
    for (std::size_t k = 0; k < enc.size(); ++k) index[enc.cells()[k]] = k;

    auto wrap = [&](std::int64_t v) { return ((v % n) + n) % n; };
    std::vector<bool> seen(enc.size(), false);
    std::vector<EnclosureComponent> out;
    const Rational cw = (enc.root().x1 - enc.root().x0) / Rational(static_cast<long>(n));
    const Rational ch = (enc.root().y1 - enc.root().y0) / Rational(static_cast<long>(n));

    for (std::size_t start = 0; start < enc.size(); ++start) {
        if (seen[start]) continue;
        EnclosureComponent comp;
        std::map<std::size_t, Cell> unwrapped;
        bool wraps_around = false;
        std::deque<std::size_t> queue{start};
        seen[start] = true;
        unwrapped[start] = enc.cells()[start];
        while (!queue.empty()) {
            const std::size_t k = queue.front();
            queue.pop_front();
            comp.members.push_back(k);
            const Cell u = unwrapped[k];
            const Cell steps[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
            for (const auto& [di, dj] : steps) {
                Cell raw{u.first + di, u.second + dj};
                Cell key = raw;
                if (enc.periodic()) key = {wrap(raw.first), wrap(raw.second)};
                auto it = index.find(key);
                if (it == index.end()) continue;
                const std::size_t m = it->second;
                if (!seen[m]) {
                    seen[m] = true;
                    unwrapped[m] = raw;
                    queue.push_back(m);
                } else if (enc.periodic() && unwrapped.count(m) && unwrapped[m] != raw) {
                    wraps_around = true;  // closes a non-contractible loop on the torus
                }
            }
        }
        std::sort(comp.members.begin(), comp.members.end());

        std::int64_t i0 = std::numeric_limits<std::int64_t>::max(), j0 = i0;
        std::int64_t i1 = std::numeric_limits<std::int64_t>::min(), j1 = i1;
        for (const auto& [k, c] : unwrapped) {
            i0 = std::min(i0, c.first);
            i1 = std::max(i1, c.first);
            j0 = std::min(j0, c.second);
            j1 = std::max(j1, c.second);
        }
        comp.bbox = {enc.root().x0 + cw * Rational(static_cast<long>(i0)),
                     enc.root().y0 + ch * Rational(static_cast<long>(j0)),
                     enc.root().x0 + cw * Rational(static_cast<long>(i1 + 1)),
                     enc.root().y0 + ch * Rational(static_cast<long>(j1 + 1))};

        if (wraps_around) {
            comp.loop_like = true;
        } else {
            // A hole in the cluster: complement cells (8-connected) unreachable from the padded border.
            const std::int64_t w = i1 - i0 + 3, h = j1 - j0 + 3;
            std::vector<char> grid(static_cast<std::size_t>(w * h), 0);
            for (const auto& [k, c] : unwrapped) grid[(c.first - i0 + 1) * h + (c.second - j0 + 1)] = 1;
            std::deque<std::pair<std::int64_t, std::int64_t>> q{{0, 0}};
            grid[0] = 2;
            while (!q.empty()) {
                const auto [a, b] = q.front();
                q.pop_front();
                for (int da = -1; da <= 1; ++da)
                    for (int db = -1; db <= 1; ++db) {
                        const std::int64_t na = a + da, nb = b + db;
                        if (na < 0 || nb < 0 || na >= w || nb >= h) continue;
                        char& g = grid[na * h + nb];
                        if (g != 0) continue;
                        g = 2;
                        q.emplace_back(na, nb);
                    }
            }
            comp.loop_like = std::find(grid.begin(), grid.end(), 0) != grid.end();
        }
        out.push_back(std::move(comp));
    }
    return out;
}

}  // namespace vfb
