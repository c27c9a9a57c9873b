#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "vfblock/field.hpp"
#include "vfblock/region.hpp"

namespace vfb {

/// Subdivision depth limit: VFBLOCK_MAX_DEPTH when set, else 24.
int default_max_depth();

struct CertOptions {
    int max_depth = default_max_depth();
    std::size_t max_cells = 4'000'000;
};

/// Certified lower bound m > 0 of |X| on the frontier of U, or nullopt
/// (Inconclusive) when the subdivision budget runs out, which always happens
/// if X vanishes somewhere on the frontier. `tol` is the relative slack the
/// bound may leave below the sampled minimum.
std::optional<Rational> min_norm_on_boundary(const PlanarField& x, const Region& u, const Rational& tol,
                                             const CertOptions& opts = {});

/// Outer approximation of Z(X) within the closure of U by equal-size grid
/// cells of a dyadic subdivision of U's bounding box.
class ZeroEnclosure {
public:
    using Cell = std::pair<std::int64_t, std::int64_t>;

    ZeroEnclosure() = default;
    ZeroEnclosure(RBox root, int depth, Rational resolution, bool periodic, std::vector<Cell> cells);

    bool empty() const { return cells_.empty(); }
    std::size_t size() const { return cells_.size(); }
    const std::vector<Cell>& cells() const { return cells_; }
    const RBox& root() const { return root_; }
    int depth() const { return depth_; }
    std::int64_t grid_size() const { return std::int64_t{1} << depth_; }
    const Rational& resolution() const { return resolution_; }
    bool periodic() const { return periodic_; }

    RBox box(std::size_t k) const;
    IBox ibox(std::size_t k) const { return box(k).enclose(); }
    std::vector<RBox> boxes() const;
    /// Max box diameter (float).
    double box_diameter() const;
    bool covers(const RPoint& p) const;
    /// Some box of this enclosure meets some box of the other (closed boxes).
    bool overlaps(const ZeroEnclosure& other) const;

private:
    RBox root_;
    int depth_ = 0;
    Rational resolution_;
    bool periodic_ = false;
    std::vector<Cell> cells_;  // sorted
};

ZeroEnclosure zero_enclosure(const PlanarField& x, const Region& u, const Rational& resolution,
                             const CertOptions& opts = {});

/// Enclosure of the common zeros of several fields (cells survive only if
/// no field is certified nonvanishing on them).
ZeroEnclosure common_zero_enclosure(const std::vector<PlanarField>& fields, const Region& u,
                                    const Rational& resolution, const CertOptions& opts = {});

/// Certified isolating neighborhood U for X with the zero set inside it.
struct Block {
    PlanarField field;
    Region region;
    ZeroEnclosure enclosure;
    Rational boundary_margin;
};

Block certify_block(const PlanarField& x, const Region& u, const Rational& resolution, const CertOptions& opts = {});

/// Edge-adjacency cluster of enclosure cells (wrapping on the torus).
struct EnclosureComponent {
    std::vector<std::size_t> members;  // indices into the enclosure
    RBox bbox;                         // unwrapped bounding box
    bool loop_like = false;            // heuristic, not certified
};

std::vector<EnclosureComponent> components(const ZeroEnclosure& enclosure);

}  // namespace vfb
