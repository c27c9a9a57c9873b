#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "vfblock/certify.hpp"
#include "vfblock/field.hpp"
#include "vfblock/index.hpp"
#include "vfblock/liealg.hpp"
#include "vfblock/region.hpp"

namespace vfb {

enum class Verdict { Pass, Fail, Inconclusive, NotImplemented };
const char* verdict_name(Verdict v) noexcept;

struct Check {
    std::string name;
    Verdict verdict = Verdict::Inconclusive;
    std::string detail;
    nlohmann::json data = nlohmann::json::object();
};

enum class Theorem { Main, MainBis, LieAlg };
const char* theorem_name(Theorem t) noexcept;

struct Overall {
    enum class Kind { Pass, HypothesisFailed, ConclusionFailed, Inconclusive };
    Kind kind = Kind::Inconclusive;
    std::string name;  // offending check
};

struct TheoremReport {
    Theorem theorem = Theorem::Main;
    std::vector<Check> hypotheses;
    std::vector<Check> conclusions;
    Overall overall;
    /// ConclusionFailed while every hypothesis passed.
    bool contradiction = false;
    std::optional<ZeroEnclosure> k_enclosure;      // Z(X) in U
    std::optional<ZeroEnclosure> other_enclosure;  // Z(Y) or Z(g) in U
    std::vector<ComponentIndex> components;

    const Check* hypothesis(const std::string& name) const;
    const Check* conclusion(const std::string& name) const;
};

struct VerifyOptions {
    int k = 1;
    Rational resolution = ratio(1, 64);
    double tol = 1e-6;
    std::vector<RPoint> zeros;  // exact zeros of X supplied by the caller
    CertOptions cert;
    Rational flowbox_half_length = ratio(1, 8);
    Rational flowbox_time = ratio(1, 4);
    int flowbox_count = 8;
};

/// Overall verdict from the checks: first failed hypothesis, then first
/// inconclusive hypothesis, then first failed conclusion, then first
/// inconclusive conclusion. NotImplemented checks are ignored.
Overall summarize(const std::vector<Check>& hypotheses, const std::vector<Check>& conclusions);

/// Non-k-flatness of X on the enclosure. Exact when X is a nonzero polynomial
/// of degree <= k; otherwise some partial of order 0..k must be certified
/// nonzero on every cell. Supplied exact zeros are checked with jet_order.
Check check_not_flat(const PlanarField& x, const ZeroEnclosure& k_enc, int k, const std::vector<RPoint>& zeros,
                     const CertOptions& opts = {});

/// An exact rational point in both enclosures at which every field vanishes.
std::optional<RPoint> exact_common_zero(const std::vector<PlanarField>& fields, const ZeroEnclosure& a,
                                        const ZeroEnclosure& b, const std::vector<RPoint>& hints = {});

TheoremReport verify_main(const PlanarField& x, const PlanarField& y, const Region& u, const VerifyOptions& opts = {});
TheoremReport verify_mainbis(const PlanarField& x, const PlanarField& y, const Region& u,
                             const VerifyOptions& opts = {});
TheoremReport verify_liealg(const std::vector<PlanarField>& basis, const PlanarField& x, const Region& u,
                            const VerifyOptions& opts = {});

}  // namespace vfb
