#include "vfblock/verifier.hpp"

#include <algorithm>
#include <cmath>

#include "vfblock/errors.hpp"
#include "vfblock/json_io.hpp"
#include "vfblock/linefield.hpp"
#include "vfblock/tracking.hpp"

namespace vfb {

const char* verdict_name(Verdict v) noexcept {
    switch (v) {
        case Verdict::Pass: return "Pass";
        case Verdict::Fail: return "Fail";
        case Verdict::Inconclusive: return "Inconclusive";
        case Verdict::NotImplemented: return "NotImplemented";
    }
    return "?";
}

const char* theorem_name(Theorem t) noexcept {
    switch (t) {
        case Theorem::Main: return "MAIN";
        case Theorem::MainBis: return "MAINBIS";
        case Theorem::LieAlg: return "LIEALG";
    }
    return "?";
}

namespace {

const Check* find_check(const std::vector<Check>& v, const std::string& name) {
    for (const Check& c : v)
        if (c.name == name) return &c;
    return nullptr;
}

Check error_check(const std::string& name, const Error& e) {
    Check c{name, Verdict::Inconclusive, std::string(errc_name(e.code())) + ": " + e.what()};
    c.data["error"] = errc_name(e.code());
    return c;
}

Check pass_fail(const std::string& name, bool ok, std::string detail) {
    return {name, ok ? Verdict::Pass : Verdict::Fail, std::move(detail)};
}

}  // namespace

const Check* TheoremReport::hypothesis(const std::string& name) const { return find_check(hypotheses, name); }
const Check* TheoremReport::conclusion(const std::string& name) const { return find_check(conclusions, name); }

Overall summarize(const std::vector<Check>& hypotheses, const std::vector<Check>& conclusions) {
    for (const Check& c : hypotheses)
        if (c.verdict == Verdict::Fail) return {Overall::Kind::HypothesisFailed, c.name};
    for (const Check& c : hypotheses)
        if (c.verdict == Verdict::Inconclusive) return {Overall::Kind::Inconclusive, c.name};
    for (const Check& c : conclusions)
        if (c.verdict == Verdict::Fail) return {Overall::Kind::ConclusionFailed, c.name};
    for (const Check& c : conclusions)
        if (c.verdict == Verdict::Inconclusive) return {Overall::Kind::Inconclusive, c.name};
    return {Overall::Kind::Pass, ""};
}

// ---- shared checks ------------------------------------------------------------------------------

Check check_not_flat(const PlanarField& x, const ZeroEnclosure& k_enc, int k, const std::vector<RPoint>& zeros,
                     const CertOptions& opts) {
    const std::string name = "not_flat";
    if (x.is_zero()) return {name, Verdict::Fail, "X is identically zero"};
    Check c{name, Verdict::Pass, ""};
    for (const RPoint& p : zeros) {
        try {
            const JetOrder o = jet_order(x, p, k);
            if (o.flat) {
                c.data["flat_at"] = Json::array({to_json(p.x), to_json(p.y)});
                return {name, Verdict::Fail, "X is " + std::to_string(k) + "-flat at a supplied zero", c.data};
            }
            c.data["orders"].push_back(o.order);
        } catch (const Error& e) {
            if (e.code() != Errc::PointNotZero) return error_check(name, e);
        }
    }
    if (x.is_polynomial() && x.degree() <= k) {
        c.detail = "exact: nonzero polynomial of degree " + std::to_string(x.degree()) + " <= k";
        c.data["method"] = "degree";
        return c;
    }
    // some partial of order 0..k certified nonzero on every cell
    std::vector<CompiledScalar> parts = jet_partials(x, k);
    parts.emplace_back(x.p());
    parts.emplace_back(x.q());
    int unresolved = 0;
    const int max_split = std::min(opts.max_depth, 8);
    for (std::size_t i = 0; i < k_enc.size(); ++i) {
        std::vector<std::pair<IBox, int>> stack{{k_enc.ibox(i), 0}};
        while (!stack.empty()) {
            const auto [b, d] = stack.back();
            stack.pop_back();
            const bool ok = std::any_of(parts.begin(), parts.end(), [&](const CompiledScalar& s) {
                return !s(b).contains_zero();
            });
            if (ok) continue;
            if (d >= max_split) {
                ++unresolved;
                break;
            }
            const double mx = b.x.mid(), my = b.y.mid();
            stack.push_back({{{b.x.lo, mx}, {b.y.lo, my}}, d + 1});
            stack.push_back({{{mx, b.x.hi}, {b.y.lo, my}}, d + 1});
            stack.push_back({{{b.x.lo, mx}, {my, b.y.hi}}, d + 1});
            stack.push_back({{{mx, b.x.hi}, {my, b.y.hi}}, d + 1});
        }
    }
    c.data["method"] = "interval";
    c.data["unresolved_cells"] = unresolved;
    if (unresolved > 0) {
        c.verdict = Verdict::Inconclusive;
        c.detail = std::to_string(unresolved) + " enclosure cells not certified free of " + std::to_string(k) +
                   "-flat points";
    } else {
        c.detail = "interval: a jet of order <= k is nonzero on every enclosure cell";
    }
    return c;
}

std::optional<RPoint> exact_common_zero(const std::vector<PlanarField>& fields, const ZeroEnclosure& a,
                                        const ZeroEnclosure& b, const std::vector<RPoint>& hints) {
    auto vanishes = [&](const RPoint& p) {
        try {
            for (const PlanarField& f : fields) {
                const auto [u, v] = f.eval(p);
                if (u != 0 || v != 0) return false;
            }
            return true;
        } catch (const Error&) {
            return false;
        }
    };
    for (const RPoint& p : hints)
        if (a.covers(p) && b.covers(p) && vanishes(p)) return p;
    const auto ba = a.boxes(), bb = b.boxes();
    std::size_t tried = 0;
    for (const RBox& q : bb)
        for (const RBox& r : ba) {
            if (!q.intersects(r)) continue;
            if (++tried > 20000) return std::nullopt;
            const RPoint p{simplest_between(std::max(q.x0, r.x0), std::min(q.x1, r.x1)),
                           simplest_between(std::max(q.y0, r.y0), std::min(q.y1, r.y1))};
            if (vanishes(p)) return p;
        }
    return std::nullopt;
}

namespace {

struct BlockChecks {
    std::optional<Block> block;
    std::optional<IndexResult> index;
    std::optional<Error> error;
};

BlockChecks certify_with_index(const PlanarField& x, const Region& u, const VerifyOptions& o) {
    BlockChecks r;
    try {
        r.block = certify_block(x, u, o.resolution, o.cert);
        r.index = block_index(*r.block, o.cert);
    } catch (const Error& e) {
        r.error = e;
    }
    return r;
}

Check essential_check(const BlockChecks& bc) {
    if (bc.error) return error_check("essential", *bc.error);
    Check c = pass_fail("essential", bc.index->index != 0, "block index " + std::to_string(bc.index->index));
    c.data = to_json(*bc.index);
    return c;
}

Check tracking_check(const PlanarField& y, const PlanarField& x) {
    try {
        const TrackingCertificate t = tracks_symbolic(y, x);
        Check c = pass_fail("tracking", t.verdict,
                            t.verdict ? "det([Y, X], X) is identically zero" : "det([Y, X], X) is not zero");
        c.data = to_json(t);
        return c;
    } catch (const Error& e) {
        return error_check("tracking", e);
    }
}

std::optional<ZeroEnclosure> try_enclosure(const PlanarField& f, const Region& u, const VerifyOptions& o,
                                           std::optional<Error>& err) {
    try {
        return zero_enclosure(f, u, o.resolution, o.cert);
    } catch (const Error& e) {
        err = e;
        return std::nullopt;
    }
}

Json point_json(const RPoint& p) { return Json::array({to_json(p.x), to_json(p.y)}); }

// Meeting of K with another enclosure: overlap (with an exact witness when one is found).
Check meets_check(const std::string& name, const std::vector<PlanarField>& fields, const ZeroEnclosure& k,
                  const ZeroEnclosure& other, const std::vector<RPoint>& hints) {
    if (!k.overlaps(other)) return {name, Verdict::Fail, "enclosures are disjoint"};
    Check c{name, Verdict::Pass, "enclosures overlap at the working resolution"};
    if (const auto w = exact_common_zero(fields, k, other, hints)) {
        c.data["exact_witness"] = point_json(*w);
        c.detail = "exact common zero found";
    }
    return c;
}

// Line-field control along K through flowboxes of Y.
Check control_check(const PlanarField& x, const PlanarField& y, const ZeroEnclosure& kenc,
                    const std::vector<EnclosureComponent>& comps, const VerifyOptions& o) {
    const std::string name = "line_field_control";
    if (kenc.empty()) return {name, Verdict::Pass, "K is empty"};
    std::vector<Flowbox> boxes;
    std::vector<LineFieldRep> fields;
    double deviation = 0.0;
    int samples = 0;
    Json orders = Json::array();
    try {
        for (const auto& comp : comps) {
            const std::size_t m = comp.members.size();
            const std::size_t count = std::min<std::size_t>(m, static_cast<std::size_t>(o.flowbox_count));
            for (std::size_t s = 0; s < count; ++s) {
                const RPoint c = kenc.box(comp.members[s * m / count]).center();
                const Vec2 q = polish_zero(x, {to_double(c.x), to_double(c.y)});
                const int l = estimate_order(x, q).order;
                orders.push_back(l);
                if (l < 1) throw Error(Errc::OrderEstimateAmbiguous, "X appears flat near K");
                const Flowbox fb = Flowbox::build(y, q, o.flowbox_half_length, o.flowbox_time, 1e-10);
                LineFieldRep lam = flowbox_line_field(x, fb, l);
                const Region near = Region::disk({rationalize(q.x, 1 << 20), rationalize(q.y, 1 << 20)},
                                                 o.flowbox_half_length);
                const ControlResult r = controls_check(lam, x, near, o.tol, 400);
                deviation = std::max(deviation, r.max_deviation);
                samples += r.samples;
                boxes.push_back(fb);
                fields.push_back(std::move(lam));
            }
        }
    } catch (const Error& e) {
        return error_check(name, e);
    }
    double overlap = 0.0;
    int compared = 0;
    for (std::size_t a = 0; a < fields.size(); ++a)
        for (std::size_t b = a + 1; b < fields.size(); ++b) {
            int n = 0;
            overlap = std::max(overlap, overlap_disagreement(fields[a], fields[b], flowbox_samples(boxes[a], 9), &n));
            compared += n;
        }
    Check c = pass_fail(name, deviation < o.tol && overlap < o.tol && samples > 0,
                        "max deviation " + std::to_string(deviation) + " over " + std::to_string(fields.size()) +
                            " flowboxes");
    if (samples == 0) c.verdict = Verdict::Inconclusive;
    c.data = {{"max_deviation", deviation}, {"samples", samples},       {"flowboxes", fields.size()},
              {"overlap_disagreement", overlap}, {"overlap_points", compared}, {"orders", orders}};
    return c;
}

void finish(TheoremReport& r) {
    r.overall = summarize(r.hypotheses, r.conclusions);
    r.contradiction = r.overall.kind == Overall::Kind::ConclusionFailed &&
                      std::all_of(r.hypotheses.begin(), r.hypotheses.end(),
                                  [](const Check& c) { return c.verdict == Verdict::Pass; });
}

}  // namespace

// ---- theorems -----------------------------------------------------------------------------------

TheoremReport verify_main(const PlanarField& x, const PlanarField& y, const Region& u, const VerifyOptions& o) {
    TheoremReport r;
    r.theorem = Theorem::Main;
    const BlockChecks bc = certify_with_index(x, u, o);
    r.hypotheses.push_back(essential_check(bc));

    std::optional<Error> kerr, yerr;
    r.k_enclosure = bc.block ? std::optional(bc.block->enclosure) : try_enclosure(x, u, o, kerr);
    if (r.k_enclosure)
        r.hypotheses.push_back(check_not_flat(x, *r.k_enclosure, o.k, o.zeros, o.cert));
    else
        r.hypotheses.push_back(error_check("not_flat", *kerr));
    r.hypotheses.push_back(tracking_check(y, x));

    r.other_enclosure = try_enclosure(y, u, o, yerr);
    if (r.k_enclosure && r.other_enclosure)
        r.conclusions.push_back(meets_check("zero_meets_block", {x, y}, *r.k_enclosure, *r.other_enclosure, o.zeros));
    else
        r.conclusions.push_back(error_check("zero_meets_block", kerr ? *kerr : *yerr));
    finish(r);
    return r;
}

TheoremReport verify_mainbis(const PlanarField& x, const PlanarField& y, const Region& u, const VerifyOptions& o) {
    TheoremReport r;
    r.theorem = Theorem::MainBis;
    const BlockChecks bc = certify_with_index(x, u, o);
    std::optional<Error> kerr, yerr;
    r.k_enclosure = bc.block ? std::optional(bc.block->enclosure) : try_enclosure(x, u, o, kerr);
    r.other_enclosure = try_enclosure(y, u, o, yerr);

    // (a) non-flatness, (b) tracking, (c) Z(Y) and K disjoint, (d) U isolating
    if (r.k_enclosure)
        r.hypotheses.push_back(check_not_flat(x, *r.k_enclosure, o.k, o.zeros, o.cert));
    else
        r.hypotheses.push_back(error_check("not_flat", *kerr));
    r.hypotheses.push_back(tracking_check(y, x));
    if (r.k_enclosure && r.other_enclosure) {
        Check c{"zero_free_on_block", Verdict::Pass, "enclosures of Z(Y) and K are disjoint"};
        if (r.k_enclosure->overlaps(*r.other_enclosure)) {
            if (const auto w = exact_common_zero({x, y}, *r.k_enclosure, *r.other_enclosure, o.zeros)) {
                c.verdict = Verdict::Fail;
                c.detail = "exact common zero of X and Y in K";
                c.data["exact_witness"] = point_json(*w);
            } else {
                c.verdict = Verdict::Inconclusive;
                c.detail = "enclosures overlap at the working resolution";
            }
        }
        r.hypotheses.push_back(c);
    } else {
        r.hypotheses.push_back(error_check("zero_free_on_block", kerr ? *kerr : *yerr));
    }
    if (bc.block) {
        Check c{"isolating", Verdict::Pass, "frontier certified zero-free"};
        c.data["boundary_margin"] = to_json(bc.block->boundary_margin);
        r.hypotheses.push_back(c);
    } else {
        r.hypotheses.push_back(error_check("isolating", *bc.error));
    }

    // (i) index zero
    if (bc.error)
        r.conclusions.push_back(error_check("index_zero", *bc.error));
    else {
        Check c = pass_fail("index_zero", bc.index->index == 0, "block index " + std::to_string(bc.index->index));
        c.data = to_json(*bc.index);
        r.conclusions.push_back(c);
    }

    std::vector<EnclosureComponent> comps;
    if (r.k_enclosure) comps = components(*r.k_enclosure);

    // (ii) loop-like components (heuristic)
    {
        const auto loops = std::count_if(comps.begin(), comps.end(), [](const auto& c) { return c.loop_like; });
        Check c{"components_are_circles", Verdict::Pass, "heuristic, not certified"};
        c.data = {{"components", comps.size()}, {"loop_like", loops}, {"certified", false}};
        if (!r.k_enclosure)
            c = error_check(c.name, *kerr);
        else if (static_cast<std::size_t>(loops) != comps.size()) {
            c.verdict = Verdict::Inconclusive;
            c.detail = "some components are not loop-like at this resolution (heuristic)";
        }
        r.conclusions.push_back(c);
    }

    // (iii) line field control
    if (r.k_enclosure)
        r.conclusions.push_back(control_check(x, y, *r.k_enclosure, comps, o));
    else
        r.conclusions.push_back(error_check("line_field_control", *kerr));

    // (iv) per-component index
    if (r.k_enclosure) {
        Check c{"component_index_zero", Verdict::Pass, ""};
        try {
            r.components = component_indices(x, *r.k_enclosure, o.cert);
            int failed = 0, nonzero = 0;
            Json arr = Json::array();
            for (const ComponentIndex& ci : r.components) {
                Json e{{"cells", ci.component.members.size()}, {"loop_like", ci.component.loop_like}};
                if (ci.index) {
                    e["index"] = ci.index->index;
                    if (ci.index->index != 0) ++nonzero;
                } else {
                    e["failure"] = ci.failure;
                    ++failed;
                }
                if (ci.subregion) e["subregion"] = to_json(*ci.subregion);
                arr.push_back(e);
            }
            c.data["components"] = arr;
            if (nonzero > 0) {
                c.verdict = Verdict::Fail;
                c.detail = std::to_string(nonzero) + " components with nonzero index";
            } else if (failed > 0) {
                c.verdict = Verdict::Inconclusive;
                c.detail = std::to_string(failed) + " components without a certified sub-region";
            } else {
                c.detail = "every component has index 0";
            }
        } catch (const Error& e) {
            c = error_check(c.name, e);
        }
        r.conclusions.push_back(c);
    } else {
        r.conclusions.push_back(error_check("component_index_zero", *kerr));
    }

    // (v) zero-free approximation
    r.conclusions.push_back({"approximation", Verdict::NotImplemented,
                             "zero-free C^k approximation agreeing outside U is not constructed"});
    finish(r);
    return r;
}

TheoremReport verify_liealg(const std::vector<PlanarField>& basis, const PlanarField& x, const Region& u,
                            const VerifyOptions& o) {
    TheoremReport r;
    r.theorem = Theorem::LieAlg;
    const BlockChecks bc = certify_with_index(x, u, o);
    r.hypotheses.push_back(essential_check(bc));
    std::optional<Error> kerr;
    r.k_enclosure = bc.block ? std::optional(bc.block->enclosure) : try_enclosure(x, u, o, kerr);
    if (r.k_enclosure)
        r.hypotheses.push_back(check_not_flat(x, *r.k_enclosure, o.k, o.zeros, o.cert));
    else
        r.hypotheses.push_back(error_check("not_flat", *kerr));

    std::optional<LieAlgebraPresentation> g;
    try {
        g = structure_constants(basis);
        Check c = pass_fail("closed", g->closed, g->closed ? "closed under brackets" : "a bracket leaves the span");
        c.data["dim"] = g->dim();
        if (g->witness) c.data["witness"] = {g->witness->first, g->witness->second};
        r.hypotheses.push_back(c);
    } catch (const Error& e) {
        r.hypotheses.push_back(error_check("closed", e));
    }

    if (g && g->closed) {
        try {
            const FlagResult f = supersolvable_flag(*g, o.tol);
            Check c{"supersolvable", Verdict::Pass, "complete flag of ideals, verified exactly"};
            if (f.kind == FlagResult::Kind::NoRealFlag) {
                c.verdict = Verdict::Fail;
                c.detail = "no real 1-dimensional ideal at stage " + std::to_string(f.stage);
            } else if (f.kind == FlagResult::Kind::NotSolvable) {
                c.verdict = Verdict::Fail;
                c.detail = "not solvable";
            } else {
                Json chain = Json::array();
                for (const auto& member : f.flag.chain) {
                    Json rows = Json::array();
                    for (const RVector& v : member) {
                        Json row = Json::array();
                        for (const Rational& q : v) row.push_back(to_json(q));
                        rows.push_back(row);
                    }
                    chain.push_back(rows);
                }
                c.data["flag"] = chain;
            }
            r.hypotheses.push_back(c);
        } catch (const Error& e) {
            r.hypotheses.push_back(error_check("supersolvable", e));
        }
    } else {
        r.hypotheses.push_back({"supersolvable", Verdict::Inconclusive, "requires a closed algebra"});
    }

    {
        Check c{"tracking", Verdict::Pass, "every basis field tracks X"};
        Json certs = Json::array();
        try {
            for (const PlanarField& b : basis) {
                const TrackingCertificate t = tracks_symbolic(b, x);
                certs.push_back(to_json(t));
                if (!t.verdict) c.verdict = Verdict::Fail;
            }
            if (c.verdict == Verdict::Fail) c.detail = "some basis field does not track X";
            c.data["certificates"] = certs;
        } catch (const Error& e) {
            c = error_check(c.name, e);
        }
        r.hypotheses.push_back(c);
    }

    try {
        r.other_enclosure = common_zero_enclosure(basis, u, o.resolution, o.cert);
        if (r.k_enclosure) {
            std::vector<PlanarField> all = basis;
            all.push_back(x);
            r.conclusions.push_back(
                meets_check("common_zero_meets_block", all, *r.k_enclosure, *r.other_enclosure, o.zeros));
        } else {
            r.conclusions.push_back(error_check("common_zero_meets_block", *kerr));
        }
    } catch (const Error& e) {
        r.conclusions.push_back(error_check("common_zero_meets_block", e));
    }
    finish(r);
    return r;
}

}  // namespace vfb
