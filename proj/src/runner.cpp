#include "vfblock/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "vfblock/errors.hpp"
#include "vfblock/json_io.hpp"
#include "vfblock/liealg.hpp"
#include "vfblock/tracking.hpp"

namespace vfb {

const char* status_name(Status s) noexcept {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Inconclusive: return "inconclusive";
        case Status::Fail: return "fail";
        case Status::Error: return "error";
    }
    return "?";
}

Status status_from_name(const std::string& s) {
    for (Status v : {Status::Pass, Status::Inconclusive, Status::Fail, Status::Error})
        if (s == status_name(v)) return v;
    throw Error(Errc::SchemaError, "status: unknown value \"" + s + "\"");
}

int exit_code(Status s) noexcept {
    switch (s) {
        case Status::Pass: return 0;
        case Status::Fail: return 1;
        case Status::Error: return 2;
        case Status::Inconclusive: return 3;
    }
    return 2;
}

Status worst(Status a, Status b) noexcept { return static_cast<int>(a) >= static_cast<int>(b) ? a : b; }

// ---- report serialization -------------------------------------------------------------------------

Json to_json(const Report& r) {
    Json checks = Json::array();
    for (const CheckResult& c : r.checks)
        checks.push_back({{"op", c.op}, {"status", status_name(c.status)}, {"detail", c.detail}, {"data", c.data}});
    return {{"scenario", r.scenario}, {"status", status_name(r.status)}, {"exit_code", r.exit_code()},
            {"checks", checks}};
}

Report report_from_json(const Json& j) {
    try {
        Report r;
        r.scenario = j.at("scenario").get<std::string>();
        r.status = status_from_name(j.at("status").get<std::string>());
        for (const Json& c : j.at("checks"))
            r.checks.push_back({c.at("op").get<std::string>(), status_from_name(c.at("status").get<std::string>()),
                                c.at("detail").get<std::string>(), c.at("data")});
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::SchemaError, std::string("report: ") + e.what());
    }
}

namespace {

const char* overall_name(Overall::Kind k) {
    switch (k) {
        case Overall::Kind::Pass: return "Pass";
        case Overall::Kind::HypothesisFailed: return "HypothesisFailed";
        case Overall::Kind::ConclusionFailed: return "ConclusionFailed";
        case Overall::Kind::Inconclusive: return "Inconclusive";
    }
    return "?";
}

Json checks_json(const std::vector<Check>& v) {
    Json a = Json::array();
    for (const Check& c : v)
        a.push_back({{"name", c.name}, {"verdict", verdict_name(c.verdict)}, {"detail", c.detail}, {"data", c.data}});
    return a;
}

}  // namespace

Json to_json(const TheoremReport& r) {
    Json j{{"theorem", theorem_name(r.theorem)},
           {"overall", {{"kind", overall_name(r.overall.kind)}, {"name", r.overall.name}}},
           {"contradiction", r.contradiction},
           {"hypotheses", checks_json(r.hypotheses)},
           {"conclusions", checks_json(r.conclusions)}};
    if (r.k_enclosure) j["k_enclosure_cells"] = r.k_enclosure->size();
    if (r.other_enclosure) j["other_enclosure_cells"] = r.other_enclosure->size();
    return j;
}

// ---- scenarios ------------------------------------------------------------------------------------

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) {
    throw Error(Errc::SchemaError, path + ": " + what);
}

enum class Kind { Field, Region, Algebra, Int, Points };

struct Arg {
    const char* key;
    Kind kind;
    bool required;
};

const std::map<std::string, std::vector<Arg>>& op_table() {
    static const std::map<std::string, std::vector<Arg>> t = {
        {"block_index", {{"field", Kind::Field, true}, {"region", Kind::Region, true}, {"expect", Kind::Int, false}}},
        {"zero_enclosure", {{"field", Kind::Field, true}, {"region", Kind::Region, true}}},
        {"component_indices", {{"field", Kind::Field, true}, {"region", Kind::Region, true}}},
        {"tracks", {{"y", Kind::Field, true}, {"x", Kind::Field, true}}},
        {"homotopy",
         {{"from", Kind::Field, true}, {"to", Kind::Field, true}, {"region", Kind::Region, true},
          {"steps", Kind::Int, false}}},
        {"wedge", {{"y", Kind::Field, true}, {"y2", Kind::Field, true}, {"region", Kind::Region, true}}},
        {"double_cover", {{"field", Kind::Field, true}, {"region", Kind::Region, true}}},
        {"perturbation",
         {{"field", Kind::Field, true}, {"region", Kind::Region, true}, {"trials", Kind::Int, false},
          {"degree", Kind::Int, false}}},
        {"lie_algebra", {{"algebra", Kind::Algebra, true}}},
        {"verify_main",
         {{"x", Kind::Field, true}, {"y", Kind::Field, true}, {"region", Kind::Region, true}, {"k", Kind::Int, false},
          {"zeros", Kind::Points, false}}},
        {"verify_mainbis",
         {{"x", Kind::Field, true}, {"y", Kind::Field, true}, {"region", Kind::Region, true}, {"k", Kind::Int, false},
          {"zeros", Kind::Points, false}}},
        {"verify_liealg",
         {{"algebra", Kind::Algebra, true}, {"x", Kind::Field, true}, {"region", Kind::Region, true},
          {"k", Kind::Int, false}, {"zeros", Kind::Points, false}}},
    };
    return t;
}

struct Scenario {
    std::string name;
    std::map<std::string, PlanarField> fields;
    std::map<std::string, Region> regions;
    std::map<std::string, std::vector<PlanarField>> algebras;
    double tol = 1e-6;
    Rational resolution = ratio(1, 64);
    int k = 1;
    CertOptions cert;
    std::map<std::string, int> seeds;
    Json checks;
};

struct Ctx {
    const Scenario& s;
    const Json& c;
    std::string path;

    const PlanarField& field(const char* key) const { return s.fields.at(c.at(key).get<std::string>()); }
    const Region& region(const char* key) const { return s.regions.at(c.at(key).get<std::string>()); }
    const std::vector<PlanarField>& algebra(const char* key) const {
        return s.algebras.at(c.at(key).get<std::string>());
    }
    int integer(const char* key, int dflt) const { return c.contains(key) ? c.at(key).get<int>() : dflt; }
    std::vector<RPoint> points(const char* key) const {
        std::vector<RPoint> out;
        if (!c.contains(key)) return out;
        const Json& a = c.at(key);
        for (std::size_t i = 0; i < a.size(); ++i) {
            const std::string p = path + "." + key + "[" + std::to_string(i) + "]";
            if (!a[i].is_array() || a[i].size() != 2) schema(p, "expected [x, y]");
            out.push_back({rational_from_json(a[i][0], p + "[0]"), rational_from_json(a[i][1], p + "[1]")});
        }
        return out;
    }
};

Json field_with_surface(Json f, const std::string& surface) {
    if (f.is_object() && !f.contains("surface")) f["surface"] = surface;
    return f;
}

Scenario parse(const Json& doc, const RunOptions& opts) {
    if (!doc.is_object()) schema("$", "scenario must be an object");
    Scenario s;
    if (!doc.contains("name") || !doc["name"].is_string()) schema("name", "missing or not a string");
    s.name = doc["name"].get<std::string>();
    std::string surface = "plane";
    if (doc.contains("surface")) {
        if (!doc["surface"].is_string()) schema("surface", "expected \"plane\" or \"torus\"");
        surface = doc["surface"].get<std::string>();
        if (surface != "plane" && surface != "torus") schema("surface", "expected \"plane\" or \"torus\"");
    }
    if (doc.contains("tolerances")) {
        const Json& t = doc["tolerances"];
        if (!t.is_object()) schema("tolerances", "expected an object");
        for (const auto& [key, v] : t.items()) {
            const std::string p = "tolerances." + key;
            if (key == "tol") {
                if (!v.is_number() || v.get<double>() <= 0) schema(p, "must be a positive number");
                s.tol = v.get<double>();
            } else if (key == "resolution") {
                s.resolution = rational_from_json(v, p);
                if (s.resolution <= 0) schema(p, "must be positive");
            } else if (key == "k") {
                if (!v.is_number_integer() || v.get<int>() < 1) schema(p, "must be an integer >= 1");
                s.k = v.get<int>();
            } else if (key == "max_depth") {
                if (!v.is_number_integer() || v.get<int>() < 1) schema(p, "must be an integer >= 1");
                s.cert.max_depth = v.get<int>();
            } else {
                schema(p, "unknown tolerance");
            }
        }
    }
    if (opts.tol) s.tol = *opts.tol;
    if (opts.max_depth) s.cert.max_depth = *opts.max_depth;
    if (doc.contains("seeds")) {
        if (!doc["seeds"].is_object()) schema("seeds", "expected an object");
        for (const auto& [key, v] : doc["seeds"].items()) {
            if (!v.is_number_integer()) schema("seeds." + key, "expected an integer");
            s.seeds[key] = v.get<int>();
        }
    }
    if (doc.contains("fields")) {
        if (!doc["fields"].is_object()) schema("fields", "expected an object");
        for (const auto& [key, v] : doc["fields"].items())
            s.fields.emplace(key, field_from_json(field_with_surface(v, surface), "fields." + key));
    }
    if (doc.contains("regions")) {
        if (!doc["regions"].is_object()) schema("regions", "expected an object");
        for (const auto& [key, v] : doc["regions"].items())
            s.regions.emplace(key, region_from_json(v, "regions." + key));
    }
    if (doc.contains("algebras")) {
        if (!doc["algebras"].is_object()) schema("algebras", "expected an object");
        for (const auto& [key, v] : doc["algebras"].items()) {
            const std::string p = "algebras." + key;
            if (!v.is_object() || !v.contains("basis") || !v["basis"].is_array())
                schema(p, "expected {\"basis\": [...], \"extend\": [...]}");
            std::vector<PlanarField> basis;
            for (std::size_t i = 0; i < v["basis"].size(); ++i) {
                const Json& b = v["basis"][i];
                const std::string bp = p + ".basis[" + std::to_string(i) + "]";
                if (b.is_string()) {
                    const auto it = s.fields.find(b.get<std::string>());
                    if (it == s.fields.end()) schema(bp, "unknown field \"" + b.get<std::string>() + "\"");
                    basis.push_back(it->second);
                } else {
                    basis.push_back(field_from_json(field_with_surface(b, surface), bp));
                }
            }
            if (v.contains("extend")) {
                // appended only when independent of the fields so far
                if (!v["extend"].is_array()) schema(p + ".extend", "expected a list of fields");
                for (std::size_t i = 0; i < v["extend"].size(); ++i) {
                    const Json& b = v["extend"][i];
                    const std::string bp = p + ".extend[" + std::to_string(i) + "]";
                    PlanarField f;
                    if (b.is_string()) {
                        const auto it = s.fields.find(b.get<std::string>());
                        if (it == s.fields.end()) schema(bp, "unknown field \"" + b.get<std::string>() + "\"");
                        f = it->second;
                    } else {
                        f = field_from_json(field_with_surface(b, surface), bp);
                    }
                    if (!f.is_polynomial()) schema(bp, "algebra fields must be polynomial");
                    basis.push_back(f);
                    const auto vs = coefficient_vectors(basis);
                    if (span_basis(vs, static_cast<int>(vs.front().size())).size() < basis.size()) basis.pop_back();
                }
            }
            s.algebras.emplace(key, std::move(basis));
        }
    }
    if (!doc.contains("checks") || !doc["checks"].is_array() || doc["checks"].empty())
        schema("checks", "expected a nonempty array");
    s.checks = doc["checks"];
    for (std::size_t i = 0; i < s.checks.size(); ++i) {
        const Json& c = s.checks[i];
        const std::string p = "checks[" + std::to_string(i) + "]";
        if (!c.is_object() || !c.contains("op") || !c["op"].is_string()) schema(p + ".op", "missing or not a string");
        const auto it = op_table().find(c["op"].get<std::string>());
        if (it == op_table().end()) schema(p + ".op", "unknown operation \"" + c["op"].get<std::string>() + "\"");
        std::set<std::string> allowed{"op"};
        for (const Arg& a : it->second) {
            allowed.insert(a.key);
            const std::string ap = p + "." + a.key;
            if (!c.contains(a.key)) {
                if (a.required) schema(ap, "missing");
                continue;
            }
            const Json& v = c[a.key];
            switch (a.kind) {
                case Kind::Field:
                    if (!v.is_string() || !s.fields.count(v.get<std::string>())) schema(ap, "unknown field " + v.dump());
                    break;
                case Kind::Region:
                    if (!v.is_string() || !s.regions.count(v.get<std::string>()))
                        schema(ap, "unknown region " + v.dump());
                    break;
                case Kind::Algebra:
                    if (!v.is_string() || !s.algebras.count(v.get<std::string>()))
                        schema(ap, "unknown algebra " + v.dump());
                    break;
                case Kind::Int:
                    if (!v.is_number_integer()) schema(ap, "expected an integer");
                    break;
                case Kind::Points:
                    if (!v.is_array()) schema(ap, "expected a list of [x, y]");
                    for (std::size_t k = 0; k < v.size(); ++k) {
                        const std::string pp = ap + "[" + std::to_string(k) + "]";
                        if (!v[k].is_array() || v[k].size() != 2) schema(pp, "expected [x, y]");
                        rational_from_json(v[k][0], pp + "[0]");
                        rational_from_json(v[k][1], pp + "[1]");
                    }
                    break;
            }
        }
        for (const auto& [key, v] : c.items())
            if (!allowed.count(key)) schema(p + "." + key, "unknown argument");
    }
    return s;
}

Status from_overall(const Overall& o) {
    switch (o.kind) {
        case Overall::Kind::Pass: return Status::Pass;
        case Overall::Kind::HypothesisFailed:
        case Overall::Kind::ConclusionFailed: return Status::Fail;
        case Overall::Kind::Inconclusive: return Status::Inconclusive;
    }
    return Status::Error;
}

Json components_json(const std::vector<ComponentIndex>& cs) {
    Json a = Json::array();
    for (const ComponentIndex& ci : cs) {
        Json e{{"cells", ci.component.members.size()}, {"loop_like", ci.component.loop_like}};
        if (ci.subregion) e["subregion"] = to_json(*ci.subregion);
        if (ci.index) e["index"] = to_json(*ci.index);
        if (!ci.failure.empty()) e["failure"] = ci.failure;
        a.push_back(e);
    }
    return a;
}

VerifyOptions verify_options(const Ctx& x) {
    VerifyOptions o;
    o.k = x.integer("k", x.s.k);
    o.resolution = x.s.resolution;
    o.tol = x.s.tol;
    o.cert = x.s.cert;
    o.zeros = x.points("zeros");
    return o;
}

void remember_plot(std::optional<PlotContext>& plot, const PlanarField& f, const Region& u, const std::string& title,
                   std::optional<ZeroEnclosure> enc, std::vector<ComponentIndex> comps = {}) {
    if (plot) return;
    plot = PlotContext{f, u, std::move(enc), std::move(comps), title};
}

CheckResult run_check(const Scenario& s, std::size_t i, std::optional<PlotContext>& plot) {
    const Json& c = s.checks[i];
    const Ctx x{s, c, "checks[" + std::to_string(i) + "]"};
    CheckResult r{c["op"].get<std::string>(), Status::Pass, "", Json::object()};
    const std::string& op = r.op;
    try {
        if (op == "block_index") {
            const Block b = certify_block(x.field("field"), x.region("region"), s.resolution, s.cert);
            const IndexResult ir = block_index(b, s.cert);
            r.data = to_json(ir);
            r.detail = "index " + std::to_string(ir.index);
            if (c.contains("expect") && c["expect"].get<int>() != ir.index) {
                r.status = Status::Fail;
                r.detail += ", expected " + std::to_string(c["expect"].get<int>());
            }
            remember_plot(plot, x.field("field"), x.region("region"), s.name, b.enclosure);
        } else if (op == "zero_enclosure") {
            const ZeroEnclosure e = zero_enclosure(x.field("field"), x.region("region"), s.resolution, s.cert);
            r.data = {{"cells", e.size()}, {"boxes", to_json(e)}, {"resolution", to_json(e.resolution())}};
            r.detail = std::to_string(e.size()) + " cells";
            remember_plot(plot, x.field("field"), x.region("region"), s.name, e);
        } else if (op == "component_indices") {
            const ZeroEnclosure e = zero_enclosure(x.field("field"), x.region("region"), s.resolution, s.cert);
            auto comps = component_indices(x.field("field"), e, s.cert);
            int total = 0;
            bool all = true;
            for (const auto& ci : comps) {
                if (ci.index)
                    total += ci.index->index;
                else
                    all = false;
            }
            r.data = {{"components", components_json(comps)}};
            if (all) r.data["index_sum"] = total;
            r.status = all ? Status::Pass : Status::Inconclusive;
            r.detail = std::to_string(comps.size()) + " components" + (all ? ", index sum " + std::to_string(total) : "");
            remember_plot(plot, x.field("field"), x.region("region"), s.name, e, std::move(comps));
        } else if (op == "tracks") {
            const TrackingCertificate t = tracks_symbolic(x.field("y"), x.field("x"));
            r.data = to_json(t);
            r.status = t.verdict ? Status::Pass : Status::Fail;
            r.detail = t.verdict ? "tracks" : "does not track";
        } else if (op == "homotopy") {
            const HomotopyVerdict h =
                homotopy_invariance_check(x.field("from"), x.field("to"), x.region("region"), x.integer("steps", 10),
                                          s.cert);
            r.data = {{"indices", h.indices}};
            switch (h.kind) {
                case HomotopyVerdict::Kind::Invariant:
                    r.detail = "Invariant(" + std::to_string(h.index) + ")";
                    r.data["verdict"] = "Invariant";
                    r.data["index"] = h.index;
                    break;
                case HomotopyVerdict::Kind::BoundaryDegenerate:
                    r.status = Status::Inconclusive;
                    r.detail = "BoundaryDegenerate(" + to_string(h.t) + ")";
                    r.data["verdict"] = "BoundaryDegenerate";
                    r.data["t"] = to_json(h.t);
                    break;
                case HomotopyVerdict::Kind::IndexChanged:
                    r.status = Status::Fail;
                    r.detail = "IndexChanged(" + to_string(h.t) + ")";
                    r.data["verdict"] = "IndexChanged";
                    r.data["t"] = to_json(h.t);
                    break;
            }
        } else if (op == "wedge") {
            const WedgeVerdict w = wedge_check(x.field("y"), x.field("y2"), x.region("region"), s.cert);
            static const char* names[] = {"IndicesEqual", "NotDependentOnBoundary", "NotIsolating", "Inconclusive",
                                          "IndicesDiffer"};
            r.data = {{"verdict", names[static_cast<int>(w.kind)]}, {"index", w.index}, {"other_index", w.other_index},
                      {"symbolic", w.symbolic}};
            r.detail = std::string(names[static_cast<int>(w.kind)]) + (w.detail.empty() ? "" : ": " + w.detail);
            r.status = w.kind == WedgeVerdict::Kind::IndicesEqual   ? Status::Pass
                       : w.kind == WedgeVerdict::Kind::IndicesDiffer ? Status::Fail
                                                                     : Status::Inconclusive;
            remember_plot(plot, x.field("y"), x.region("region"), s.name, std::nullopt);
        } else if (op == "double_cover") {
            const DoubleCoverResult d = lift_double_cover(x.field("field"), x.region("region"), s.cert);
            r.data = {{"base", to_json(d.base)}, {"lifted", to_json(d.lifted_index)}, {"doubling_holds", d.doubling_holds}};
            r.status = d.doubling_holds ? Status::Pass : Status::Fail;
            r.detail = std::to_string(d.base.index) + " -> " + std::to_string(d.lifted_index.index);
            remember_plot(plot, x.field("field"), x.region("region"), s.name, std::nullopt);
        } else if (op == "perturbation") {
            const Block b = certify_block(x.field("field"), x.region("region"), s.resolution, s.cert);
            const int base = block_index(b, s.cert).index;
            const Rational delta = perturbation_bound(b);
            const auto seed = s.seeds.count("perturbation") ? s.seeds.at("perturbation") : 0;
            std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
            const int trials = x.integer("trials", 100);
            int kept = 0;
            for (int t = 0; t < trials; ++t) {
                const PlanarField pert = bounded_perturbation(rng, x.region("region"), delta / 2, x.integer("degree", 2));
                if (region_index(x.field("field") + pert, x.region("region"), s.cert).index == base) ++kept;
            }
            r.data = {{"delta", to_json(delta)}, {"index", base}, {"trials", trials}, {"preserved", kept}};
            r.status = kept == trials ? Status::Pass : Status::Fail;
            r.detail = std::to_string(kept) + "/" + std::to_string(trials) + " perturbations keep index " +
                       std::to_string(base);
            remember_plot(plot, x.field("field"), x.region("region"), s.name, b.enclosure);
        } else if (op == "lie_algebra") {
            const LieAlgebraPresentation g = structure_constants(x.algebra("algebra"));
            r.data["dim"] = g.dim();
            r.data["closed"] = g.closed;
            if (!g.closed) {
                r.status = Status::Fail;
                r.detail = "not closed under brackets";
                r.data["witness"] = {g.witness->first, g.witness->second};
            } else {
                Json sc = Json::array();
                for (const auto& row : g.c) {
                    Json a = Json::array();
                    for (const RVector& v : row) {
                        Json b = Json::array();
                        for (const Rational& q : v) b.push_back(to_json(q));
                        a.push_back(b);
                    }
                    sc.push_back(a);
                }
                r.data["structure_constants"] = sc;
                const Solvability sv = solvability(g);
                r.data["solvable"] = sv.solvable;
                r.data["derived_dims"] = sv.dims;
                if (sv.solvable) r.data["derived_length"] = sv.depth;
                try {
                    const FlagResult f = supersolvable_flag(g, s.tol);
                    static const char* names[] = {"Flag", "NoRealFlag", "NotSolvable"};
                    r.data["flag"] = names[static_cast<int>(f.kind)];
                    if (f.kind == FlagResult::Kind::Flag) {
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
                        r.data["flag_chain"] = chain;
                    }
                    r.detail = std::string(sv.solvable ? "Solvable" : "NotSolvable") + ", " + names[static_cast<int>(f.kind)];
                } catch (const Error& e) {
                    r.status = Status::Inconclusive;
                    r.data["flag"] = errc_name(e.code());
                    r.detail = e.what();
                }
            }
        } else {
            const VerifyOptions o = verify_options(x);
            TheoremReport t;
            if (op == "verify_main")
                t = verify_main(x.field("x"), x.field("y"), x.region("region"), o);
            else if (op == "verify_mainbis")
                t = verify_mainbis(x.field("x"), x.field("y"), x.region("region"), o);
            else
                t = verify_liealg(x.algebra("algebra"), x.field("x"), x.region("region"), o);
            r.data = to_json(t);
            r.status = from_overall(t.overall);
            r.detail = std::string(theorem_name(t.theorem)) + " " + r.data["overall"]["kind"].get<std::string>() +
                       (t.overall.name.empty() ? "" : "(" + t.overall.name + ")");
            if (t.contradiction) r.detail += " [hypotheses all passed]";
            remember_plot(plot, x.field("x"), x.region("region"), s.name, t.k_enclosure, t.components);
        }
    } catch (const Error& e) {
        r.status = Status::Error;
        r.detail = std::string(errc_name(e.code())) + ": " + e.what();
        r.data = {{"error", errc_name(e.code())}};
    }
    return r;
}

}  // namespace

ScenarioRun run_scenario_json(const Json& doc, const RunOptions& opts) {
    const Scenario s = parse(doc, opts);
    ScenarioRun out;
    out.report.scenario = s.name;
    for (std::size_t i = 0; i < s.checks.size(); ++i) {
        out.report.checks.push_back(run_check(s, i, out.plot));
        out.report.status = worst(out.report.status, out.report.checks.back().status);
    }
    if (out.plot && !out.plot->enclosure) {
        try {
            out.plot->enclosure = zero_enclosure(out.plot->field, out.plot->region, s.resolution, s.cert);
        } catch (const Error&) {
        }
    }
    return out;
}

ScenarioRun run_scenario(const std::string& path, const RunOptions& opts) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::IOError, "cannot open " + path);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::SchemaError, path + ": " + e.what());
    }
    return run_scenario_json(doc, opts);
}

// ---- plots ----------------------------------------------------------------------------------------

namespace {

std::string escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '<')
            out += "&lt;";
        else if (ch == '>')
            out += "&gt;";
        else if (ch == '&')
            out += "&amp;";
        else
            out += ch;
    }
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string render_plot(const PlotContext& ctx) {
    const bool torus = ctx.region.is_torus();
    const RBox bb = torus ? RBox{0, 0, 1, 1} : ctx.region.bounding_box();
    const double x0 = to_double(bb.x0), y0 = to_double(bb.y0), x1 = to_double(bb.x1), y1 = to_double(bb.y1);
    const double span = std::max(x1 - x0, y1 - y0);
    const double pad = 0.08 * span;
    const double size = 640.0;
    const double scale = size / (span + 2 * pad);
    auto px = [&](double x) { return (x - x0 + pad) * scale; };
    auto py = [&](double y) { return (y1 + pad - y) * scale; };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" viewBox=\"0 0 640 640\">\n";
    o << "<defs><marker id=\"head\" viewBox=\"0 0 6 6\" refX=\"5\" refY=\"3\" markerWidth=\"5\" markerHeight=\"5\" "
         "orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\" fill=\"#444\"/></marker></defs>\n";
    o << "<rect width=\"640\" height=\"640\" fill=\"white\"/>\n";
    if (!ctx.title.empty()) o << "<text x=\"8\" y=\"18\" font-family=\"sans-serif\" font-size=\"14\">" << escape(ctx.title) << "</text>\n";

    // region
    const std::string stroke = " fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\"";
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Disk>) {
                o << "<circle class=\"region\" cx=\"" << fmt(px(to_double(s.center.x))) << "\" cy=\""
                  << fmt(py(to_double(s.center.y))) << "\" r=\"" << fmt(to_double(s.r) * scale) << "\"" << stroke
                  << "/>\n";
            } else if constexpr (std::is_same_v<T, Annulus>) {
                for (const Rational& r : {s.r_in, s.r_out})
                    o << "<circle class=\"region\" cx=\"" << fmt(px(to_double(s.center.x))) << "\" cy=\""
                      << fmt(py(to_double(s.center.y))) << "\" r=\"" << fmt(to_double(r) * scale) << "\"" << stroke
                      << "/>\n";
            } else if constexpr (std::is_same_v<T, Rect>) {
                o << "<rect class=\"region\" x=\"" << fmt(px(to_double(s.box.x0))) << "\" y=\""
                  << fmt(py(to_double(s.box.y1))) << "\" width=\"" << fmt(to_double(s.box.x1 - s.box.x0) * scale)
                  << "\" height=\"" << fmt(to_double(s.box.y1 - s.box.y0) * scale) << "\"" << stroke << "/>\n";
            } else {
                o << "<rect class=\"region\" x=\"" << fmt(px(0)) << "\" y=\"" << fmt(py(1)) << "\" width=\""
                  << fmt(scale) << "\" height=\"" << fmt(scale) << "\"" << stroke << " stroke-dasharray=\"6,4\"/>\n";
            }
        },
        ctx.region.shape());

    // enclosure
    if (ctx.enclosure)
        for (const RBox& b : ctx.enclosure->boxes())
            o << "<rect class=\"cell\" x=\"" << fmt(px(to_double(b.x0))) << "\" y=\"" << fmt(py(to_double(b.y1)))
              << "\" width=\"" << fmt(to_double(b.x1 - b.x0) * scale) << "\" height=\""
              << fmt(to_double(b.y1 - b.y0) * scale) << "\" fill=\"#d62728\" fill-opacity=\"0.55\"/>\n";

    // arrows
    const int n = 20;
    const double step = span / n;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            const Vec2 p{x0 + (x1 - x0) * i / n, y0 + (y1 - y0) * j / n};
            if (!torus && !ctx.region.contains(p)) continue;
            const Vec2 v = ctx.field.eval(p);
            const double len = norm(v);
            if (!(len > 1e-12)) continue;
            const Vec2 d = (0.38 * step / len) * v;
            o << "<line class=\"arrow\" x1=\"" << fmt(px(p.x - d.x)) << "\" y1=\"" << fmt(py(p.y - d.y)) << "\" x2=\""
              << fmt(px(p.x + d.x)) << "\" y2=\"" << fmt(py(p.y + d.y))
              << "\" stroke=\"#444\" stroke-width=\"1\" marker-end=\"url(#head)\"/>\n";
        }

    // component labels
    for (const ComponentIndex& ci : ctx.components) {
        const RPoint c = ci.component.bbox.center();
        double cx = to_double(c.x), cy = to_double(c.y);
        if (torus) {
            cx -= std::floor(cx);
            cy -= std::floor(cy);
        }
        std::string label = "?";
        if (ci.index) label = (ci.index->index > 0 ? "+" : "") + std::to_string(ci.index->index);
        o << "<text class=\"label\" x=\"" << fmt(px(cx) + 6) << "\" y=\"" << fmt(py(cy) - 6)
          << "\" font-family=\"sans-serif\" font-size=\"16\" fill=\"#2ca02c\">" << label << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

void emit_plot(const PlotContext& ctx, const std::string& out_path) {
    const std::string svg = render_plot(ctx);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error(Errc::IOError, "cannot write " + out_path);
    out << svg;
    if (!out) throw Error(Errc::IOError, "write failed for " + out_path);
}

PlanarField bounded_perturbation(std::mt19937& rng, const Region& u, const Rational& bound, int deg) {
    std::uniform_int_distribution<int> coef(-5, 5);
    std::uniform_real_distribution<double> shrink(0.05, 0.98);
    Poly2 p, q;
    for (int i = 0; i <= deg; ++i)
        for (int j = 0; i + j <= deg; ++j) {
            p += Poly2::monomial(i, j, coef(rng));
            q += Poly2::monomial(i, j, coef(rng));
        }
    if (p.is_zero() && q.is_zero()) p = Poly2::constant(1);
    const IBox box = u.bounding_box().enclose();
    const double mp = CompiledPoly2(p)(box).mag(), mq = CompiledPoly2(q)(box).mag();
    const double sup = std::hypot(mp, mq) * (1 + 1e-12);
    Rational s = rationalize(to_double(bound) / sup * shrink(rng), 1 << 20);
    const Rational sup_r = from_double(sup);
    while (s > 0 && s * sup_r >= bound) s /= 2;
    return PlanarField::plane(s * p, s * q);
}

}  // namespace vfb
