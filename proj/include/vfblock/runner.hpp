#pragma once

#include <json.hpp>

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "vfblock/certify.hpp"
#include "vfblock/index.hpp"
#include "vfblock/verifier.hpp"

namespace vfb {

enum class Status { Pass, Inconclusive, Fail, Error };
const char* status_name(Status s) noexcept;
Status status_from_name(const std::string& s);
/// 0 pass, 1 fail, 2 error, 3 inconclusive.
int exit_code(Status s) noexcept;
/// Error > Fail > Inconclusive > Pass.
Status worst(Status a, Status b) noexcept;

struct CheckResult {
    std::string op;
    Status status = Status::Pass;
    std::string detail;
    nlohmann::json data = nlohmann::json::object();

    friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

struct Report {
    std::string scenario;
    Status status = Status::Pass;
    std::vector<CheckResult> checks;

    int exit_code() const { return vfb::exit_code(status); }
    friend bool operator==(const Report&, const Report&) = default;
};

nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TheoremReport& r);

struct RunOptions {
    std::optional<double> tol;
    std::optional<int> max_depth;
};

/// What a plot of the scenario shows: the first check that names a field and a region.
struct PlotContext {
    PlanarField field;
    Region region = Region::torus();
    std::optional<ZeroEnclosure> enclosure;
    std::vector<ComponentIndex> components;
    std::string title;
};

struct ScenarioRun {
    Report report;
    std::optional<PlotContext> plot;
};

/// Parses and executes a scenario document. SchemaError for malformed input;
/// errors raised by individual checks are embedded in the report.
ScenarioRun run_scenario_json(const nlohmann::json& doc, const RunOptions& opts = {});
ScenarioRun run_scenario(const std::string& path, const RunOptions& opts = {});

/// Deterministic SVG: region boundary, normalized field arrows, enclosure boxes
/// and component index labels. IOError when the file cannot be written.
std::string render_plot(const PlotContext& ctx);
void emit_plot(const PlotContext& ctx, const std::string& out_path);

/// Random polynomial field of degree <= deg whose sup-norm over the bounding
/// box of U is certified below `bound`.
PlanarField bounded_perturbation(std::mt19937& rng, const Region& u, const Rational& bound, int deg);

}  // namespace vfb
