#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "vfblock/errors.hpp"
#include "vfblock/runner.hpp"

namespace {

std::string suffixed(const std::string& path, const std::string& tag) {
    const std::filesystem::path p(path);
    return (p.parent_path() / (p.stem().string() + "-" + tag + p.extension().string())).string();
}

vfb::ScenarioRun load_error(const std::string& path, const vfb::Error& e) {
    vfb::ScenarioRun run;
    run.report.scenario = std::filesystem::path(path).stem().string();
    run.report.status = vfb::Status::Error;
    run.report.checks.push_back({"load", vfb::Status::Error, std::string(vfb::errc_name(e.code())) + ": " + e.what(),
                                 {{"error", vfb::errc_name(e.code())}}});
    return run;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified checks for blocks of zeros of planar vector fields"};
    app.require_subcommand(1);
    auto* verify = app.add_subcommand("verify", "Run scenario files");
    std::vector<std::string> paths;
    std::string report_path, plot_path;
    vfb::RunOptions opts;
    double tol = 0;
    int max_depth = 0;
    unsigned jobs = 1;
    verify->add_option("scenarios", paths, "Scenario JSON files")->required()->check(CLI::ExistingFile);
    verify->add_option("--report", report_path, "Write the JSON report here");
    verify->add_option("--plot", plot_path, "Write an SVG figure here");
    auto* tol_opt = verify->add_option("--tol", tol, "Override the numeric tolerance")->check(CLI::PositiveNumber);
    auto* depth_opt =
        verify->add_option("--max-depth", max_depth, "Override the subdivision depth")->check(CLI::Range(1, 60));
    verify->add_option("--jobs", jobs, "Scenarios run in parallel")->check(CLI::Range(1u, 256u));
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    if (*tol_opt) opts.tol = tol;
    if (*depth_opt) opts.max_depth = max_depth;

    std::vector<vfb::ScenarioRun> runs(paths.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < paths.size(); i = next++) {
            try {
                runs[i] = vfb::run_scenario(paths[i], opts);
            } catch (const vfb::Error& e) {
                runs[i] = load_error(paths[i], e);
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(jobs, paths.size()); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    vfb::Status overall = vfb::Status::Pass;
    for (const auto& run : runs) {
        const auto& r = run.report;
        overall = vfb::worst(overall, r.status);
        std::cout << r.scenario << ": " << vfb::status_name(r.status) << "\n";
        for (const auto& c : r.checks)
            std::cout << "  " << c.op << ": " << vfb::status_name(c.status) << (c.detail.empty() ? "" : " - ")
                      << c.detail << "\n";
    }

    try {
        if (!report_path.empty()) {
            nlohmann::json out;
            if (runs.size() == 1) {
                out = vfb::to_json(runs[0].report);
            } else {
                out = nlohmann::json::array();
                for (const auto& run : runs) out.push_back(vfb::to_json(run.report));
            }
            std::ofstream f(report_path, std::ios::binary);
            if (!f) throw vfb::Error(vfb::Errc::IOError, "cannot write " + report_path);
            f << out.dump(2) << "\n";
        }
        if (!plot_path.empty()) {
            for (const auto& run : runs) {
                if (!run.plot) continue;
                vfb::emit_plot(*run.plot, runs.size() == 1 ? plot_path : suffixed(plot_path, run.report.scenario));
            }
        }
    } catch (const vfb::Error& e) {
        std::cerr << "vfblock: " << e.what() << "\n";
        return 2;
    }
    return vfb::exit_code(overall);
}
