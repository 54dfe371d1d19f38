#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "conekit/runner.hpp"

using namespace conekit;

int main(int argc, char** argv) {
    CLI::App app{"conekit: edge-cone reference metrics, curvature expansions and the "
                 "regularized Monge-Ampere solver"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".";
    unsigned seed = 0;
    int workers = 1;
    bool emit_csv = false, emit_svg = false;
    std::vector<std::string> merge_paths;

    const std::vector<std::string> commands = {"metric",   "symbolic-verify", "curvature-scan",
                                               "rate-fit", "holder",          "solve",
                                               "sweep"};
    for (const auto& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "configuration file")->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "fix the seed (makes reports byte-stable)");
        sub->add_option("--workers", workers, "worker threads for sweeps");
        sub->add_flag("--emit-csv", emit_csv, "write CSV data");
        sub->add_flag("--emit-svg", emit_svg, "write SVG line plots");
    }
    CLI::App* rep = app.add_subcommand("report", "merge run reports");
    rep->add_option("paths", merge_paths, "report files to merge")->required();
    rep->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    RunConfig rc;
    rc.command = app.get_subcommands().front()->get_name();
    rc.out_dir = out_dir;
    rc.workers = workers;
    rc.emit_csv = emit_csv;
    rc.emit_svg = emit_svg;
    rc.merge_paths = merge_paths;
    if (seed != 0) {
        rc.seed = seed;
        rc.seeded = true;
    }
    if (rc.command != "report") {
        try {
            rc.cfg = Config::parse_file(config_path);
        } catch (const ConfigError& e) {
            std::fprintf(stderr, "config error: %s\n", e.what());
            return 64;
        }
    }
    try {
        RunOutcome out = run_command(rc);
        for (const auto& a : out.artifacts) std::printf("wrote %s\n", a.c_str());
        if (out.exit_code == 2) std::fprintf(stderr, "computed checks FAILED\n");
        return out.exit_code;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 64;
    } catch (const std::exception& e) {
        Json diag;
        diag["error"] = e.what();
        diag["command"] = rc.command;
        try {
            write_report(diag, (rc.out_dir + "/error.json"));
        } catch (...) {
        }
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
