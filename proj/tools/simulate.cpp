// Command-line driver: builds a run configuration from a JSON file and/or flags,
// runs the kinetic and/or reaction-diffusion solvers and writes CSV files.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "seird/config.hpp"
#include "seird/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw seird::ConfigError("config", "cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"SEIRD kinetic / reaction-diffusion simulator"};

    std::string config_path, scenario, solver, sweep, out, bc, ic, schedule, recruitment, micro_init;
    std::optional<double> eps, t_final, probe_x, beta, interval;
    std::vector<double> output_times;

    app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--scenario", scenario, "registered scenario name (paper-i, paper-ii, ...)");
    app.add_option("--solver", solver, "kinetic | macro | both")->check(CLI::IsMember({"kinetic", "macro", "both"}));
    app.add_option("--eps", eps, "kinetic scale epsilon");
    app.add_option("--sweep", sweep, "eps | beta")->check(CLI::IsMember({"none", "eps", "beta"}));
    app.add_option("--t-final", t_final, "final time");
    app.add_option("--output-times", output_times, "snapshot times")->delimiter(',');
    app.add_option("--out", out, "output directory");
    app.add_option("--bc", bc, "periodic | inflow | neumann")->check(CLI::IsMember({"periodic", "inflow", "neumann"}));
    app.add_option("--ic", ic, "i | ii | uniform")->check(CLI::IsMember({"i", "ii", "uniform"}));
    app.add_option("--beta-schedule", schedule, "const | step1 | step2")->check(CLI::IsMember({"const", "step1", "step2"}));
    app.add_option("--beta", beta, "constant transmission rate");
    app.add_option("--probe-x", probe_x, "probe location for time series");
    app.add_option("--series-interval", interval, "sampling interval of probe time series");
    app.add_option("--recruitment", recruitment, "proportional | constant")
        ->check(CLI::IsMember({"proportional", "constant"}));
    app.add_option("--micro-init", micro_init, "equilibrium | zero")->check(CLI::IsMember({"equilibrium", "zero"}));

    CLI11_PARSE(app, argc, argv);

    try {
        nlohmann::json doc = nlohmann::json::object();
        if (!config_path.empty()) {
            const std::string text = read_file(config_path);
            try {
                doc = nlohmann::json::parse(text);
            } catch (const nlohmann::json::parse_error&) {
                seird::parse_config(text); // rethrows with the line number
                throw;
            }
        }
        auto set = [&](const char* key, const auto& value) { doc[key] = value; };
        if (!scenario.empty()) set("scenario", scenario);
        if (!solver.empty()) set("solver", solver);
        if (eps) set("eps", *eps);
        if (!sweep.empty()) set("sweep", sweep);
        if (t_final) set("t_final", *t_final);
        if (!output_times.empty()) set("output_times", output_times);
        if (!out.empty()) set("out", out);
        if (!bc.empty()) set("bc", bc);
        if (!ic.empty()) set("ic", ic);
        if (!schedule.empty()) set("beta_schedule", schedule);
        if (beta) set("beta", *beta);
        if (probe_x) set("probe_x", *probe_x);
        if (interval) set("series_interval", *interval);
        if (!recruitment.empty()) set("recruitment", recruitment);
        if (!micro_init.empty()) set("micro_init", micro_init);
        if (t_final && output_times.empty() && doc.contains("output_times")) {
            // Times from the file may not fit a shorter horizon given on the command line.
            std::vector<double> kept;
            for (double t : doc["output_times"].get<std::vector<double>>()) {
                if (t <= *t_final) kept.push_back(t);
            }
            doc["output_times"] = kept;
        }
        if (const char* env = std::getenv(seird::kOutDirEnv); env != nullptr && *env != '\0') doc["out"] = env;

        const seird::RunConfig cfg = seird::parse_config(doc.dump());
        seird::run(cfg, std::cout);
    } catch (const seird::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
