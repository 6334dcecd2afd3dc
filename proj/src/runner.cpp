#include "seird/runner.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>

#include "seird/analysis.hpp"
#include "seird/csv.hpp"

namespace seird {

namespace {

namespace fs = std::filesystem;

struct PopulationAudit {
    double initial = 0.0;
    double worst = 0.0;

    void observe(std::size_t step, double total) {
        if (step == 0) initial = total;
        else if (initial != 0.0) worst = std::max(worst, std::abs(total - initial) / std::abs(initial));
    }
};

struct ProbeRecorder {
    std::vector<ProbeSeries> series;
    std::size_t stride = 1;
    std::size_t total = 0;

    ProbeRecorder(const RunConfig& cfg, const SpatialGrid& grid) {
        stride = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(cfg.series_interval / cfg.scenario.dt)));
        total = step_count(cfg.t_final, cfg.scenario.dt);
        for (double x : cfg.probe_x) {
            ProbeSeries s;
            s.rate = cfg.scenario.rate;
            s.probe_node = grid.nearest_node(x);
            series.push_back(std::move(s));
        }
    }

    template <class Field>
    void observe(std::size_t step, double t, const TransmissionRate& rate, Field&& field) {
        if (step % stride != 0 && step != total) return;
        for (auto& s : series) {
            s.t.push_back(t);
            s.beta.push_back(rate.at(t));
            for (std::size_t c = 0; c < kCompartmentNames.size(); ++c) s.values[c].push_back(field(c)[s.probe_node]);
            s.infected_total.push_back(field_sum(field(2)));
        }
    }
};

fs::path emit(RunSummary& summary, const fs::path& path) {
    summary.files.push_back(path);
    return path;
}

} // namespace

RunSummary run(const RunConfig& cfg, std::ostream& log) {
    const auto start = std::chrono::steady_clock::now();
    RunSummary summary;
    const Scenario& s = cfg.scenario;
    const fs::path out = cfg.out_dir;
    fs::create_directories(out);

    const ModelParams calibrated = kinetic_setup(s).params;
    for (double beta : s.rate.values()) summary.r0_by_piece.push_back(r0(calibrated, beta));

    {
        std::ofstream scenario_file(emit(summary, out / "scenario.json"), std::ios::binary | std::ios::trunc);
        scenario_file << serialize_scenario(s);
        if (!scenario_file) throw std::runtime_error("failed writing scenario.json");
    }

    const SpatialGrid grid = scenario_grid(s);
    switch (cfg.sweep) {
    case SweepKind::Eps: {
        const auto reports = eps_sweep(s, cfg.eps_list, cfg.t_final, cfg.output_times, cfg.micro_init);
        write_comparison_csv(emit(summary, out / "eps_sweep.csv"), reports);
        break;
    }
    case SweepKind::Beta: {
        std::vector<TransmissionRate> rates;
        for (const auto& entry : constant_beta_suite()) rates.push_back(entry.rate);
        const SolverKind solver = cfg.solver == SolverChoice::Macro ? SolverKind::Macro : SolverKind::Kinetic;
        const auto series = beta_sweep(s, rates, cfg.t_final, cfg.probe_x.front(), cfg.series_interval, solver, cfg.eps);
        for (std::size_t k = 0; k < series.size(); ++k) {
            write_series_csv(emit(summary, out / ("beta_sweep_" + std::to_string(k + 1) + ".csv")), series[k]);
        }
        summary.r0_by_piece.clear();
        for (const auto& rate : rates) summary.r0_by_piece.push_back(r0(calibrated, rate.values().front()));
        break;
    }
    case SweepKind::None: {
        Trajectory kinetic, macro;
        if (cfg.solver != SolverChoice::Macro) {
            PopulationAudit audit;
            ProbeRecorder probes(cfg, grid);
            kinetic = run_kinetic(s, cfg.eps, cfg.t_final, cfg.output_times, cfg.micro_init,
                                  [&](const KineticState& st, std::size_t k) {
                                      const MacroState m = st.macro();
                                      audit.observe(k, total_population(m, grid));
                                      probes.observe(k, st.t, s.rate, [&](std::size_t c) -> const std::vector<double>& {
                                          return m.field(c);
                                      });
                                  });
            for (const auto& w : kinetic.warnings) log << "warning: " << w << '\n';
            summary.conservation_drift = std::max(summary.conservation_drift, audit.worst);
            write_snapshots_csv(emit(summary, out / "kinetic_snapshots.csv"), kinetic.snapshots, grid);
            for (std::size_t p = 0; p < probes.series.size(); ++p) {
                write_series_csv(emit(summary, out / ("kinetic_probe_" + std::to_string(p + 1) + ".csv")),
                                 probes.series[p]);
            }
        }
        if (cfg.solver != SolverChoice::Kinetic) {
            PopulationAudit audit;
            ProbeRecorder probes(cfg, grid);
            macro = run_macro(s, cfg.t_final, cfg.output_times, [&](const MacroState& st, std::size_t k) {
                audit.observe(k, total_population(st, grid));
                probes.observe(k, st.t, s.rate, [&](std::size_t c) -> const std::vector<double>& { return st.field(c); });
            });
            summary.conservation_drift = std::max(summary.conservation_drift, audit.worst);
            write_snapshots_csv(emit(summary, out / "macro_snapshots.csv"), macro.snapshots, grid);
            for (std::size_t p = 0; p < probes.series.size(); ++p) {
                write_series_csv(emit(summary, out / ("macro_probe_" + std::to_string(p + 1) + ".csv")),
                                 probes.series[p]);
            }
        }
        if (cfg.solver == SolverChoice::Both) {
            std::vector<ComparisonReport> reports;
            for (std::size_t n = 0; n < macro.snapshots.size(); ++n) {
                reports.push_back(compare_states(kinetic.snapshots[n], macro.snapshots[n], cfg.eps, grid));
            }
            write_comparison_csv(emit(summary, out / "comparison.csv"), reports);
        }
        break;
    }
    }

    summary.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    log << "scenario " << s.name << " (solver " << to_string(cfg.solver) << ", sweep " << to_string(cfg.sweep)
        << ", t_final " << cfg.t_final << ")\n";
    for (std::size_t m = 0; m < summary.r0_by_piece.size(); ++m) {
        log << "  R0[" << m << "] = " << summary.r0_by_piece[m] << '\n';
    }
    if (cfg.sweep == SweepKind::None) log << "  conservation drift = " << summary.conservation_drift << '\n';
    log << "  wall time = " << summary.wall_seconds << " s\n";
    for (const auto& f : summary.files) log << "  wrote " << f.string() << '\n';
    return summary;
}

} // namespace seird
