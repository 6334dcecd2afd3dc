#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seird/errors.hpp"
#include "seird/kinetic.hpp"
#include "seird/scenarios.hpp"

namespace seird {

enum class SolverChoice { Kinetic, Macro, Both };
enum class SweepKind { None, Eps, Beta };
enum class BetaSchedule { Scenario, Constant, Step1, Step2 };

/**
 * A validated run request.
 *
 * `scenario` is fully resolved: registry lookup or inline definition, with the
 * bc / recruitment / initial-condition / beta overrides already applied.
 */
struct RunConfig {
    Scenario scenario;
    SolverChoice solver = SolverChoice::Both;
    SweepKind sweep = SweepKind::None;
    MicroInit micro_init = MicroInit::LocalEquilibrium;
    double eps = 2e-6;
    double t_final = 0.0;
    std::vector<double> output_times;
    std::vector<double> probe_x;
    std::vector<double> eps_list;
    double series_interval = 0.1;
    std::string out_dir = "out";
};

/// Environment variable that, when set, replaces the configured output directory.
inline constexpr const char* kOutDirEnv = "SEIRD_OUT_DIR";

/**
 * Parses a JSON run configuration. Accepted top-level keys:
 * scenario (registry name or inline object), solver, eps, eps_list, sweep,
 * t_final, output_times, probe_x, series_interval, out, bc, recruitment, ic,
 * beta_schedule, beta, micro_init. Unknown keys are rejected.
 */
RunConfig parse_config(std::string_view text);

std::string_view to_string(SolverChoice s);
std::string_view to_string(SweepKind s);

} // namespace seird
