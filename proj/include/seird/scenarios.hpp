#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "seird/fields.hpp"
#include "seird/grid.hpp"
#include "seird/kinetic.hpp"
#include "seird/macroscale.hpp"
#include "seird/model.hpp"

namespace seird {

enum class InitialCondition { TwinGaussian, WideGaussian, Uniform };
enum class StepwiseVariant { One, Two };

/// A complete experiment description. The setup builders recalibrate the
/// relaxation rates against `velocity_bound`.
struct Scenario {
    std::string name;
    ModelParams params;
    TransmissionRate rate = TransmissionRate::constant(0.0);
    double half_length = 2.0;
    int n_cells = 200;
    double velocity_bound = 1.0;
    int n_velocities = 164;
    double dt = 1e-3;
    InitialCondition initial = InitialCondition::TwinGaussian;
    Compartments uniform_state{}; // used by InitialCondition::Uniform
    BoundaryKind bc = BoundaryKind::Periodic;
    std::vector<double> eps_list;
    double probe_x = 0.0;
    double t_final = 10.0;

    void validate() const;
    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// mu = 1/83, xi = 1/4, gamma = 1/8, alpha = 0.06, A = mu N; d = (0.05, 0.025, 0.001, 0)
/// or all zero. Relaxation rates calibrated for V = 1.
ModelParams paper_params(bool with_diffusion = true);

MacroState initial_condition_i(const SpatialGrid& grid);
MacroState initial_condition_ii(const SpatialGrid& grid);
MacroState uniform_initial_condition(const SpatialGrid& grid, const Compartments& c);

TransmissionRate stepwise_beta(StepwiseVariant variant);

struct BetaSuiteEntry {
    TransmissionRate rate;
    double r0_label; // reproduction number printed next to the rate; metadata only
};
std::vector<BetaSuiteEntry> constant_beta_suite();

/// eps = 2 * 10^-k for k in {0, 1, 2, 3, 4, 6}
std::vector<double> paper_eps_list();

std::vector<Scenario> scenario_registry();
Scenario find_scenario(std::string_view name);

SpatialGrid scenario_grid(const Scenario& s);
VelocityGrid scenario_velocity_grid(const Scenario& s);
MacroState initial_state(const Scenario& s, const SpatialGrid& grid);
KineticSetup kinetic_setup(const Scenario& s);
MacroSetup macro_setup(const Scenario& s);

Trajectory run_kinetic(const Scenario& s, double eps, double t_final,
                       const std::vector<double>& output_times,
                       MicroInit mode = MicroInit::LocalEquilibrium,
                       const KineticObserver& observer = {});
Trajectory run_macro(const Scenario& s, double t_final, const std::vector<double>& output_times,
                     const MacroObserver& observer = {});

std::string_view to_string(InitialCondition ic);
std::string_view to_string(BoundaryKind bc);
std::string_view to_string(Recruitment r);
InitialCondition parse_initial_condition(std::string_view text);
BoundaryKind parse_boundary(std::string_view text);
Recruitment parse_recruitment(std::string_view text);

/// JSON text of a scenario; doubles are written in shortest round-trip form.
std::string serialize_scenario(const Scenario& s);
Scenario parse_scenario(std::string_view text);

} // namespace seird
