#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "seird/fields.hpp"
#include "seird/grid.hpp"
#include "seird/model.hpp"

namespace seird {

enum class BoundaryKind { Periodic, Inflow, Reflecting };

struct BoundaryCondition {
    BoundaryKind kind = BoundaryKind::Periodic;
    /// Incoming distributions f_{i,l}(v) (used for v > 0) and f_{i,r}(v) (used for v < 0).
    std::array<std::vector<double>, kSpecies> inflow_left;
    std::array<std::vector<double>, kSpecies> inflow_right;

    static BoundaryCondition periodic() { return {}; }
    static BoundaryCondition reflecting() { return {BoundaryKind::Reflecting, {}, {}}; }
    static BoundaryCondition inflow(std::array<std::vector<double>, kSpecies> left,
                                    std::array<std::vector<double>, kSpecies> right);
    /// Inflow of equilibrium particles M(v) u at each end.
    static BoundaryCondition equilibrium_inflow(const Compartments& left, const Compartments& right,
                                                const VelocityGrid& vgrid);

    void validate(const VelocityGrid& vgrid) const;
};

struct KineticState {
    std::array<std::vector<double>, kSpecies> u; // S, E, I, R on nodes
    std::vector<double> dead;                     // D on nodes
    std::array<VelocityField, kSpecies> g;        // micro perturbations on faces
    double eps = 1.0;
    double t = 0.0;

    MacroState macro() const;
};

/// Everything a kinetic step needs besides the state itself.
struct KineticSetup {
    SpatialGrid grid;
    VelocityGrid vgrid;
    ModelParams params; // sigmas must be calibrated against vgrid.half_width
    TransmissionRate rate = TransmissionRate::constant(0.0);
    BoundaryCondition bc;
    double dt = 1e-3;
};

enum class MicroInit { LocalEquilibrium, Zero, FromDistribution };

/**
 * Initial micro perturbations.
 *
 * LocalEquilibrium uses the leading-order closure g = -(1/sigma) v M d_x u with
 * d_x u differenced across each face; Zero gives g = 0; FromDistribution takes
 * per-face distributions f_0 and sets g = (f_0 - M <f_0>) / eps. Ghost faces
 * are filled from `bc`. Species with infinite relaxation get g = 0.
 */
std::array<VelocityField, kSpecies>
init_micro(const std::array<std::vector<double>, kSpecies>& u, MicroInit mode,
           const SpatialGrid& grid, const VelocityGrid& vgrid, const ModelParams& p, double eps,
           const BoundaryCondition& bc,
           const std::array<VelocityField, kSpecies>* distribution = nullptr);

KineticState make_kinetic_state(const MacroState& initial, double eps, MicroInit mode,
                                const KineticSetup& setup,
                                const std::array<VelocityField, kSpecies>* distribution = nullptr);

/// <h> M(v)
std::vector<double> project(std::span<const double> h, const VelocityGrid& vgrid);

/// Implicit-relaxation update of the micro perturbations (interior faces, then ghosts
/// for periodic and reflecting boundaries; inflow ghosts wait for the new macro values).
std::array<VelocityField, kSpecies> micro_step(const KineticState& state, double beta,
                                               const KineticSetup& setup);

/// Conservative macro update using the flux of the freshly updated perturbations.
std::array<std::vector<double>, kSpecies>
macro_step(const KineticState& state, const std::array<VelocityField, kSpecies>& g_new,
           double beta, const KineticSetup& setup);

std::vector<double> dead_step(const KineticState& state, double dt, const ModelParams& p);

/// One full step: micro, macro with the new micro, dead compartment, ghost refresh.
void ap_step(KineticState& state, const KineticSetup& setup);

/// max over species and interior faces of |<g>| / max(1, ||g||_inf).
double zero_mean_defect(const KineticState& state, const SpatialGrid& grid,
                        const VelocityGrid& vgrid);

/// Largest dt the explicit parts tolerate: dx^2 / (2 max d + dx max|v|).
double kinetic_dt_bound(const SpatialGrid& grid, const VelocityGrid& vgrid, const ModelParams& p);

class NumericalBlowup : public std::runtime_error {
public:
    NumericalBlowup(std::size_t step, const std::string& what)
        : std::runtime_error(what), step_(step) {}
    std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

struct Trajectory {
    std::vector<MacroState> snapshots;
    std::vector<std::string> warnings;
    std::size_t steps = 0;
};

using KineticObserver = std::function<void(const KineticState&, std::size_t step)>;

/// Step indices for the requested output times (nearest step, deduplicated, sorted).
std::vector<std::size_t> snapshot_steps(const std::vector<double>& output_times, double dt,
                                        std::size_t total_steps);
std::size_t step_count(double t_final, double dt);

Trajectory run_kinetic(const KineticSetup& setup, const MacroState& initial, double eps,
                       double t_final, const std::vector<double>& output_times,
                       MicroInit mode = MicroInit::LocalEquilibrium,
                       const KineticObserver& observer = {});

} // namespace seird
