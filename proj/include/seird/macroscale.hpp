#pragma once

#include <stdexcept>
#include <vector>

#include "seird/fields.hpp"
#include "seird/grid.hpp"
#include "seird/kinetic.hpp"
#include "seird/model.hpp"

namespace seird {

/// Boundary handling of the reaction-diffusion solver: Periodic or Reflecting (zero flux).
class StepSizeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Three-point second difference. Periodic identifies x_0 with x_{N_x};
/// Reflecting mirrors u_{-1} = u_1 and u_{N_x+1} = u_{N_x-1}.
std::vector<double> laplacian(const std::vector<double>& u, const SpatialGrid& grid, BoundaryKind bc);

/// dx^2 / (2 max_i d_i), or +inf when nothing diffuses.
double cfl_max_dt(const SpatialGrid& grid, const ModelParams& p);

/// Forward Euler step of the SEIRD reaction-diffusion system.
MacroState macro_rd_step(const MacroState& state, double beta, const SpatialGrid& grid,
                         const ModelParams& p, double dt, BoundaryKind bc);

struct MacroSetup {
    SpatialGrid grid;
    ModelParams params;
    TransmissionRate rate = TransmissionRate::constant(0.0);
    BoundaryKind bc = BoundaryKind::Periodic;
    double dt = 1e-3;
};

using MacroObserver = std::function<void(const MacroState&, std::size_t step)>;

Trajectory run_macro(const MacroSetup& setup, const MacroState& initial, double t_final,
                     const std::vector<double>& output_times, const MacroObserver& observer = {});

} // namespace seird
