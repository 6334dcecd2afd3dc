#include "seird/macroscale.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace seird {

std::vector<double> laplacian(const std::vector<double>& u, const SpatialGrid& grid, BoundaryKind bc) {
    const std::size_t n = grid.n_nodes();
    if (u.size() != n) throw std::invalid_argument("laplacian: array does not match the grid");
    if (bc == BoundaryKind::Inflow) throw std::invalid_argument("laplacian: inflow is a kinetic boundary");

    const double inv_dx2 = 1.0 / (grid.dx * grid.dx);
    std::vector<double> out(n);
    for (std::size_t j = 1; j + 1 < n; ++j) out[j] = (u[j + 1] - 2.0 * u[j] + u[j - 1]) * inv_dx2;
    if (bc == BoundaryKind::Periodic) {
        // u_{N_x} duplicates u_0, so the neighbours of x_0 are x_1 and x_{N_x-1}
        out[0] = (u[1] - 2.0 * u[0] + u[n - 2]) * inv_dx2;
        out[n - 1] = out[0];
    } else {
        out[0] = 2.0 * (u[1] - u[0]) * inv_dx2;
        out[n - 1] = 2.0 * (u[n - 2] - u[n - 1]) * inv_dx2;
    }
    return out;
}

double cfl_max_dt(const SpatialGrid& grid, const ModelParams& p) {
    const double d = p.max_diffusivity();
    return d > 0.0 ? grid.dx * grid.dx / (2.0 * d) : std::numeric_limits<double>::infinity();
}

MacroState macro_rd_step(const MacroState& state, double beta, const SpatialGrid& grid,
                         const ModelParams& p, double dt, BoundaryKind bc) {
    if (!(dt > 0.0)) throw std::invalid_argument("macro_rd_step: dt must be positive");
    if (const double limit = cfl_max_dt(grid, p); dt > limit) {
        std::ostringstream msg;
        msg << "macro_rd_step: dt = " << dt << " exceeds the explicit diffusion limit " << limit;
        throw StepSizeError(msg.str());
    }
    const std::size_t n = grid.n_nodes();
    if (state.size() != n) throw std::invalid_argument("macro_rd_step: state does not match the grid");

    MacroState next(n, state.t + dt);
    std::array<std::vector<double>, kSpecies> diffusion;
    for (std::size_t i = 0; i < kSpecies; ++i) {
        if (p.diffusivity[i] > 0.0) diffusion[i] = laplacian(state.field(i), grid, bc);
    }
    for (std::size_t j = 0; j < n; ++j) {
        const Compartments c{std::max(state.S[j], 0.0), std::max(state.E[j], 0.0),
                             std::max(state.I[j], 0.0), std::max(state.R[j], 0.0)};
        const ReactionRates rates = reaction_terms(c, beta, p);
        for (std::size_t i = 0; i < kSpecies; ++i) {
            const double spread = diffusion[i].empty() ? 0.0 : p.diffusivity[i] * diffusion[i][j];
            next.field(i)[j] = state.field(i)[j] + dt * (spread + rates[i]);
        }
        next.D[j] = state.D[j] + dt * rates.D;
    }
    return next;
}

Trajectory run_macro(const MacroSetup& setup, const MacroState& initial, double t_final,
                     const std::vector<double>& output_times, const MacroObserver& observer) {
    setup.params.validate();
    if (setup.bc == BoundaryKind::Inflow) {
        throw std::invalid_argument("run_macro: inflow boundaries apply to the kinetic solver only");
    }
    if (initial.size() != setup.grid.n_nodes()) {
        throw std::invalid_argument("run_macro: initial state does not match the grid");
    }
    if (const double limit = cfl_max_dt(setup.grid, setup.params); setup.dt > limit) {
        std::ostringstream msg;
        msg << "run_macro: dt = " << setup.dt << " exceeds the explicit diffusion limit " << limit;
        throw StepSizeError(msg.str());
    }

    Trajectory traj;
    const std::size_t total = step_count(t_final, setup.dt);
    const auto wanted = snapshot_steps(output_times, setup.dt, total);

    MacroState state = initial;
    if (setup.bc == BoundaryKind::Periodic) {
        for (std::size_t c = 0; c < kCompartmentNames.size(); ++c) state.field(c).back() = state.field(c).front();
    }
    const double t0 = state.t;
    auto next = wanted.begin();
    auto record = [&](std::size_t k) {
        if (next != wanted.end() && *next == k) {
            traj.snapshots.push_back(state);
            ++next;
        }
    };
    if (observer) observer(state, 0);
    record(0);
    for (std::size_t k = 1; k <= total; ++k) {
        state = macro_rd_step(state, setup.rate.at(state.t), setup.grid, setup.params, setup.dt, setup.bc);
        state.t = t0 + static_cast<double>(k) * setup.dt;
        for (std::size_t c = 0; c < kCompartmentNames.size(); ++c) {
            if (!std::ranges::all_of(state.field(c), [](double x) { return std::isfinite(x); })) {
                throw NumericalBlowup(k, "macro solver produced a non-finite value at step " + std::to_string(k));
            }
        }
        if (observer) observer(state, k);
        record(k);
    }
    traj.steps = total;
    return traj;
}

} // namespace seird
