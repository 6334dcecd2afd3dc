#include "seird/kinetic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace seird {

namespace {

// Reaction law used inside the solvers. Round-off negatives are read as zero so the
// rates stay defined; recruitment and losses see the same clamped total, which keeps
// the telescoping sum exact.
ReactionRates solver_reactions(double s, double e, double i, double r, double beta,
                               const ModelParams& p) {
    return reaction_terms({std::max(s, 0.0), std::max(e, 0.0), std::max(i, 0.0), std::max(r, 0.0)},
                          beta, p);
}

ReactionRates node_reactions(const std::array<std::vector<double>, kSpecies>& u, std::size_t j,
                             double beta, const ModelParams& p) {
    return solver_reactions(u[0][j], u[1][j], u[2][j], u[3][j], beta, p);
}

void check_shapes(const KineticState& state, const KineticSetup& setup) {
    const std::size_t nn = setup.grid.n_nodes();
    const std::size_t nf = setup.grid.n_faces();
    const std::size_t nv = setup.vgrid.size();
    for (std::size_t i = 0; i < kSpecies; ++i) {
        if (state.u[i].size() != nn) throw std::invalid_argument("kinetic state: node array size mismatch");
        if (state.g[i].n_faces() != nf || state.g[i].n_velocities() != nv) {
            throw std::invalid_argument("kinetic state: micro field shape mismatch");
        }
    }
    if (state.dead.size() != nn) throw std::invalid_argument("kinetic state: dead array size mismatch");
    if (!(state.eps > 0.0)) throw std::invalid_argument("kinetic state: eps must be positive");
}

void remove_mean(std::span<double> column, const VelocityGrid& vgrid, double m) {
    const double mean = density(column, vgrid);
    for (double& x : column) x -= m * mean;
}

// Ghost faces for periodic and reflecting boundaries.
void fill_closed_ghosts(VelocityField& g, BoundaryKind kind, const VelocityGrid& vgrid) {
    const std::size_t last = g.n_faces() - 1; // ghost x_{N_x+1/2}
    const std::size_t nv = vgrid.size();
    if (kind == BoundaryKind::Periodic) {
        // x_{-1/2} ~ x_{N_x-1/2},  x_{N_x+1/2} ~ x_{1/2}
        std::ranges::copy(g.column(last - 1), g.column(0).begin());
        std::ranges::copy(g.column(1), g.column(last).begin());
    } else if (kind == BoundaryKind::Reflecting) {
        for (std::size_t l = 0; l < nv; ++l) {
            g(0, l) = g(1, vgrid.mirror(l));
            g(last, l) = g(last - 1, vgrid.mirror(l));
        }
    }
}

// Inflow ghosts from the boundary macro values at the same time level.
void fill_inflow_ghosts(VelocityField& g, std::size_t species, double u_left, double u_right,
                        double eps, const BoundaryCondition& bc, const VelocityGrid& vgrid) {
    const std::size_t last = g.n_faces() - 1;
    const double m = equilibrium_value(vgrid);
    for (std::size_t l = 0; l < vgrid.size(); ++l) {
        const double v = vgrid.nodes[l];
        g(0, l) = v > 0.0 ? 2.0 / eps * (bc.inflow_left[species][l] - u_left * m) - g(1, l) : g(1, l);
        g(last, l) = v < 0.0 ? 2.0 / eps * (bc.inflow_right[species][l] - u_right * m) - g(last - 1, l)
                             : g(last - 1, l);
    }
}

void fill_ghosts(std::array<VelocityField, kSpecies>& g,
                 const std::array<std::vector<double>, kSpecies>& u, double eps,
                 const BoundaryCondition& bc, const VelocityGrid& vgrid, const ModelParams& p) {
    for (std::size_t i = 0; i < kSpecies; ++i) {
        if (!p.has_finite_sigma(i)) continue;
        if (bc.kind == BoundaryKind::Inflow) {
            fill_inflow_ghosts(g[i], i, u[i].front(), u[i].back(), eps, bc, vgrid);
        } else {
            fill_closed_ghosts(g[i], bc.kind, vgrid);
        }
    }
}

} // namespace

BoundaryCondition BoundaryCondition::inflow(std::array<std::vector<double>, kSpecies> left,
                                            std::array<std::vector<double>, kSpecies> right) {
    return {BoundaryKind::Inflow, std::move(left), std::move(right)};
}

BoundaryCondition BoundaryCondition::equilibrium_inflow(const Compartments& left,
                                                        const Compartments& right,
                                                        const VelocityGrid& vgrid) {
    const double m = equilibrium_value(vgrid);
    std::array<std::vector<double>, kSpecies> fl, fr;
    for (std::size_t i = 0; i < kSpecies; ++i) {
        fl[i].assign(vgrid.size(), m * left[i]);
        fr[i].assign(vgrid.size(), m * right[i]);
    }
    return inflow(std::move(fl), std::move(fr));
}

void BoundaryCondition::validate(const VelocityGrid& vgrid) const {
    if (kind != BoundaryKind::Inflow) return;
    for (std::size_t i = 0; i < kSpecies; ++i) {
        for (const auto* side : {&inflow_left[i], &inflow_right[i]}) {
            if (side->size() != vgrid.size()) {
                throw std::invalid_argument("inflow boundary: distribution length mismatch");
            }
            if (std::ranges::any_of(*side, [](double x) { return !(x >= 0.0); })) {
                throw std::invalid_argument("inflow boundary: distributions must be nonnegative");
            }
        }
    }
}

MacroState KineticState::macro() const {
    MacroState m;
    m.S = u[0];
    m.E = u[1];
    m.I = u[2];
    m.R = u[3];
    m.D = dead;
    m.t = t;
    return m;
}

std::vector<double> project(std::span<const double> h, const VelocityGrid& vgrid) {
    return std::vector<double>(vgrid.size(), density(h, vgrid) * equilibrium_value(vgrid));
}

std::array<VelocityField, kSpecies>
init_micro(const std::array<std::vector<double>, kSpecies>& u, MicroInit mode,
           const SpatialGrid& grid, const VelocityGrid& vgrid, const ModelParams& p, double eps,
           const BoundaryCondition& bc, const std::array<VelocityField, kSpecies>* distribution) {
    if (!(eps > 0.0)) throw std::invalid_argument("init_micro: eps must be positive");
    const std::size_t nf = grid.n_faces();
    const std::size_t nv = vgrid.size();
    const double m = equilibrium_value(vgrid);
    for (const auto& ui : u) {
        if (ui.size() != grid.n_nodes()) throw std::invalid_argument("init_micro: node array size mismatch");
    }
    if (mode == MicroInit::FromDistribution) {
        if (distribution == nullptr) {
            throw std::invalid_argument("init_micro: FromDistribution needs per-face distributions");
        }
        for (const auto& f : *distribution) {
            if (f.n_faces() != nf || f.n_velocities() != nv) {
                throw std::invalid_argument("init_micro: distribution shape mismatch");
            }
        }
    }

    std::array<VelocityField, kSpecies> g;
    for (std::size_t i = 0; i < kSpecies; ++i) {
        g[i] = VelocityField(nf, nv);
        if (!p.has_finite_sigma(i) || mode == MicroInit::Zero) continue;
        for (std::size_t f = 1; f + 1 < nf; ++f) {
            auto column = g[i].column(f);
            if (mode == MicroInit::LocalEquilibrium) {
                const double grad = (u[i][f] - u[i][f - 1]) / grid.dx;
                for (std::size_t l = 0; l < nv; ++l) {
                    column[l] = -vgrid.nodes[l] * m * grad / p.sigma[i];
                }
            } else {
                const auto f0 = (*distribution)[i].column(f);
                const double u_face = density(f0, vgrid);
                for (std::size_t l = 0; l < nv; ++l) column[l] = (f0[l] - m * u_face) / eps;
            }
            remove_mean(column, vgrid, m);
        }
    }
    fill_ghosts(g, u, eps, bc, vgrid, p);
    return g;
}

KineticState make_kinetic_state(const MacroState& initial, double eps, MicroInit mode,
                                const KineticSetup& setup,
                                const std::array<VelocityField, kSpecies>* distribution) {
    if (initial.size() != setup.grid.n_nodes()) {
        throw std::invalid_argument("make_kinetic_state: initial state does not match the grid");
    }
    KineticState state;
    state.u = {initial.S, initial.E, initial.I, initial.R};
    state.dead = initial.D;
    if (setup.bc.kind == BoundaryKind::Periodic) {
        // x_0 and x_{N_x} are the same point
        for (auto& u : state.u) u.back() = u.front();
        state.dead.back() = state.dead.front();
    }
    state.eps = eps;
    state.t = initial.t;
    state.g = init_micro(state.u, mode, setup.grid, setup.vgrid, setup.params, eps, setup.bc,
                         distribution);
    return state;
}

std::array<VelocityField, kSpecies> micro_step(const KineticState& state, double beta,
                                               const KineticSetup& setup) {
    check_shapes(state, setup);
    if (!(setup.dt > 0.0)) throw std::invalid_argument("micro_step: dt must be positive");

    const auto& grid = setup.grid;
    const auto& vgrid = setup.vgrid;
    const auto& p = setup.params;
    const std::size_t nf = grid.n_faces();
    const std::size_t nv = vgrid.size();
    const double dt = setup.dt;
    const double inv_dx = 1.0 / grid.dx;
    const double inv_eps = 1.0 / state.eps;
    const double inv_eps2 = inv_eps * inv_eps;
    const double m = equilibrium_value(vgrid);

    // (I - P) G at each interior face, with G evaluated on the local equilibrium M u_face.
    std::array<VelocityField, kSpecies> interaction;
    {
        for (auto& field : interaction) field = VelocityField(nf, nv);
        std::array<std::vector<double>, kSpecies> eq;
        for (auto& column : eq) column.resize(nv);
        for (std::size_t f = 1; f + 1 < nf; ++f) {
            for (std::size_t i = 0; i < kSpecies; ++i) {
                const double u_face = 0.5 * (state.u[i][f - 1] + state.u[i][f]);
                std::ranges::fill(eq[i], m * std::max(u_face, 0.0));
            }
            const std::array<std::span<double>, kSpecies> out{
                interaction[0].column(f), interaction[1].column(f), interaction[2].column(f),
                interaction[3].column(f)};
            kinetic_interaction({eq[0], eq[1], eq[2], eq[3]}, beta, p, vgrid, out);
            for (const auto& column : out) remove_mean(column, vgrid, m);
        }
    }

    std::array<VelocityField, kSpecies> g_new;
    std::vector<double> transport(nv);
    for (std::size_t i = 0; i < kSpecies; ++i) {
        g_new[i] = VelocityField(nf, nv);
        if (!p.has_finite_sigma(i)) continue;
        const auto& g = state.g[i];
        const auto& u = state.u[i];
        const double damping = 1.0 / (1.0 + dt * p.sigma[i] * inv_eps2);

        for (std::size_t f = 1; f + 1 < nf; ++f) {
            const double grad = (u[f] - u[f - 1]) * inv_dx;
            const auto left = g.column(f - 1);
            const auto here = g.column(f);
            const auto right = g.column(f + 1);
            for (std::size_t l = 0; l < nv; ++l) {
                const double v = vgrid.nodes[l];
                transport[l] = v > 0.0 ? v * (here[l] - left[l]) * inv_dx
                                       : v * (right[l] - here[l]) * inv_dx;
            }
            const double transport_mean = density(transport, vgrid);
            const auto reaction = interaction[i].column(f);

            auto out = g_new[i].column(f);
            for (std::size_t l = 0; l < nv; ++l) {
                const double v = vgrid.nodes[l];
                const double rhs = inv_eps2 * v * m * grad +
                                   inv_eps * (transport[l] - m * transport_mean) -
                                   inv_eps * reaction[l];
                out[l] = (here[l] - dt * rhs) * damping;
            }
            remove_mean(out, vgrid, m);
        }
        if (setup.bc.kind != BoundaryKind::Inflow) fill_closed_ghosts(g_new[i], setup.bc.kind, vgrid);
    }
    return g_new;
}

std::array<std::vector<double>, kSpecies>
macro_step(const KineticState& state, const std::array<VelocityField, kSpecies>& g_new,
           double beta, const KineticSetup& setup) {
    check_shapes(state, setup);
    const auto& grid = setup.grid;
    const auto& vgrid = setup.vgrid;
    const auto& p = setup.params;
    const auto& bc = setup.bc;
    const std::size_t nn = grid.n_nodes();
    const std::size_t nv = vgrid.size();
    for (const auto& g : g_new) {
        if (g.n_faces() != grid.n_faces() || g.n_velocities() != nv) {
            throw std::invalid_argument("macro_step: micro field shape mismatch");
        }
    }
    const double dt = setup.dt;
    const double ratio = dt / grid.dx;

    std::vector<ReactionRates> rates(nn);
    for (std::size_t j = 0; j < nn; ++j) rates[j] = node_reactions(state.u, j, beta, p);

    std::array<std::vector<double>, kSpecies> u_new;
    for (std::size_t i = 0; i < kSpecies; ++i) {
        const auto& u = state.u[i];
        auto& out = u_new[i];
        out.resize(nn);

        std::vector<double> face_flux(grid.n_faces());
        for (std::size_t f = 0; f < face_flux.size(); ++f) face_flux[f] = flux(g_new[i].column(f), vgrid);

        const bool inflow = bc.kind == BoundaryKind::Inflow;
        const bool periodic = bc.kind == BoundaryKind::Periodic;
        const std::size_t first = inflow ? 1 : 0;
        const std::size_t stop = (inflow || periodic) ? nn - 1 : nn;
        for (std::size_t j = first; j < stop; ++j) {
            const double divergence =
                face_flux[SpatialGrid::face_right_of(j)] - face_flux[SpatialGrid::face_left_of(j)];
            out[j] = u[j] - ratio * divergence + dt * rates[j][i];
        }
        if (periodic) out[nn - 1] = out[0];

        if (inflow) {
            if (!p.has_finite_sigma(i)) {
                out.front() = u.front() + dt * rates.front()[i];
                out.back() = u.back() + dt * rates.back()[i];
                continue;
            }
            const double eps = state.eps;
            const double m = equilibrium_value(vgrid);
            const auto g_first = g_new[i].column(1);     // x_{1/2}
            const auto g_last = g_new[i].column(nn - 1); // x_{N_x - 1/2}
            const auto& fl = bc.inflow_left[i];
            const auto& fr = bc.inflow_right[i];
            double vp_m = 0.0, vm_m = 0.0, vp_g = 0.0, vm_g = 0.0, vp_f = 0.0, vm_f = 0.0;
            for (std::size_t l = 0; l < nv; ++l) {
                const double w = vgrid.weights[l];
                const double vp = std::max(vgrid.nodes[l], 0.0);
                const double vm = std::min(vgrid.nodes[l], 0.0);
                vp_m += w * vp * m;
                vm_m += w * vm * m;
                vp_g += w * vp * g_first[l];
                vm_g += w * vm * g_last[l];
                vp_f += w * vp * fl[l];
                vm_f += w * vm * fr[l];
            }
            out.front() = (u.front() - ratio * (2.0 * vp_g - 2.0 / eps * vp_f) + dt * rates.front()[i]) /
                          (1.0 + 2.0 * ratio / eps * vp_m);
            out.back() = (u.back() - ratio * (2.0 / eps * vm_f - 2.0 * vm_g) + dt * rates.back()[i]) /
                         (1.0 - 2.0 * ratio / eps * vm_m);
        }
    }
    return u_new;
}

std::vector<double> dead_step(const KineticState& state, double dt, const ModelParams& p) {
    if (!(dt > 0.0)) throw std::invalid_argument("dead_step: dt must be positive");
    std::vector<double> d = state.dead;
    for (std::size_t j = 0; j < d.size(); ++j) d[j] += dt * p.alpha * std::max(state.u[2][j], 0.0);
    return d;
}

void ap_step(KineticState& state, const KineticSetup& setup) {
    const double beta = setup.rate.at(state.t);
    auto g_new = micro_step(state, beta, setup);
    auto u_new = macro_step(state, g_new, beta, setup);
    state.dead = dead_step(state, setup.dt, setup.params);
    state.u = std::move(u_new);
    if (setup.bc.kind == BoundaryKind::Inflow) {
        fill_ghosts(g_new, state.u, state.eps, setup.bc, setup.vgrid, setup.params);
    }
    state.g = std::move(g_new);
    state.t += setup.dt;
}

double zero_mean_defect(const KineticState& state, const SpatialGrid& grid,
                        const VelocityGrid& vgrid) {
    double worst = 0.0;
    for (const auto& g : state.g) {
        const double scale = std::max(1.0, g.max_abs());
        for (std::size_t f = 1; f + 1 < grid.n_faces(); ++f) {
            worst = std::max(worst, std::abs(density(g.column(f), vgrid)) / scale);
        }
    }
    return worst;
}

double kinetic_dt_bound(const SpatialGrid& grid, const VelocityGrid& vgrid, const ModelParams& p) {
    const double denom = 2.0 * p.max_diffusivity() + grid.dx * vgrid.max_speed();
    return denom > 0.0 ? grid.dx * grid.dx / denom : kInfiniteRelaxation;
}

std::size_t step_count(double t_final, double dt) {
    if (!(t_final >= 0.0)) throw std::invalid_argument("t_final must be nonnegative");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    return static_cast<std::size_t>(std::llround(t_final / dt));
}

std::vector<std::size_t> snapshot_steps(const std::vector<double>& output_times, double dt,
                                        std::size_t total_steps) {
    std::vector<std::size_t> steps;
    if (output_times.empty()) {
        steps = {0, total_steps};
    } else {
        for (double t : output_times) {
            if (!(t >= 0.0)) throw std::invalid_argument("output time must be nonnegative");
            const auto k = static_cast<std::size_t>(std::llround(t / dt));
            if (k > total_steps) {
                throw std::invalid_argument("output time " + std::to_string(t) + " exceeds t_final");
            }
            steps.push_back(k);
        }
    }
    std::ranges::sort(steps);
    const auto dup = std::ranges::unique(steps);
    steps.erase(dup.begin(), dup.end());
    return steps;
}

Trajectory run_kinetic(const KineticSetup& setup, const MacroState& initial, double eps,
                       double t_final, const std::vector<double>& output_times, MicroInit mode,
                       const KineticObserver& observer) {
    if (!(eps > 0.0)) throw std::invalid_argument("run_kinetic: eps must be positive");
    setup.params.validate();
    setup.bc.validate(setup.vgrid);

    Trajectory traj;
    const std::size_t total = step_count(t_final, setup.dt);
    const auto wanted = snapshot_steps(output_times, setup.dt, total);
    if (const double bound = kinetic_dt_bound(setup.grid, setup.vgrid, setup.params); setup.dt > bound) {
        std::ostringstream msg;
        msg << "dt = " << setup.dt << " exceeds the stability estimate " << bound;
        traj.warnings.push_back(msg.str());
    }

    KineticState state = make_kinetic_state(initial, eps, mode, setup);
    const double t0 = state.t;
    auto next = wanted.begin();
    auto record = [&](std::size_t k) {
        if (next != wanted.end() && *next == k) {
            traj.snapshots.push_back(state.macro());
            ++next;
        }
    };
    if (observer) observer(state, 0);
    record(0);
    for (std::size_t k = 1; k <= total; ++k) {
        ap_step(state, setup);
        state.t = t0 + static_cast<double>(k) * setup.dt;
        for (std::size_t i = 0; i < kSpecies; ++i) {
            const bool finite = std::ranges::all_of(state.u[i], [](double x) { return std::isfinite(x); }) &&
                                state.g[i].all_finite();
            if (!finite) {
                throw NumericalBlowup(k, "kinetic solver produced a non-finite value at step " +
                                             std::to_string(k) + " (eps = " + std::to_string(eps) + ")");
            }
        }
        if (observer) observer(state, k);
        record(k);
    }
    traj.steps = total;
    return traj;
}

} // namespace seird
