#include "seird/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace seird {

namespace {

double node_weight(std::size_t j, std::size_t n, double dx) {
    return (j == 0 || j + 1 == n) ? 0.5 * dx : dx;
}

void require_same_length(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("distance: arrays differ in length");
}

} // namespace

double l1_norm(const std::vector<double>& a, const SpatialGrid& grid) {
    if (a.size() != grid.n_nodes()) throw std::invalid_argument("l1_norm: array does not match the grid");
    double acc = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) acc += node_weight(j, a.size(), grid.dx) * std::abs(a[j]);
    return acc;
}

double l1_distance(const std::vector<double>& a, const std::vector<double>& b, const SpatialGrid& grid) {
    require_same_length(a, b);
    if (a.size() != grid.n_nodes()) throw std::invalid_argument("l1_distance: arrays do not match the grid");
    double acc = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) acc += node_weight(j, a.size(), grid.dx) * std::abs(a[j] - b[j]);
    return acc;
}

double linf_distance(const std::vector<double>& a, const std::vector<double>& b) {
    require_same_length(a, b);
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

double total_population(const MacroState& state, const SpatialGrid& grid) {
    if (state.size() != grid.n_nodes()) throw std::invalid_argument("total_population: state does not match the grid");
    double acc = 0.0;
    for (std::size_t j = 0; j < state.size(); ++j) {
        const double column = state.S[j] + state.E[j] + state.I[j] + state.R[j] + state.D[j];
        acc += node_weight(j, state.size(), grid.dx) * column;
    }
    return acc;
}

double field_sum(const std::vector<double>& a) {
    double acc = 0.0;
    for (double x : a) acc += x;
    return acc;
}

double ComparisonReport::relative_l1(std::size_t compartment) const {
    const double ref = reference_l1.at(compartment);
    return ref > 0.0 ? l1[compartment] / ref : l1[compartment];
}

ComparisonReport compare_states(const MacroState& candidate, const MacroState& reference, double eps,
                                const SpatialGrid& grid) {
    ComparisonReport r;
    r.eps = eps;
    r.t = reference.t;
    r.half_length = grid.half_length;
    r.n_cells = grid.n_cells;
    for (std::size_t c = 0; c < kCompartmentNames.size(); ++c) {
        r.l1[c] = l1_distance(candidate.field(c), reference.field(c), grid);
        r.linf[c] = linf_distance(candidate.field(c), reference.field(c));
        r.reference_l1[c] = l1_norm(reference.field(c), grid);
    }
    return r;
}

std::vector<ComparisonReport> eps_sweep(const Scenario& s, const std::vector<double>& eps_list,
                                        double t_final, const std::vector<double>& probe_times,
                                        MicroInit mode) {
    const SpatialGrid grid = scenario_grid(s);
    const Trajectory macro = run_macro(s, t_final, probe_times);
    std::vector<ComparisonReport> reports;
    for (double eps : eps_list) {
        const Trajectory kinetic = run_kinetic(s, eps, t_final, probe_times, mode);
        if (kinetic.snapshots.size() != macro.snapshots.size()) {
            throw std::logic_error("eps_sweep: snapshot count mismatch");
        }
        for (std::size_t n = 0; n < macro.snapshots.size(); ++n) {
            reports.push_back(compare_states(kinetic.snapshots[n], macro.snapshots[n], eps, grid));
        }
    }
    return reports;
}

ProbeSeries probe_series(const Scenario& s, const TransmissionRate& rate, double t_final, double probe_x,
                         double interval, SolverKind solver, double eps) {
    if (!(interval > 0.0)) throw std::invalid_argument("probe_series: sampling interval must be positive");
    Scenario run = s;
    run.rate = rate;
    const SpatialGrid grid = scenario_grid(run);

    ProbeSeries series;
    series.rate = rate;
    series.probe_node = grid.nearest_node(probe_x);
    const std::size_t total = step_count(t_final, run.dt);
    const std::size_t stride = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(interval / run.dt)));

    auto sample = [&](std::size_t step, double t, auto&& field) {
        if (step % stride != 0 && step != total) return;
        series.t.push_back(t);
        series.beta.push_back(rate.at(t));
        for (std::size_t c = 0; c < kCompartmentNames.size(); ++c) {
            series.values[c].push_back(field(c)[series.probe_node]);
        }
        series.infected_total.push_back(field_sum(field(2)));
    };

    if (solver == SolverKind::Macro) {
        run_macro(run, t_final, {0.0}, [&](const MacroState& st, std::size_t k) {
            sample(k, st.t, [&](std::size_t c) -> const std::vector<double>& { return st.field(c); });
        });
    } else {
        run_kinetic(run, eps, t_final, {0.0}, MicroInit::LocalEquilibrium, [&](const KineticState& st, std::size_t k) {
            sample(k, st.t, [&](std::size_t c) -> const std::vector<double>& {
                return c < kSpecies ? st.u[c] : st.dead;
            });
        });
    }
    return series;
}

std::vector<ProbeSeries> beta_sweep(const Scenario& s, const std::vector<TransmissionRate>& rates,
                                    double t_final, double probe_x, double interval,
                                    SolverKind solver, double eps) {
    std::vector<ProbeSeries> out;
    out.reserve(rates.size());
    for (const auto& rate : rates) out.push_back(probe_series(s, rate, t_final, probe_x, interval, solver, eps));
    return out;
}

double spread_metric(const std::vector<double>& infected, const SpatialGrid& grid) {
    if (infected.size() != grid.n_nodes()) throw std::invalid_argument("spread_metric: array does not match the grid");
    // Round-off negatives from the solvers count as zero.
    constexpr double tolerance = 1e-12;
    std::vector<double> profile(infected.size());
    for (std::size_t j = 0; j < infected.size(); ++j) {
        if (infected[j] < -tolerance) throw std::invalid_argument("spread_metric: negative density");
        profile[j] = std::max(infected[j], 0.0);
    }
    double mass = 0.0, first = 0.0;
    for (std::size_t j = 0; j < profile.size(); ++j) {
        const double w = node_weight(j, profile.size(), grid.dx) * profile[j];
        mass += w;
        first += w * grid.nodes[j];
    }
    if (!(mass > 0.0)) throw std::invalid_argument("spread_metric: profile has zero mass");
    const double mean = first / mass;
    double second = 0.0;
    for (std::size_t j = 0; j < profile.size(); ++j) {
        const double dxj = grid.nodes[j] - mean;
        second += node_weight(j, profile.size(), grid.dx) * profile[j] * dxj * dxj;
    }
    return second / mass;
}

} // namespace seird
