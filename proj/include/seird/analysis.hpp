#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "seird/fields.hpp"
#include "seird/grid.hpp"
#include "seird/kinetic.hpp"
#include "seird/scenarios.hpp"

namespace seird {

// Node sums use trapezoid weights: dx inside, dx/2 at both ends. Under periodic
// identification this counts every distinct point exactly once.

double l1_norm(const std::vector<double>& a, const SpatialGrid& grid);
double l1_distance(const std::vector<double>& a, const std::vector<double>& b, const SpatialGrid& grid);
double linf_distance(const std::vector<double>& a, const std::vector<double>& b);

/// Integral of S + E + I + R + D.
double total_population(const MacroState& state, const SpatialGrid& grid);
/// Sum over nodes of one field (plain sum, no dx).
double field_sum(const std::vector<double>& a);

struct ComparisonReport {
    double eps = 0.0;
    double t = 0.0;
    std::array<double, 5> l1{};
    std::array<double, 5> linf{};
    std::array<double, 5> reference_l1{}; // L1 norm of the macro solution
    double half_length = 0.0;
    std::size_t n_cells = 0;

    double relative_l1(std::size_t compartment) const;
};

ComparisonReport compare_states(const MacroState& candidate, const MacroState& reference, double eps,
                                const SpatialGrid& grid);

/// Kinetic runs for each eps against one macro run, at each probe time.
/// Reports are ordered by eps (as given), then by time.
std::vector<ComparisonReport> eps_sweep(const Scenario& s, const std::vector<double>& eps_list,
                                        double t_final, const std::vector<double>& probe_times,
                                        MicroInit mode = MicroInit::LocalEquilibrium);

enum class SolverKind { Kinetic, Macro };

struct ProbeSeries {
    TransmissionRate rate = TransmissionRate::constant(0.0);
    std::size_t probe_node = 0;
    std::vector<double> t;
    std::vector<double> beta; // beta(t) at each sample
    std::array<std::vector<double>, 5> values; // S, E, I, R, D at the probe node
    std::vector<double> infected_total;        // sum over nodes of I
};

/// Time series at the node nearest to probe_x, sampled every `interval`.
ProbeSeries probe_series(const Scenario& s, const TransmissionRate& rate, double t_final, double probe_x,
                         double interval, SolverKind solver, double eps);

std::vector<ProbeSeries> beta_sweep(const Scenario& s, const std::vector<TransmissionRate>& rates,
                                    double t_final, double probe_x, double interval,
                                    SolverKind solver, double eps);

/// Spatial variance of the normalized profile I / integral(I).
double spread_metric(const std::vector<double>& infected, const SpatialGrid& grid);

} // namespace seird
