#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "seird/grid.hpp"

namespace seird {

inline constexpr std::size_t kSpecies = 4; // S, E, I, R; D carries no velocity
inline constexpr double kInfiniteRelaxation = std::numeric_limits<double>::infinity();
/// Live-population floor under the infection term S I / N.
inline constexpr double kPopulationFloor = 1e-12;

enum class Recruitment { ProportionalToN, Constant };

struct ModelParams {
    Recruitment recruitment = Recruitment::ProportionalToN;
    double recruitment_constant = 0.0; // A, used only in Constant mode
    double mu = 0.0;
    double xi = 0.0;
    double gamma = 0.0;
    double alpha = 0.0;
    std::array<double, kSpecies> diffusivity{};
    /// sigma_i = V^2 / (3 d_i); kInfiniteRelaxation when d_i == 0. Filled by calibrate().
    std::array<double, kSpecies> sigma{kInfiniteRelaxation, kInfiniteRelaxation,
                                       kInfiniteRelaxation, kInfiniteRelaxation};
    /// Reproduce the printed interaction operator for I literally (xi f_3 instead of xi f_2).
    bool paper_literal_g3 = false;

    void validate() const;
    /// Derives the relaxation rates from the diffusivities for velocity bound V.
    void calibrate(double velocity_bound);
    bool has_finite_sigma(std::size_t species) const { return std::isfinite(sigma[species]); }
    double max_diffusivity() const;

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

struct Compartments {
    double S = 0.0;
    double E = 0.0;
    double I = 0.0;
    double R = 0.0;

    double live() const { return S + E + I + R; }
    double operator[](std::size_t i) const;

    friend bool operator==(const Compartments&, const Compartments&) = default;
};

struct ReactionRates {
    double S = 0.0;
    double E = 0.0;
    double I = 0.0;
    double R = 0.0;
    double D = 0.0;

    double operator[](std::size_t i) const;
};

/// Piecewise-constant beta(t), left-closed pieces; the last value holds forever.
class TransmissionRate {
public:
    TransmissionRate(std::vector<double> breakpoints, std::vector<double> values);
    static TransmissionRate constant(double beta);

    double at(double t) const;
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& values() const { return values_; }
    bool is_constant() const { return values_.size() == 1; }

    friend bool operator==(const TransmissionRate&, const TransmissionRate&) = default;

private:
    std::vector<double> breakpoints_;
    std::vector<double> values_;
};

inline double beta_at(const TransmissionRate& rate, double t) { return rate.at(t); }

/// Uniform equilibrium 1/(2V) at every velocity node.
std::vector<double> equilibrium_density(const VelocityGrid& vgrid);
double equilibrium_value(const VelocityGrid& vgrid);

double sigma_from_diffusivity(double diffusivity, double velocity_bound);

double recruitment(const ModelParams& p, double live_total);

/// Right-hand sides of the five compartment equations at one point.
ReactionRates reaction_terms(const Compartments& c, double beta, const ModelParams& p);

/**
 * Pointwise interaction operators G_1..G_4 at every velocity node:
 * G_i(v) = F_i(|V| f_1(v), ..., |V| f_4(v)) / |V|, so that equilibrium
 * inputs f_i = M u_i give <G_i> = F_i(u).
 */
std::array<std::vector<double>, kSpecies>
kinetic_interaction(const std::array<std::span<const double>, kSpecies>& f, double beta,
                    const ModelParams& p, const VelocityGrid& vgrid);
/// Same, writing into caller-owned columns.
void kinetic_interaction(const std::array<std::span<const double>, kSpecies>& f, double beta,
                         const ModelParams& p, const VelocityGrid& vgrid,
                         const std::array<std::span<double>, kSpecies>& out);

double r0(const ModelParams& p, double beta);
double beta_for_r0(const ModelParams& p, double target_r0);

} // namespace seird
