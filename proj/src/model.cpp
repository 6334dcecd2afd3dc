#include "seird/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace seird {

namespace {

void require_nonnegative(double value, const char* name) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument(std::string("model parameter ") + name +
                                    " must be finite and nonnegative");
    }
}

} // namespace

void ModelParams::validate() const {
    require_nonnegative(mu, "mu");
    require_nonnegative(xi, "xi");
    require_nonnegative(gamma, "gamma");
    require_nonnegative(alpha, "alpha");
    require_nonnegative(recruitment_constant, "recruitment_constant");
    for (double d : diffusivity) require_nonnegative(d, "diffusivity");
}

void ModelParams::calibrate(double velocity_bound) {
    for (std::size_t i = 0; i < kSpecies; ++i) {
        sigma[i] = sigma_from_diffusivity(diffusivity[i], velocity_bound);
    }
}

double ModelParams::max_diffusivity() const {
    return *std::max_element(diffusivity.begin(), diffusivity.end());
}

double Compartments::operator[](std::size_t i) const {
    switch (i) {
    case 0: return S;
    case 1: return E;
    case 2: return I;
    case 3: return R;
    default: throw std::out_of_range("Compartments index");
    }
}

double ReactionRates::operator[](std::size_t i) const {
    switch (i) {
    case 0: return S;
    case 1: return E;
    case 2: return I;
    case 3: return R;
    case 4: return D;
    default: throw std::out_of_range("ReactionRates index");
    }
}

TransmissionRate::TransmissionRate(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.empty() || breakpoints_.size() != values_.size()) {
        throw std::invalid_argument("TransmissionRate: need one value per breakpoint");
    }
    for (std::size_t m = 0; m < values_.size(); ++m) {
        if (!(values_[m] >= 0.0) || !std::isfinite(values_[m])) {
            throw std::invalid_argument("TransmissionRate: values must be finite and nonnegative");
        }
        if (m > 0 && !(breakpoints_[m] > breakpoints_[m - 1])) {
            throw std::invalid_argument("TransmissionRate: breakpoints must be strictly increasing");
        }
    }
}

TransmissionRate TransmissionRate::constant(double beta) { return TransmissionRate({0.0}, {beta}); }

double TransmissionRate::at(double t) const {
    if (t < breakpoints_.front()) {
        throw std::invalid_argument("TransmissionRate: t = " + std::to_string(t) +
                                    " precedes the first breakpoint");
    }
    // last breakpoint <= t
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
    return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

double equilibrium_value(const VelocityGrid& vgrid) { return 1.0 / (2.0 * vgrid.half_width); }

std::vector<double> equilibrium_density(const VelocityGrid& vgrid) {
    return std::vector<double>(vgrid.size(), equilibrium_value(vgrid));
}

double sigma_from_diffusivity(double diffusivity, double velocity_bound) {
    if (!(diffusivity >= 0.0)) {
        throw std::invalid_argument("sigma_from_diffusivity: negative diffusivity");
    }
    if (!(velocity_bound > 0.0)) {
        throw std::invalid_argument("sigma_from_diffusivity: velocity bound must be positive");
    }
    if (diffusivity == 0.0) return kInfiniteRelaxation;
    // (1/sigma) * integral of v^2 / (2V) over [-V, V] = V^2 / (3 sigma)
    return velocity_bound * velocity_bound / (3.0 * diffusivity);
}

double recruitment(const ModelParams& p, double live_total) {
    return p.recruitment == Recruitment::ProportionalToN ? p.mu * live_total
                                                         : p.recruitment_constant;
}

ReactionRates reaction_terms(const Compartments& c, double beta, const ModelParams& p) {
    if (c.S < 0.0 || c.E < 0.0 || c.I < 0.0 || c.R < 0.0) {
        throw std::invalid_argument("reaction_terms: negative compartment density");
    }
    const double live = c.live();
    const double infection = live > kPopulationFloor ? beta * c.S * c.I / live : 0.0;
    ReactionRates r;
    r.S = recruitment(p, live) - p.mu * c.S - infection;
    r.E = infection - (p.mu + p.xi) * c.E;
    r.I = p.xi * c.E - (p.gamma + p.mu + p.alpha) * c.I;
    r.R = p.gamma * c.I - p.mu * c.R;
    r.D = p.alpha * c.I;
    return r;
}

std::array<std::vector<double>, kSpecies>
kinetic_interaction(const std::array<std::span<const double>, kSpecies>& f, double beta,
                    const ModelParams& p, const VelocityGrid& vgrid) {
    std::array<std::vector<double>, kSpecies> g;
    for (auto& column : g) column.resize(vgrid.size());
    kinetic_interaction(f, beta, p, vgrid, {g[0], g[1], g[2], g[3]});
    return g;
}

void kinetic_interaction(const std::array<std::span<const double>, kSpecies>& f, double beta,
                         const ModelParams& p, const VelocityGrid& vgrid,
                         const std::array<std::span<double>, kSpecies>& out) {
    const std::size_t nv = vgrid.size();
    for (std::size_t i = 0; i < kSpecies; ++i) {
        if (f[i].size() != nv || out[i].size() != nv) {
            throw std::invalid_argument("kinetic_interaction: distribution length mismatch");
        }
    }
    const double measure = 2.0 * vgrid.half_width;
    for (std::size_t l = 0; l < nv; ++l) {
        const double s = f[0][l], e = f[1][l], i = f[2][l], r = f[3][l];
        if (s < 0.0 || e < 0.0 || i < 0.0 || r < 0.0) {
            throw std::invalid_argument("kinetic_interaction: negative distribution value");
        }
        // Densities seen by the pointwise reaction law.
        const double S = measure * s, E = measure * e, I = measure * i, R = measure * r;
        const double live = S + E + I + R;
        const double infection = live > kPopulationFloor ? beta * S * I / live : 0.0;
        const double exposed_outflow = p.paper_literal_g3 ? I : E;
        out[0][l] = (recruitment(p, live) - p.mu * S - infection) / measure;
        out[1][l] = (infection - (p.mu + p.xi) * E) / measure;
        out[2][l] = (p.xi * exposed_outflow - (p.gamma + p.mu + p.alpha) * I) / measure;
        out[3][l] = (p.gamma * I - p.mu * R) / measure;
    }
}

double r0(const ModelParams& p, double beta) {
    const double denom = (p.xi + p.mu) * (p.gamma + p.alpha + p.mu);
    if (!(denom > 0.0)) {
        throw std::invalid_argument("r0: (xi + mu)(gamma + alpha + mu) must be positive");
    }
    return p.xi * beta / denom;
}

double beta_for_r0(const ModelParams& p, double target_r0) {
    if (!(target_r0 >= 0.0)) throw std::invalid_argument("beta_for_r0: negative target");
    if (!(p.xi > 0.0)) throw std::invalid_argument("beta_for_r0: xi must be positive");
    return target_r0 * (p.xi + p.mu) * (p.gamma + p.alpha + p.mu) / p.xi;
}

} // namespace seird
