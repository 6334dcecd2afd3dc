#include "seird/grid.hpp"

#include <algorithm>
#include <cmath>

namespace seird {

SpatialGrid build_spatial_grid(double half_length, int n_cells) {
    if (!(half_length > 0.0) || !std::isfinite(half_length)) {
        throw std::invalid_argument("build_spatial_grid: half_length must be positive");
    }
    if (n_cells < 2) {
        throw std::invalid_argument("build_spatial_grid: need at least 2 cells, got " +
                                    std::to_string(n_cells));
    }
    SpatialGrid grid;
    grid.half_length = half_length;
    grid.n_cells = static_cast<std::size_t>(n_cells);
    grid.dx = 2.0 * half_length / n_cells;

    grid.nodes.resize(grid.n_cells + 1);
    for (std::size_t j = 0; j <= grid.n_cells; ++j) {
        grid.nodes[j] = -half_length + static_cast<double>(j) * grid.dx;
    }
    grid.nodes.back() = half_length;

    // faces x_{j+1/2} for j = -1..N_x
    grid.faces.resize(grid.n_cells + 2);
    for (std::size_t f = 0; f < grid.faces.size(); ++f) {
        grid.faces[f] = -half_length + (static_cast<double>(f) - 0.5) * grid.dx;
    }
    return grid;
}

std::size_t SpatialGrid::nearest_node(double x) const {
    const double pos = std::round((x + half_length) / dx);
    const double clamped = std::clamp(pos, 0.0, static_cast<double>(n_cells));
    return static_cast<std::size_t>(clamped);
}

VelocityGrid build_velocity_grid(double half_width, int n_nodes) {
    if (!(half_width > 0.0) || !std::isfinite(half_width)) {
        throw std::invalid_argument("build_velocity_grid: half_width must be positive");
    }
    if (n_nodes < 2 || n_nodes % 2 != 0) {
        throw std::invalid_argument("build_velocity_grid: node count must be even and >= 2, got " +
                                    std::to_string(n_nodes));
    }
    const auto n = static_cast<std::size_t>(n_nodes);
    const std::size_t half = n / 2;
    const double h = 2.0 * half_width / n_nodes;

    VelocityGrid vgrid;
    vgrid.half_width = half_width;
    vgrid.nodes.resize(n);
    vgrid.weights.assign(n, h);
    // Build the positive half and mirror it so that v_{mirror(l)} == -v_l bitwise.
    for (std::size_t k = 0; k < half; ++k) {
        const double v = (static_cast<double>(k) + 0.5) * h;
        vgrid.nodes[half + k] = v;
        vgrid.nodes[half - 1 - k] = -v;
    }
    return vgrid;
}

bool VelocityField::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
}

double VelocityField::max_abs() const {
    double m = 0.0;
    for (double x : data_) m = std::max(m, std::abs(x));
    return m;
}

double density(std::span<const double> h, const VelocityGrid& vgrid) {
    if (h.size() != vgrid.size()) {
        throw std::invalid_argument("density: column length does not match velocity grid");
    }
    const std::size_t half = h.size() / 2;
    double acc = 0.0;
    for (std::size_t k = 0; k < half; ++k) {
        const std::size_t p = half + k;
        const std::size_t m = half - 1 - k;
        acc += vgrid.weights[p] * h[p] + vgrid.weights[m] * h[m];
    }
    return acc;
}

double flux(std::span<const double> h, const VelocityGrid& vgrid) {
    if (h.size() != vgrid.size()) {
        throw std::invalid_argument("flux: column length does not match velocity grid");
    }
    // Pair +v with -v so the flux of an even profile cancels exactly.
    const std::size_t half = h.size() / 2;
    double acc = 0.0;
    for (std::size_t k = 0; k < half; ++k) {
        const std::size_t p = half + k;
        const std::size_t m = half - 1 - k;
        acc += vgrid.weights[p] * vgrid.nodes[p] * (h[p] - h[m]);
    }
    return acc;
}

} // namespace seird
