#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace seird {

/**
 * Staggered 1D mesh on [-L, L].
 *
 * Macro densities live on the N_x + 1 nodes x_j = -L + j dx. Micro
 * perturbations live on faces x_{j+1/2}, j = -1..N_x; faces[0] and
 * faces[N_x + 1] are the ghost faces outside the domain. Face x_{j+1/2}
 * is stored at index j + 1.
 */
struct SpatialGrid {
    double half_length = 0.0;
    std::size_t n_cells = 0;
    double dx = 0.0;
    std::vector<double> nodes;
    std::vector<double> faces;

    std::size_t n_nodes() const { return nodes.size(); }
    std::size_t n_faces() const { return faces.size(); }

    /// Index into `faces` of face x_{j+1/2}.
    static constexpr std::size_t face_right_of(std::size_t node) { return node + 1; }
    static constexpr std::size_t face_left_of(std::size_t node) { return node; }

    /// Node nearest to x (ties resolved toward the lower index).
    std::size_t nearest_node(double x) const;
};

/// Midpoint quadrature on [-V, V] realizing <h> = integral of h over V.
struct VelocityGrid {
    double half_width = 0.0;
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
    /// Index of the node at -v_l.
    std::size_t mirror(std::size_t l) const { return nodes.size() - 1 - l; }
    double max_speed() const { return nodes.empty() ? 0.0 : nodes.back(); }
};

SpatialGrid build_spatial_grid(double half_length, int n_cells);
VelocityGrid build_velocity_grid(double half_width, int n_nodes);

/**
 * Per-species micro perturbation sampled on faces x velocities.
 * Row-major: one contiguous column of N_v values per face.
 */
class VelocityField {
public:
    VelocityField() = default;
    VelocityField(std::size_t n_faces, std::size_t n_velocities, double value = 0.0)
        : n_faces_(n_faces), n_velocities_(n_velocities), data_(n_faces * n_velocities, value) {}

    std::size_t n_faces() const { return n_faces_; }
    std::size_t n_velocities() const { return n_velocities_; }

    std::span<double> column(std::size_t face) {
        return {data_.data() + face * n_velocities_, n_velocities_};
    }
    std::span<const double> column(std::size_t face) const {
        return {data_.data() + face * n_velocities_, n_velocities_};
    }

    double& operator()(std::size_t face, std::size_t l) { return data_[face * n_velocities_ + l]; }
    double operator()(std::size_t face, std::size_t l) const { return data_[face * n_velocities_ + l]; }

    std::span<const double> values() const { return data_; }
    std::span<double> values() { return data_; }

    bool all_finite() const;
    double max_abs() const;

    friend bool operator==(const VelocityField&, const VelocityField&) = default;

private:
    std::size_t n_faces_ = 0;
    std::size_t n_velocities_ = 0;
    std::vector<double> data_;
};

/**
 * sum_l w_l * weight_fn(v_l) * h_l.
 *
 * Terms at +v and -v are added together before accumulating (outward from
 * v = 0), so any integrand that is odd in v sums to exactly zero.
 */
template <class WeightFn>
double moment(std::span<const double> h, const VelocityGrid& vgrid, WeightFn&& weight_fn) {
    if (h.size() != vgrid.size()) {
        throw std::invalid_argument("moment: column has " + std::to_string(h.size()) +
                                    " entries, velocity grid has " + std::to_string(vgrid.size()));
    }
    const std::size_t half = h.size() / 2;
    double acc = 0.0;
    for (std::size_t k = 0; k < half; ++k) {
        const std::size_t p = half + k;
        const std::size_t m = half - 1 - k;
        acc += vgrid.weights[p] * weight_fn(vgrid.nodes[p]) * h[p] +
               vgrid.weights[m] * weight_fn(vgrid.nodes[m]) * h[m];
    }
    return acc;
}

/// <h>
double density(std::span<const double> h, const VelocityGrid& vgrid);
/// <v h>
double flux(std::span<const double> h, const VelocityGrid& vgrid);

} // namespace seird
