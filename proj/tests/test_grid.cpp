#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "seird/grid.hpp"
#include "seird/model.hpp"

using namespace seird;

TEST_CASE("spatial grid on [-2, 2] with 200 cells") {
    const auto g = build_spatial_grid(2.0, 200);
    CHECK(g.dx == doctest::Approx(0.02).epsilon(1e-15));
    REQUIRE(g.n_nodes() == 201);
    CHECK(g.nodes.front() == -2.0);
    CHECK(g.nodes.back() == 2.0);
    CHECK(g.nodes[1] == doctest::Approx(-1.98).epsilon(1e-14));
    for (std::size_t j = 0; j + 1 < g.n_nodes(); ++j) {
        CHECK(g.nodes[j + 1] - g.nodes[j] == doctest::Approx(g.dx).epsilon(1e-12));
        // face x_{j+1/2} sits halfway between its nodes
        CHECK(g.faces[SpatialGrid::face_right_of(j)] ==
              doctest::Approx(0.5 * (g.nodes[j] + g.nodes[j + 1])).epsilon(1e-14));
    }
}

TEST_CASE("smallest spatial grid has two ghost faces") {
    const auto g = build_spatial_grid(1.0, 2);
    REQUIRE(g.nodes == std::vector<double>{-1.0, 0.0, 1.0});
    REQUIRE(g.n_faces() == 4);
    CHECK(g.faces[0] == -1.5);
    CHECK(g.faces[1] == -0.5);
    CHECK(g.faces[2] == 0.5);
    CHECK(g.faces[3] == 1.5);
}

TEST_CASE("degenerate spatial grids are rejected") {
    CHECK_THROWS_AS(build_spatial_grid(2.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_spatial_grid(2.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_spatial_grid(0.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(build_spatial_grid(-1.0, 10), std::invalid_argument);
}

TEST_CASE("nearest node") {
    const auto g = build_spatial_grid(2.0, 200);
    CHECK(g.nearest_node(0.0) == 100);
    CHECK(g.nearest_node(0.5) == 125);
    CHECK(g.nearest_node(-5.0) == 0);
    CHECK(g.nearest_node(5.0) == 200);
}

TEST_CASE("two-node velocity grid") {
    const auto v = build_velocity_grid(1.0, 2);
    REQUIRE(v.nodes == std::vector<double>{-0.5, 0.5});
    REQUIRE(v.weights == std::vector<double>{1.0, 1.0});
    const std::vector<double> ones{1.0, 1.0};
    CHECK(moment(ones, v, [](double x) { return x; }) == 0.0);
}

TEST_CASE("odd or empty velocity grids are rejected") {
    CHECK_THROWS_AS(build_velocity_grid(1.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(build_velocity_grid(1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_velocity_grid(0.0, 4), std::invalid_argument);
}

TEST_CASE("velocity grid is exactly symmetric") {
    for (int n : {2, 4, 10, 164, 1000}) {
        const auto v = build_velocity_grid(1.3, n);
        double wsum = 0.0;
        for (std::size_t l = 0; l < v.size(); ++l) {
            CHECK(v.nodes[v.mirror(l)] == -v.nodes[l]);
            CHECK(v.weights[v.mirror(l)] == v.weights[l]);
            wsum += v.weights[l];
        }
        CHECK(wsum == doctest::Approx(2.6).epsilon(1e-14));
        const std::vector<double> ones(v.size(), 1.0);
        CHECK(flux(ones, v) == 0.0);
        CHECK(moment(ones, v, [](double x) { return x * x; }) > 0.0);
    }
}

TEST_CASE("second moment at N_v = 164 matches 2/3") {
    // closed form: integral of v^2 over [-1, 1] = 2/3
    const auto v = build_velocity_grid(1.0, 164);
    const std::vector<double> ones(v.size(), 1.0);
    CHECK(std::abs(moment(ones, v, [](double x) { return 1.0; }) - 2.0) < 1e-13);
    CHECK(flux(ones, v) == 0.0);
    CHECK(std::abs(moment(ones, v, [](double x) { return x * x; }) - 2.0 / 3.0) <= 1e-4);
}

TEST_CASE("equilibrium moments") {
    const auto v = build_velocity_grid(1.0, 164);
    const auto m = equilibrium_density(v);
    CHECK(std::abs(density(m, v) - 1.0) < 1e-14);
    std::vector<double> vm(v.size());
    for (std::size_t l = 0; l < v.size(); ++l) vm[l] = v.nodes[l] * m[l];
    CHECK(density(vm, v) == 0.0);
    CHECK(moment(vm, v, [](double) { return 1.0; }) == 0.0);
}

TEST_CASE("moment rejects mismatched columns") {
    const auto v = build_velocity_grid(1.0, 4);
    const std::vector<double> h(3, 1.0);
    CHECK_THROWS_AS(density(h, v), std::invalid_argument);
    CHECK_THROWS_AS(flux(h, v), std::invalid_argument);
}

TEST_CASE("odd moments of even profiles vanish to round-off") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int n : {2, 8, 64, 164}) {
        const auto v = build_velocity_grid(1.0, n);
        std::vector<double> h(v.size());
        for (std::size_t l = 0; l < v.size() / 2; ++l) h[l] = h[v.mirror(l)] = dist(rng);
        CHECK(flux(h, v) == 0.0);
        CHECK(std::abs(moment(h, v, [](double x) { return x; })) <= 1e-14);
    }
}

TEST_CASE("moment is linear") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const auto v = build_velocity_grid(2.0, 164);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> h1(v.size()), h2(v.size()), mix(v.size());
        const double a = dist(rng), b = dist(rng);
        for (std::size_t l = 0; l < v.size(); ++l) {
            h1[l] = dist(rng);
            h2[l] = dist(rng);
            mix[l] = a * h1[l] + b * h2[l];
        }
        auto w = [](double x) { return x * x * x - x; };
        CHECK(moment(mix, v, w) == doctest::Approx(a * moment(h1, v, w) + b * moment(h2, v, w)).epsilon(1e-12).scale(1.0));
        CHECK(flux(mix, v) == doctest::Approx(a * flux(h1, v) + b * flux(h2, v)).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("midpoint quadrature converges at second order") {
    // |sum w v^2 - 2V^3/3| = V^3 h^2 / 6 for the midpoint rule, h = 2V/N_v
    const double V = 1.0;
    std::vector<double> errors;
    for (int n : {4, 8, 16, 32}) {
        const auto v = build_velocity_grid(V, n);
        const std::vector<double> ones(v.size(), 1.0);
        errors.push_back(std::abs(moment(ones, v, [](double x) { return x * x; }) - 2.0 * V * V * V / 3.0));
    }
    for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
        CHECK(std::log2(errors[k] / errors[k + 1]) == doctest::Approx(2.0).epsilon(1e-6));
    }
}

TEST_CASE("velocity field storage") {
    VelocityField f(3, 4);
    f(1, 2) = 5.0;
    CHECK(f.column(1)[2] == 5.0);
    CHECK(f.max_abs() == 5.0);
    CHECK(f.all_finite());
    f(0, 0) = std::nan("");
    CHECK_FALSE(f.all_finite());
}
