#include <doctest.h>

#include <cmath>
#include <random>

#include "seird/grid.hpp"
#include "seird/model.hpp"
#include "seird/scenarios.hpp"

using namespace seird;

namespace {

ModelParams reference_params() {
    ModelParams p;
    p.mu = 1.0 / 83.0;
    p.xi = 0.25;
    p.gamma = 0.125;
    p.alpha = 0.06;
    p.diffusivity = {0.05, 0.025, 0.001, 0.0};
    p.calibrate(1.0);
    return p;
}

double sum_rates(const ReactionRates& r) { return r.S + r.E + r.I + r.R + r.D; }

} // namespace

TEST_CASE("equilibrium density is uniform and normalized") {
    const auto v1 = build_velocity_grid(1.0, 164);
    for (double m : equilibrium_density(v1)) CHECK(m == 0.5);
    CHECK(std::abs(density(equilibrium_density(v1), v1) - 1.0) < 1e-14);
    CHECK(flux(equilibrium_density(v1), v1) == 0.0);

    const auto v2 = build_velocity_grid(2.0, 10);
    for (double m : equilibrium_density(v2)) CHECK(m == 0.25);
}

TEST_CASE("relaxation rate calibration") {
    CHECK(sigma_from_diffusivity(0.05, 1.0) == doctest::Approx(20.0 / 3.0).epsilon(1e-15));
    CHECK(sigma_from_diffusivity(0.001, 1.0) == doctest::Approx(1000.0 / 3.0).epsilon(1e-15));
    CHECK(std::isinf(sigma_from_diffusivity(0.0, 1.0)));
    CHECK_THROWS_AS(sigma_from_diffusivity(-0.1, 1.0), std::invalid_argument);

    const auto p = reference_params();
    for (std::size_t i = 0; i < 3; ++i) CHECK(p.diffusivity[i] * p.sigma[i] == 1.0 / 3.0);
    CHECK_FALSE(p.has_finite_sigma(3));
}

TEST_CASE("diffusivity implied by the quadrature matches the target") {
    const auto v = build_velocity_grid(1.0, 164);
    const auto m = equilibrium_density(v);
    const double second = moment(m, v, [](double x) { return x * x; });
    const auto p = reference_params();
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(std::abs(second / p.sigma[i] - p.diffusivity[i]) <= 1e-4);
    }
}

TEST_CASE("reaction terms at the disease-free state vanish") {
    const auto r = reaction_terms({1.0, 0.0, 0.0, 0.0}, 0.3, reference_params());
    CHECK(r.S == doctest::Approx(0.0).scale(1.0).epsilon(1e-17));
    CHECK(r.E == 0.0);
    CHECK(r.I == 0.0);
    CHECK(r.R == 0.0);
    CHECK(r.D == 0.0);
}

TEST_CASE("reaction terms against a rational hand evaluation") {
    // S = I = 1/2, beta = 3/10: values from exact fractions
    const auto r = reaction_terms({0.5, 0.0, 0.5, 0.0}, 0.3, reference_params());
    CHECK(r.S == doctest::Approx(-0.06897590361445784).epsilon(1e-14));
    CHECK(r.E == doctest::Approx(0.075).epsilon(1e-14));
    CHECK(r.I == doctest::Approx(-0.09852409638554217).epsilon(1e-14));
    CHECK(r.R == doctest::Approx(0.0625).epsilon(1e-14));
    CHECK(r.D == doctest::Approx(0.03).epsilon(1e-14));
}

TEST_CASE("reaction terms telescope to recruitment minus natural deaths") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(0.0, 2.0);
    auto p = reference_params();
    for (auto mode : {Recruitment::ProportionalToN, Recruitment::Constant}) {
        p.recruitment = mode;
        p.recruitment_constant = 0.4;
        for (int trial = 0; trial < 200; ++trial) {
            const Compartments c{dist(rng), dist(rng), dist(rng), dist(rng)};
            const double beta = dist(rng);
            const double expected = recruitment(p, c.live()) - p.mu * c.live();
            CHECK(sum_rates(reaction_terms(c, beta, p)) ==
                  doctest::Approx(expected).epsilon(1e-13).scale(1.0));
        }
    }
}

TEST_CASE("reaction terms with an empty population") {
    auto p = reference_params();
    const auto r = reaction_terms({0.0, 0.0, 0.0, 0.0}, 0.3, p);
    CHECK(std::isfinite(r.S));
    CHECK(r.S == 0.0);
    CHECK(r.E == 0.0);
    // below the floor the infection term is dropped
    const auto tiny = reaction_terms({1e-14, 0.0, 1e-14, 0.0}, 0.3, p);
    CHECK(tiny.E == 0.0);
}

TEST_CASE("reaction terms reject negative densities") {
    CHECK_THROWS_AS(reaction_terms({-1e-3, 0.0, 0.0, 0.0}, 0.3, reference_params()), std::invalid_argument);
    CHECK_THROWS_AS(reaction_terms({0.5, 0.0, -0.1, 0.0}, 0.3, reference_params()), std::invalid_argument);
}

TEST_CASE("interaction operators reduce to the reaction law on equilibria") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(0.0, 1.5);
    const auto p = reference_params();
    for (double V : {1.0, 2.5}) {
        const auto v = build_velocity_grid(V, 164);
        const double m = equilibrium_value(v);
        for (int trial = 0; trial < 50; ++trial) {
            const Compartments u{dist(rng), dist(rng), dist(rng), dist(rng)};
            std::array<std::vector<double>, kSpecies> f;
            for (std::size_t i = 0; i < kSpecies; ++i) f[i].assign(v.size(), m * u[i]);
            const double beta = dist(rng);
            const auto g = kinetic_interaction({f[0], f[1], f[2], f[3]}, beta, p, v);
            const auto rates = reaction_terms(u, beta, p);
            double total = 0.0;
            for (std::size_t i = 0; i < kSpecies; ++i) {
                CHECK(std::abs(density(g[i], v) - rates[i]) <= 1e-12);
                total += density(g[i], v);
            }
            // total over compartments, the dead compartment included
            CHECK(total + rates.D == doctest::Approx(recruitment(p, u.live()) - p.mu * u.live()).epsilon(1e-12).scale(1.0));
        }
    }
}

TEST_CASE("interaction operators vanish without population or recruitment") {
    auto p = reference_params();
    p.recruitment = Recruitment::Constant;
    p.recruitment_constant = 0.0;
    const auto v = build_velocity_grid(1.0, 8);
    const std::vector<double> zero(v.size(), 0.0);
    const auto g = kinetic_interaction({zero, zero, zero, zero}, 0.3, p, v);
    for (const auto& column : g) {
        for (double x : column) CHECK(x == 0.0);
    }
}

TEST_CASE("interaction operators check their inputs") {
    const auto p = reference_params();
    const auto v = build_velocity_grid(1.0, 4);
    std::vector<double> ok(4, 0.1), bad(4, 0.1), short_col(3, 0.1);
    bad[2] = -1e-9;
    CHECK_THROWS_AS(kinetic_interaction({ok, bad, ok, ok}, 0.3, p, v), std::invalid_argument);
    CHECK_THROWS_AS(kinetic_interaction({ok, ok, short_col, ok}, 0.3, p, v), std::invalid_argument);
}

TEST_CASE("literal exposed-to-infected coupling is opt-in") {
    auto p = reference_params();
    const auto v = build_velocity_grid(1.0, 4);
    const std::vector<double> s(4, 0.2), e(4, 0.3), i(4, 0.05), r(4, 0.0);
    const auto standard = kinetic_interaction({s, e, i, r}, 0.3, p, v);
    p.paper_literal_g3 = true;
    const auto literal = kinetic_interaction({s, e, i, r}, 0.3, p, v);
    // xi E - (gamma + mu + alpha) I against xi I - (gamma + mu + alpha) I, with E = 0.6, I = 0.1
    const double m = 2.0;
    CHECK(standard[2][0] * m == doctest::Approx(0.25 * 0.6 - (0.125 + 1.0 / 83.0 + 0.06) * 0.1));
    CHECK(literal[2][0] * m == doctest::Approx(0.25 * 0.1 - (0.125 + 1.0 / 83.0 + 0.06) * 0.1));
    CHECK(literal[1] == standard[1]);
}

TEST_CASE("reproduction number") {
    const auto p = reference_params();
    // xi beta / ((xi + mu)(gamma + alpha + mu)) in exact fractions
    CHECK(r0(p, 0.3) == doctest::Approx(1.4524715630567473).epsilon(1e-14));
    CHECK(r0(p, 0.0) == 0.0);
    const double threshold = (p.xi + p.mu) * (p.gamma + p.alpha + p.mu) / p.xi;
    CHECK(r0(p, threshold) == doctest::Approx(1.0).epsilon(1e-15));
    double previous = -1.0;
    for (double beta = 0.0; beta < 3.0; beta += 0.05) {
        const double r = r0(p, beta);
        CHECK(r > previous);
        previous = r;
    }
    ModelParams degenerate = p;
    degenerate.xi = 0.0;
    degenerate.mu = 0.0;
    CHECK_THROWS_AS(r0(degenerate, 0.3), std::invalid_argument);
}

TEST_CASE("transmission rate for a target reproduction number") {
    const auto p = reference_params();
    CHECK(beta_for_r0(p, 1.0) == doctest::Approx(0.20654449121788357).epsilon(1e-14));
    CHECK(beta_for_r0(p, 0.0) == 0.0);
    for (double x : {0.2, 2.0, 15.0}) {
        CHECK(std::abs(r0(p, beta_for_r0(p, x)) - x) <= 1e-14 * x);
    }
    ModelParams no_latency = p;
    no_latency.xi = 0.0;
    CHECK_THROWS_AS(beta_for_r0(no_latency, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(beta_for_r0(p, -1.0), std::invalid_argument);
}

TEST_CASE("piecewise transmission rate") {
    const auto one = stepwise_beta(StepwiseVariant::One);
    CHECK(beta_at(one, 10.0) == 0.075);
    CHECK(beta_at(one, 30.0) == 1.4995);
    CHECK(beta_at(one, 25.0) == 1.4995); // left-closed pieces
    CHECK(beta_at(one, 1e6) == 1.4995);

    const auto two = stepwise_beta(StepwiseVariant::Two);
    CHECK(beta_at(two, 10.0) == 0.075);
    CHECK(beta_at(two, 50.0) == 1.4995);
    CHECK(beta_at(two, 80.0) == 0.05);

    const auto flat = TransmissionRate::constant(0.3);
    for (double t : {0.0, 1.0, 1e3}) CHECK(beta_at(flat, t) == 0.3);
    CHECK_THROWS_AS(flat.at(-0.5), std::invalid_argument);

    CHECK_THROWS_AS(TransmissionRate({0.0, 0.0}, {0.1, 0.2}), std::invalid_argument);
    CHECK_THROWS_AS(TransmissionRate({0.0, 1.0}, {0.1, -0.2}), std::invalid_argument);
    CHECK_THROWS_AS(TransmissionRate({0.0}, {0.1, 0.2}), std::invalid_argument);
}

TEST_CASE("parameter validation") {
    auto p = reference_params();
    CHECK_NOTHROW(p.validate());
    p.gamma = -0.1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = reference_params();
    p.diffusivity[2] = -1e-3;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
