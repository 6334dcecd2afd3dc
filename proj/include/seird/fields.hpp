#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

namespace seird {

inline constexpr std::array<std::string_view, 5> kCompartmentNames{"S", "E", "I", "R", "D"};

/// Node-based densities of the five compartments at one time.
struct MacroState {
    std::vector<double> S, E, I, R, D;
    double t = 0.0;

    MacroState() = default;
    explicit MacroState(std::size_t n_nodes, double time = 0.0)
        : S(n_nodes), E(n_nodes), I(n_nodes), R(n_nodes), D(n_nodes), t(time) {}

    std::size_t size() const { return S.size(); }

    std::vector<double>& field(std::size_t c) {
        return *std::array{&S, &E, &I, &R, &D}[c];
    }
    const std::vector<double>& field(std::size_t c) const {
        return *std::array{&S, &E, &I, &R, &D}[c];
    }

    friend bool operator==(const MacroState&, const MacroState&) = default;
};

} // namespace seird
