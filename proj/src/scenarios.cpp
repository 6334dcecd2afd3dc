#include "seird/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "seird/scenario_json.hpp"

namespace seird {

namespace {

using nlohmann::json;

constexpr double kPaperVelocityBound = 1.0;

Scenario paper_base(std::string name, bool with_diffusion) {
    Scenario s;
    s.name = std::move(name);
    s.params = paper_params(with_diffusion);
    s.eps_list = paper_eps_list();
    return s;
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
    if (!obj.is_object()) throw ConfigError(path, "expected an object");
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (auto a : allowed) known = known || key == a;
        if (!known) throw ConfigError(path + "." + key, "unknown key");
    }
}

template <class T>
T read(const json& obj, const std::string& path, const char* key, T fallback) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    try {
        return it->template get<T>();
    } catch (const json::exception&) {
        throw ConfigError(path + "." + key, "wrong type");
    }
}

} // namespace

void Scenario::validate() const {
    params.validate();
    if (!(dt > 0.0)) throw std::invalid_argument("scenario " + name + ": dt must be positive");
    if (!(t_final >= 0.0)) throw std::invalid_argument("scenario " + name + ": t_final must be nonnegative");
    if (!(half_length > 0.0) || n_cells < 2) throw std::invalid_argument("scenario " + name + ": bad spatial grid");
    if (!(velocity_bound > 0.0) || n_velocities < 2 || n_velocities % 2 != 0) {
        throw std::invalid_argument("scenario " + name + ": bad velocity grid");
    }
    for (double eps : eps_list) {
        if (!(eps > 0.0)) throw std::invalid_argument("scenario " + name + ": eps values must be positive");
    }
    if (initial == InitialCondition::Uniform) {
        for (std::size_t i = 0; i < kSpecies; ++i) {
            if (!(uniform_state[i] >= 0.0)) throw std::invalid_argument("scenario " + name + ": negative uniform state");
        }
    }
}

ModelParams paper_params(bool with_diffusion) {
    ModelParams p;
    p.recruitment = Recruitment::ProportionalToN;
    p.mu = 1.0 / 83.0;
    p.alpha = 0.06;
    p.xi = 1.0 / 4.0;
    p.gamma = 1.0 / 8.0;
    p.diffusivity = with_diffusion ? std::array{0.05, 0.025, 0.001, 0.0} : std::array{0.0, 0.0, 0.0, 0.0};
    p.calibrate(kPaperVelocityBound);
    return p;
}

MacroState initial_condition_i(const SpatialGrid& grid) {
    MacroState s(grid.n_nodes());
    for (std::size_t j = 0; j < grid.n_nodes(); ++j) {
        const double x = grid.nodes[j];
        const double a = (x - 0.5) / 0.12;
        const double b = (x + 0.5) / 0.12;
        s.S[j] = 2.6 * (std::exp(-a * a) + std::exp(-b * b)) / (0.9 * std::numbers::pi);
        s.I[j] = 0.04 * std::exp(-2.0 * x * x);
    }
    return s;
}

MacroState initial_condition_ii(const SpatialGrid& grid) {
    MacroState s(grid.n_nodes());
    for (std::size_t j = 0; j < grid.n_nodes(); ++j) {
        const double x = grid.nodes[j];
        const double a = x / 1.4;
        s.S[j] = 0.96 * std::exp(-10.0 * a * a);
        s.I[j] = 0.04 * std::exp(-2.0 * x * x);
    }
    return s;
}

MacroState uniform_initial_condition(const SpatialGrid& grid, const Compartments& c) {
    MacroState s(grid.n_nodes());
    std::ranges::fill(s.S, c.S);
    std::ranges::fill(s.E, c.E);
    std::ranges::fill(s.I, c.I);
    std::ranges::fill(s.R, c.R);
    return s;
}

TransmissionRate stepwise_beta(StepwiseVariant variant) {
    if (variant == StepwiseVariant::One) {
        constexpr double horizon = 50.0;
        return TransmissionRate({0.0, horizon / 2.0}, {0.075, 1.4995});
    }
    constexpr double horizon = 100.0;
    return TransmissionRate({0.0, horizon / 3.0, 2.0 * horizon / 3.0}, {0.075, 1.4995, 0.05});
}

std::vector<BetaSuiteEntry> constant_beta_suite() {
    // 1.12 is kept as published even though 0.12 would continue the beta/R0 pattern.
    const std::array<std::pair<double, double>, 6> table{
        {{0.03, 0.2}, {0.075, 0.5}, {1.12, 0.8}, {0.1799, 1.2}, {0.7497, 5.0}, {2.2491, 15.0}}};
    std::vector<BetaSuiteEntry> suite;
    for (const auto& [beta, label] : table) suite.push_back({TransmissionRate::constant(beta), label});
    return suite;
}

std::vector<double> paper_eps_list() {
    std::vector<double> list;
    for (int k : {0, 1, 2, 3, 4, 6}) list.push_back(2.0 * std::pow(10.0, -k));
    return list;
}

std::vector<Scenario> scenario_registry() {
    std::vector<Scenario> out;
    const double beta_r0_two = beta_for_r0(paper_params(), 2.0);

    for (bool diffusion : {true, false}) {
        Scenario s = paper_base(diffusion ? "paper-i" : "paper-i-nodiff", diffusion);
        s.rate = TransmissionRate::constant(beta_r0_two);
        s.initial = InitialCondition::TwinGaussian;
        s.probe_x = 0.0;
        s.t_final = 10.0;
        out.push_back(s);
    }
    for (bool diffusion : {true, false}) {
        Scenario s = paper_base(diffusion ? "paper-ii" : "paper-ii-nodiff", diffusion);
        s.rate = TransmissionRate::constant(beta_r0_two);
        s.initial = InitialCondition::WideGaussian;
        s.probe_x = 0.0;
        s.t_final = 10.0;
        out.push_back(s);
    }
    {
        Scenario s = paper_base("paper-step1", true);
        s.rate = stepwise_beta(StepwiseVariant::One);
        s.probe_x = 0.5;
        s.t_final = 50.0;
        out.push_back(s);
    }
    {
        Scenario s = paper_base("paper-step2", true);
        s.rate = stepwise_beta(StepwiseVariant::Two);
        s.probe_x = 0.5;
        s.t_final = 100.0;
        out.push_back(s);
    }
    {
        Scenario s = paper_base("homogeneous", false);
        s.rate = TransmissionRate::constant(0.3);
        s.initial = InitialCondition::Uniform;
        s.uniform_state = {0.96, 0.0, 0.04, 0.0};
        s.t_final = 10.0;
        out.push_back(s);
    }
    return out;
}

Scenario find_scenario(std::string_view name) {
    for (auto& s : scenario_registry()) {
        if (s.name == name) return s;
    }
    throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

SpatialGrid scenario_grid(const Scenario& s) { return build_spatial_grid(s.half_length, s.n_cells); }

VelocityGrid scenario_velocity_grid(const Scenario& s) {
    return build_velocity_grid(s.velocity_bound, s.n_velocities);
}

MacroState initial_state(const Scenario& s, const SpatialGrid& grid) {
    switch (s.initial) {
    case InitialCondition::TwinGaussian: return initial_condition_i(grid);
    case InitialCondition::WideGaussian: return initial_condition_ii(grid);
    case InitialCondition::Uniform: return uniform_initial_condition(grid, s.uniform_state);
    }
    throw std::logic_error("unhandled initial condition");
}

KineticSetup kinetic_setup(const Scenario& s) {
    s.validate();
    KineticSetup setup;
    setup.grid = scenario_grid(s);
    setup.vgrid = scenario_velocity_grid(s);
    setup.params = s.params;
    setup.params.calibrate(s.velocity_bound);
    setup.rate = s.rate;
    setup.dt = s.dt;
    switch (s.bc) {
    case BoundaryKind::Periodic: setup.bc = BoundaryCondition::periodic(); break;
    case BoundaryKind::Reflecting: setup.bc = BoundaryCondition::reflecting(); break;
    case BoundaryKind::Inflow: {
        // Equilibrium inflow carrying the initial boundary densities.
        const MacroState init = initial_state(s, setup.grid);
        const Compartments left{init.S.front(), init.E.front(), init.I.front(), init.R.front()};
        const Compartments right{init.S.back(), init.E.back(), init.I.back(), init.R.back()};
        setup.bc = BoundaryCondition::equilibrium_inflow(left, right, setup.vgrid);
        break;
    }
    }
    return setup;
}

MacroSetup macro_setup(const Scenario& s) {
    s.validate();
    MacroSetup setup;
    setup.grid = scenario_grid(s);
    setup.params = s.params;
    setup.params.calibrate(s.velocity_bound);
    setup.rate = s.rate;
    setup.bc = s.bc;
    setup.dt = s.dt;
    return setup;
}

Trajectory run_kinetic(const Scenario& s, double eps, double t_final,
                       const std::vector<double>& output_times, MicroInit mode,
                       const KineticObserver& observer) {
    const KineticSetup setup = kinetic_setup(s);
    return run_kinetic(setup, initial_state(s, setup.grid), eps, t_final, output_times, mode, observer);
}

Trajectory run_macro(const Scenario& s, double t_final, const std::vector<double>& output_times,
                     const MacroObserver& observer) {
    const MacroSetup setup = macro_setup(s);
    return run_macro(setup, initial_state(s, setup.grid), t_final, output_times, observer);
}

std::string_view to_string(InitialCondition ic) {
    switch (ic) {
    case InitialCondition::TwinGaussian: return "i";
    case InitialCondition::WideGaussian: return "ii";
    case InitialCondition::Uniform: return "uniform";
    }
    return "?";
}

std::string_view to_string(BoundaryKind bc) {
    switch (bc) {
    case BoundaryKind::Periodic: return "periodic";
    case BoundaryKind::Inflow: return "inflow";
    case BoundaryKind::Reflecting: return "neumann";
    }
    return "?";
}

std::string_view to_string(Recruitment r) {
    return r == Recruitment::ProportionalToN ? "proportional" : "constant";
}

InitialCondition parse_initial_condition(std::string_view text) {
    if (text == "i") return InitialCondition::TwinGaussian;
    if (text == "ii") return InitialCondition::WideGaussian;
    if (text == "uniform") return InitialCondition::Uniform;
    throw std::invalid_argument("unknown initial condition '" + std::string(text) + "' (expected i, ii or uniform)");
}

BoundaryKind parse_boundary(std::string_view text) {
    if (text == "periodic") return BoundaryKind::Periodic;
    if (text == "inflow") return BoundaryKind::Inflow;
    if (text == "neumann") return BoundaryKind::Reflecting;
    throw std::invalid_argument("unknown boundary '" + std::string(text) + "' (expected periodic, inflow or neumann)");
}

Recruitment parse_recruitment(std::string_view text) {
    if (text == "proportional") return Recruitment::ProportionalToN;
    if (text == "constant") return Recruitment::Constant;
    throw std::invalid_argument("unknown recruitment mode '" + std::string(text) + "' (expected proportional or constant)");
}

json scenario_to_json(const Scenario& s) {
    const auto& p = s.params;
    return json{
        {"name", s.name},
        {"params",
         {{"recruitment", to_string(p.recruitment)},
          {"recruitment_constant", p.recruitment_constant},
          {"mu", p.mu},
          {"xi", p.xi},
          {"gamma", p.gamma},
          {"alpha", p.alpha},
          {"diffusivity", p.diffusivity},
          {"paper_literal_g3", p.paper_literal_g3}}},
        {"beta", {{"breakpoints", s.rate.breakpoints()}, {"values", s.rate.values()}}},
        {"grid", {{"half_length", s.half_length}, {"n_cells", s.n_cells}}},
        {"velocity", {{"half_width", s.velocity_bound}, {"n_nodes", s.n_velocities}}},
        {"dt", s.dt},
        {"initial_condition", to_string(s.initial)},
        {"uniform_state",
         {{"S", s.uniform_state.S}, {"E", s.uniform_state.E}, {"I", s.uniform_state.I}, {"R", s.uniform_state.R}}},
        {"bc", to_string(s.bc)},
        {"eps_list", s.eps_list},
        {"probe_x", s.probe_x},
        {"t_final", s.t_final},
    };
}

Scenario scenario_from_json(const json& doc, const std::string& path) {
    check_keys(doc, path,
               {"name", "params", "beta", "grid", "velocity", "dt", "initial_condition", "uniform_state",
                "bc", "eps_list", "probe_x", "t_final"});
    Scenario s;
    s.name = read<std::string>(doc, path, "name", "custom");

    auto wrap = [&](const std::string& key, auto&& fn) {
        try {
            fn();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(path + "." + key, e.what());
        }
    };

    if (const auto it = doc.find("params"); it != doc.end()) {
        const std::string sub = path + ".params";
        check_keys(*it, sub,
                   {"recruitment", "recruitment_constant", "mu", "xi", "gamma", "alpha", "diffusivity",
                    "paper_literal_g3"});
        auto& p = s.params;
        wrap("params.recruitment",
             [&] { p.recruitment = parse_recruitment(read<std::string>(*it, sub, "recruitment", "proportional")); });
        p.recruitment_constant = read<double>(*it, sub, "recruitment_constant", 0.0);
        p.mu = read<double>(*it, sub, "mu", p.mu);
        p.xi = read<double>(*it, sub, "xi", p.xi);
        p.gamma = read<double>(*it, sub, "gamma", p.gamma);
        p.alpha = read<double>(*it, sub, "alpha", p.alpha);
        p.diffusivity = read<std::array<double, kSpecies>>(*it, sub, "diffusivity", p.diffusivity);
        p.paper_literal_g3 = read<bool>(*it, sub, "paper_literal_g3", false);
        wrap("params", [&] { p.validate(); });
    } else {
        s.params = paper_params();
    }

    if (const auto it = doc.find("beta"); it != doc.end()) {
        const std::string sub = path + ".beta";
        if (it->is_number()) {
            wrap("beta", [&] { s.rate = TransmissionRate::constant(it->get<double>()); });
        } else {
            check_keys(*it, sub, {"breakpoints", "values"});
            wrap("beta", [&] {
                s.rate = TransmissionRate(read<std::vector<double>>(*it, sub, "breakpoints", {}),
                                          read<std::vector<double>>(*it, sub, "values", {}));
            });
        }
    }
    if (const auto it = doc.find("grid"); it != doc.end()) {
        check_keys(*it, path + ".grid", {"half_length", "n_cells"});
        s.half_length = read<double>(*it, path + ".grid", "half_length", s.half_length);
        s.n_cells = read<int>(*it, path + ".grid", "n_cells", s.n_cells);
    }
    if (const auto it = doc.find("velocity"); it != doc.end()) {
        check_keys(*it, path + ".velocity", {"half_width", "n_nodes"});
        s.velocity_bound = read<double>(*it, path + ".velocity", "half_width", s.velocity_bound);
        s.n_velocities = read<int>(*it, path + ".velocity", "n_nodes", s.n_velocities);
    }
    s.dt = read<double>(doc, path, "dt", s.dt);
    wrap("initial_condition", [&] {
        s.initial = parse_initial_condition(read<std::string>(doc, path, "initial_condition", "i"));
    });
    if (const auto it = doc.find("uniform_state"); it != doc.end()) {
        const std::string sub = path + ".uniform_state";
        check_keys(*it, sub, {"S", "E", "I", "R"});
        s.uniform_state = {read<double>(*it, sub, "S", 0.0), read<double>(*it, sub, "E", 0.0),
                           read<double>(*it, sub, "I", 0.0), read<double>(*it, sub, "R", 0.0)};
    }
    wrap("bc", [&] { s.bc = parse_boundary(read<std::string>(doc, path, "bc", "periodic")); });
    s.eps_list = read<std::vector<double>>(doc, path, "eps_list", paper_eps_list());
    s.probe_x = read<double>(doc, path, "probe_x", s.probe_x);
    s.t_final = read<double>(doc, path, "t_final", s.t_final);

    wrap("", [&] { s.validate(); });
    s.params.calibrate(s.velocity_bound);
    return s;
}

std::string serialize_scenario(const Scenario& s) { return scenario_to_json(s).dump(2) + "\n"; }

Scenario parse_scenario(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("scenario parse error: ") + e.what());
    }
    return scenario_from_json(doc);
}

} // namespace seird
