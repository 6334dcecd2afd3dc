#include "seird/config.hpp"

#include <algorithm>
#include <array>

#include "seird/scenario_json.hpp"

namespace seird {

namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 16> kTopLevelKeys{
    "scenario", "solver",  "eps", "eps_list",    "sweep", "t_final",       "output_times", "probe_x",
    "series_interval", "out", "bc",  "recruitment", "ic",    "beta_schedule", "beta",         "micro_init"};

std::size_t line_of(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

template <class T>
T get_as(const json& doc, const char* key) {
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(key, "wrong type");
    }
}

std::vector<double> number_or_list(const json& doc, const char* key) {
    const json& v = doc.at(key);
    if (v.is_number()) return {v.get<double>()};
    return get_as<std::vector<double>>(doc, key);
}

template <class Parse>
auto parse_field(const json& doc, const char* key, Parse&& parse) {
    const auto text = get_as<std::string>(doc, key);
    try {
        return parse(text);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(key, e.what());
    }
}

SolverChoice parse_solver(std::string_view s) {
    if (s == "kinetic") return SolverChoice::Kinetic;
    if (s == "macro") return SolverChoice::Macro;
    if (s == "both") return SolverChoice::Both;
    throw std::invalid_argument("expected kinetic, macro or both, got '" + std::string(s) + "'");
}

SweepKind parse_sweep(std::string_view s) {
    if (s == "none") return SweepKind::None;
    if (s == "eps") return SweepKind::Eps;
    if (s == "beta") return SweepKind::Beta;
    throw std::invalid_argument("expected none, eps or beta, got '" + std::string(s) + "'");
}

BetaSchedule parse_schedule(std::string_view s) {
    if (s == "const") return BetaSchedule::Constant;
    if (s == "step1") return BetaSchedule::Step1;
    if (s == "step2") return BetaSchedule::Step2;
    throw std::invalid_argument("expected const, step1 or step2, got '" + std::string(s) + "'");
}

MicroInit parse_micro_init(std::string_view s) {
    if (s == "equilibrium") return MicroInit::LocalEquilibrium;
    if (s == "zero") return MicroInit::Zero;
    throw std::invalid_argument("expected equilibrium or zero, got '" + std::string(s) + "'");
}

std::vector<double> default_output_times(double t_final) {
    std::vector<double> times;
    for (double t : {0.0, 0.5, 1.0, 5.0, 10.0}) {
        if (t <= t_final) times.push_back(t);
    }
    if (times.back() != t_final) times.push_back(t_final);
    return times;
}

} // namespace

RunConfig parse_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("", "parse error at line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
    }
    if (!doc.is_object()) throw ConfigError("", "configuration must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (std::ranges::find(kTopLevelKeys, key) == kTopLevelKeys.end()) {
            throw ConfigError(key, "unknown key");
        }
    }

    RunConfig cfg;
    if (!doc.contains("scenario")) throw ConfigError("scenario", "missing");
    if (const json& sc = doc.at("scenario"); sc.is_string()) {
        try {
            cfg.scenario = find_scenario(sc.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ConfigError("scenario", e.what());
        }
    } else {
        cfg.scenario = scenario_from_json(sc, "scenario");
    }
    Scenario& s = cfg.scenario;

    if (doc.contains("bc")) s.bc = parse_field(doc, "bc", parse_boundary);
    if (doc.contains("ic")) s.initial = parse_field(doc, "ic", parse_initial_condition);
    if (doc.contains("recruitment")) s.params.recruitment = parse_field(doc, "recruitment", parse_recruitment);

    const BetaSchedule schedule =
        doc.contains("beta_schedule") ? parse_field(doc, "beta_schedule", parse_schedule) : BetaSchedule::Scenario;
    try {
        switch (schedule) {
        case BetaSchedule::Step1: s.rate = stepwise_beta(StepwiseVariant::One); break;
        case BetaSchedule::Step2: s.rate = stepwise_beta(StepwiseVariant::Two); break;
        case BetaSchedule::Constant:
            if (!doc.contains("beta") && !s.rate.is_constant()) {
                throw ConfigError("beta", "const schedule needs a beta value for a step-wise scenario");
            }
            break;
        case BetaSchedule::Scenario: break;
        }
        if (doc.contains("beta")) {
            if (schedule == BetaSchedule::Step1 || schedule == BetaSchedule::Step2) {
                throw ConfigError("beta", "conflicts with a step-wise beta_schedule");
            }
            s.rate = TransmissionRate::constant(get_as<double>(doc, "beta"));
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError("beta", e.what());
    }

    if (doc.contains("solver")) cfg.solver = parse_field(doc, "solver", parse_solver);
    if (doc.contains("sweep")) cfg.sweep = parse_field(doc, "sweep", parse_sweep);
    if (doc.contains("micro_init")) cfg.micro_init = parse_field(doc, "micro_init", parse_micro_init);
    if (doc.contains("eps")) cfg.eps = get_as<double>(doc, "eps");
    if (!(cfg.eps > 0.0)) throw ConfigError("eps", "must be positive");
    cfg.eps_list = doc.contains("eps_list") ? number_or_list(doc, "eps_list") : s.eps_list;
    if (cfg.eps_list.empty() || std::ranges::any_of(cfg.eps_list, [](double e) { return !(e > 0.0); })) {
        throw ConfigError("eps_list", "needs at least one positive value");
    }

    cfg.t_final = doc.contains("t_final") ? get_as<double>(doc, "t_final") : s.t_final;
    if (!(cfg.t_final >= 0.0)) throw ConfigError("t_final", "must be nonnegative");
    s.t_final = cfg.t_final;

    cfg.output_times = doc.contains("output_times") ? number_or_list(doc, "output_times")
                                                    : default_output_times(cfg.t_final);
    for (double t : cfg.output_times) {
        if (!(t >= 0.0 && t <= cfg.t_final)) {
            throw ConfigError("output_times", "time " + std::to_string(t) + " lies outside [0, t_final = " +
                                                  std::to_string(cfg.t_final) + "]");
        }
    }

    cfg.probe_x = doc.contains("probe_x") ? number_or_list(doc, "probe_x") : std::vector<double>{s.probe_x};
    for (double x : cfg.probe_x) {
        if (!(std::abs(x) <= s.half_length)) throw ConfigError("probe_x", "probe lies outside the domain");
    }
    if (doc.contains("series_interval")) cfg.series_interval = get_as<double>(doc, "series_interval");
    if (!(cfg.series_interval > 0.0)) throw ConfigError("series_interval", "must be positive");
    if (doc.contains("out")) cfg.out_dir = get_as<std::string>(doc, "out");
    if (cfg.out_dir.empty()) throw ConfigError("out", "must not be empty");

    if (s.bc == BoundaryKind::Inflow && cfg.solver != SolverChoice::Kinetic) {
        throw ConfigError("bc", "inflow boundaries are only available with solver = kinetic");
    }
    if (s.bc == BoundaryKind::Inflow && cfg.sweep == SweepKind::Eps) {
        throw ConfigError("bc", "the eps sweep compares against the macro solver, which has no inflow boundary");
    }
    try {
        s.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("scenario", e.what());
    }
    return cfg;
}

std::string_view to_string(SolverChoice s) {
    switch (s) {
    case SolverChoice::Kinetic: return "kinetic";
    case SolverChoice::Macro: return "macro";
    case SolverChoice::Both: return "both";
    }
    return "?";
}

std::string_view to_string(SweepKind s) {
    switch (s) {
    case SweepKind::None: return "none";
    case SweepKind::Eps: return "eps";
    case SweepKind::Beta: return "beta";
    }
    return "?";
}

} // namespace seird
