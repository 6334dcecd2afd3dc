#include "seird/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace seird {

namespace {

std::ofstream open_csv(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

} // namespace

std::string format_double(double x) {
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf, static_cast<std::size_t>(n));
}

void write_snapshots_csv(const std::filesystem::path& path, const std::vector<MacroState>& snapshots,
                         const SpatialGrid& grid) {
    auto out = open_csv(path);
    out << "t,x,S,E,I,R,D\n";
    for (const auto& s : snapshots) {
        if (s.size() != grid.n_nodes()) throw std::invalid_argument("snapshot does not match the grid");
        for (std::size_t j = 0; j < s.size(); ++j) {
            out << format_double(s.t) << ',' << format_double(grid.nodes[j]);
            for (std::size_t c = 0; c < kCompartmentNames.size(); ++c) out << ',' << format_double(s.field(c)[j]);
            out << '\n';
        }
    }
    finish(out, path);
}

void write_comparison_csv(const std::filesystem::path& path, const std::vector<ComparisonReport>& reports) {
    auto out = open_csv(path);
    out << "eps,t,species,l1,linf\n";
    for (const auto& r : reports) {
        for (std::size_t c = 0; c < kCompartmentNames.size(); ++c) {
            out << format_double(r.eps) << ',' << format_double(r.t) << ',' << kCompartmentNames[c] << ','
                << format_double(r.l1[c]) << ',' << format_double(r.linf[c]) << '\n';
        }
    }
    finish(out, path);
}

void write_series_csv(const std::filesystem::path& path, const ProbeSeries& series) {
    auto out = open_csv(path);
    out << "beta,t,S,E,I,R,D\n";
    for (std::size_t n = 0; n < series.t.size(); ++n) {
        out << format_double(series.beta[n]) << ',' << format_double(series.t[n]);
        for (const auto& v : series.values) out << ',' << format_double(v[n]);
        out << '\n';
    }
    finish(out, path);
}

} // namespace seird
