#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "seird/config.hpp"

namespace seird {

struct RunSummary {
    std::vector<std::filesystem::path> files;
    std::vector<double> r0_by_piece;  // reproduction number of every beta piece
    double conservation_drift = 0.0;  // worst relative change of the total population
    double wall_seconds = 0.0;
};

/// Executes the requested solver(s) or sweep and writes CSV files under cfg.out_dir.
/// Throws on solver failure; nothing is reported as success unless every file was written.
RunSummary run(const RunConfig& cfg, std::ostream& log);

} // namespace seird
