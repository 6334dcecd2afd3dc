#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "seird/analysis.hpp"
#include "seird/fields.hpp"
#include "seird/grid.hpp"

namespace seird {

/// 17 significant digits; reads back to the same double.
std::string format_double(double x);

/// t,x,S,E,I,R,D in long format.
void write_snapshots_csv(const std::filesystem::path& path, const std::vector<MacroState>& snapshots,
                         const SpatialGrid& grid);
/// eps,t,species,l1,linf
void write_comparison_csv(const std::filesystem::path& path, const std::vector<ComparisonReport>& reports);
/// beta,t,S,E,I,R,D at one probe node.
void write_series_csv(const std::filesystem::path& path, const ProbeSeries& series);

} // namespace seird
