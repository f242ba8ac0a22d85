#pragma once

#include <filesystem>

#include "ymlab/fit.hpp"

namespace ymlab {

// Self-contained log-log SVG of |subtracted trace| vs t with the fitted
// small-t model overlaid; the numeric data table is embedded in a <desc>
// block at full precision.
void write_trace_plot(const std::filesystem::path& path, const HeatTraceSeries& series,
                      const SmallTFit& fit, const std::string& title);

}  // namespace ymlab
