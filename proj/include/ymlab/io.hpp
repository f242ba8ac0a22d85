#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ymlab/field.hpp"
#include "ymlab/heat.hpp"

namespace ymlab {

// 17-significant-digit decimal (lossless for binary64); all text outputs use it
std::string fmt17(double x);

// Background container: "YMBG" magic, version, extents, spacing, algebra,
// kind metadata, then the raw little-endian f64 B payload in site-major
// order ((site*4 + mu)*d + color). Layout documented in the README.
void write_background(const std::filesystem::path& path, const BackgroundField& bg);
BackgroundField read_background(const std::filesystem::path& path);

void write_trace_csv(const std::filesystem::path& path, const HeatTraceSeries& series);

std::string sha256_file(const std::filesystem::path& path);

}  // namespace ymlab
