#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "tracelab/user_metrics.hpp"

namespace tracelab {

// Shortest round-trippable-ish text for doubles ("%.10g"); NaN prints "nan".
std::string format_double(double v);

// Binary mode so output bytes are platform-independent. Throws IoError.
std::ofstream open_csv(const std::filesystem::path& path);

std::vector<std::string> split_csv_line(const std::string& line);

// Reads a "x,prob" table as written by the ccdf outputs.
CcdfTable read_ccdf_csv(const std::filesystem::path& path);

}  // namespace tracelab
