#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gdr/harness.hpp"

namespace gdr {

/// Column names, in file order.
const std::vector<std::string>& csv_columns();

/// Header plus one LF-terminated row per log; reals use 9 significant digits.
void write_csv(std::ostream& out, const std::vector<GenerationLog>& logs);
/// Throws std::runtime_error naming the path on I/O failure.
void write_csv(const std::vector<GenerationLog>& logs, const std::filesystem::path& path);

std::string format_real(double v);

}  // namespace gdr
