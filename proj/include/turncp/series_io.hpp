#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "turncp/errors.hpp"

namespace turncp::io {

// Shortest decimal representation that round-trips the exact double; used
// for every numeric value written to disk so outputs are byte-reproducible.
std::string format_double(double value);

// Atomically replace `path` with `content` (temp file + rename); the target
// never holds partial output.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

// Read a single-column series: one decimal value per line, optional header
// on the first line, CR/LF tolerated. Non-numeric or non-finite entries
// raise IoError naming the offending line.
std::vector<double> read_series(const std::filesystem::path& path);

// Write a single-column series with a header line.
void write_series(const std::filesystem::path& path, std::span<const double> samples,
                  const std::string& header = "value");

}  // namespace turncp::io
