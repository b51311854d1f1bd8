#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "periodkit/signal.hpp"

namespace periodkit {

// Signal CSV: one sample per line, '#'-prefixed comment lines allowed,
// C-locale decimal point, 17 significant digits on write so values
// round-trip bit-exactly.

Signal read_signal_csv(const std::filesystem::path& path);

void write_signal_csv(const std::filesystem::path& path, std::span<const double> samples,
                      const std::string& comment = {});

// Serializes a double with enough digits to round-trip.
std::string format_double(double v);

// Writes content to a temp file in the target directory, then renames over
// the destination.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

// Minimal table writer for the report CSVs: header row plus pre-formatted
// cells, comma separated.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_string() const;
  void write(const std::filesystem::path& path) const;
};

}  // namespace periodkit
