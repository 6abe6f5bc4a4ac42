#pragma once

// Locale-independent CSV rendering and atomic file output.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace mopo {

/// Shortest round-trip decimal form ("nan", "inf", "-inf" for non-finite).
std::string format_double(double value);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  void add(std::string name, std::vector<double> values);
  /// Comma separated, '.' decimal point, header row, '\n' line ends.
  [[nodiscard]] std::string render() const;
};

/// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace mopo
