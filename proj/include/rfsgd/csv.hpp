#pragma once

#include <fstream>
#include <string>
#include <utility>
#include <vector>

namespace rfsgd {

std::string format_double(double v);        // %.12g, metric columns
std::string format_double_exact(double v);  // %.17g, values that must round-trip

/// CSV writer with `# key=value` provenance comment lines before the header.
class CsvFile {
 public:
  explicit CsvFile(const std::string& path);

  void comment(const std::string& key, const std::string& value);
  void row(const std::vector<std::string>& cells);

  /// Flushes and verifies the stream; call once after the last row.
  void close();

 private:
  std::string path_;
  std::ofstream out_;
};

/// Reads the leading `# key=value` comment block of a CSV file.
std::vector<std::pair<std::string, std::string>> read_provenance(const std::string& path);

}  // namespace rfsgd
