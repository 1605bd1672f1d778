#include "rfsgd/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace rfsgd {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string format_double_exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvFile::CsvFile(const std::string& path) : path_(path), out_(path) {
  if (!out_) throw std::runtime_error("cannot open output file " + path);
}

void CsvFile::close() {
  out_.flush();
  out_.close();
  if (!out_) throw std::runtime_error("write failed for " + path_);
}

void CsvFile::comment(const std::string& key, const std::string& value) {
  out_ << "# " << key << "=" << value << "\n";
}

void CsvFile::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out_ << cells[i] << (i + 1 == cells.size() ? '\n' : ',');
  }
}

std::vector<std::pair<std::string, std::string>> read_provenance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) != 0) break;
    const std::string body = line.substr(2);
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("malformed provenance line in " + path + ": " + line);
    }
    pairs.emplace_back(body.substr(0, eq), body.substr(eq + 1));
  }
  return pairs;
}

}  // namespace rfsgd
