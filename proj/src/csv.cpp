#include "qst/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qst {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(std::string path) : path_(std::move(path)) {}

void CsvWriter::comment(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) buffer_ += "# " + line + "\n";
}

void CsvWriter::columns(const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) buffer_ += ",";
    buffer_ += names[i];
  }
  buffer_ += "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) buffer_ += ",";
    buffer_ += format_double(values[i]);
  }
  buffer_ += "\n";
}

void CsvWriter::raw_row(const std::string& line) { buffer_ += line + "\n"; }

void CsvWriter::write() const {
  std::ofstream out(path_);
  if (!out) throw std::runtime_error("cannot open output file: " + path_);
  out << buffer_;
  if (!out.good()) throw std::runtime_error("failed writing output file: " + path_);
}

}  // namespace qst
