#pragma once

#include <string>
#include <vector>

namespace qst {

// CSV with '#'-prefixed header comments (config echo, units, seed) followed by
// a column-name row. Doubles are written with 17 significant digits so that
// identical runs produce bit-identical files.
class CsvWriter {
 public:
  explicit CsvWriter(std::string path);

  void comment(const std::string& text);  // may span multiple lines
  void columns(const std::vector<std::string>& names);
  void row(const std::vector<double>& values);
  void raw_row(const std::string& line);

  // Writes the buffered content; throws on I/O failure.
  void write() const;
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::string buffer_;
};

std::string format_double(double v);

}  // namespace qst
