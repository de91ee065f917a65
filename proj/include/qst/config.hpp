#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qst {

// Flat key=value configuration. Lines starting with '#' and blank lines are
// ignored; keys are case-sensitive; later assignments win.
class Config {
 public:
  Config() = default;

  static Config parse(const std::string& text);
  static Config load(const std::string& path);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::optional<std::string> get(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  std::vector<double> get_list(const std::string& key,
                               const std::vector<double>& fallback) const;

  // Deterministic key-sorted echo, one "key=value" per line.
  std::string echo() const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace qst
