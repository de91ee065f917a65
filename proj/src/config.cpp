#include "qst/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qst {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value, got '" + t + "'");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": empty key");
    cfg.values_[key] = value;
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void Config::set(const std::string& key, const std::string& value) {
  values_[key] = value;
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

std::optional<std::string> Config::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string Config::get_string(const std::string& key,
                               const std::string& fallback) const {
  auto v = get(key);
  return v ? *v : fallback;
}

double Config::get_double(const std::string& key, double fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  try {
    std::size_t pos = 0;
    double d = std::stod(*v, &pos);
    if (pos != v->size()) throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': bad number '" + *v + "'");
  }
}

int Config::get_int(const std::string& key, int fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  try {
    std::size_t pos = 0;
    int i = std::stoi(*v, &pos);
    if (pos != v->size()) throw std::invalid_argument("trailing characters");
    return i;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': bad integer '" + *v + "'");
  }
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  try {
    std::size_t pos = 0;
    std::uint64_t u = std::stoull(*v, &pos);
    if (pos != v->size()) throw std::invalid_argument("trailing characters");
    return u;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': bad integer '" + *v + "'");
  }
}

std::vector<double> Config::get_list(const std::string& key,
                                     const std::vector<double>& fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  std::vector<double> out;
  std::string item;
  std::istringstream in(*v);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw std::invalid_argument("config key '" + key + "': bad list entry '" +
                                  item + "'");
    }
  }
  if (out.empty())
    throw std::invalid_argument("config key '" + key + "': empty list");
  return out;
}

std::string Config::echo() const {
  std::ostringstream out;
  for (const auto& [k, v] : values_) out << k << "=" << v << "\n";
  return out.str();
}

}  // namespace qst
