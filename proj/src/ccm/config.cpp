#include "ccm/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ccm {

namespace {
std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}
}  // namespace

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw std::runtime_error("config line " + std::to_string(lineno) +
                                 ": malformed section header '" + t + "'");
      section = trim(t.substr(1, t.size() - 2));
      if (section.empty())
        throw std::runtime_error("config line " + std::to_string(lineno) +
                                 ": empty section name");
      cfg.data_[section];
      continue;
    }
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected key = value, got '" + t + "'");
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    if (key.empty())
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": empty key");
    if (section.empty())
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": key '" + key + "' outside any section");
    if (cfg.data_[section].count(key))
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": duplicate key '" + section + "." + key + "'");
    cfg.data_[section][key] = val;
  }
  return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

void RunConfig::set(const std::string& dotted, const std::string& value) {
  size_t dot = dotted.find('.');
  if (dot == std::string::npos)
    throw std::runtime_error("--set expects section.key=value, got '" + dotted +
                             "'");
  data_[dotted.substr(0, dot)][dotted.substr(dot + 1)] = value;
}

bool RunConfig::has(const std::string& section, const std::string& key) const {
  auto it = data_.find(section);
  return it != data_.end() && it->second.count(key) > 0;
}

std::string RunConfig::get(const std::string& section,
                           const std::string& key) const {
  if (!has(section, key))
    throw std::runtime_error("config: missing required key '" + section + "." +
                             key + "'");
  return data_.at(section).at(key);
}

std::string RunConfig::get_or(const std::string& section,
                              const std::string& key,
                              const std::string& fallback) const {
  return has(section, key) ? data_.at(section).at(key) : fallback;
}

double RunConfig::get_double(const std::string& section,
                             const std::string& key) const {
  const std::string v = get(section, key);
  try {
    size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw std::runtime_error("config: key '" + section + "." + key +
                             "' is not a number: '" + v + "'");
  }
}

double RunConfig::get_double_or(const std::string& section,
                                const std::string& key, double fallback) const {
  return has(section, key) ? get_double(section, key) : fallback;
}

long RunConfig::get_int(const std::string& section,
                        const std::string& key) const {
  const std::string v = get(section, key);
  try {
    size_t pos = 0;
    long d = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw std::runtime_error("config: key '" + section + "." + key +
                             "' is not an integer: '" + v + "'");
  }
}

long RunConfig::get_int_or(const std::string& section, const std::string& key,
                           long fallback) const {
  return has(section, key) ? get_int(section, key) : fallback;
}

std::vector<double> RunConfig::get_list_or(
    const std::string& section, const std::string& key,
    const std::vector<double>& fallback) const {
  if (!has(section, key)) return fallback;
  std::vector<double> out;
  std::stringstream ss(get(section, key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw std::runtime_error("config: bad list entry '" + item + "' in '" +
                               section + "." + key + "'");
    }
  }
  return out;
}

void RunConfig::require_known(
    const std::map<std::string, std::vector<std::string>>& allowed) const {
  std::string bad;
  for (const auto& [sec, kv] : data_) {
    auto it = allowed.find(sec);
    if (it == allowed.end()) {
      bad += " [" + sec + "]";
      continue;
    }
    for (const auto& [key, _] : kv)
      if (std::find(it->second.begin(), it->second.end(), key) ==
          it->second.end())
        bad += " " + sec + "." + key;
  }
  if (!bad.empty())
    throw std::runtime_error("config: unknown keys:" + bad);
}

}  // namespace ccm
