//==============================================================================
// config.hpp
// Flat sectioned key-value run configuration:  [section] lines followed by
// key = value pairs, '#' comments.  Unknown keys are hard errors, and the
// full set is echoed into every output artifact.
//==============================================================================
#pragma once

#include <map>
#include <string>
#include <vector>

namespace ccm {

class RunConfig {
public:
  // parse from text; throws std::runtime_error with line diagnostics
  static RunConfig parse(const std::string& text);
  static RunConfig parse_file(const std::string& path);

  // "section.key=value" override (the CLI --set flag)
  void set(const std::string& dotted, const std::string& value);

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key) const;
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double_or(const std::string& section, const std::string& key,
                       double fallback) const;
  long get_int(const std::string& section, const std::string& key) const;
  long get_int_or(const std::string& section, const std::string& key,
                  long fallback) const;
  std::vector<double> get_list_or(const std::string& section,
                                  const std::string& key,
                                  const std::vector<double>& fallback) const;

  // validate against the allowed key set of a command; throws listing the
  // offending section.key pairs
  void require_known(
      const std::map<std::string, std::vector<std::string>>& allowed) const;

  const std::map<std::string, std::map<std::string, std::string>>& sections()
      const {
    return data_;
  }

private:
  std::map<std::string, std::map<std::string, std::string>> data_;
};

}  // namespace ccm
