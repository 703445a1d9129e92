#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace chiralq {

struct ConfigError {
  int line = 0;  // 1-based; 0 when not tied to a line
  std::string message;
};

class ConfigException : public std::runtime_error {
 public:
  explicit ConfigException(std::vector<ConfigError> errors);
  const std::vector<ConfigError>& errors() const { return errors_; }
  static std::string format(const std::vector<ConfigError>& errors);

 private:
  std::vector<ConfigError> errors_;
};

// Line-oriented config text: "[section]" headers followed by "key = value"
// entries. '#' starts a comment. Malformed lines, duplicate keys and
// duplicate sections are reported with their line numbers. Parsing is
// strict: consumers mark entries as used and every unused entry is an
// "unknown key" error.
class ParsedConfig {
 public:
  struct Entry {
    std::string value;
    int line = 0;
    mutable bool used = false;
  };

  static ParsedConfig parse(const std::string& text);  // throws ConfigException

  bool has(const std::string& section, const std::string& key) const;
  // Returns nullptr when absent; marks the entry used otherwise.
  const Entry* consume(const std::string& section, const std::string& key) const;
  int section_line(const std::string& section) const;

  std::vector<std::string> section_names() const;
  std::vector<ConfigError> unused_entries() const;

 private:
  struct Section {
    int line = 0;
    std::map<std::string, Entry> entries;
  };
  std::map<std::string, Section> sections_;
  std::vector<std::string> order_;
};

// Value conversions with config-error reporting (line-aware).
double to_double(const ParsedConfig::Entry& e, const std::string& key);
long to_long(const ParsedConfig::Entry& e, const std::string& key);
bool to_bool(const ParsedConfig::Entry& e, const std::string& key);
std::vector<double> to_double_list(const ParsedConfig::Entry& e, const std::string& key);

}  // namespace chiralq
