#include "chiralq/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace chiralq {

namespace {

std::string trim(std::string_view s) {
  const auto* ws = " \t\r";
  auto begin = s.find_first_not_of(ws);
  if (begin == std::string_view::npos) return {};
  auto end = s.find_last_not_of(ws);
  return std::string(s.substr(begin, end - begin + 1));
}

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '-' || c == '.';
  });
}

}  // namespace

ConfigException::ConfigException(std::vector<ConfigError> errors)
    : std::runtime_error(format(errors)), errors_(std::move(errors)) {}

std::string ConfigException::format(const std::vector<ConfigError>& errors) {
  std::ostringstream out;
  out << "configuration error" << (errors.size() > 1 ? "s" : "") << ":";
  for (const auto& e : errors) {
    out << "\n  ";
    if (e.line > 0) out << "line " << e.line << ": ";
    out << e.message;
  }
  return out.str();
}

ParsedConfig ParsedConfig::parse(const std::string& text) {
  ParsedConfig config;
  std::vector<ConfigError> errors;
  std::istringstream stream(text);
  std::string raw;
  std::string current;
  int line_no = 0;

  while (std::getline(stream, raw)) {
    ++line_no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        errors.push_back({line_no, "unterminated section header"});
        continue;
      }
      current = trim(std::string_view(line).substr(1, line.size() - 2));
      if (!valid_identifier(current)) {
        errors.push_back({line_no, "invalid section name '" + current + "'"});
        current.clear();
        continue;
      }
      auto [it, inserted] = config.sections_.try_emplace(current);
      if (inserted) {
        it->second.line = line_no;
        config.order_.push_back(current);
      } else {
        errors.push_back({line_no, "duplicate section [" + current + "]"});
      }
      continue;
    }

    auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back({line_no, "expected 'key = value', got '" + line + "'"});
      continue;
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (!valid_identifier(key)) {
      errors.push_back({line_no, "invalid key '" + key + "'"});
      continue;
    }
    if (current.empty()) {
      errors.push_back({line_no, "key '" + key + "' appears before any [section]"});
      continue;
    }
    auto& section = config.sections_[current];
    auto [it, inserted] = section.entries.try_emplace(key, Entry{value, line_no, false});
    if (!inserted) {
      errors.push_back({line_no, "duplicate key '" + key + "' in [" + current + "]"});
    }
  }

  if (!errors.empty()) throw ConfigException(std::move(errors));
  return config;
}

bool ParsedConfig::has(const std::string& section, const std::string& key) const {
  auto it = sections_.find(section);
  return it != sections_.end() && it->second.entries.count(key) > 0;
}

const ParsedConfig::Entry* ParsedConfig::consume(const std::string& section,
                                                 const std::string& key) const {
  auto it = sections_.find(section);
  if (it == sections_.end()) return nullptr;
  auto jt = it->second.entries.find(key);
  if (jt == it->second.entries.end()) return nullptr;
  jt->second.used = true;
  return &jt->second;
}

int ParsedConfig::section_line(const std::string& section) const {
  auto it = sections_.find(section);
  return it == sections_.end() ? 0 : it->second.line;
}

std::vector<std::string> ParsedConfig::section_names() const { return order_; }

std::vector<ConfigError> ParsedConfig::unused_entries() const {
  std::vector<ConfigError> errors;
  for (const auto& [name, section] : sections_) {
    for (const auto& [key, entry] : section.entries) {
      if (!entry.used) {
        errors.push_back({entry.line, "unknown key '" + key + "' in [" + name + "]"});
      }
    }
  }
  std::sort(errors.begin(), errors.end(),
            [](const ConfigError& a, const ConfigError& b) { return a.line < b.line; });
  return errors;
}

double to_double(const ParsedConfig::Entry& e, const std::string& key) {
  const std::string& s = e.value;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    throw ConfigException({{e.line, "key '" + key + "': expected a number, got '" + s + "'"}});
  }
  return v;
}

long to_long(const ParsedConfig::Entry& e, const std::string& key) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
  if (ec != std::errc() || ptr != e.value.data() + e.value.size()) {
    throw ConfigException(
        {{e.line, "key '" + key + "': expected an integer, got '" + e.value + "'"}});
  }
  return v;
}

bool to_bool(const ParsedConfig::Entry& e, const std::string& key) {
  if (e.value == "true" || e.value == "yes" || e.value == "on" || e.value == "1") return true;
  if (e.value == "false" || e.value == "no" || e.value == "off" || e.value == "0") return false;
  throw ConfigException(
      {{e.line, "key '" + key + "': expected true/false, got '" + e.value + "'"}});
}

std::vector<double> to_double_list(const ParsedConfig::Entry& e, const std::string& key) {
  std::vector<double> out;
  std::stringstream stream(e.value);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const std::string token = trim(item);
    if (token.empty()) {
      throw ConfigException({{e.line, "key '" + key + "': empty list element"}});
    }
    char* end = nullptr;
    double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0') {
      throw ConfigException(
          {{e.line, "key '" + key + "': expected a number, got '" + token + "'"}});
    }
    out.push_back(v);
  }
  if (out.empty()) {
    throw ConfigException({{e.line, "key '" + key + "': empty list"}});
  }
  return out;
}

}  // namespace chiralq
