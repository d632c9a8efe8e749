#include "config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace alr::cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

void KeyValueConfig::validate_key(const std::string& key, int line_number) {
  if (key.empty()) throw ConfigError("empty key", line_number);
  int dots = 0;
  for (std::size_t i = 0; i < key.size(); ++i) {
    const char c = key[i];
    if (c == '.') {
      ++dots;
      if (i == 0 || i + 1 == key.size()) throw ConfigError("key '" + key + "' has a dangling dot", line_number);
      continue;
    }
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) {
      throw ConfigError("key '" + key + "' contains invalid character '" + c + "'", line_number);
    }
  }
  if (dots > 1) throw ConfigError("key '" + key + "' nests more than one level", line_number);
}

void KeyValueConfig::parse_line(KeyValueConfig& cfg, const std::string& raw, int line_number) {
  std::string line = raw;
  if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
  line = trim(line);
  if (line.empty()) return;
  const auto eq = line.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("expected 'key = value', got '" + line + "'", line_number);
  }
  const std::string key = trim(line.substr(0, eq));
  const std::string value = trim(line.substr(eq + 1));
  validate_key(key, line_number);
  if (value.empty()) throw ConfigError("key '" + key + "' has an empty value", line_number);
  cfg.values_[key] = value;
}

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'", 0);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_text(buffer.str());
}

KeyValueConfig KeyValueConfig::parse_text(const std::string& text) {
  KeyValueConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    parse_line(cfg, line, line_number);
  }
  return cfg;
}

void KeyValueConfig::apply_override(const std::string& assignment) {
  parse_line(*this, assignment, 0);
}

std::string KeyValueConfig::get_string(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("missing required key '" + key + "'", 0);
  return it->second;
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key) const {
  const std::string text = get_string(key);
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("key '" + key + "': '" + text + "' is not a number", 0);
  }
  return value;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

int KeyValueConfig::get_int(const std::string& key) const {
  const std::string text = get_string(key);
  int value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("key '" + key + "': '" + text + "' is not an integer", 0);
  }
  return value;
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
  return has(key) ? get_int(key) : fallback;
}

std::vector<std::string> KeyValueConfig::keys() const {
  std::vector<std::string> out;
  out.reserve(values_.size());
  for (const auto& [k, v] : values_) out.push_back(k);
  return out;
}

}  // namespace alr::cli
