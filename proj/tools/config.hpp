#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace alr::cli {

// Parse failure with the offending line number (1-based; 0 for errors not
// tied to a line, e.g. an unreadable file or a bad --set override).
struct ConfigError : std::runtime_error {
  ConfigError(const std::string& message, int line_number)
      : std::runtime_error(line_number > 0
                               ? "line " + std::to_string(line_number) + ": " + message
                               : message),
        line(line_number) {}
  int line;
};

// Flat key = value configuration. '#' starts a comment, blank lines are
// skipped, keys allow one dot of nesting (e.g. data.generator). Later
// assignments win, which is also how --set overrides are applied.
class KeyValueConfig {
 public:
  static KeyValueConfig parse_file(const std::string& path);
  static KeyValueConfig parse_text(const std::string& text);

  // "key=value"; malformed text throws ConfigError.
  void apply_override(const std::string& assignment);

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;

  // Keys in sorted order, for echoing into manifests.
  std::vector<std::string> keys() const;

 private:
  static void parse_line(KeyValueConfig& cfg, const std::string& line, int line_number);
  static void validate_key(const std::string& key, int line_number);

  std::map<std::string, std::string> values_;
};

}  // namespace alr::cli
