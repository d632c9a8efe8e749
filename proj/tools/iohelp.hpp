#pragma once

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace alr::cli {

using json = nlohmann::ordered_json;

// Shortest decimal string that parses back to the same double. NaN prints as
// "nan" (the grid writer uses it for points outside the solution domain).
std::string format_double(double value);

// FNV-1a 64-bit over raw bytes; stable content fingerprint for manifests.
std::uint64_t fnv1a64(const std::string& bytes);
std::string fnv1a64_hex(const std::string& bytes);

// Current UTC wall time as e.g. 2026-01-31T09:15:02Z. Only manifests may
// contain this; everything else must be deterministic.
std::string iso8601_utc_now();

// Creates parent directories as needed and replaces the target atomically
// (write to sibling temp file, then rename).
void write_text_file(const std::filesystem::path& path, const std::string& content);

std::string read_text_file(const std::filesystem::path& path);

// Run manifest: one per command invocation, written after the outputs it
// fingerprints. Output CSVs reference it by name on their first line.
class RunManifest {
 public:
  RunManifest(std::string command, json config_echo);

  // Registers a produced file and its content hash.
  void add_output(const std::string& name, const std::string& content);
  void add_input(const std::string& name, const std::string& content);

  json to_json() const;
  void write(const std::filesystem::path& directory, const std::string& name = "manifest.json") const;

 private:
  std::string command_;
  json config_;
  std::string timestamp_;
  std::vector<std::pair<std::string, std::string>> inputs_;   // name, hash
  std::vector<std::pair<std::string, std::string>> outputs_;  // name, hash
};

// p in [0, 1] quantile of the finite entries (linear interpolation between
// order statistics). Ignores NaNs; returns NaN when nothing is finite.
double quantile(std::vector<double> values, double p);

// Binary PPM heat map of a row-major scalar field, black -> blue -> yellow
// -> white, clipped to [lo, hi]. NaNs render gray.
void write_magnitude_ppm(const std::filesystem::path& path, const std::vector<double>& values,
                         int width, int height, double lo, double hi);

}  // namespace alr::cli
