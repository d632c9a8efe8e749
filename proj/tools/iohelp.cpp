#include "iohelp.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <system_error>

namespace alr::cli {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

std::string fnv1a64_hex(const std::string& bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

std::string iso8601_utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  const auto parent = path.parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return content;
}

RunManifest::RunManifest(std::string command, json config_echo)
    : command_(std::move(command)), config_(std::move(config_echo)),
      timestamp_(iso8601_utc_now()) {}

void RunManifest::add_output(const std::string& name, const std::string& content) {
  outputs_.emplace_back(name, fnv1a64_hex(content));
}

void RunManifest::add_input(const std::string& name, const std::string& content) {
  inputs_.emplace_back(name, fnv1a64_hex(content));
}

json RunManifest::to_json() const {
  json doc;
  doc["command"] = command_;
  doc["tool_version"] = "0.1.0";
  doc["timestamp_utc"] = timestamp_;
  doc["config"] = config_;
  json inputs = json::array();
  for (const auto& [name, hash] : inputs_) inputs.push_back({{"file", name}, {"fnv1a64", hash}});
  doc["inputs"] = inputs;
  json outputs = json::array();
  for (const auto& [name, hash] : outputs_) outputs.push_back({{"file", name}, {"fnv1a64", hash}});
  doc["outputs"] = outputs;
  return doc;
}

void RunManifest::write(const std::filesystem::path& directory, const std::string& name) const {
  write_text_file(directory / name, to_json().dump(2) + "\n");
}

double quantile(std::vector<double> values, double p) {
  values.erase(std::remove_if(values.begin(), values.end(),
                              [](double v) { return !std::isfinite(v); }),
               values.end());
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const double pos = std::clamp(p, 0.0, 1.0) * (values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - lo;
  return values[lo] * (1.0 - frac) + values[hi] * frac;
}

void write_magnitude_ppm(const std::filesystem::path& path, const std::vector<double>& values,
                         int width, int height, double lo, double hi) {
  if (width <= 0 || height <= 0 ||
      values.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw std::invalid_argument("image dimensions do not match the value count");
  }
  if (!(hi > lo)) hi = lo + 1.0;
  std::string body;
  body.reserve(values.size() * 3);
  // 4-stop ramp: black, blue, yellow, white.
  const double stops[4][3] = {{0, 0, 0}, {0.1, 0.2, 0.7}, {0.95, 0.85, 0.2}, {1, 1, 1}};
  for (const double v : values) {
    unsigned char rgb[3];
    if (!std::isfinite(v)) {
      rgb[0] = rgb[1] = rgb[2] = 128;
    } else {
      const double t = std::clamp((v - lo) / (hi - lo), 0.0, 1.0) * 3.0;
      const int seg = std::min(2, static_cast<int>(t));
      const double frac = t - seg;
      for (int c = 0; c < 3; ++c) {
        const double x = stops[seg][c] * (1.0 - frac) + stops[seg + 1][c] * frac;
        rgb[c] = static_cast<unsigned char>(std::lround(255.0 * x));
      }
    }
    body.append(reinterpret_cast<const char*>(rgb), 3);
  }
  std::string header = "P6\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  write_text_file(path, header + body);
}

}  // namespace alr::cli
