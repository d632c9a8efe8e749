#pragma once

#include "alr/modal.hpp"

#include <filesystem>
#include <random>
#include <string>

namespace alr::test {

// Every randomized test seeds its own engine with this so failures replay.
inline constexpr std::uint64_t kSeed = 0x5eed5eed2026ull;

inline std::mt19937_64 rng() { return std::mt19937_64(kSeed); }

inline cplx random_unit(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  return cplx(dist(gen), dist(gen));
}

inline ModalCoefficients random_data(std::mt19937_64& gen, int order, double decay = 1.0) {
  ModalCoefficients h(order);
  h.zero_mode = random_unit(gen);
  double scale = 1.0;
  for (int n = 1; n <= order; ++n) {
    scale *= decay;
    h.plus[n - 1] = scale * random_unit(gen);
    h.minus[n - 1] = scale * random_unit(gen);
  }
  return h;
}

// Unique scratch directory under the system temp root, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    auto base = std::filesystem::temp_directory_path();
    for (int i = 0;; ++i) {
      auto candidate = base / (tag + "-" + std::to_string(i));
      std::error_code ec;
      if (std::filesystem::create_directories(candidate, ec)) {
        path_ = candidate;
        return;
      }
    }
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace alr::test
