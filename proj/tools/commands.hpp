#pragma once

#include "alr/modal.hpp"

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace alr::cli {

struct GlobalOptions {
  std::filesystem::path out = "out";
  bool strict = false;
  int threads = 0;  // workers across delta values; 0 picks one per delta
  bool render = false;
};

// Process exit codes. The verdict codes double as classification results, so
// scripts can branch on check-compat without parsing output.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIncompatible = 1;
inline constexpr int kExitBorderline = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitRuntime = 70;

// Fixed reference runs: three-delta field grids over the square windows,
// plus summaries. Outputs land under out/figure1 and out/figure2.
int cmd_figure1(const GlobalOptions& opt);
int cmd_figure2(const GlobalOptions& opt);

// Config-driven single solves; write coefficient tables and a summary.
int cmd_solve1(const GlobalOptions& opt, const std::string& config_path,
               const std::vector<std::string>& overrides);
int cmd_solve2(const GlobalOptions& opt, const std::string& config_path,
               const std::vector<std::string>& overrides);

// Log-log rate fits across a delta window for the problem's quantities.
int cmd_rate(const GlobalOptions& opt, int problem, const std::string& config_path,
             const std::vector<std::string>& overrides, double delta_min, double delta_max,
             int points);

// Compatibility classification with an evidence table.
int cmd_check_compat(const GlobalOptions& opt, int problem, const std::string& config_path,
                     const std::vector<std::string>& overrides);

// Coefficient tables: one row per stored mode, columns family,n,re,im with
// signed n (n > 0 the e^{+in theta} branch, n < 0 the conjugate branch,
// n = 0 the constant). Exposed for round-trip tests.
std::string coefficients_to_csv(
    const std::vector<std::pair<std::string, const ModalCoefficients*>>& families);
ModalCoefficients coefficients_from_csv(const std::string& csv, const std::string& family);

}  // namespace alr::cli
