#pragma once

#include "mirror/config.hpp"
#include "mirror/error.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace mirror {

struct RunFlags {
  std::optional<double> tol;
  std::optional<Q> degree_bound;
  std::optional<std::uint64_t> seed;
  std::string svg_path;
  std::string csv_path;
};

struct RunResult {
  int exit_code = 0;
  std::string report;  // JSON text
};

inline const char* kSubcommands[] = {"analyze", "za", "zb-mb", "zb-osc", "cycle", "rho", "verify"};

// 0 success, 1 numerical failure or mismatch, 2 input error.
int exit_code_for(ErrorCode code);
std::string error_report(const MirrorError& e);

RunResult run_subcommand(const std::string& name, const InstanceConfig& cfg, const RunFlags& flags);

}  // namespace mirror
