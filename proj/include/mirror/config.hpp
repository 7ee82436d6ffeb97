#pragma once

#include "mirror/bmodel.hpp"
#include "mirror/toric.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mirror {

struct InstanceConfig {
  std::string name;
  int n = 0;
  IntMat rays;
  IntMat extra;
  std::optional<IntMat> charge;
  std::optional<QVec> eta;
  QVec twist;  // length r, zero on extra vectors
  std::vector<cd> t;
  double z = 1.0;
  double quad_tol = 1e-9;
  double series_tol = 1e-12;
  double rel_tol = 1e-5;
  Q degree_bound = Q(200);
  std::uint64_t seed = 20240601;
  std::optional<QVec> cycle_a;  // explicit hyperplane shift for the cycle subcommand

  GitInput git_input() const;
};

// Every schema violation as "<json pointer>: <message>".
std::vector<std::string> validate_config_text(const std::string& text);

InstanceConfig parse_config(const std::string& text);
InstanceConfig load_config(const std::string& path);

}  // namespace mirror
