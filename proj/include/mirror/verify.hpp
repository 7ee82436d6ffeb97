#pragma once

#include "mirror/amodel.hpp"
#include "mirror/bmodel.hpp"
#include "mirror/ccc.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mirror {

struct Kappa {
  cd value;
  std::string label;
  double residual = 0;  // relative distance of the measured ratio to value
};

// Z_A / ((2 pi i)^{-1} Z_B) on P^1 at t = -3, z = 1, snapped to {+-1, +-i} x (2 pi i)^{-2..2}.
Kappa calibrate_kappa(double tol = 1e-6);

struct VerifyOptions {
  double quad_tol = 1e-9;
  double series_tol = 1e-12;
  double rel_tol = 1e-5;
  Q degree_bound = Q(200);
  bool strict = false;                       // throw MismatchBeyondTolerance on failure
  std::optional<LineBundleTwist> b_twist;    // B-side twist override
};

struct Comparison {
  std::string lhs;
  std::string rhs;
  cd lhs_value;
  cd rhs_value;
  double residual = 0;  // |lhs - rhs| / |lhs|
  double tolerance = 0;
  bool pass = false;
};

struct VerifyReport {
  Kappa kappa;
  CentralCharge za;
  std::optional<CentralCharge> mb;
  std::optional<CentralCharge> fiber;
  std::optional<CentralCharge> syz;
  std::vector<Comparison> comparisons;
  bool pass = false;
};

VerifyReport verify_main_theorem(const GitPresentation& git, const StackyFan& fan, const LineBundleTwist& twist,
                                 const ComplexParams& params, const Kappa& kappa, const VerifyOptions& opts = {});

}  // namespace mirror
