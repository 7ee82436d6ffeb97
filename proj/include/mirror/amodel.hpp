#pragma once

#include "mirror/bmodel.hpp"
#include "mirror/integration.hpp"

#include <vector>

namespace mirror {

struct SectorClassData {
  BoxElement sector;
  int dim = 0;
  ComplexPoly gamma_factor;  // prod_i Gamma(1 - v_i + D_i/z) up to degree dim
  ComplexPoly chern_factor;  // e^{2 pi i age_v(L)} e^{-(2 pi i/z) c_1(L)} up to degree dim
};

SectorClassData sector_class_data(const BoxElement& sector, const GitPresentation& git, const StackyFan& fan,
                                  const LineBundleTwist& twist, double z);

struct ITerm {
  CurveClass curve;
  int sector_dim = 0;
  ComplexPoly integrand;  // term before integration over X_v
  cd value;               // (2 pi i)^{-n} z^{-k} times the integral
};

// Terms for all beta in K_eff up to degree_bound, in enumeration order.
std::vector<ITerm> i_function_terms(const GitPresentation& git, const StackyFan& fan, const LineBundleTwist& twist,
                                    const ComplexParams& params, const Q& degree_bound);

struct ATermRow {
  QVec beta;
  IntVec sector;
  Q degree;
  cd value;
  cd running_sum;
};

struct ASeriesOptions {
  double tol = 1e-10;
  Q degree_bound = Q(200);
};

struct ASeriesResult {
  CentralCharge charge;
  std::vector<ATermRow> table;
  std::vector<double> shell_magnitudes;
};

ASeriesResult zA_series(const GitPresentation& git, const StackyFan& fan, const LineBundleTwist& twist,
                        const ComplexParams& params, const ASeriesOptions& opts = {});

// Higgs-Coulomb residue sum for k = 1.
CentralCharge zA_residue_k1(const GitPresentation& git, const LineBundleTwist& twist, const ComplexParams& params,
                            double tol);

}  // namespace mirror
