#pragma once

#include "mirror/quadrature.hpp"
#include "mirror/special.hpp"
#include "mirror/toric.hpp"

#include <string>
#include <vector>

namespace mirror {

struct ComplexParams {
  std::vector<cd> t;  // length k
  double z = 1.0;
};

struct CentralCharge {
  cd value;
  double abs_error = 0;
  std::string method;
  long terms_used = 0;
};

// prod_i e^{-2 pi i c_i s_i / z} z^{s_i/z} Gamma(s_i/z), s_i = sum_a lambda_a l_i^(a).
cd zB_affine_closed_form(const GitPresentation& git, const LineBundleTwist& twist, const std::vector<cd>& lambda,
                         double z);

struct GradeCheck {
  bool pass = false;
  double margin = 0;               // min over nu != 0 of ((pi/2) sum |D_i(nu)| - |w.nu|) / |nu|_1
  std::vector<double> worst_direction;
};

// Strip condition for w = Im t + 2 pi h.
GradeCheck grade_restriction_check(const GitPresentation& git, const LineBundleTwist& twist,
                                   const std::vector<double>& im_t);

struct QuadratureSpec {
  std::vector<double> gamma;              // contour anchor
  std::vector<double> truncation_radius;  // per axis
  double tol = 1e-9;
  int max_subdivisions = 4000;
};

// Anchor maximizing the smallest Re(Gamma argument) with all arguments <= 1.
std::vector<double> default_anchor(const GitPresentation& git);

// Fills the truncation radius from the Stirling envelope so the tail is below tol/2.
QuadratureSpec make_mb_spec(const GitPresentation& git, const LineBundleTwist& twist, const ComplexParams& params,
                            double tol, std::vector<double> gamma = {});

cd mb_integrand(const GitPresentation& git, const LineBundleTwist& twist, const ComplexParams& params,
                const std::vector<double>& gamma, const std::vector<double>& y);

CentralCharge mb_inverse_fourier(const GitPresentation& git, const LineBundleTwist& twist, const ComplexParams& params,
                                 const QuadratureSpec& spec);

// Empirical divergence probe: log-slope of the integrand along directions far out on the contour.
bool mb_integrand_decays(const GitPresentation& git, const LineBundleTwist& twist, const ComplexParams& params,
                         const std::vector<double>& gamma);

struct FiberCycleChart {
  std::vector<double> cprime;  // Im x_i = -2 pi c'_i
};

// Chart with c' closest to c compatible with Im t; StripViolation if it leaves the window.
FiberCycleChart default_chart(const GitPresentation& git, const LineBundleTwist& twist, const std::vector<double>& im_t);

CentralCharge fiber_oscillatory(const GitPresentation& git, const StackyFan& fan, const LineBundleTwist& twist,
                                const ComplexParams& params, const FiberCycleChart& chart, double tol);

// min over unit directions omega of max_j <omega, b_j>.
double fan_growth_constant(const GitPresentation& git);

}  // namespace mirror
