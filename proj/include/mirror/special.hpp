#pragma once

#include "mirror/rational.hpp"

#include <complex>
#include <vector>

namespace mirror {

using cd = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEulerGamma = 0.57721566490153286061;

cd log_gamma(cd z);
cd gamma(cd z);
double digamma(double x);
double polygamma(int m, double x);

// Laurent/Taylor series sum_{j} coeffs[j] eps^(min_order + j), exact for exponents < max_order().
struct TruncatedSeries1 {
  cd center;
  int min_order = 0;
  std::vector<cd> coeffs;

  int max_order() const { return min_order + static_cast<int>(coeffs.size()); }
  cd coefficient(int exponent) const;
  TruncatedSeries1 operator+(const TruncatedSeries1& o) const;
  TruncatedSeries1 operator*(const TruncatedSeries1& o) const;
  TruncatedSeries1 scaled(cd s) const;
  // eps -> s * eps
  TruncatedSeries1 rescaled_variable(cd s) const;
  TruncatedSeries1 inverse() const;
  TruncatedSeries1 normalized() const;  // strips leading zero coefficients

  static TruncatedSeries1 constant(cd c, int max_order);
  static TruncatedSeries1 linear(cd c0, cd c1, int max_order);  // c0 + c1 eps
  // exp(a eps) up to max_order
  static TruncatedSeries1 exp_linear(cd a, int max_order);
};

// Expansion of Gamma(center + eps) with all exponents below `order`.
TruncatedSeries1 gamma_laurent(const Q& center, int order);

// Decay envelope for products of Gamma functions of linear forms along vertical directions.
struct StirlingDescriptor {
  std::vector<std::vector<double>> forms;  // L_i(y) = sum_a forms[i][a] y_a
  std::vector<double> constants;           // per-factor C_i
  std::vector<double> exponents;           // per-factor polynomial growth max(Re L_i - 1/2, 0)

  double rate(const std::vector<double>& y) const;   // (pi/2) sum_i |L_i(y)|
  double bound(const std::vector<double>& y) const;  // envelope for |prod Gamma(L_i(x + i y))|
};

// re_lo/re_hi bound the real parts of each form on the contour box.
StirlingDescriptor stirling_decay_bound(const std::vector<std::vector<double>>& forms, const std::vector<double>& re_lo,
                                        const std::vector<double>& re_hi);

}  // namespace mirror
