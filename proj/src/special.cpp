#include "mirror/special.hpp"

#include "mirror/error.hpp"

#include <array>
#include <cmath>

namespace mirror {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                            771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                            -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr std::array<double, 10> kBernoulli = {1.0 / 6,        -1.0 / 30,      1.0 / 42,       -1.0 / 30,
                                               5.0 / 66,       -691.0 / 2730,  7.0 / 6,        -3617.0 / 510,
                                               43867.0 / 798, -174611.0 / 330};

bool is_nonpositive_integer(cd z) { return z.imag() == 0 && z.real() <= 0 && z.real() == std::floor(z.real()); }

cd lanczos_log_gamma(cd z) {
  z -= 1.0;
  cd x = kLanczos[0];
  for (size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  cd t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

double factorial(int m) {
  double f = 1;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

}  // namespace

cd log_gamma(cd z) {
  if (is_nonpositive_integer(z)) fail(ErrorCode::PoleAt, "log_gamma at nonpositive integer " + std::to_string(z.real()));
  if (z.real() >= 0.5) return lanczos_log_gamma(z);
  int shift = static_cast<int>(std::ceil(0.5 - z.real()));
  cd acc = 0;
  for (int j = 0; j < shift; ++j) acc += std::log(z + static_cast<double>(j));
  return lanczos_log_gamma(z + static_cast<double>(shift)) - acc;
}

cd gamma(cd z) {
  if (is_nonpositive_integer(z)) fail(ErrorCode::PoleAt, "gamma at nonpositive integer " + std::to_string(z.real()));
  if (z.real() >= 0.5) return std::exp(lanczos_log_gamma(z));
  return kPi / (std::sin(kPi * z) * std::exp(lanczos_log_gamma(1.0 - z)));
}

double digamma(double x) { return polygamma(0, x); }

double polygamma(int m, double x) {
  if (x <= 0 && x == std::floor(x)) fail(ErrorCode::PoleAt, "polygamma at nonpositive integer");
  const double threshold = 20.0 + m;
  double acc = 0;
  const double sign_m = (m % 2 == 0) ? 1.0 : -1.0;  // (-1)^m
  const double mfact = factorial(m);
  while (x < threshold) {
    // psi^(m)(x) = psi^(m)(x+1) - (-1)^m m! / x^(m+1)
    acc -= sign_m * mfact / std::pow(x, m + 1);
    x += 1;
  }
  double asym;
  if (m == 0) {
    asym = std::log(x) - 0.5 / x;
    double x2 = x * x, p = x2;
    for (size_t k = 1; k <= kBernoulli.size(); ++k) {
      asym -= kBernoulli[k - 1] / (2.0 * k * p);
      p *= x2;
    }
  } else {
    asym = factorial(m - 1) / std::pow(x, m) + mfact / (2 * std::pow(x, m + 1));
    for (size_t k = 1; k <= kBernoulli.size(); ++k) {
      int kk = static_cast<int>(k);
      double term = kBernoulli[k - 1] * factorial(2 * kk + m - 1) / (factorial(2 * kk) * std::pow(x, 2 * kk + m));
      asym += term;
    }
    asym *= -sign_m;  // (-1)^(m+1)
  }
  return acc + asym;
}

cd TruncatedSeries1::coefficient(int exponent) const {
  if (exponent >= max_order()) fail(ErrorCode::DomainError, "coefficient beyond truncation order");
  if (exponent < min_order) return 0;
  return coeffs[exponent - min_order];
}

TruncatedSeries1 TruncatedSeries1::operator+(const TruncatedSeries1& o) const {
  TruncatedSeries1 r;
  r.center = center;
  r.min_order = std::min(min_order, o.min_order);
  int hi = std::min(max_order(), o.max_order());
  for (int e = r.min_order; e < hi; ++e) r.coeffs.push_back(coefficient(e) + o.coefficient(e));
  return r;
}

TruncatedSeries1 TruncatedSeries1::operator*(const TruncatedSeries1& o) const {
  TruncatedSeries1 r;
  r.center = center;
  r.min_order = min_order + o.min_order;
  int hi = std::min(max_order() + o.min_order, o.max_order() + min_order);
  r.coeffs.assign(std::max(0, hi - r.min_order), cd(0));
  for (size_t i = 0; i < coeffs.size(); ++i)
    for (size_t j = 0; j < o.coeffs.size(); ++j) {
      size_t idx = i + j;
      if (idx < r.coeffs.size()) r.coeffs[idx] += coeffs[i] * o.coeffs[j];
    }
  return r;
}

TruncatedSeries1 TruncatedSeries1::scaled(cd s) const {
  TruncatedSeries1 r = *this;
  for (auto& c : r.coeffs) c *= s;
  return r;
}

TruncatedSeries1 TruncatedSeries1::rescaled_variable(cd s) const {
  TruncatedSeries1 r = *this;
  for (size_t j = 0; j < r.coeffs.size(); ++j) r.coeffs[j] *= std::pow(s, min_order + static_cast<int>(j));
  return r;
}

TruncatedSeries1 TruncatedSeries1::normalized() const {
  TruncatedSeries1 r = *this;
  size_t lead = 0;
  while (lead < r.coeffs.size() && r.coeffs[lead] == cd(0)) ++lead;
  r.coeffs.erase(r.coeffs.begin(), r.coeffs.begin() + static_cast<long>(lead));
  r.min_order += static_cast<int>(lead);
  return r;
}

TruncatedSeries1 TruncatedSeries1::inverse() const {
  TruncatedSeries1 a = normalized();
  if (a.coeffs.empty()) fail(ErrorCode::DomainError, "inverting a series with no known nonzero coefficient");
  const size_t len = a.coeffs.size();
  TruncatedSeries1 r;
  r.center = center;
  r.min_order = -a.min_order;
  r.coeffs.assign(len, cd(0));
  r.coeffs[0] = 1.0 / a.coeffs[0];
  for (size_t j = 1; j < len; ++j) {
    cd s = 0;
    for (size_t i = 1; i <= j; ++i) s += a.coeffs[i] * r.coeffs[j - i];
    r.coeffs[j] = -s / a.coeffs[0];
  }
  return r;
}

TruncatedSeries1 TruncatedSeries1::constant(cd c, int max_order) {
  TruncatedSeries1 r;
  r.coeffs.assign(std::max(0, max_order), cd(0));
  if (max_order > 0) r.coeffs[0] = c;
  return r;
}

TruncatedSeries1 TruncatedSeries1::linear(cd c0, cd c1, int max_order) {
  TruncatedSeries1 r = constant(c0, max_order);
  if (max_order > 1) r.coeffs[1] = c1;
  return r;
}

TruncatedSeries1 TruncatedSeries1::exp_linear(cd a, int max_order) {
  TruncatedSeries1 r;
  r.coeffs.assign(std::max(0, max_order), cd(0));
  cd term = 1;
  for (int j = 0; j < max_order; ++j) {
    r.coeffs[j] = term;
    term *= a / static_cast<double>(j + 1);
  }
  return r;
}

TruncatedSeries1 gamma_laurent(const Q& center, int order) {
  if (order < 1) fail(ErrorCode::DomainError, "gamma_laurent needs order >= 1");
  const double c = to_double(center);
  int shift = 0;
  while (center + shift < 1) ++shift;
  bool pole = is_integer(center) && center <= 0;
  int taylor_len = order + (pole ? 1 : 0);
  // Gamma(a + eps) = Gamma(a) exp(sum_{j>=1} psi^(j-1)(a) eps^j / j!)
  const double a = c + shift;
  std::vector<double> g(taylor_len, 0.0);
  for (int j = 1; j < taylor_len; ++j) g[j] = polygamma(j - 1, a) / factorial(j);
  TruncatedSeries1 e;
  e.coeffs.assign(taylor_len, cd(0));
  e.coeffs[0] = 1;
  // f = exp(g): j f_j = sum_{i=1}^{j} i g_i f_{j-i}
  for (int j = 1; j < taylor_len; ++j) {
    cd s = 0;
    for (int i = 1; i <= j; ++i) s += static_cast<double>(i) * g[i] * e.coeffs[j - i];
    e.coeffs[j] = s / static_cast<double>(j);
  }
  TruncatedSeries1 result = e.scaled(std::exp(std::lgamma(a)));
  if (shift > 0) {
    TruncatedSeries1 denom = TruncatedSeries1::constant(1, taylor_len + 1);
    for (int j = 0; j < shift; ++j) {
      Q cj = center + j;
      TruncatedSeries1 f = (cj == 0) ? [&] {
        TruncatedSeries1 t;
        t.min_order = 1;
        t.coeffs.assign(taylor_len, cd(0));
        t.coeffs[0] = 1;
        return t;
      }()
                                     : TruncatedSeries1::linear(to_double(cj), 1, taylor_len + 1);
      denom = denom * f;
    }
    result = result * denom.inverse();
  }
  result.center = cd(c, 0);
  // trim to the requested order
  while (result.max_order() > order) result.coeffs.pop_back();
  return result;
}

double StirlingDescriptor::rate(const std::vector<double>& y) const {
  double s = 0;
  for (const auto& f : forms) {
    double l = 0;
    for (size_t a = 0; a < y.size(); ++a) l += f[a] * y[a];
    s += std::abs(l);
  }
  return 0.5 * kPi * s;
}

double StirlingDescriptor::bound(const std::vector<double>& y) const {
  double b = 1;
  for (size_t i = 0; i < forms.size(); ++i) {
    double l = 0;
    for (size_t a = 0; a < y.size(); ++a) l += forms[i][a] * y[a];
    b *= constants[i] * std::pow(1 + std::abs(l), exponents[i]) * std::exp(-0.5 * kPi * std::abs(l));
  }
  return b;
}

StirlingDescriptor stirling_decay_bound(const std::vector<std::vector<double>>& forms, const std::vector<double>& re_lo,
                                        const std::vector<double>& re_hi) {
  StirlingDescriptor d;
  d.forms = forms;
  for (size_t i = 0; i < forms.size(); ++i) {
    if (re_lo[i] <= 0) fail(ErrorCode::DomainError, "Stirling envelope needs positive real parts");
    double expo = std::max(re_hi[i] - 0.5, 0.0);
    double c = 0;
    // envelope constant from a dense sample of the compact real range and |Im| up to 400
    for (int xs = 0; xs <= 8; ++xs) {
      double x = re_lo[i] + (re_hi[i] - re_lo[i]) * xs / 8.0;
      for (int ys = 0; ys <= 4000; ++ys) {
        double y = ys * 0.1;
        double v = std::exp(log_gamma(cd(x, y)).real() + 0.5 * kPi * y) / std::pow(1 + y, expo);
        c = std::max(c, v);
      }
    }
    d.constants.push_back(c * 1.01);
    d.exponents.push_back(expo);
  }
  return d;
}

}  // namespace mirror
