#pragma once

#include "mirror/toric.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace mirror {

using Exponents = std::vector<int>;

template <class T>
struct DivisorPolynomial {
  int nvars = 0;
  std::map<Exponents, T> terms;

  static DivisorPolynomial constant(int n, const T& c) {
    DivisorPolynomial p;
    p.nvars = n;
    if (c != T(0)) p.terms[Exponents(n, 0)] = c;
    return p;
  }
  static DivisorPolynomial variable(int n, int i, const T& c = T(1)) {
    DivisorPolynomial p;
    p.nvars = n;
    Exponents e(n, 0);
    e[i] = 1;
    p.terms[e] = c;
    return p;
  }
  static int degree_of(const Exponents& e) {
    int d = 0;
    for (int x : e) d += x;
    return d;
  }
  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms) d = std::max(d, degree_of(e));
    return d;
  }
  void add_term(const Exponents& e, const T& c) {
    auto& slot = terms[e];
    slot += c;
    if (slot == T(0)) terms.erase(e);
  }
  DivisorPolynomial& operator+=(const DivisorPolynomial& o) {
    if (nvars == 0) nvars = o.nvars;
    for (const auto& [e, c] : o.terms) add_term(e, c);
    return *this;
  }
  DivisorPolynomial operator+(const DivisorPolynomial& o) const {
    DivisorPolynomial r = *this;
    r += o;
    return r;
  }
  DivisorPolynomial scaled(const T& s) const {
    DivisorPolynomial r;
    r.nvars = nvars;
    for (const auto& [e, c] : terms)
      if (c * s != T(0)) r.terms[e] = c * s;
    return r;
  }
  // Product truncated above max_degree (negative means no truncation).
  DivisorPolynomial times(const DivisorPolynomial& o, int max_degree = -1) const {
    DivisorPolynomial r;
    r.nvars = std::max(nvars, o.nvars);
    for (const auto& [e1, c1] : terms)
      for (const auto& [e2, c2] : o.terms) {
        Exponents e(r.nvars, 0);
        for (size_t i = 0; i < e1.size(); ++i) e[i] += e1[i];
        for (size_t i = 0; i < e2.size(); ++i) e[i] += e2[i];
        if (max_degree >= 0 && degree_of(e) > max_degree) continue;
        r.add_term(e, c1 * c2);
      }
    return r;
  }
  DivisorPolynomial homogeneous_part(int d) const {
    DivisorPolynomial r;
    r.nvars = nvars;
    for (const auto& [e, c] : terms)
      if (degree_of(e) == d) r.terms[e] = c;
    return r;
  }
};

using RationalPoly = DivisorPolynomial<Q>;
using ComplexPoly = DivisorPolynomial<std::complex<double>>;

struct LocalizationOptions {
  std::uint64_t seed = 20240601;
  int max_retries = 8;
};

// Integral over the sector X_v of a rational polynomial in the restricted divisor classes.
Q localize_integral(const SectorGeometry& sector, const RationalPoly& poly, const GitPresentation& git,
                    const LocalizationOptions& opts = {});

// Integrals of all monomials of total degree dim X_v in the variables D_1..D_r.
std::map<Exponents, Q> intersection_table(const SectorGeometry& sector, const GitPresentation& git,
                                          const LocalizationOptions& opts = {});

// Rewrites with the linear relations sum_i <m,b_i> D_i = 0, eliminating the highest-index pivots.
RationalPoly reduce_by_relations(const RationalPoly& poly, const GitPresentation& git);

}  // namespace mirror
