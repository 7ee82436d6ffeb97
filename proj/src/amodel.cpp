#include "mirror/amodel.hpp"

#include "mirror/error.hpp"
#include "mirror/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace mirror {

namespace {

const cd kTwoPiI(0, 2 * kPi);

// Coefficients of a one-variable series as a polynomial in the divisor variable i.
ComplexPoly univariate(int nvars, int i, const std::vector<cd>& coeffs) {
  ComplexPoly p;
  p.nvars = nvars;
  for (size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j] == cd(0)) continue;
    Exponents e(nvars, 0);
    e[i] = static_cast<int>(j);
    p.terms[e] = coeffs[j];
  }
  return p;
}

std::vector<cd> series_coeffs(const TruncatedSeries1& s, int d) {
  std::vector<cd> out(d + 1);
  for (int j = 0; j <= d; ++j) out[j] = s.coefficient(j);
  return out;
}

cd integrate_table(const ComplexPoly& poly, const std::map<Exponents, Q>& table, int d) {
  cd sum = 0;
  for (const auto& [e, c] : poly.terms) {
    if (ComplexPoly::degree_of(e) != d) continue;
    auto it = table.find(e);
    if (it != table.end() && it->second != 0) sum += c * to_double(it->second);
  }
  return sum;
}

struct SectorCache {
  SectorGeometry geom;
  std::map<Exponents, Q> table;
};

std::map<IntVec, SectorCache> sector_tables(const GitPresentation& git, const StackyFan& fan) {
  std::map<IntVec, SectorCache> out;
  for (const auto& v : box_elements(fan, git)) {
    SectorCache sc;
    sc.geom = star_fan(v, fan, git);
    sc.table = intersection_table(sc.geom, git);
    out.emplace(v.v, std::move(sc));
  }
  return out;
}

// e^{2 pi i x} for rational x, reduced mod 1 first.
cd unit_phase(const Q& x) { return std::polar(1.0, 2 * kPi * to_double(frac_q(x))); }

ITerm make_term(const CurveClass& cc, const SectorCache& sc, const GitPresentation& git, const QVec& h,
                const ComplexParams& params) {
  const int r = git.r, k = git.k(), d = sc.geom.dim;
  const double z = params.z, lz = std::log(z);
  ITerm term;
  term.curve = cc;
  term.sector_dim = d;
  ComplexPoly prod = ComplexPoly::constant(r, cd(1));
  cd scalar = 1;
  for (int i = 0; i < r; ++i) {
    const Q& di = cc.pairings[i];
    const bool integral = is_integer(di);
    if (i >= git.r_prime) {
      // restricted class vanishes
      if (integral) {
        if (di < 0) {
          term.integrand = ComplexPoly::constant(r, cd(0));
          term.value = 0;
          return term;
        }
        long long m = to_ll(floor_q(di));
        double f = 1;
        for (long long j = 2; j <= m; ++j) f *= static_cast<double>(j);
        scalar *= z * ((m % 2) ? -1.0 : 1.0) / f;
      } else {
        scalar *= gamma(cd(to_double(-di)));
      }
      continue;
    }
    cd kappa = lz;
    for (int a = 0; a < k; ++a) kappa -= (params.t[a] + kTwoPiI * to_double(h[a])) * to_double(git.ell[i][a]);
    kappa /= z;
    TruncatedSeries1 g = gamma_laurent(-di, integral ? std::max(d, 1) : d + 1);
    if (integral) {
      TruncatedSeries1 eps;
      eps.min_order = 1;
      eps.coeffs.assign(d + 2, cd(0));
      eps.coeffs[0] = 1;
      g = g * eps;
      g = g.scaled(z);
    }
    g = g.rescaled_variable(1.0 / z);
    g = g * TruncatedSeries1::exp_linear(kappa, d + 1);
    prod = prod.times(univariate(r, i, series_coeffs(g, d)), d);
  }
  Q hb = 0, deg = 0;
  for (int a = 0; a < k; ++a) hb += h[a] * cc.beta[a];
  for (int i = 0; i < r; ++i) deg += cc.pairings[i];
  cd tb = 0;
  for (int a = 0; a < k; ++a) tb += params.t[a] * to_double(cc.beta[a]);
  scalar *= std::exp(tb - to_double(deg) * lz) * unit_phase(hb);
  scalar *= std::pow(z, -k) * std::pow(kTwoPiI, -git.n);
  term.integrand = prod.scaled(scalar);
  term.value = integrate_table(term.integrand, sc.table, d);
  return term;
}

void require_fano(const GitPresentation& git, const StackyFan& fan) {
  if (!check_positivity(git, fan).fano) fail(ErrorCode::DomainError, "positivity check failed; the I-function may not converge");
}

}  // namespace

SectorClassData sector_class_data(const BoxElement& sector, const GitPresentation& git, const StackyFan& fan,
                                  const LineBundleTwist& twist, double z) {
  if (z <= 0) fail(ErrorCode::DomainError, "z must be positive");
  h_of(twist, git);
  SectorClassData out;
  out.sector = sector;
  out.dim = star_fan(sector, fan, git).dim;
  const int r = git.r, d = out.dim;
  out.gamma_factor = ComplexPoly::constant(r, cd(1));
  Q age = 0;
  for (int i = 0; i < r; ++i) {
    age += twist.c[i] * sector.c_of_v[i];
    TruncatedSeries1 g = gamma_laurent(Q(1) - sector.c_of_v[i], d + 1).rescaled_variable(1.0 / z);
    out.gamma_factor = out.gamma_factor.times(univariate(r, i, series_coeffs(g, d)), d);
  }
  out.chern_factor = ComplexPoly::constant(r, unit_phase(age));
  for (int i = 0; i < r; ++i) {
    if (twist.c[i] == 0) continue;
    auto e = TruncatedSeries1::exp_linear(-kTwoPiI * to_double(twist.c[i]) / z, d + 1);
    out.chern_factor = out.chern_factor.times(univariate(r, i, series_coeffs(e, d)), d);
  }
  return out;
}

std::vector<ITerm> i_function_terms(const GitPresentation& git, const StackyFan& fan, const LineBundleTwist& twist,
                                    const ComplexParams& params, const Q& degree_bound) {
  if (params.z <= 0) fail(ErrorCode::DomainError, "z must be positive");
  require_fano(git, fan);
  QVec h = h_of(twist, git);
  auto tables = sector_tables(git, fan);
  auto classes = enumerate_Keff(git, fan, degree_bound);
  std::vector<ITerm> out(classes.size());
  parallel_for(classes.size(), [&](size_t j) {
    out[j] = make_term(classes[j], tables.at(classes[j].sector.v), git, h, params);
  });
  return out;
}

ASeriesResult zA_series(const GitPresentation& git, const StackyFan& fan, const LineBundleTwist& twist,
                        const ComplexParams& params, const ASeriesOptions& opts) {
  if (params.z <= 0) fail(ErrorCode::DomainError, "z must be positive");
  require_fano(git, fan);
  QVec h = h_of(twist, git);
  auto tables = sector_tables(git, fan);
  ASeriesResult res;
  cd sum = 0;
  long terms = 0;
  Q done = -1;
  Q bound = std::min(Q(8), opts.degree_bound);
  int quiet_shells = 0;
  QVec worst;
  while (true) {
    auto classes = enumerate_Keff(git, fan, bound);
    std::vector<CurveClass> fresh;
    for (auto& c : classes)
      if (c.degree > done) fresh.push_back(c);
    size_t start = 0;
    while (start < fresh.size()) {
      size_t end = start;
      while (end < fresh.size() && fresh[end].degree == fresh[start].degree) ++end;
      std::vector<ITerm> shell(end - start);
      parallel_for(shell.size(), [&](size_t j) {
        shell[j] = make_term(fresh[start + j], tables.at(fresh[start + j].sector.v), git, h, params);
      });
      double mag = 0, big = -1;
      for (const auto& t : shell) {
        sum += t.value;
        ++terms;
        res.table.push_back({t.curve.beta, t.curve.sector.v, t.curve.degree, t.value, sum});
        mag += std::abs(t.value);
        if (std::abs(t.value) > big) {
          big = std::abs(t.value);
          worst = t.curve.beta;
        }
      }
      res.shell_magnitudes.push_back(mag);
      done = fresh[start].degree;
      start = end;
      quiet_shells = mag < opts.tol / 10 ? quiet_shells + 1 : 0;
      const auto& s = res.shell_magnitudes;
      if (quiet_shells >= 3 && s.size() >= 4) {
        double q = 0;
        for (size_t j = s.size() - 3; j < s.size(); ++j)
          if (s[j - 1] > 0) q = std::max(q, s[j] / s[j - 1]);
        if (q < 1) {
          double tail = s.back() * q / (1 - q);
          if (tail < opts.tol) {
            res.charge.value = sum;
            res.charge.abs_error = tail + s.back();
            res.charge.method = "a-series";
            res.charge.terms_used = terms;
            return res;
          }
        }
      }
    }
    if (bound >= opts.degree_bound) break;
    bound = std::min(Q(bound * 2), opts.degree_bound);
  }
  std::string dir;
  for (const auto& x : worst) dir += (dir.empty() ? "" : ",") + to_string(x);
  fail(ErrorCode::NotConverging, "terms do not decay within the degree bound; largest late term at beta = (" + dir + ")");
}

CentralCharge zA_residue_k1(const GitPresentation& git, const LineBundleTwist& twist, const ComplexParams& params,
                            double tol) {
  if (git.k() != 1) fail(ErrorCode::KNotOne, "residue oracle needs k = 1");
  if (params.z <= 0) fail(ErrorCode::DomainError, "z must be positive");
  QVec h = h_of(twist, git);
  const double lz = std::log(params.z);
  long long lsum = 0;
  std::vector<long long> l(git.r);
  for (int i = 0; i < git.r; ++i) {
    l[i] = static_cast<long long>(git.charge[0][i]);
    if (l[i] == 0) fail(ErrorCode::InvalidInput, "zero charge column");
    lsum += l[i];
  }
  const cd big_t = params.t[0] + kTwoPiI * to_double(h[0]) - static_cast<double>(lsum) * lz;
  cd sum = 0;
  long used = 0;
  int quiet = 0;
  double prev = 0, q = 0;
  for (long long m = 0; m < 100000; ++m) {
    // poles of the Gamma factors with positive charge in the strip -m-1 < u <= -m
    std::vector<Q> poles;
    for (int i = 0; i < git.r; ++i) {
      if (l[i] <= 0) continue;
      for (long long j = m * l[i]; j < (m + 1) * l[i]; ++j) poles.push_back(Q(-j, l[i]));
    }
    std::sort(poles.begin(), poles.end());
    poles.erase(std::unique(poles.begin(), poles.end()), poles.end());
    double mag = 0;
    for (auto it = poles.rbegin(); it != poles.rend(); ++it) {
      const Q& u0 = *it;
      int order = 0;
      for (int i = 0; i < git.r; ++i)
        if (is_integer(u0 * l[i]) && u0 * l[i] <= 0) ++order;
      const int len = order + 1;
      TruncatedSeries1 f = TruncatedSeries1::exp_linear(-big_t, len).scaled(std::exp(-to_double(u0) * big_t));
      for (int i = 0; i < git.r; ++i)
        f = f * gamma_laurent(u0 * l[i], len).rescaled_variable(static_cast<double>(l[i]));
      cd res = f.coefficient(-1);
      sum += res;
      mag += std::abs(res);
      ++used;
    }
    if (prev > 0) q = mag / prev;
    prev = mag;
    quiet = mag < tol / 10 ? quiet + 1 : 0;
    if (quiet >= 3 && q < 1 && mag * q / (1 - q) < tol) {
      CentralCharge cc;
      cc.value = sum * std::pow(kTwoPiI, -git.n);
      cc.abs_error = (mag / (1 - q) + tol / 10) * std::pow(2 * kPi, -git.n);
      cc.method = "residue";
      cc.terms_used = used;
      return cc;
    }
  }
  fail(ErrorCode::NotConverging, "residue sum does not converge");
}

}  // namespace mirror
