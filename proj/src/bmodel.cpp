#include "mirror/bmodel.hpp"

#include "mirror/error.hpp"
#include "mirror/lp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace mirror {

namespace {

std::vector<std::vector<double>> divisor_rows(const GitPresentation& git) {
  std::vector<std::vector<double>> d(git.r, std::vector<double>(git.k()));
  for (int i = 0; i < git.r; ++i)
    for (int a = 0; a < git.k(); ++a) d[i][a] = static_cast<double>(git.charge[a][i]);
  return d;
}

double det_small(std::vector<std::vector<double>> m) {
  const size_t n = m.size();
  double d = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    for (size_t i = c + 1; i < n; ++i)
      if (std::abs(m[i][c]) > std::abs(m[p][c])) p = i;
    if (m[p][c] == 0) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      d = -d;
    }
    d *= m[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      double f = m[i][c] / m[c][c];
      for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return d;
}

// Generalized cross product of k-1 vectors in R^k.
std::vector<double> cross(const std::vector<std::vector<double>>& rows, int k) {
  std::vector<double> nu(k);
  for (int j = 0; j < k; ++j) {
    std::vector<std::vector<double>> minor;
    for (const auto& row : rows) {
      std::vector<double> r;
      for (int c = 0; c < k; ++c)
        if (c != j) r.push_back(row[c]);
      minor.push_back(r);
    }
    nu[j] = ((j % 2) ? -1.0 : 1.0) * (minor.empty() ? 1.0 : det_small(minor));
  }
  return nu;
}

double dotd(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<double> h_double(const GitPresentation& git, const LineBundleTwist& twist) {
  QVec h = h_of(twist, git);
  std::vector<double> out;
  for (const auto& x : h) out.push_back(to_double(x));
  return out;
}

cd mb_log_integrand(const GitPresentation& git, const LineBundleTwist& twist, const ComplexParams& params,
                    const std::vector<double>& gamma, const std::vector<double>& y) {
  const int k = git.k();
  std::vector<cd> u(k);
  cd acc = 0;
  for (int a = 0; a < k; ++a) {
    u[a] = cd(gamma[a], y[a]);
    acc -= u[a] * params.t[a];
  }
  const double lz = std::log(params.z);
  for (int i = 0; i < git.r; ++i) {
    cd li = 0;
    for (int a = 0; a < k; ++a) li += static_cast<double>(git.charge[a][i]) * u[a];
    acc += cd(0, -2 * kPi * to_double(twist.c[i])) * li + li * lz + log_gamma(li);
  }
  return acc;
}

}  // namespace

cd zB_affine_closed_form(const GitPresentation& git, const LineBundleTwist& twist, const std::vector<cd>& lambda,
                         double z) {
  if (z <= 0) fail(ErrorCode::DomainError, "z must be positive");
  cd value = 1;
  for (int i = 0; i < git.r; ++i) {
    cd s = 0;
    for (int a = 0; a < git.k(); ++a) s += lambda[a] * static_cast<double>(git.charge[a][i]);
    if (s.real() <= 0) fail(ErrorCode::DomainError, "Re s_" + std::to_string(i + 1) + " <= 0");
    cd x = s / z;
    value *= std::exp(cd(0, -2 * kPi * to_double(twist.c[i])) * x + x * std::log(z) + log_gamma(x));
  }
  return value;
}

GradeCheck grade_restriction_check(const GitPresentation& git, const LineBundleTwist& twist,
                                   const std::vector<double>& im_t) {
  const int k = git.k();
  auto d = divisor_rows(git);
  auto h = h_double(git, twist);
  std::vector<double> w(k);
  for (int a = 0; a < k; ++a) w[a] = im_t[a] + 2 * kPi * h[a];
  std::vector<std::vector<double>> candidates;
  if (k == 1) {
    candidates = {{1.0}, {-1.0}};
  } else {
    std::vector<std::vector<double>> normals = d;
    for (int a = 0; a < k; ++a) {
      std::vector<double> e(k, 0.0);
      e[a] = 1;
      normals.push_back(e);
    }
    if (std::any_of(w.begin(), w.end(), [](double x) { return x != 0; })) normals.push_back(w);
    const int m = static_cast<int>(normals.size());
    std::vector<int> pick;
    std::function<void(int)> rec = [&](int start) {
      if (static_cast<int>(pick.size()) == k - 1) {
        std::vector<std::vector<double>> rows;
        for (int i : pick) rows.push_back(normals[i]);
        auto nu = cross(rows, k);
        double norm = 0;
        for (double x : nu) norm += std::abs(x);
        if (norm < 1e-12) return;
        for (auto& x : nu) x /= norm;
        candidates.push_back(nu);
        for (auto& x : nu) x = -x;
        candidates.push_back(nu);
        return;
      }
      for (int i = start; i < m; ++i) {
        pick.push_back(i);
        rec(i + 1);
        pick.pop_back();
      }
    };
    rec(0);
  }
  GradeCheck res;
  res.margin = std::numeric_limits<double>::infinity();
  for (const auto& nu : candidates) {
    double l1 = 0, f = 0;
    for (double x : nu) l1 += std::abs(x);
    for (const auto& di : d) f += 0.5 * kPi * std::abs(dotd(di, nu));
    f -= std::abs(dotd(w, nu));
    if (f / l1 < res.margin) {
      res.margin = f / l1;
      res.worst_direction = nu;
    }
  }
  double scale = 1;
  for (double x : w) scale += std::abs(x);
  res.pass = res.margin > 1e-12 * scale;
  return res;
}

std::vector<double> default_anchor(const GitPresentation& git) {
  const int k = git.k();
  LinearProgram lp;
  lp.vars = k + 1;
  for (int i = 0; i < git.r; ++i) {
    QVec row(k + 1);
    for (int a = 0; a < k; ++a) row[a] = git.charge[a][i];
    QVec lower = row;
    lower[k] = -1;
    lp.add(lower, Sense::GE, 0);
    lp.add(row, Sense::LE, 1);
  }
  lp.objective.assign(k + 1, Q(0));
  lp.objective[k] = 1;
  auto res = solve_lp(lp);
  if (res.status != LpStatus::Optimal || res.value <= 0)
    fail(ErrorCode::DomainError, "no contour anchor with all Gamma arguments in the right half plane");
  std::vector<double> g(k);
  for (int a = 0; a < k; ++a) g[a] = to_double(res.x[a]);
  return g;
}

cd mb_integrand(const GitPresentation& git, const LineBundleTwist& twist, const ComplexParams& params,
                const std::vector<double>& gamma, const std::vector<double>& y) {
  return std::exp(mb_log_integrand(git, twist, params, gamma, y));
}

QuadratureSpec make_mb_spec(const GitPresentation& git, const LineBundleTwist& twist, const ComplexParams& params,
                            double tol, std::vector<double> gamma) {
  const int k = git.k();
  if (gamma.empty()) gamma = default_anchor(git);
  std::vector<double> im_t(k);
  for (int a = 0; a < k; ++a) im_t[a] = params.t[a].imag();
  auto gc = grade_restriction_check(git, twist, im_t);
  if (!gc.pass)
    fail(ErrorCode::ConvergenceMarginTooSmall, "grade restriction fails, margin " + std::to_string(gc.margin));
  auto d = divisor_rows(git);
  std::vector<double> re(git.r);
  double log_prefactor = 0, poly = 0, dnorm = 0;
  for (int a = 0; a < k; ++a) log_prefactor -= gamma[a] * params.t[a].real();
  for (int i = 0; i < git.r; ++i) {
    re[i] = dotd(d[i], gamma);
    if (re[i] <= 0) fail(ErrorCode::DomainError, "contour anchor leaves the analyticity tube");
    log_prefactor += re[i] * std::log(params.z);
    poly += std::max(re[i] - 0.5, 0.0);
    dnorm = std::max(dnorm, std::sqrt(dotd(d[i], d[i])));
  }
  auto env = stirling_decay_bound(d, re, re);
  double cprod = 1;
  for (double c : env.constants) cprod *= c;
  const double m = gc.margin;
  auto radial = [&](double rho) {
    return std::exp(log_prefactor) * cprod * std::pow(1 + dnorm * rho, poly) * std::exp(-m * rho) *
           (k == 1 ? 2.0 : 2 * kPi * std::pow(rho, k - 1));
  };
  QuadratureSpec spec;
  spec.gamma = gamma;
  spec.tol = tol;
  double t_rad = 4;
  while (true) {
    auto tail = integrate_gk([&](double rho) { return cd(radial(rho)); }, t_rad, t_rad + 60 / m + 60,
                             {.abs_tol = tol * 1e-3, .rel_tol = 1e-3, .max_subdivisions = 200});
    if (tail.value.real() < tol / 2) break;
    t_rad += 2;
    if (t_rad > 400) fail(ErrorCode::ConvergenceMarginTooSmall, "truncation radius beyond 400");
  }
  spec.truncation_radius.assign(k, t_rad);
  return spec;
}

CentralCharge mb_inverse_fourier(const GitPresentation& git, const LineBundleTwist& twist, const ComplexParams& params,
                                 const QuadratureSpec& spec) {
  const int k = git.k();
  if (params.z <= 0) fail(ErrorCode::DomainError, "z must be positive");
  std::vector<double> im_t(k);
  for (int a = 0; a < k; ++a) im_t[a] = params.t[a].imag();
  auto gc = grade_restriction_check(git, twist, im_t);
  if (!gc.pass)
    fail(ErrorCode::ConvergenceMarginTooSmall, "grade restriction fails, margin " + std::to_string(gc.margin));
  QuadOptions opts{.abs_tol = spec.tol / 2, .rel_tol = 0, .max_subdivisions = spec.max_subdivisions};
  QuadResult q;
  if (k == 1) {
    q = integrate_gk([&](double y) { return mb_integrand(git, twist, params, spec.gamma, {y}); },
                     -spec.truncation_radius[0], spec.truncation_radius[0], opts);
  } else if (k == 2) {
    q = integrate_gk_2d([&](double y1, double y2) { return mb_integrand(git, twist, params, spec.gamma, {y1, y2}); },
                        -spec.truncation_radius[0], spec.truncation_radius[0], -spec.truncation_radius[1],
                        spec.truncation_radius[1], opts);
  } else {
    fail(ErrorCode::DomainError, "Mellin-Barnes quadrature implemented for k <= 2");
  }
  if (!q.converged) fail(ErrorCode::MaxSubdivisions, "Mellin-Barnes quadrature did not reach tolerance");
  const double norm = std::pow(2 * kPi, k);
  CentralCharge cc;
  cc.value = q.value / norm;
  cc.abs_error = (q.abs_error + spec.tol / 2) / norm;
  cc.method = "mellin-barnes";
  cc.terms_used = q.evaluations;
  return cc;
}

bool mb_integrand_decays(const GitPresentation& git, const LineBundleTwist& twist, const ComplexParams& params,
                         const std::vector<double>& gamma) {
  const int k = git.k();
  std::vector<std::vector<double>> dirs;
  if (k == 1) {
    dirs = {{1.0}, {-1.0}};
  } else {
    for (int j = 0; j < 64; ++j) {
      double th = 2 * kPi * j / 64;
      std::vector<double> v(k, 0.0);
      v[0] = std::cos(th);
      v[1] = std::sin(th);
      dirs.push_back(v);
    }
  }
  for (const auto& dir : dirs) {
    auto at = [&](double rho) {
      std::vector<double> y(k);
      for (int a = 0; a < k; ++a) y[a] = rho * dir[a];
      return mb_log_integrand(git, twist, params, gamma, y).real();
    };
    double slope = (at(120) - at(60)) / 60;
    if (slope >= -1e-3) return false;
  }
  return true;
}

double fan_growth_constant(const GitPresentation& git) {
  std::vector<std::vector<double>> b(git.r, std::vector<double>(git.n));
  for (int i = 0; i < git.r; ++i)
    for (int c = 0; c < git.n; ++c) b[i][c] = static_cast<double>(git.b[i][c]);
  auto value = [&](const std::vector<double>& w) {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& bi : b) m = std::max(m, dotd(w, bi));
    return m;
  };
  double best = std::numeric_limits<double>::infinity();
  if (git.n == 1) return std::min(value({1.0}), value({-1.0}));
  if (git.n == 2) {
    std::vector<std::vector<double>> cands;
    for (int i = 0; i < git.r; ++i) {
      double nb = std::sqrt(dotd(b[i], b[i]));
      cands.push_back({-b[i][0] / nb, -b[i][1] / nb});
      for (int j = i + 1; j < git.r; ++j) {
        double dx = b[i][0] - b[j][0], dy = b[i][1] - b[j][1];
        double nn = std::hypot(dx, dy);
        if (nn == 0) continue;
        cands.push_back({-dy / nn, dx / nn});
        cands.push_back({dy / nn, -dx / nn});
      }
    }
    for (const auto& w : cands) best = std::min(best, value(w));
    return best;
  }
  fail(ErrorCode::DomainError, "fiber integration implemented for n <= 2");
}

FiberCycleChart default_chart(const GitPresentation& git, const LineBundleTwist& twist, const std::vector<double>& im_t) {
  const int k = git.k(), r = git.r;
  auto h = h_double(git, twist);
  std::vector<double> rhs(k);
  for (int a = 0; a < k; ++a) rhs[a] = -im_t[a] / (2 * kPi) - h[a];
  // least-norm delta with l delta = rhs
  QMat gram(k, QVec(k));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int i = 0; i < r; ++i) gram[a][b] += Q(git.charge[a][i] * git.charge[b][i]);
  QMat ginv = inverse(gram);
  std::vector<double> mu(k, 0.0);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) mu[a] += to_double(ginv[a][b]) * rhs[b];
  FiberCycleChart chart;
  chart.cprime.resize(r);
  for (int i = 0; i < r; ++i) {
    double delta = 0;
    for (int a = 0; a < k; ++a) delta += static_cast<double>(git.charge[a][i]) * mu[a];
    chart.cprime[i] = to_double(twist.c[i]) + delta;
  }
  return chart;
}

CentralCharge fiber_oscillatory(const GitPresentation& git, const StackyFan& fan, const LineBundleTwist& twist,
                                const ComplexParams& params, const FiberCycleChart& chart, double tol) {
  const int n = git.n, k = git.k(), r = git.r;
  if (n > 2) fail(ErrorCode::DomainError, "fiber integration implemented for n <= 2");
  if (!fan.complete) fail(ErrorCode::TailNotCertified, "fan is not complete");
  for (int i = 0; i < r; ++i)
    if (std::abs(chart.cprime[i] - to_double(twist.c[i])) >= 0.25)
      fail(ErrorCode::StripViolation, "|c'_" + std::to_string(i + 1) + " - c_" + std::to_string(i + 1) + "| >= 1/4");
  for (int a = 0; a < k; ++a) {
    double s = 0;
    for (int i = 0; i < r; ++i) s += static_cast<double>(git.charge[a][i]) * (-2 * kPi * chart.cprime[i]);
    if (std::abs(s - params.t[a].imag()) > 1e-9 * (1 + std::abs(s)))
      fail(ErrorCode::StripViolation, "chart imaginary parts incompatible with Im t");
  }
  std::vector<double> re0(r, 0.0), theta(r), cosines(r);
  double mu = 1, rho_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i < r; ++i) {
    for (int a = 0; a < k; ++a) re0[i] += params.t[a].real() * to_double(git.ell[i][a]);
    theta[i] = -2 * kPi * chart.cprime[i];
    cosines[i] = std::cos(theta[i]);
    mu = std::min(mu, cosines[i]);
    rho_min = std::min(rho_min, re0[i]);
  }
  if (mu <= 0) fail(ErrorCode::TailNotCertified, "a fiber coordinate has nonpositive cosine");
  const double alpha = fan_growth_constant(git);
  if (alpha <= 0) fail(ErrorCode::TailNotCertified, "fan growth constant is not positive");
  const double z = params.z;
  auto envelope = [&](double s) {
    double e = std::exp(-(mu / z) * std::exp(rho_min + alpha * s));
    return (n == 1 ? 2.0 : 2 * kPi * s) * e;
  };
  double radius = 2;
  double tail_value = 0;
  while (true) {
    auto tail = integrate_gk([&](double s) { return cd(envelope(s)); }, radius, radius + 40 / alpha,
                             {.abs_tol = tol * 1e-3, .rel_tol = 1e-6, .max_subdivisions = 400});
    tail_value = tail.value.real() + tail.abs_error;
    if (tail_value < tol / 4) break;
    radius += 1;
    if (radius > 200) fail(ErrorCode::TailNotCertified, "no cutoff radius certifies the tail");
  }
  std::vector<cd> phase(r);
  for (int i = 0; i < r; ++i) phase[i] = std::polar(1.0, theta[i]) / z;
  auto integrand = [&](const double* y) {
    cd w = 0;
    for (int i = 0; i < r; ++i) {
      double re = re0[i];
      for (int c = 0; c < n; ++c) re += y[c] * static_cast<double>(git.b[i][c]);
      w += std::exp(re) * phase[i];
    }
    return std::exp(-w);
  };
  QuadOptions opts{.abs_tol = tol / 2, .rel_tol = 0, .max_subdivisions = 4000};
  QuadResult q;
  if (n == 1) {
    q = integrate_gk([&](double y) { return integrand(&y); }, -radius, radius, opts);
  } else {
    q = integrate_gk_2d(
        [&](double y1, double y2) {
          double y[2] = {y1, y2};
          return integrand(y);
        },
        -radius, radius, -radius, radius, opts);
  }
  if (!q.converged) fail(ErrorCode::MaxSubdivisions, "fiber quadrature did not reach tolerance");
  CentralCharge cc;
  cc.value = q.value;
  cc.abs_error = q.abs_error + tail_value;
  cc.method = "oscillatory";
  cc.terms_used = q.evaluations;
  return cc;
}

}  // namespace mirror
