#include "mirror/verify.hpp"

#include "mirror/error.hpp"

#include <cmath>
#include <limits>

namespace mirror {

namespace {

const cd kTwoPiI(0, 2 * kPi);

}  // namespace

Kappa calibrate_kappa(double tol) {
  GitInput in;
  in.b = {{1}, {-1}};
  auto git = make_git(in);
  auto fan = build_fan(git);
  LineBundleTwist zero{{Q(0), Q(0)}};
  ComplexParams p{{cd(-3)}, 1.0};
  cd za = zA_series(git, fan, zero, p, {.tol = 1e-13}).charge.value;
  cd zb = mb_inverse_fourier(git, zero, p, make_mb_spec(git, zero, p, 1e-11)).value;
  cd ratio = za / (zb / kTwoPiI);
  const std::pair<cd, const char*> units[] = {{1, "1"}, {-1, "-1"}, {cd(0, 1), "i"}, {cd(0, -1), "-i"}};
  Kappa best;
  best.residual = std::numeric_limits<double>::infinity();
  for (const auto& [u, name] : units)
    for (int e = -2; e <= 2; ++e) {
      cd cand = u * std::pow(kTwoPiI, e);
      double res = std::abs(ratio - cand) / std::abs(cand);
      if (res < best.residual) {
        best.value = cand;
        best.residual = res;
        best.label = e == 0 ? std::string(name) : std::string(name) + "*(2*pi*i)^" + std::to_string(e);
      }
    }
  if (best.residual > tol)
    fail(ErrorCode::MismatchBeyondTolerance, "normalization ratio matches no candidate, residual " + std::to_string(best.residual));
  return best;
}

VerifyReport verify_main_theorem(const GitPresentation& git, const StackyFan& fan, const LineBundleTwist& twist,
                                 const ComplexParams& params, const Kappa& kappa, const VerifyOptions& opts) {
  VerifyReport rep;
  rep.kappa = kappa;
  const LineBundleTwist& btw = opts.b_twist ? *opts.b_twist : twist;
  rep.za = zA_series(git, fan, twist, params, {.tol = opts.series_tol, .degree_bound = opts.degree_bound}).charge;
  if (git.k() <= 2) rep.mb = mb_inverse_fourier(git, btw, params, make_mb_spec(git, btw, params, opts.quad_tol));
  if (git.n <= 2) {
    std::vector<double> im_t;
    for (const auto& x : params.t) im_t.push_back(x.imag());
    rep.fiber = fiber_oscillatory(git, fan, btw, params, default_chart(git, btw, im_t), opts.quad_tol);
  }
  if (git.n == 1) rep.syz = zB_over_syz_n1(git, fan, btw, params, opts.quad_tol);
  const cd norm = kappa.value * std::pow(kTwoPiI, -git.n);
  const double scale = std::pow(2 * kPi, -git.n) * std::abs(kappa.value);
  struct Entry {
    std::string name;
    cd value;
    double err;
  };
  std::vector<Entry> entries{{"za_series", rep.za.value, rep.za.abs_error}};
  if (rep.mb) entries.push_back({"mellin_barnes", norm * rep.mb->value, scale * rep.mb->abs_error});
  if (rep.fiber) entries.push_back({"oscillatory", norm * rep.fiber->value, scale * rep.fiber->abs_error});
  if (rep.syz) entries.push_back({"syz_cycle", norm * rep.syz->value, scale * rep.syz->abs_error});
  rep.pass = true;
  for (size_t i = 0; i < entries.size(); ++i)
    for (size_t j = i + 1; j < entries.size(); ++j) {
      Comparison c;
      c.lhs = entries[i].name;
      c.rhs = entries[j].name;
      c.lhs_value = entries[i].value;
      c.rhs_value = entries[j].value;
      const double mag = std::max(std::abs(c.lhs_value), std::numeric_limits<double>::min());
      c.residual = std::abs(c.lhs_value - c.rhs_value) / mag;
      c.tolerance = opts.rel_tol + (entries[i].err + entries[j].err) / mag;
      c.pass = c.residual <= c.tolerance;
      rep.pass = rep.pass && c.pass;
      rep.comparisons.push_back(c);
    }
  if (opts.strict && !rep.pass) {
    for (const auto& c : rep.comparisons)
      if (!c.pass)
        fail(ErrorCode::MismatchBeyondTolerance,
             c.lhs + " vs " + c.rhs + " relative residual " + std::to_string(c.residual));
  }
  return rep;
}

}  // namespace mirror
