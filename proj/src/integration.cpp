#include "mirror/integration.hpp"

#include "mirror/error.hpp"

#include <functional>
#include <random>

namespace mirror {

namespace {

// Equivariant weights of D_1..D_r at the fixed point of each cone, or nullopt on a wall.
std::optional<std::vector<QVec>> fixed_point_weights(const SectorGeometry& sector, const GitPresentation& git,
                                                     const QVec& lambda) {
  std::vector<QVec> out;
  for (const auto& tau : sector.fixed_cones) {
    QMat bt(git.n, QVec(git.n));
    for (int j = 0; j < git.n; ++j)
      for (int c = 0; c < git.n; ++c) bt[c][j] = git.b[tau[j]][c];
    QMat dual = inverse(bt);  // row j is u_j with <u_j, b_tau[i]> = delta
    QVec w(git.r);
    for (int j = 0; j < git.n; ++j) {
      w[tau[j]] = dot(dual[j], lambda);
      bool normal = !std::binary_search(sector.sector.host_cone.begin(), sector.sector.host_cone.end(), tau[j]);
      if (normal && w[tau[j]] == 0) return std::nullopt;
    }
    out.push_back(w);
  }
  return out;
}

QVec draw_parameters(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<long long> dist(-1000000, 1000000);
  QVec l(n);
  for (auto& x : l) x = Q(dist(rng), 1 + (dist(rng) & 1023));
  return l;
}

Q evaluate(const RationalPoly& poly, const QVec& w) {
  Q total = 0;
  for (const auto& [e, c] : poly.terms) {
    Q m = c;
    for (size_t i = 0; i < e.size(); ++i)
      for (int p = 0; p < e[i]; ++p) m *= w[i];
    total += m;
  }
  return total;
}

}  // namespace

Q localize_integral(const SectorGeometry& sector, const RationalPoly& poly, const GitPresentation& git,
                    const LocalizationOptions& opts) {
  if (poly.degree() > sector.dim)
    fail(ErrorCode::DegreeMismatch, "polynomial degree " + std::to_string(poly.degree()) + " exceeds sector dimension " +
                                        std::to_string(sector.dim));
  RationalPoly top = poly.homogeneous_part(sector.dim);
  if (top.terms.empty()) return 0;
  std::mt19937_64 rng(opts.seed);
  for (int attempt = 0; attempt < opts.max_retries; ++attempt) {
    QVec lambda = draw_parameters(rng, git.n);
    auto weights = fixed_point_weights(sector, git, lambda);
    if (!weights) continue;
    Q total = 0;
    for (size_t t = 0; t < sector.fixed_cones.size(); ++t) {
      const auto& tau = sector.fixed_cones[t];
      Q euler = 1;
      for (int i : tau)
        if (!std::binary_search(sector.sector.host_cone.begin(), sector.sector.host_cone.end(), i))
          euler *= (*weights)[t][i];
      total += evaluate(top, (*weights)[t]) / (euler * Q(cone_index(tau, git)));
    }
    return total;
  }
  fail(ErrorCode::DegenerateParameters, "generic parameters hit a wall in every retry");
}

std::map<Exponents, Q> intersection_table(const SectorGeometry& sector, const GitPresentation& git,
                                          const LocalizationOptions& opts) {
  std::map<Exponents, Q> table;
  std::vector<int> vars;
  for (int i = 0; i < git.r; ++i)
    if (sector.in_star[i]) vars.push_back(i);
  Exponents e(git.r, 0);
  std::function<void(size_t, int)> rec = [&](size_t idx, int left) {
    if (idx == vars.size()) {
      if (left != 0) return;
      RationalPoly m;
      m.nvars = git.r;
      m.terms[e] = 1;
      Q v = localize_integral(sector, m, git, opts);
      if (v != 0) table[e] = v;
      return;
    }
    for (int p = left; p >= 0; --p) {
      e[vars[idx]] = p;
      rec(idx + 1, left - p);
    }
    e[vars[idx]] = 0;
  };
  rec(0, sector.dim);
  return table;
}

RationalPoly reduce_by_relations(const RationalPoly& poly, const GitPresentation& git) {
  const int r = git.r;
  // relation rows: columns reversed so that pivots land on the highest indices
  QMat rel(git.n, QVec(r));
  for (int c = 0; c < git.n; ++c)
    for (int i = 0; i < r; ++i) rel[c][r - 1 - i] = git.b[i][c];
  for (int j = git.r_prime; j < r; ++j) {
    QVec row(r);
    row[r - 1 - j] = 1;
    rel.push_back(row);
  }
  auto pivots = rref(rel);
  // substitution for each pivot variable: D_p = -sum_free coeff D_free
  std::map<int, RationalPoly> subst;
  for (size_t k = 0; k < pivots.size(); ++k) {
    int p = r - 1 - pivots[k];
    RationalPoly s;
    s.nvars = r;
    for (int col = 0; col < r; ++col) {
      if (col == pivots[k] || rel[k][col] == 0) continue;
      s.add_term([&] {
        Exponents e(r, 0);
        e[r - 1 - col] = 1;
        return e;
      }(), -rel[k][col]);
    }
    subst[p] = s;
  }
  RationalPoly out;
  out.nvars = r;
  for (const auto& [e, c] : poly.terms) {
    RationalPoly term = RationalPoly::constant(r, c);
    Exponents rest = e;
    rest.resize(r, 0);
    for (auto& [p, s] : subst) {
      for (int k = 0; k < rest[p]; ++k) term = term.times(s);
      rest[p] = 0;
    }
    RationalPoly mono;
    mono.nvars = r;
    mono.terms[rest] = 1;
    out += term.times(mono);
  }
  return out;
}

}  // namespace mirror
