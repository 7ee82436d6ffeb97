#include "mirror/ccc.hpp"

#include "mirror/error.hpp"
#include "mirror/lp.hpp"
#include "mirror/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

namespace mirror {

namespace {

IndexSet from_mask(unsigned mask, int r) {
  IndexSet s;
  for (int i = 0; i < r; ++i)
    if (mask & (1u << i)) s.push_back(i);
  return s;
}

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

IndexSet set_minus(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool contains(const IndexSet& s, int i) { return std::binary_search(s.begin(), s.end(), i); }

QMat rows_of(const GitPresentation& git, const IndexSet& s) {
  QMat m;
  for (int i : s) m.push_back(git.ray(i));
  return m;
}

int sign_of(const Q& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

// Closure (strict = false) or open cell (strict = true).
Polyhedron cell_polyhedron(const QVec& a, const GitPresentation& git, const IndexSet& I, const IndexSet& J,
                           bool strict) {
  Polyhedron p;
  p.dim = git.n;
  for (int i = 0; i < git.r_prime; ++i) {
    QVec b = git.ray(i);
    if (contains(I, i)) {
      p.eq.push_back({b, Sense::EQ, -a[i]});
    } else if (contains(J, i)) {
      (strict ? p.strict : p.ge).push_back({b, Sense::GE, -a[i]});
    } else {
      QVec nb(b.size());
      for (size_t c = 0; c < b.size(); ++c) nb[c] = -b[c];
      (strict ? p.strict : p.ge).push_back({nb, Sense::GE, a[i]});
    }
  }
  return p;
}

bool satisfies(const Polyhedron& p, const QVec& x) {
  for (const auto& row : p.eq)
    if (dot(row.coeff, x) != row.rhs) return false;
  for (const auto& row : p.ge)
    if (dot(row.coeff, x) < row.rhs) return false;
  for (const auto& row : p.strict)
    if (dot(row.coeff, x) <= row.rhs) return false;
  return true;
}

QVec normalized_ray(QVec v) {
  Q scale = 0;
  for (const auto& x : v) scale = std::max(scale, Q(abs(x)));
  for (auto& x : v) x /= scale;
  return v;
}

// Vertices and extreme rays of a closed polyhedron (eq and ge rows only).
void vrep(const Polyhedron& p, std::vector<QVec>& vertices, std::vector<QVec>& rays) {
  const int n = p.dim;
  std::vector<LinearConstraint> all = p.eq;
  all.insert(all.end(), p.ge.begin(), p.ge.end());
  const int m = static_cast<int>(all.size());
  std::set<QVec> vs, rs;
  std::vector<int> pick;
  std::function<void(int, int)> rec = [&](int start, int need) {
    if (need == 0) {
      QMat a;
      QVec rhs;
      for (int i : pick) {
        a.push_back(all[i].coeff);
        rhs.push_back(all[i].rhs);
      }
      if (static_cast<int>(pick.size()) == n) {
        if (rank(a) == n) {
          auto x = solve(a, rhs);
          if (x && satisfies(p, *x)) vs.insert(*x);
        }
      } else {
        auto ns = nullspace(a, n);
        if (ns.size() != 1) return;
        for (int s : {1, -1}) {
          QVec v = ns[0];
          for (auto& x : v) x *= s;
          bool ok = true;
          for (const auto& row : p.eq) ok = ok && dot(row.coeff, v) == 0;
          for (const auto& row : p.ge) ok = ok && dot(row.coeff, v) >= 0;
          if (ok) rs.insert(normalized_ray(v));
        }
      }
      return;
    }
    for (int i = start; i < m; ++i) {
      pick.push_back(i);
      rec(i + 1, need - 1);
      pick.pop_back();
    }
  };
  rec(0, n);
  if (n >= 1) rec(0, n - 1);
  vertices.assign(vs.begin(), vs.end());
  rays.assign(rs.begin(), rs.end());
}

// Projection of v onto the orthogonal complement of span{rows}.
QVec project_out(const QMat& rows, const QVec& v) {
  if (rows.empty()) return v;
  const int k = static_cast<int>(rows.size());
  QMat gram(k, QVec(k));
  QVec rhs(k);
  for (int i = 0; i < k; ++i) {
    rhs[i] = dot(rows[i], v);
    for (int j = 0; j < k; ++j) gram[i][j] = dot(rows[i], rows[j]);
  }
  QVec coef = *solve(gram, rhs);
  QVec out = v;
  for (int i = 0; i < k; ++i)
    for (size_t c = 0; c < v.size(); ++c) out[c] -= coef[i] * rows[i][c];
  return out;
}

int frame_sign(const std::vector<QVec>& columns) {
  const size_t n = columns.size();
  QMat m(n, QVec(n));
  for (size_t c = 0; c < n; ++c)
    for (size_t r = 0; r < n; ++r) m[r][c] = columns[c][r];
  return sign_of(det(m));
}

}  // namespace

int multiplicity_unchecked(const IndexSet& I, const IndexSet& J, const GitPresentation& git, const StackyFan& fan) {
  int m = 0;
  const int nj = static_cast<int>(J.size());
  for (unsigned mask = 0; mask < (1u << nj); ++mask) {
    IndexSet K;
    for (int j = 0; j < nj; ++j)
      if (mask & (1u << j)) K.push_back(J[j]);
    IndexSet L = set_union(I, K);
    if (static_cast<int>(L.size()) > git.n || !fan.is_cone(L)) continue;
    m += ((git.n - static_cast<int>(L.size())) % 2) ? -1 : 1;
  }
  return m;
}

int multiplicity(const IndexSet& I, const IndexSet& J, const GitPresentation& git, const StackyFan& fan) {
  for (int j : J)
    if (contains(I, j)) fail(ErrorCode::InvalidInput, "I and J must be disjoint");
  if (!fan.is_cone(I)) fail(ErrorCode::NotACone, "I = " + index_set_string(I) + " does not generate a cone");
  return multiplicity_unchecked(I, J, git, fan);
}

Arrangement arrangement_cells(const QVec& a, const GitPresentation& git, const StackyFan& fan) {
  const int rp = git.r_prime, n = git.n;
  if (rp < n || n < 1) fail(ErrorCode::InvalidInput, "arrangement needs r' >= n >= 1");
  if (static_cast<int>(a.size()) != rp) fail(ErrorCode::InvalidInput, "a must have r' entries");
  Arrangement arr;
  arr.a = a;
  std::vector<IndexSet> subsets;
  for (unsigned mask = 0; mask < (1u << rp); ++mask) subsets.push_back(from_mask(mask, rp));
  std::sort(subsets.begin(), subsets.end());
  for (const auto& I : subsets) {
    const int rk = I.empty() ? 0 : rank(rows_of(git, I));
    Polyhedron h;
    h.dim = n;
    for (int i : I) h.eq.push_back({git.ray(i), Sense::EQ, -a[i]});
    auto hinfo = analyze_polyhedron(h);
    if (!hinfo.nonempty) continue;
    if (rk < static_cast<int>(I.size())) arr.degenerate = true;
    IndexSet rest = set_minus(from_mask((1u << rp) - 1, rp), I);
    std::vector<IndexSet> js;
    for (unsigned mask = 0; mask < (1u << rest.size()); ++mask) {
      IndexSet J;
      for (size_t j = 0; j < rest.size(); ++j)
        if (mask & (1u << j)) J.push_back(rest[j]);
      js.push_back(J);
    }
    std::sort(js.begin(), js.end());
    for (const auto& J : js) {
      auto info = analyze_polyhedron(cell_polyhedron(a, git, I, J, true));
      if (!info.nonempty || info.dimension + rk != n) continue;
      Cell c;
      c.I = I;
      c.J = J;
      c.dim = info.dimension;
      c.interior_point = info.interior_point;
      vrep(cell_polyhedron(a, git, I, J, false), c.vertices, c.rays);
      c.cone = fan.is_cone(I);
      c.multiplicity = c.cone ? multiplicity_unchecked(I, J, git, fan) : 0;
      arr.cells.push_back(std::move(c));
    }
  }
  return arr;
}

CCCycle ccc_cycle(const Arrangement& arr, const GitPresentation& git, const StackyFan& fan, CycleBackend backend) {
  CCCycle cyc;
  cyc.a = arr.a;
  if (backend == CycleBackend::CellFormula) {
    for (const auto& c : arr.cells)
      if (c.cone && c.multiplicity != 0) cyc.coefficients[{c.I, c.J}] = c.multiplicity;
    return cyc;
  }
  // Definition: sum over cones sigma_I of (-1)^{|I|-n} sum_{L subset I} (H_L cap V^+_{I \ L}) x (-sigma_L)
  for (const auto& I : fan.cones) {
    if (std::any_of(I.begin(), I.end(), [&](int i) { return i >= git.r_prime; })) continue;
    const int sign = ((static_cast<int>(I.size()) - git.n) % 2) ? -1 : 1;
    const int ni = static_cast<int>(I.size());
    for (unsigned mask = 0; mask < (1u << ni); ++mask) {
      IndexSet L;
      for (int j = 0; j < ni; ++j)
        if (mask & (1u << j)) L.push_back(I[j]);
      Polyhedron region;
      region.dim = git.n;
      for (int i : I) {
        if (contains(L, i))
          region.eq.push_back({git.ray(i), Sense::EQ, -arr.a[i]});
        else
          region.ge.push_back({git.ray(i), Sense::GE, -arr.a[i]});
      }
      for (const auto& c : arr.cells) {
        if (c.I != L || !satisfies(region, c.interior_point)) continue;
        int& slot = cyc.coefficients[{c.I, c.J}];
        slot += sign;
        if (slot == 0) cyc.coefficients.erase({c.I, c.J});
      }
    }
  }
  return cyc;
}

CCCycle ccc_cycle(const QVec& a, const GitPresentation& git, const StackyFan& fan, CycleBackend backend) {
  return ccc_cycle(arrangement_cells(a, git, fan), git, fan, backend);
}

BoundaryReport boundary(const CCCycle& cycle, const GitPresentation& git) {
  const int n = git.n;
  std::map<IndexSet, std::vector<QVec>> bases;
  auto basis = [&](const IndexSet& K) -> const std::vector<QVec>& {
    auto it = bases.find(K);
    if (it != bases.end()) return it->second;
    std::vector<QVec> b = K.empty() ? nullspace(QMat{}, n) : nullspace(rows_of(git, K), n);
    return bases.emplace(K, b).first->second;
  };
  auto neg_rays = [&](const IndexSet& L) {
    std::vector<QVec> out;
    for (int i : L) {
      QVec b = git.ray(i);
      for (auto& x : b) x = -x;
      out.push_back(b);
    }
    return out;
  };
  std::map<std::pair<CycleKey, IndexSet>, int> acc;
  auto add = [&](const CycleKey& cell, const IndexSet& L, int v) {
    if (v == 0) return;
    auto key = std::make_pair(cell, L);
    int& slot = acc[key];
    slot += v;
    if (slot == 0) acc.erase(key);
  };
  for (const auto& [key, coef] : cycle.coefficients) {
    const IndexSet& I = key.I;
    const int w = coef;
    QMat bI = rows_of(git, I);
    // facets of the cell
    for (int j = 0; j < git.r_prime; ++j) {
      if (contains(I, j)) continue;
      IndexSet K = set_union(I, {j});
      IndexSet Jp = set_minus(key.J, {j});
      Polyhedron face = cell_polyhedron(cycle.a, git, K, Jp, true);
      auto info = analyze_polyhedron(face);
      if (!info.nonempty) continue;
      if (rank(rows_of(git, K)) != static_cast<int>(K.size())) continue;
      if (info.dimension != n - static_cast<int>(K.size())) continue;
      // the facet must bound this cell
      Polyhedron closure = cell_polyhedron(cycle.a, git, I, key.J, false);
      if (!satisfies(closure, info.interior_point)) continue;
      QVec nu = project_out(bI, git.ray(j));
      const int s = contains(key.J, j) ? -1 : 1;
      for (auto& x : nu) x *= s;
      std::vector<QVec> frame{nu};
      for (const auto& v : basis(K)) frame.push_back(v);
      for (const auto& v : neg_rays(I)) frame.push_back(v);
      add({K, Jp}, I, w * frame_sign(frame));
    }
    // facets of the cone
    for (int i : I) {
      IndexSet L = set_minus(I, {i});
      std::vector<QVec> frame{git.ray(i)};
      for (const auto& v : basis(I)) frame.push_back(v);
      for (const auto& v : neg_rays(L)) frame.push_back(v);
      add(key, L, w * frame_sign(frame));
    }
  }
  BoundaryReport rep;
  rep.residual = acc;
  rep.zero = acc.empty();
  return rep;
}

CCCycle moment_polytope_cycle(const QVec& a, const GitPresentation& git, const StackyFan& fan) {
  auto arr = arrangement_cells(a, git, fan);
  CCCycle cyc;
  cyc.a = a;
  for (const auto& c : arr.cells) {
    if (!c.cone) continue;
    if (static_cast<int>(c.I.size() + c.J.size()) == git.r_prime) cyc.coefficients[{c.I, c.J}] = 1;
  }
  return cyc;
}

bool is_fano_polytope(const GitPresentation& git, const StackyFan& fan) {
  if (!fan.complete) return false;
  for (const auto& sigma : fan.maximal_cones) {
    if (static_cast<int>(sigma.size()) != git.n) return false;
    auto m = solve(rows_of(git, sigma), QVec(git.n, Q(1)));
    if (!m) return false;
    for (int j = 0; j < git.r_prime; ++j)
      if (!contains(sigma, j) && dot(*m, git.ray(j)) >= 1) return false;
  }
  return true;
}

RhoMap::RhoMap(const GitPresentation& git, const StackyFan& fan) : git_(&git), fan_(&fan) {
  if (!is_fano_polytope(git, fan)) fail(ErrorCode::NotFanoPolytope, "rays are not the vertices of a Fano polytope");
  for (const auto& sigma : fan.maximal_cones) m_sigma_[sigma] = *solve(rows_of(git, sigma), QVec(git.n, Q(1)));
  for (const auto& I : fan.cones) {
    if (I.empty()) continue;
    QVec sum(git.n);
    int count = 0;
    for (const auto& [sigma, m] : m_sigma_) {
      if (!std::includes(sigma.begin(), sigma.end(), I.begin(), I.end())) continue;
      for (int c = 0; c < git.n; ++c) sum[c] += m[c];
      ++count;
    }
    for (auto& x : sum) x /= count;
    dual_bary_[I] = sum;
  }
}

QVec RhoMap::operator()(const QVec& n) const {
  const int dim = git_->n;
  if (std::all_of(n.begin(), n.end(), [](const Q& x) { return x == 0; })) return QVec(dim);
  for (const auto& [sigma, msig] : m_sigma_) {
    auto lam = cone_coordinates(sigma, n, *git_);
    if (!lam || std::any_of(lam->begin(), lam->end(), [](const Q& x) { return x < 0; })) continue;
    Q l = dot(msig, n);
    std::vector<std::pair<Q, int>> mu;
    for (size_t j = 0; j < sigma.size(); ++j)
      if ((*lam)[j] > 0) mu.push_back({(*lam)[j] / l, sigma[j]});
    std::sort(mu.begin(), mu.end(), [](const auto& x, const auto& y) {
      return x.first != y.first ? x.first > y.first : x.second < y.second;
    });
    QVec rho(dim);
    IndexSet chain;
    for (size_t j = 0; j < mu.size(); ++j) {
      chain.push_back(mu[j].second);
      IndexSet key = chain;
      std::sort(key.begin(), key.end());
      Q next = j + 1 < mu.size() ? mu[j + 1].first : Q(0);
      Q weight = Q(static_cast<long long>(j + 1)) * (mu[j].first - next);
      const QVec& bd = dual_bary_.at(key);
      for (int c = 0; c < dim; ++c) rho[c] -= l * weight * bd[c];
    }
    return rho;
  }
  fail(ErrorCode::InvalidInput, "vector outside the support of the fan");
}

bool RhoMap::in_U(const IndexSet& I, const QVec& m) const {
  if (I.empty()) return false;
  Q best = dot(m, git_->ray(I[0]));
  for (int i : I) best = std::max(best, dot(m, git_->ray(i)));
  for (int j = 0; j < git_->r_prime; ++j)
    if (!contains(I, j) && dot(m, git_->ray(j)) >= best) return false;
  return true;
}

bool rho_containment_check(const RhoMap& rho, const GitPresentation& git, const StackyFan& fan, int samples,
                           unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> dist(1, 1000);
  for (const auto& I : fan.cones) {
    if (I.empty()) continue;
    std::vector<QVec> pts;
    QVec bary(git.n);
    for (int i : I)
      for (int c = 0; c < git.n; ++c) bary[c] -= git.ray(i)[c];
    pts.push_back(bary);
    for (int s = 0; s < samples; ++s) {
      QVec p(git.n);
      for (int i : I) {
        Q lam(dist(rng), 1000);
        for (int c = 0; c < git.n; ++c) p[c] -= lam * git.ray(i)[c];
      }
      pts.push_back(p);
    }
    for (const auto& p : pts)
      if (!rho.in_U(I, rho(p))) return false;
  }
  return true;
}

SyzCycle syz_cycle(const LineBundleTwist& twist, const std::vector<cd>& t, const GitPresentation& git,
                   const StackyFan& fan) {
  h_of(twist, git);
  const int k = git.k(), rp = git.r_prime;
  if (static_cast<int>(t.size()) != k) fail(ErrorCode::InvalidInput, "t must have k entries");
  SyzCycle cyc;
  for (const auto& x : t) cyc.im_t.push_back(x.imag());
  cyc.a.assign(rp, Q(0));
  for (int i = 0; i < rp; ++i) {
    double shift = 0;
    for (int a = 0; a < k; ++a) shift += to_double(git.ell[i][a]) * t[a].imag() / (2 * kPi);
    cyc.a[i] = twist.c[i] + Q(shift);
  }
  cyc.perturbation.assign(rp, Q(0));
  auto arr = arrangement_cells(cyc.a, git, fan);
  for (int attempt = 0; arr.degenerate; ++attempt) {
    if (attempt == 8) fail(ErrorCode::InvalidInput, "could not perturb the arrangement to general position");
    static const int primes[] = {997, 1009, 1013, 1019, 1021, 1031, 1033, 1039};
    QVec shifted = cyc.a;
    for (int i = 0; i < rp; ++i) {
      cyc.perturbation[i] = Q(i + 1 + attempt, primes[(i + attempt) % 8]);
      shifted[i] += cyc.perturbation[i];
    }
    arr = arrangement_cells(shifted, git, fan);
  }
  auto cycle = ccc_cycle(arr, git, fan, CycleBackend::CellFormula);
  for (const auto& c : arr.cells) {
    auto it = cycle.coefficients.find({c.I, c.J});
    if (it == cycle.coefficients.end()) continue;
    SyzPiece piece;
    piece.cell = c;
    piece.coefficient = it->second;
    for (int i = 0; i < git.r; ++i) {
      double re = 0, im = 0;
      for (int a = 0; a < k; ++a) {
        re += t[a].real() * to_double(git.ell[i][a]);
        im += t[a].imag() * to_double(git.ell[i][a]);
      }
      im += 2 * kPi * to_double(dot(c.interior_point, git.ray(i)));
      piece.re_base.push_back(re);
      piece.phase.push_back(im);
    }
    cyc.pieces.push_back(std::move(piece));
  }
  return cyc;
}

bool convergence_check(const SyzCycle& cycle, const GitPresentation& git, const StackyFan& fan) {
  RhoMap rho(git, fan);
  for (const auto& piece : cycle.pieces) {
    const IndexSet& I = piece.cell.I;
    if (I.empty()) {
      if (!piece.cell.bounded()) return false;
      continue;
    }
    std::vector<QVec> dirs;
    QVec sum(git.n);
    for (int i : I) {
      QVec d = git.ray(i);
      for (int c = 0; c < git.n; ++c) {
        d[c] = -d[c];
        sum[c] += d[c];
      }
      dirs.push_back(d);
    }
    dirs.push_back(sum);
    for (const auto& d : dirs) {
      QVec m = rho(d);
      Q best = dot(m, git.ray(0));
      for (int j = 0; j < git.r; ++j) best = std::max(best, dot(m, git.ray(j)));
      if (best <= 0) return false;
      for (int j = 0; j < git.r; ++j) {
        if (dot(m, git.ray(j)) != best) continue;
        if (!contains(I, j) || std::cos(piece.phase[j]) <= 0) return false;
      }
    }
  }
  return true;
}

CentralCharge zB_over_syz_n1(const GitPresentation& git, const StackyFan& fan, const LineBundleTwist& twist,
                             const ComplexParams& params, double tol) {
  if (git.n != 1) fail(ErrorCode::DomainError, "SYZ integration implemented for n = 1");
  if (params.z <= 0) fail(ErrorCode::DomainError, "z must be positive");
  auto cyc = syz_cycle(twist, params.t, git, fan);
  if (!convergence_check(cyc, git, fan)) fail(ErrorCode::TailNotCertified, "SYZ cycle leaves the region Re W >> 0");
  RhoMap rho(git, fan);
  const double z = params.z;
  const int r = git.r;
  std::vector<double> b(r);
  for (int i = 0; i < r; ++i) b[i] = static_cast<double>(git.b[i][0]);
  const size_t npieces = std::max<size_t>(cyc.pieces.size(), 1);
  const double piece_tol = tol / static_cast<double>(npieces);
  cd total = 0;
  double err = 0;
  long evals = 0;
  for (const auto& piece : cyc.pieces) {
    const auto& c = piece.cell;
    if (c.I.empty()) {
      const double p = to_double(c.vertices.front()[0]), q = to_double(c.vertices.back()[0]);
      const double m0 = to_double(c.interior_point[0]);
      auto f = [&](double m) {
        cd w = 0;
        for (int j = 0; j < r; ++j)
          w += std::exp(cd(piece.re_base[j], piece.phase[j] + 2 * kPi * (m - m0) * b[j]));
        return std::exp(-w / z) * cd(0, 2 * kPi);
      };
      auto res = integrate_gk(f, p, q, {.abs_tol = piece_tol, .rel_tol = 0, .max_subdivisions = 2000});
      if (!res.converged) fail(ErrorCode::MaxSubdivisions, "segment quadrature did not converge");
      total += static_cast<double>(piece.coefficient) * res.value;
      err += std::abs(piece.coefficient) * res.abs_error;
      evals += res.evaluations;
      continue;
    }
    const int i = c.I[0];
    QVec dir{Q(-git.b[i][0])};
    const double slope = to_double(rho(dir)[0]);
    const double orient = -b[i] > 0 ? 1.0 : -1.0;
    std::vector<double> rate(r);
    int dom = i;
    for (int j = 0; j < r; ++j) rate[j] = slope * b[j];
    for (int j = 0; j < r; ++j)
      if (rate[j] > rate[dom]) dom = j;
    const double cdom = std::cos(piece.phase[dom]);
    auto lower = [&](double s) {
      double v = cdom * std::exp(piece.re_base[dom] + rate[dom] * s);
      for (int j = 0; j < r; ++j)
        if (j != dom) v -= std::exp(piece.re_base[j] + rate[j] * s);
      return v;
    };
    double radius = 1;
    double tail = 0;
    while (true) {
      if (lower(radius) > 0 && lower(radius + 1) > lower(radius)) {
        auto tq = integrate_gk([&](double s) { return cd(std::abs(slope) * std::exp(-lower(s) / z)); }, radius,
                               radius + 60 / rate[dom], {.abs_tol = piece_tol * 1e-3, .rel_tol = 1e-6, .max_subdivisions = 400});
        tail = tq.value.real() + tq.abs_error;
        if (tail < piece_tol / 4) break;
      }
      radius += 1;
      if (radius > 200) fail(ErrorCode::TailNotCertified, "no cutoff certifies the ray tail");
    }
    auto f = [&](double s) {
      cd w = 0;
      for (int j = 0; j < r; ++j) w += std::exp(cd(piece.re_base[j] + rate[j] * s, piece.phase[j]));
      return std::exp(-w / z) * slope;
    };
    auto res = integrate_gk(f, 0, radius, {.abs_tol = piece_tol / 2, .rel_tol = 0, .max_subdivisions = 2000});
    if (!res.converged) fail(ErrorCode::MaxSubdivisions, "ray quadrature did not converge");
    total += static_cast<double>(piece.coefficient) * orient * res.value;
    err += std::abs(piece.coefficient) * (res.abs_error + tail);
    evals += res.evaluations;
  }
  CentralCharge cc;
  // increasing n decreases Re log Z, opposite to the fiber chart orientation
  cc.value = -total;
  cc.abs_error = err;
  cc.method = "syz-cycle";
  cc.terms_used = evals;
  return cc;
}

std::string cells_csv(const Arrangement& arr) {
  std::ostringstream out;
  out << "I,J,dim,multiplicity,vertices,rays\n";
  auto pts = [](const std::vector<QVec>& v) {
    std::string s;
    for (const auto& p : v) {
      s += s.empty() ? "(" : " (";
      for (size_t c = 0; c < p.size(); ++c) s += (c ? ";" : "") + to_string(p[c]);
      s += ")";
    }
    return s;
  };
  for (const auto& c : arr.cells)
    out << '"' << index_set_string(c.I) << "\",\"" << index_set_string(c.J) << "\"," << c.dim << ','
        << c.multiplicity << ",\"" << pts(c.vertices) << "\",\"" << pts(c.rays) << "\"\n";
  return out.str();
}

std::string cells_svg(const Arrangement& arr, double half_width) {
  if (arr.cells.empty() || arr.cells.front().interior_point.size() != 2)
    fail(ErrorCode::InvalidInput, "SVG export needs n = 2");
  const double size = 600, scale = size / (2 * half_width);
  auto px = [&](double x) { return (x + half_width) * scale; };
  auto py = [&](double y) { return (half_width - y) * scale; };
  auto color = [](int m) { return m > 0 ? "#4a7bd0" : (m < 0 ? "#d05a4a" : "#dddddd"); };
  std::ostringstream out;
  out << std::fixed << std::setprecision(3);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
      << size << ' ' << size << "\">\n";
  for (int pass = 2; pass >= 0; --pass) {
    for (const auto& c : arr.cells) {
      if (c.dim != pass) continue;
      // clip the closure to the drawing box
      const auto& verts = c.vertices;
      const auto& rays = c.rays;
      std::vector<std::pair<double, double>> poly;
      for (const auto& v : verts) poly.push_back({to_double(v[0]), to_double(v[1])});
      for (const auto& rv : rays)
        for (const auto& v : verts)
          poly.push_back({to_double(v[0]) + 4 * half_width * to_double(rv[0]),
                          to_double(v[1]) + 4 * half_width * to_double(rv[1])});
      if (poly.empty()) continue;
      double cx = 0, cy = 0;
      for (auto [x, y] : poly) {
        cx += x;
        cy += y;
      }
      cx /= poly.size();
      cy /= poly.size();
      std::sort(poly.begin(), poly.end(), [&](auto p1, auto p2) {
        return std::atan2(p1.second - cy, p1.first - cx) < std::atan2(p2.second - cy, p2.first - cx);
      });
      const double ix = to_double(c.interior_point[0]), iy = to_double(c.interior_point[1]);
      if (pass == 2) {
        out << "  <polygon points=\"";
        for (size_t j = 0; j < poly.size(); ++j) out << (j ? " " : "") << px(poly[j].first) << ',' << py(poly[j].second);
        out << "\" fill=\"" << color(c.multiplicity) << "\" fill-opacity=\"0.5\" stroke=\"none\"/>\n";
      } else if (pass == 1) {
        auto [lo, hi] = std::minmax_element(poly.begin(), poly.end());
        out << "  <line x1=\"" << px(lo->first) << "\" y1=\"" << py(lo->second) << "\" x2=\"" << px(hi->first)
            << "\" y2=\"" << py(hi->second) << "\" stroke=\"" << color(c.multiplicity) << "\" stroke-width=\"3\"/>\n";
      } else {
        out << "  <circle cx=\"" << px(ix) << "\" cy=\"" << py(iy) << "\" r=\"5\" fill=\"" << color(c.multiplicity)
            << "\"/>\n";
      }
      if (std::abs(ix) < half_width && std::abs(iy) < half_width)
        out << "  <text x=\"" << px(ix) + 6 << "\" y=\"" << py(iy) - 6 << "\" font-size=\"12\">"
            << index_set_string(c.I) << index_set_string(c.J) << " m=" << c.multiplicity << "</text>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace mirror
