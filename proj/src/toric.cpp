#include "mirror/toric.hpp"

#include "mirror/error.hpp"
#include "mirror/lp.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

namespace mirror {

QVec GitPresentation::divisor(int i) const {
  QVec d(k());
  for (int a = 0; a < k(); ++a) d[a] = charge[a][i];
  return d;
}

QVec GitPresentation::ray(int i) const { return to_qvec(b[i]); }

Q GitPresentation::pairing(int i, const QVec& beta) const {
  Q s = 0;
  for (int a = 0; a < k(); ++a) s += Q(charge[a][i]) * beta[a];
  return s;
}

bool StackyFan::is_cone(const IndexSet& s) const { return std::find(cones.begin(), cones.end(), s) != cones.end(); }

IndexSet complement(const IndexSet& s, int r) {
  IndexSet out;
  for (int i = 0; i < r; ++i)
    if (!std::binary_search(s.begin(), s.end(), i)) out.push_back(i);
  return out;
}

std::string index_set_string(const IndexSet& s) {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i] + 1;
  os << "}";
  return os.str();
}

namespace {

IndexSet mask_to_set(unsigned mask, int r) {
  IndexSet s;
  for (int i = 0; i < r; ++i)
    if (mask & (1u << i)) s.push_back(i);
  return s;
}

std::vector<QVec> divisors_of(const GitPresentation& git, const IndexSet& s) {
  std::vector<QVec> out;
  for (int i : s) out.push_back(git.divisor(i));
  return out;
}

IntMat to_intmat(const ZMat& m) {
  IntMat out;
  for (const auto& row : m) {
    IntVec v;
    for (const auto& x : row) v.push_back(to_ll(x));
    out.push_back(v);
  }
  return out;
}

ZMat to_zmat(const IntMat& m) {
  ZMat out;
  for (const auto& row : m) {
    ZVec v;
    for (auto x : row) v.emplace_back(x);
    out.push_back(v);
  }
  return out;
}

// Rewrites charge and eta in the basis whose rows (old coordinates) are P.
void rebase(GitPresentation& git, const QMat& p) {
  QMat pit = transpose(inverse(p));
  QMat c = to_qmat(git.charge);
  IntMat out(git.k(), IntVec(git.r));
  for (int a = 0; a < git.k(); ++a)
    for (int i = 0; i < git.r; ++i) {
      Q s = 0;
      for (int b = 0; b < git.k(); ++b) s += pit[a][b] * c[b][i];
      if (!is_integer(s)) fail(ErrorCode::InvalidInput, "p-basis is not a lattice basis of L^vee");
      out[a][i] = to_ll(numerator(s));
    }
  git.charge = out;
  git.eta = mat_vec(pit, git.eta);
  QMat composed(git.k(), QVec(git.k()));
  for (int a = 0; a < git.k(); ++a)
    for (int b = 0; b < git.k(); ++b)
      for (int e = 0; e < git.k(); ++e) composed[a][b] += p[a][e] * git.p_basis[e][b];
  git.p_basis = composed;
}

QMat choose_ell(const GitPresentation& git) {
  const int k = git.k(), r = git.r;
  std::optional<IndexSet> rational_choice;
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    IndexSet s = mask_to_set(mask, r);
    bool has_extras = true;
    for (int j = git.r_prime; j < r; ++j)
      if (!std::binary_search(s.begin(), s.end(), j)) has_extras = false;
    if (!has_extras) continue;
    QMat ds(k, QVec(k));
    for (int a = 0; a < k; ++a)
      for (int j = 0; j < k; ++j) ds[a][j] = git.charge[a][s[j]];
    Q d = det(ds);
    if (d == 0) continue;
    if (abs(d) == 1 || !rational_choice) {
      if (!rational_choice) rational_choice = s;
      if (abs(d) == 1) {
        rational_choice = s;
        break;
      }
    }
  }
  if (!rational_choice) fail(ErrorCode::RankDeficient, "no invertible k-subset of divisors");
  const IndexSet& s = *rational_choice;
  QMat ds(k, QVec(k));
  for (int a = 0; a < k; ++a)
    for (int j = 0; j < k; ++j) ds[a][j] = git.charge[a][s[j]];
  QMat inv = inverse(ds);
  QMat ell(r, QVec(k));
  for (int j = 0; j < k; ++j)
    for (int b = 0; b < k; ++b) ell[s[j]][b] = inv[j][b];
  return ell;
}

void choose_p_basis(GitPresentation& git, const StackyFan& fan) {
  const int k = git.k();
  if (k == 1) {
    if (git.eta[0] < 0) rebase(git, QMat{{Q(-1)}});
    return;
  }
  bool identity_ok = true;
  for (int a = 0; a < k && identity_ok; ++a) {
    QVec e(k);
    e[a] = 1;
    identity_ok = in_nef(e, git, fan);
  }
  if (identity_ok) return;
  std::vector<QVec> candidates;
  IntVec cur(k, -2);
  while (true) {
    QVec v(k);
    bool nonzero = false;
    long long g = 0;
    for (int a = 0; a < k; ++a) {
      v[a] = cur[a];
      nonzero |= cur[a] != 0;
      g = std::gcd(g, std::abs(cur[a]));
    }
    if (nonzero && g == 1 && in_nef(v, git, fan)) candidates.push_back(v);
    int a = 0;
    while (a < k && cur[a] == 2) cur[a++] = -2;
    if (a == k) break;
    ++cur[a];
  }
  auto l1 = [](const QVec& v) {
    Q s = 0;
    for (const auto& x : v) s += abs(x);
    return s;
  };
  std::stable_sort(candidates.begin(), candidates.end(), [&](const QVec& x, const QVec& y) { return l1(x) < l1(y); });
  const int m = static_cast<int>(candidates.size());
  std::vector<int> pick;
  std::function<bool(int)> search = [&](int start) -> bool {
    if (static_cast<int>(pick.size()) == k) {
      QMat p;
      for (int i : pick) p.push_back(candidates[i]);
      if (abs(det(p)) == 1) {
        rebase(git, p);
        return true;
      }
      return false;
    }
    for (int i = start; i < m; ++i) {
      pick.push_back(i);
      if (search(i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  if (!search(0)) fail(ErrorCode::InvalidInput, "no unimodular nef basis found among small candidates; supply p_basis");
}

}  // namespace

IntMat derive_charge_matrix(const IntMat& b, int n) {
  const int r = static_cast<int>(b.size());
  ZMat cols(n, ZVec(r));
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(b[i].size()) != n) fail(ErrorCode::InvalidInput, "vector dimension mismatch");
    for (int c = 0; c < n; ++c) cols[c][i] = b[i][c];
  }
  auto ker = integer_kernel(cols);
  if (ker.rank != n) fail(ErrorCode::RankDeficient, "kernel rank " + std::to_string(r - ker.rank) + " differs from r - n = " + std::to_string(r - n));
  if (ker.index != 1) fail(ErrorCode::NotGenerating, "vectors generate a sublattice of index " + ker.index.str());
  return to_intmat(row_hnf(ker.kernel));
}

GitPresentation make_git(const GitInput& input) {
  GitPresentation git;
  if (input.b.empty()) fail(ErrorCode::InvalidInput, "no vectors given");
  git.b = input.b;
  git.r = static_cast<int>(input.b.size());
  git.n = static_cast<int>(input.b[0].size());
  git.r_prime = input.r_prime < 0 ? git.r : input.r_prime;
  if (git.n < 1 || git.r_prime < git.n || git.r_prime > git.r)
    fail(ErrorCode::InvalidInput, "require r >= r' >= n >= 1");
  if (git.r > 16) fail(ErrorCode::InvalidInput, "at most 16 vectors supported");
  IntMat derived = derive_charge_matrix(git.b, git.n);
  if (input.charge) {
    const IntMat& c = *input.charge;
    if (c.size() != derived.size()) fail(ErrorCode::InvalidInput, "charge matrix must have r - n rows");
    for (const auto& row : c) {
      if (static_cast<int>(row.size()) != git.r) fail(ErrorCode::InvalidInput, "charge row length must be r");
      for (int col = 0; col < git.n; ++col) {
        long long s = 0;
        for (int i = 0; i < git.r; ++i) s += row[i] * git.b[i][col];
        if (s != 0) fail(ErrorCode::InvalidInput, "charge row is not a relation among the vectors");
      }
    }
    if (row_hnf(to_zmat(c)) != row_hnf(to_zmat(derived)))
      fail(ErrorCode::InvalidInput, "charge rows do not form a lattice basis of the relations");
    git.charge = c;
  } else {
    git.charge = derived;
  }
  const int k = git.k();
  git.p_basis.assign(k, QVec(k));
  for (int a = 0; a < k; ++a) git.p_basis[a][a] = 1;
  if (input.eta) {
    if (static_cast<int>(input.eta->size()) != k) fail(ErrorCode::InvalidInput, "eta must have k = r - n entries");
    git.eta = *input.eta;
  } else {
    git.eta.assign(k, Q(0));
    for (int i = 0; i < git.r; ++i) {
      Q w = input.eta_weights ? (*input.eta_weights)[i] : Q(1);
      for (int a = 0; a < k; ++a) git.eta[a] += w * Q(git.charge[a][i]);
    }
  }
  StackyFan fan = build_fan(git);
  if (input.p_basis) {
    rebase(git, *input.p_basis);
  } else {
    choose_p_basis(git, fan);
  }
  git.ell = choose_ell(git);
  return git;
}

std::set<IndexSet> anticones(const GitPresentation& git) {
  const int r = git.r;
  bool zero = true;
  for (const auto& x : git.eta) zero &= (x == 0);
  if (zero) fail(ErrorCode::InvalidInput, "eta must be nonzero");
  std::vector<QVec> all;
  for (int i = 0; i < r; ++i) all.push_back(git.divisor(i));
  if (!closed_cone_witness(git.eta, all)) fail(ErrorCode::EmptyAnticones, "eta lies outside the cone of divisors");
  for (unsigned mask = 1; mask < (1u << r); ++mask) {
    IndexSet s = mask_to_set(mask, r);
    auto gens = divisors_of(git, s);
    QMat m = gens;
    if (rank(m) < git.k() && closed_cone_witness(git.eta, gens))
      fail(ErrorCode::StabilityOnWall, "eta lies on the wall spanned by " + index_set_string(s));
  }
  std::set<IndexSet> out;
  for (unsigned mask = 1; mask < (1u << r); ++mask) {
    IndexSet s = mask_to_set(mask, r);
    if (in_open_cone(git.eta, divisors_of(git, s))) out.insert(s);
  }
  if (out.empty()) fail(ErrorCode::EmptyAnticones, "no anticones");
  return out;
}

StackyFan fan_from_anticones(const GitPresentation& git, const std::set<IndexSet>& anti) {
  StackyFan fan;
  fan.anticones = anti;
  std::set<IndexSet> cones;
  for (const auto& s : anti) {
    IndexSet c = complement(s, git.r);
    if (!c.empty() && c.back() >= git.r_prime) continue;
    QMat rows;
    for (int i : c) rows.push_back(git.ray(i));
    if (!rows.empty() && rank(rows) < static_cast<int>(c.size()))
      fail(ErrorCode::NotSimplicial, "cone " + index_set_string(c) + " is not simplicial");
    cones.insert(c);
  }
  fan.cones.assign(cones.begin(), cones.end());
  std::sort(fan.cones.begin(), fan.cones.end(), [](const IndexSet& x, const IndexSet& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  for (const auto& c : fan.cones)
    if (static_cast<int>(c.size()) == git.n) fan.maximal_cones.push_back(c);
  fan.complete = !fan.maximal_cones.empty();
  std::mt19937_64 rng(0x5eed5eedULL);
  std::uniform_int_distribution<long long> dist(-1000, 1000);
  for (int trial = 0; trial < 64 && fan.complete; ++trial) {
    QVec d(git.n);
    for (auto& x : d) x = dist(rng);
    bool covered = false;
    for (const auto& c : fan.maximal_cones) {
      auto lam = cone_coordinates(c, d, git);
      if (lam && std::all_of(lam->begin(), lam->end(), [](const Q& x) { return x >= 0; })) {
        covered = true;
        break;
      }
    }
    fan.complete = covered;
  }
  return fan;
}

StackyFan build_fan(const GitPresentation& git) { return fan_from_anticones(git, anticones(git)); }

std::optional<QVec> cone_coordinates(const IndexSet& cone, const QVec& x, const GitPresentation& git) {
  QMat a(git.n, QVec(cone.size()));
  for (size_t j = 0; j < cone.size(); ++j)
    for (int c = 0; c < git.n; ++c) a[c][j] = git.b[cone[j]][c];
  auto sol = solve(a, x);
  return sol;
}

Z cone_index(const IndexSet& cone, const GitPresentation& git) {
  const int s = static_cast<int>(cone.size());
  if (s == 0) return Z(1);
  // gcd of maximal minors of the s x n matrix of rays
  Z g = 0;
  for (unsigned mask = 0; mask < (1u << git.n); ++mask) {
    if (__builtin_popcount(mask) != s) continue;
    IndexSet cols = mask_to_set(mask, git.n);
    QMat m(s, QVec(s));
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) m[i][j] = git.b[cone[i]][cols[j]];
    Z d = numerator(det(m));
    g = gcd(g, abs(d));
  }
  return g;
}

BoxElement zero_box(const GitPresentation& git) {
  BoxElement z;
  z.v.assign(git.n, 0);
  z.c_of_v.assign(git.r, Q(0));
  z.age = 0;
  return z;
}

std::vector<BoxElement> box_elements(const StackyFan& fan, const GitPresentation& git) {
  std::map<IntVec, BoxElement> found;
  found[IntVec(git.n, 0)] = zero_box(git);
  for (const auto& cone : fan.maximal_cones) {
    IntVec lo(git.n, 0), hi(git.n, 0);
    for (int i : cone)
      for (int c = 0; c < git.n; ++c) {
        lo[c] += std::min(0LL, git.b[i][c]);
        hi[c] += std::max(0LL, git.b[i][c]);
      }
    IntVec v = lo;
    while (true) {
      auto lam = cone_coordinates(cone, to_qvec(v), git);
      if (lam && std::all_of(lam->begin(), lam->end(), [](const Q& x) { return x >= 0 && x < 1; }) && !found.count(v)) {
        BoxElement e;
        e.v = v;
        e.c_of_v.assign(git.r, Q(0));
        e.age = 0;
        for (size_t j = 0; j < cone.size(); ++j) {
          e.c_of_v[cone[j]] = (*lam)[j];
          e.age += (*lam)[j];
          if ((*lam)[j] != 0) e.host_cone.push_back(cone[j]);
        }
        found[v] = e;
      }
      int c = 0;
      while (c < git.n && v[c] == hi[c]) {
        v[c] = lo[c];
        ++c;
      }
      if (c == git.n) break;
      ++v[c];
    }
  }
  std::vector<BoxElement> out;
  for (auto& [key, e] : found) out.push_back(e);
  std::sort(out.begin(), out.end(), [](const BoxElement& x, const BoxElement& y) {
    return x.age != y.age ? x.age < y.age : x.v < y.v;
  });
  return out;
}

BoxElement box_inverse(const BoxElement& v, const GitPresentation& git) {
  BoxElement w;
  w.v.assign(git.n, 0);
  w.c_of_v.assign(git.r, Q(0));
  w.host_cone = v.host_cone;
  w.age = 0;
  for (int i : v.host_cone) {
    w.c_of_v[i] = 1 - v.c_of_v[i];
    w.age += w.c_of_v[i];
    for (int c = 0; c < git.n; ++c) w.v[c] += git.b[i][c];
  }
  for (int c = 0; c < git.n; ++c) w.v[c] -= v.v[c];
  return w;
}

std::vector<CurveClass> enumerate_Keff(const GitPresentation& git, const StackyFan& fan, const Q& degree_bound) {
  const int k = git.k();
  auto box = box_elements(fan, git);
  std::map<QVec, CurveClass> found;
  for (const auto& sigma : fan.maximal_cones) {
    IndexSet isig = complement(sigma, git.r);
    if (static_cast<int>(isig.size()) != k) fail(ErrorCode::NotSimplicial, "maximal cone with wrong complement size");
    QMat m(k, QVec(k));
    for (int j = 0; j < k; ++j)
      for (int a = 0; a < k; ++a) m[j][a] = git.charge[a][isig[j]];
    QMat minv = inverse(m);
    QVec w(k);
    for (int j = 0; j < k; ++j)
      for (int a = 0; a < k; ++a) w[j] += minv[a][j];
    for (int j = 0; j < k; ++j)
      if (w[j] <= 0)
        fail(ErrorCode::UnboundedEnumeration, "degree is not positive along the Mori cone direction " + std::to_string(j + 1) + " of cone " + index_set_string(sigma));
    QVec d(k);
    std::function<void(int, Q)> rec = [&](int j, Q budget) {
      if (j == k) {
        QVec beta = mat_vec(minv, d);
        if (found.count(beta)) return;
        CurveClass cc;
        cc.beta = beta;
        cc.degree = 0;
        for (const auto& x : beta) cc.degree += x;
        cc.pairings.resize(git.r);
        IntVec v(git.n, 0);
        for (int i = 0; i < git.r; ++i) {
          cc.pairings[i] = git.pairing(i, beta);
          long long up = to_ll(ceil_q(cc.pairings[i]));
          for (int c = 0; c < git.n; ++c) v[c] += up * git.b[i][c];
        }
        auto it = std::find_if(box.begin(), box.end(), [&](const BoxElement& e) { return e.v == v; });
        if (it == box.end()) fail(ErrorCode::InvalidInput, "sector of a curve class is not a Box element");
        cc.sector = *it;
        cc.witness_cone = sigma;
        found[beta] = cc;
        return;
      }
      for (long long x = 0; Q(x) * w[j] <= budget; ++x) {
        d[j] = x;
        rec(j + 1, budget - Q(x) * w[j]);
      }
      d[j] = 0;
    };
    if (degree_bound >= 0) rec(0, degree_bound);
  }
  std::vector<CurveClass> out;
  for (auto& [key, cc] : found) out.push_back(cc);
  std::sort(out.begin(), out.end(), [](const CurveClass& x, const CurveClass& y) {
    return x.degree != y.degree ? x.degree < y.degree : x.beta < y.beta;
  });
  return out;
}

bool in_nef(const QVec& x, const GitPresentation& git, const StackyFan& fan) {
  for (const auto& sigma : fan.maximal_cones)
    if (!closed_cone_witness(x, divisors_of(git, complement(sigma, git.r)))) return false;
  return true;
}

PositivityReport check_positivity(const GitPresentation& git, const StackyFan& fan) {
  PositivityReport rep;
  rep.rho_hat.assign(git.k(), Q(0));
  for (int i = 0; i < git.r; ++i)
    for (int a = 0; a < git.k(); ++a) rep.rho_hat[a] += git.charge[a][i];
  rep.fano = !fan.maximal_cones.empty();
  for (const auto& sigma : fan.maximal_cones) {
    PositivityReport::ConeWitness w;
    w.cone = sigma;
    auto wit = closed_cone_witness(rep.rho_hat, divisors_of(git, complement(sigma, git.r)));
    w.contained = wit.has_value();
    if (wit) w.coefficients = *wit;
    rep.fano = rep.fano && w.contained;
    rep.witnesses.push_back(w);
  }
  return rep;
}

SectorGeometry star_fan(const BoxElement& v, const StackyFan& fan, const GitPresentation& git) {
  SectorGeometry g;
  g.sector = v;
  g.dim = git.n - static_cast<int>(v.host_cone.size());
  g.in_star.assign(git.r, false);
  for (const auto& sigma : fan.maximal_cones) {
    if (!std::includes(sigma.begin(), sigma.end(), v.host_cone.begin(), v.host_cone.end())) continue;
    g.fixed_cones.push_back(sigma);
    for (int i : sigma) g.in_star[i] = true;
  }
  g.generic_stabilizer = cone_index(v.host_cone, git);
  return g;
}

QVec h_of(const LineBundleTwist& twist, const GitPresentation& git) {
  if (static_cast<int>(twist.c.size()) != git.r) fail(ErrorCode::InvalidInput, "twist must have r entries");
  for (int j = git.r_prime; j < git.r; ++j)
    if (twist.c[j] != 0) fail(ErrorCode::InvalidInput, "twist must vanish on extra vectors");
  QVec h(git.k());
  for (int a = 0; a < git.k(); ++a)
    for (int i = 0; i < git.r; ++i) h[a] += Q(git.charge[a][i]) * twist.c[i];
  return h;
}

Splittings splittings(const GitPresentation& git, const StackyFan& fan) {
  Splittings s;
  s.ell = git.ell;
  for (int j = git.r_prime; j < git.r; ++j) {
    QVec bj = git.ray(j);
    std::map<int, Q> coeffs;
    bool placed = false;
    for (const auto& sigma : fan.maximal_cones) {
      auto lam = cone_coordinates(sigma, bj, git);
      if (!lam || !std::all_of(lam->begin(), lam->end(), [](const Q& x) { return x >= 0; })) continue;
      for (size_t t = 0; t < sigma.size(); ++t)
        if ((*lam)[t] > 0) coeffs[sigma[t]] = (*lam)[t];
      placed = true;
      break;
    }
    if (!placed) fail(ErrorCode::InvalidInput, "extra vector outside the support of the fan");
    QVec target(git.r);
    target[j] = 1;
    for (auto& [i, sji] : coeffs) target[i] = -sji;
    QMat sys(git.r, QVec(git.k()));
    for (int i = 0; i < git.r; ++i)
      for (int a = 0; a < git.k(); ++a) sys[i][a] = git.charge[a][i];
    auto sol = solve(sys, target);
    if (!sol) fail(ErrorCode::InvalidInput, "extra vector relation not in L");
    s.dvee[j] = *sol;
    s.s_coeffs[j] = coeffs;
  }
  return s;
}

}  // namespace mirror
