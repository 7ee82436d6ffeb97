#include "mirror/lp.hpp"

#include "mirror/error.hpp"

#include <utility>

namespace mirror {

namespace {

struct Tableau {
  int m = 0, cols = 0;  // cols excludes rhs
  QMat a;               // m rows, cols + 1 entries (last = rhs)
  std::vector<int> basis;

  void pivot(int row, int col) {
    Q inv = 1 / a[row][col];
    for (auto& v : a[row]) v *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == row || a[i][col] == 0) continue;
      Q f = a[i][col];
      for (int j = 0; j <= cols; ++j) a[i][j] -= f * a[row][j];
    }
    basis[row] = col;
  }

  // Maximize c.x over columns allowed[j]; returns false if unbounded.
  bool optimize(const QVec& c, const std::vector<bool>& allowed) {
    while (true) {
      int enter = -1;
      for (int j = 0; j < cols && enter < 0; ++j) {
        if (!allowed[j]) continue;
        Q reduced = c[j];
        for (int i = 0; i < m; ++i) reduced -= c[basis[i]] * a[i][j];
        if (reduced > 0) enter = j;
      }
      if (enter < 0) return true;
      int leave = -1;
      Q best;
      for (int i = 0; i < m; ++i) {
        if (a[i][enter] <= 0) continue;
        Q ratio = a[i][cols] / a[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const int d = lp.vars;
  const int m = static_cast<int>(lp.rows.size());
  int slacks = 0;
  for (const auto& row : lp.rows)
    if (row.sense != Sense::EQ) ++slacks;
  const int structural = 2 * d + slacks;
  Tableau tab;
  tab.m = m;
  tab.cols = structural + m;
  tab.a.assign(m, QVec(tab.cols + 1));
  tab.basis.assign(m, 0);
  int s = 0;
  for (int i = 0; i < m; ++i) {
    const auto& row = lp.rows[i];
    QVec& t = tab.a[i];
    for (int j = 0; j < d; ++j) {
      t[j] = row.coeff[j];
      t[d + j] = -row.coeff[j];
    }
    if (row.sense == Sense::LE) t[2 * d + s++] = 1;
    if (row.sense == Sense::GE) t[2 * d + s++] = -1;
    t[tab.cols] = row.rhs;
    if (t[tab.cols] < 0)
      for (auto& v : t) v = -v;
    t[structural + i] = 1;
    tab.basis[i] = structural + i;
  }
  std::vector<bool> all(tab.cols, true);
  QVec phase1(tab.cols);
  for (int i = 0; i < m; ++i) phase1[structural + i] = -1;
  tab.optimize(phase1, all);
  Q infeas = 0;
  for (int i = 0; i < m; ++i)
    if (tab.basis[i] >= structural) infeas += tab.a[i][tab.cols];
  LpResult res;
  if (infeas != 0) {
    res.status = LpStatus::Infeasible;
    return res;
  }
  // Drive zero-valued artificials out of the basis; drop redundant rows.
  for (int i = 0; i < tab.m; ++i) {
    if (tab.basis[i] < structural) continue;
    int col = -1;
    for (int j = 0; j < structural && col < 0; ++j)
      if (tab.a[i][j] != 0) col = j;
    if (col >= 0) {
      tab.pivot(i, col);
    } else {
      tab.a.erase(tab.a.begin() + i);
      tab.basis.erase(tab.basis.begin() + i);
      --tab.m;
      --i;
    }
  }
  std::vector<bool> allowed(tab.cols, false);
  for (int j = 0; j < structural; ++j) allowed[j] = true;
  QVec c(tab.cols);
  for (int j = 0; j < d && j < static_cast<int>(lp.objective.size()); ++j) {
    c[j] = lp.objective[j];
    c[d + j] = -lp.objective[j];
  }
  if (!tab.optimize(c, allowed)) {
    res.status = LpStatus::Unbounded;
    return res;
  }
  QVec full(tab.cols);
  for (int i = 0; i < tab.m; ++i) full[tab.basis[i]] = tab.a[i][tab.cols];
  res.status = LpStatus::Optimal;
  res.x.assign(d, Q(0));
  for (int j = 0; j < d; ++j) res.x[j] = full[j] - full[d + j];
  res.value = 0;
  for (int j = 0; j < d && j < static_cast<int>(lp.objective.size()); ++j) res.value += lp.objective[j] * res.x[j];
  return res;
}

bool in_open_cone(const QVec& target, const std::vector<QVec>& gens) {
  const int g = static_cast<int>(gens.size());
  if (g == 0) {
    for (const auto& x : target)
      if (x != 0) return false;
    return true;
  }
  // variables: lambda_1..lambda_g, s
  LinearProgram lp;
  lp.vars = g + 1;
  for (size_t row = 0; row < target.size(); ++row) {
    QVec coeff(g + 1);
    for (int i = 0; i < g; ++i) coeff[i] = gens[i][row];
    lp.add(coeff, Sense::EQ, target[row]);
  }
  for (int i = 0; i < g; ++i) {
    QVec coeff(g + 1);
    coeff[i] = 1;
    coeff[g] = -1;
    lp.add(coeff, Sense::GE, 0);
  }
  QVec cap(g + 1);
  cap[g] = 1;
  lp.add(cap, Sense::LE, 1);
  lp.objective = cap;
  auto res = solve_lp(lp);
  return res.status == LpStatus::Optimal && res.value > 0;
}

std::optional<QVec> closed_cone_witness(const QVec& target, const std::vector<QVec>& gens) {
  const int g = static_cast<int>(gens.size());
  LinearProgram lp;
  lp.vars = g;
  for (size_t row = 0; row < target.size(); ++row) {
    QVec coeff(g);
    for (int i = 0; i < g; ++i) coeff[i] = gens[i][row];
    lp.add(coeff, Sense::EQ, target[row]);
  }
  for (int i = 0; i < g; ++i) {
    QVec coeff(g);
    coeff[i] = 1;
    lp.add(coeff, Sense::GE, 0);
  }
  lp.objective.assign(g, Q(0));
  if (g == 0) {
    for (const auto& x : target)
      if (x != 0) return std::nullopt;
    return QVec{};
  }
  auto res = solve_lp(lp);
  if (res.status != LpStatus::Optimal) return std::nullopt;
  return res.x;
}

PolyhedronInfo analyze_polyhedron(const Polyhedron& p, bool want_bounded) {
  const int d = p.dim;
  PolyhedronInfo info;
  // Maximize s subject to strict rows >= rhs + s and s <= 1.
  LinearProgram lp;
  lp.vars = d + 1;
  auto extend = [&](const QVec& coeff, Q slack) {
    QVec c(d + 1);
    for (int j = 0; j < d; ++j) c[j] = coeff[j];
    c[d] = slack;
    return c;
  };
  for (const auto& row : p.eq) lp.add(extend(row.coeff, 0), Sense::EQ, row.rhs);
  for (const auto& row : p.ge) lp.add(extend(row.coeff, 0), Sense::GE, row.rhs);
  for (const auto& row : p.strict) lp.add(extend(row.coeff, -1), Sense::GE, row.rhs);
  QVec cap(d + 1);
  cap[d] = 1;
  lp.add(cap, Sense::LE, 1);
  lp.objective = cap;
  auto res = solve_lp(lp);
  if (res.status != LpStatus::Optimal) return info;
  if (!p.strict.empty() && res.value <= 0) return info;
  info.nonempty = true;
  // Implicit equalities among the closed inequalities.
  QMat equalities;
  for (const auto& row : p.eq) equalities.push_back(row.coeff);
  std::vector<bool> implicit(p.ge.size(), false);
  QVec point(res.x.begin(), res.x.begin() + d);
  std::vector<QVec> witnesses;
  for (size_t k = 0; k < p.ge.size(); ++k) {
    LinearProgram probe;
    probe.vars = d;
    for (const auto& row : p.eq) probe.add(row.coeff, Sense::EQ, row.rhs);
    for (const auto& row : p.ge) probe.add(row.coeff, Sense::GE, row.rhs);
    probe.add(p.ge[k].coeff, Sense::LE, p.ge[k].rhs + 1);
    probe.objective = p.ge[k].coeff;
    auto pr = solve_lp(probe);
    if (pr.status == LpStatus::Optimal && pr.value == p.ge[k].rhs) {
      implicit[k] = true;
      equalities.push_back(p.ge[k].coeff);
    } else if (pr.status == LpStatus::Optimal) {
      witnesses.push_back(pr.x);
    }
  }
  info.dimension = d - (equalities.empty() ? 0 : rank(equalities));
  // Relative interior point: average of feasible points, each strictly satisfying some inequality.
  QVec avg = point;
  for (const auto& w : witnesses)
    for (int j = 0; j < d; ++j) avg[j] += w[j];
  Q count = static_cast<long>(witnesses.size() + 1);
  for (auto& x : avg) x /= count;
  // Strict rows must still hold at the average: blend toward the strict-feasible point if needed.
  auto satisfies_strict = [&](const QVec& x) {
    for (const auto& row : p.strict)
      if (dot(row.coeff, x) <= row.rhs) return false;
    return true;
  };
  while (!satisfies_strict(avg))
    for (int j = 0; j < d; ++j) avg[j] = (avg[j] + point[j]) / 2;
  info.interior_point = avg;
  if (want_bounded) {
    info.bounded = true;
    for (int j = 0; j < d && info.bounded; ++j) {
      for (int sgn : {1, -1}) {
        LinearProgram probe;
        probe.vars = d;
        for (const auto& row : p.eq) probe.add(row.coeff, Sense::EQ, row.rhs);
        for (const auto& row : p.ge) probe.add(row.coeff, Sense::GE, row.rhs);
        for (const auto& row : p.strict) probe.add(row.coeff, Sense::GE, row.rhs);
        probe.objective.assign(d, Q(0));
        probe.objective[j] = sgn;
        if (solve_lp(probe).status == LpStatus::Unbounded) {
          info.bounded = false;
          break;
        }
      }
    }
  }
  return info;
}

}  // namespace mirror
