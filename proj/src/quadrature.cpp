#include "mirror/quadrature.hpp"

#include "mirror/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace mirror {

namespace {

constexpr std::array<double, 8> kXgk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                        0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a, b;
  cd value;
  double error;
  bool operator<(const Piece& o) const { return error != o.error ? error < o.error : a > o.a; }
};

// Abscissae of the 15-point rule on [a, b] in a fixed order.
std::array<double, 15> nodes(double a, double b) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  std::array<double, 15> x{};
  for (int j = 0; j < 7; ++j) {
    x[2 * j] = c - h * kXgk[j];
    x[2 * j + 1] = c + h * kXgk[j];
  }
  x[14] = c;
  return x;
}

Piece combine(double a, double b, const std::array<cd, 15>& fx) {
  double h = 0.5 * (b - a);
  cd kron = fx[14] * kWgk[7];
  cd gauss = fx[14] * kWg[3];
  for (int j = 0; j < 7; ++j) {
    cd pair = fx[2 * j] + fx[2 * j + 1];
    kron += kWgk[j] * pair;
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  return {a, b, kron * h, std::abs((kron - gauss) * h)};
}

using Rule = std::function<Piece(double, double)>;

QuadResult adapt(const Rule& rule, double a, double b, const QuadOptions& opts, long evals_per_piece) {
  std::priority_queue<Piece> heap;
  Piece first = rule(a, b);
  heap.push(first);
  QuadResult res;
  res.evaluations = evals_per_piece;
  cd total = first.value;
  double err = first.error;
  while (true) {
    double target = std::max(opts.abs_tol, opts.rel_tol * std::abs(total));
    if (err <= target) {
      res.converged = true;
      break;
    }
    if (res.subdivisions >= opts.max_subdivisions) break;
    Piece worst = heap.top();
    heap.pop();
    double mid = 0.5 * (worst.a + worst.b);
    Piece left = rule(worst.a, mid), right = rule(mid, worst.b);
    res.evaluations += 2 * evals_per_piece;
    ++res.subdivisions;
    heap.push(left);
    heap.push(right);
    // recompute sums from scratch to keep the reduction order fixed
    std::vector<Piece> all;
    auto copy = heap;
    total = 0;
    err = 0;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    std::sort(all.begin(), all.end(), [](const Piece& x, const Piece& y) { return x.a < y.a; });
    for (const auto& p : all) {
      total += p.value;
      err += p.error;
    }
  }
  res.value = total;
  res.abs_error = err;
  return res;
}

}  // namespace

QuadResult integrate_gk(const std::function<cd(double)>& f, double a, double b, const QuadOptions& opts) {
  Rule rule = [&](double lo, double hi) {
    auto x = nodes(lo, hi);
    std::array<cd, 15> fx;
    for (int i = 0; i < 15; ++i) fx[i] = f(x[i]);
    return combine(lo, hi, fx);
  };
  return adapt(rule, a, b, opts, 15);
}

QuadResult integrate_gk_2d(const std::function<cd(double, double)>& f, double ax, double bx, double ay, double by,
                           const QuadOptions& opts) {
  QuadOptions inner = opts;
  inner.abs_tol = opts.abs_tol / (4 * (bx - ax));
  inner.rel_tol = opts.rel_tol / 4;
  long inner_evals = 0;
  double inner_err = 0;
  bool inner_ok = true;
  Rule rule = [&](double lo, double hi) {
    auto x = nodes(lo, hi);
    std::array<QuadResult, 15> rows;
    parallel_for(15, [&](int i) {
      double xi = x[i];
      rows[i] = integrate_gk([&](double y) { return f(xi, y); }, ay, by, inner);
    });
    std::array<cd, 15> fx;
    for (int i = 0; i < 15; ++i) {
      fx[i] = rows[i].value;
      inner_evals += rows[i].evaluations;
      inner_err = std::max(inner_err, rows[i].abs_error);
      inner_ok = inner_ok && rows[i].converged;
    }
    return combine(lo, hi, fx);
  };
  QuadOptions outer = opts;
  outer.abs_tol = opts.abs_tol / 2;
  outer.rel_tol = opts.rel_tol / 2;
  QuadResult res = adapt(rule, ax, bx, outer, 0);
  res.evaluations = inner_evals;
  res.abs_error += inner_err * (bx - ax);
  res.converged = res.converged && inner_ok;
  return res;
}

}  // namespace mirror
