#include "mirror/rational.hpp"

#include "mirror/error.hpp"

#include <algorithm>
#include <utility>

namespace mirror {

Q parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ') s.push_back(ch);
  if (s.empty()) fail(ErrorCode::ParseError, "empty rational");
  auto slash = s.find('/');
  auto check_int = [&](const std::string& part) {
    size_t start = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (start == part.size()) fail(ErrorCode::ParseError, "malformed rational '" + text + "'");
    for (size_t i = start; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') fail(ErrorCode::ParseError, "malformed rational '" + text + "'");
  };
  std::string num = s.substr(0, slash);
  check_int(num);
  Z n(num[0] == '+' ? num.substr(1) : num);
  if (slash == std::string::npos) return Q(n);
  std::string den = s.substr(slash + 1);
  check_int(den);
  Z d(den[0] == '+' ? den.substr(1) : den);
  if (d == 0) fail(ErrorCode::ParseError, "zero denominator in '" + text + "'");
  return Q(n, d);
}

std::string to_string(const Q& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

double to_double(const Q& q) { return q.convert_to<double>(); }

bool is_integer(const Q& q) { return denominator(q) == 1; }

Z floor_q(const Q& q) {
  Z n = numerator(q), d = denominator(q);
  Z f = n / d;
  if (n < 0 && f * d != n) f -= 1;
  return f;
}

Z ceil_q(const Q& q) { return -floor_q(-q); }

Q frac_q(const Q& q) { return q - Q(floor_q(q)); }

long long to_ll(const Z& z) { return z.convert_to<long long>(); }

QVec to_qvec(const IntVec& v) {
  QVec out;
  for (auto x : v) out.emplace_back(x);
  return out;
}

QMat to_qmat(const IntMat& m) {
  QMat out;
  for (const auto& row : m) out.push_back(to_qvec(row));
  return out;
}

QMat transpose(const QMat& a) {
  if (a.empty()) return {};
  QMat t(a[0].size(), QVec(a.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

QVec mat_vec(const QMat& a, const QVec& x) {
  QVec y(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

Q dot(const QVec& a, const QVec& b) {
  Q s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<int> rref(QMat& a) {
  std::vector<int> pivots;
  if (a.empty()) return pivots;
  size_t rows = a.size(), cols = a[0].size(), r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    Q inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Q f = a[i][c];
      for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

int rank(const QMat& a) {
  QMat b = a;
  return static_cast<int>(rref(b).size());
}

std::vector<QVec> nullspace(const QMat& a, int cols) {
  QMat b = a;
  auto pivots = rref(b);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<QVec> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    QVec v(cols);
    v[f] = 1;
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -b[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QVec> solve(const QMat& a, const QVec& rhs) {
  size_t rows = a.size();
  size_t cols = rows ? a[0].size() : 0;
  QMat aug(rows, QVec(cols + 1));
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
    aug[i][cols] = rhs[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == static_cast<int>(cols)) return std::nullopt;
  QVec x(cols);
  for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][cols];
  return x;
}

Q det(QMat a) {
  size_t n = a.size();
  Q d = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      Q f = a[i][c] / a[c][c];
      for (size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return d;
}

QMat inverse(const QMat& a) {
  size_t n = a.size();
  QMat aug(n, QVec(2 * n));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = 1;
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] >= static_cast<int>(n)) fail(ErrorCode::DomainError, "singular matrix");
  QMat inv(n, QVec(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

IntegerKernel integer_kernel(const ZMat& cols) {
  size_t n = cols.size();
  size_t r = n ? cols[0].size() : 0;
  ZMat a = cols;
  ZMat u(r, ZVec(r, 0));
  for (size_t i = 0; i < r; ++i) u[i][i] = 1;
  auto col_op = [&](size_t j, size_t k, const Z& p, const Z& q, const Z& s, const Z& t) {
    // (col_j, col_k) <- (p col_j + q col_k, s col_j + t col_k)
    for (size_t i = 0; i < n; ++i) {
      Z x = a[i][j], y = a[i][k];
      a[i][j] = p * x + q * y;
      a[i][k] = s * x + t * y;
    }
    for (size_t i = 0; i < r; ++i) {
      Z x = u[i][j], y = u[i][k];
      u[i][j] = p * x + q * y;
      u[i][k] = s * x + t * y;
    }
  };
  size_t piv = 0;
  Z index = 1;
  for (size_t row = 0; row < n && piv < r; ++row) {
    for (size_t k = piv + 1; k < r; ++k) {
      Z x = a[row][piv], y = a[row][k];
      if (y == 0) continue;
      // extended gcd: g = p x + q y
      Z old_r = x, cur_r = y, old_s = 1, cur_s = 0, old_t = 0, cur_t = 1;
      while (cur_r != 0) {
        Z qt = old_r / cur_r;
        Z tmp = old_r - qt * cur_r;
        old_r = cur_r;
        cur_r = tmp;
        tmp = old_s - qt * cur_s;
        old_s = cur_s;
        cur_s = tmp;
        tmp = old_t - qt * cur_t;
        old_t = cur_t;
        cur_t = tmp;
      }
      Z g = old_r;
      col_op(piv, k, old_s, old_t, -y / g, x / g);
    }
    if (a[row][piv] != 0) {
      index *= abs(a[row][piv]);
      ++piv;
    }
  }
  IntegerKernel out;
  out.rank = static_cast<int>(piv);
  out.index = (piv == n) ? index : Z(0);
  for (size_t j = piv; j < r; ++j) {
    ZVec v(r);
    for (size_t i = 0; i < r; ++i) v[i] = u[i][j];
    out.kernel.push_back(std::move(v));
  }
  return out;
}

ZMat row_hnf(ZMat a) {
  if (a.empty()) return a;
  size_t rows = a.size(), cols = a[0].size(), r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    while (true) {
      size_t best = rows;
      for (size_t i = r; i < rows; ++i)
        if (a[i][c] != 0 && (best == rows || abs(a[i][c]) < abs(a[best][c]))) best = i;
      if (best == rows) break;
      std::swap(a[r], a[best]);
      bool done = true;
      for (size_t i = r + 1; i < rows; ++i) {
        if (a[i][c] == 0) continue;
        Z f = a[i][c] / a[r][c];
        for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        if (a[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (r >= rows || a[r][c] == 0) continue;
    if (a[r][c] < 0)
      for (auto& x : a[r]) x = -x;
    for (size_t i = 0; i < r; ++i) {
      Z f = floor_q(Q(a[i][c], a[r][c]));
      if (f != 0)
        for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  a.resize(r);
  return a;
}

}  // namespace mirror
