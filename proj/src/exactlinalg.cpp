#include "patpoly/exactlinalg.hpp"

#include <algorithm>

#include "patpoly/error.hpp"

namespace patpoly {

ZMatrix to_zmatrix(const QMatrix& m) {
  ZMatrix z(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      if (m(r, c).get_den() != 1) fail(ErrorCode::invalid_argument, "matrix is not integral");
      z(r, c) = m(r, c).get_num();
    }
  return z;
}

QMatrix to_qmatrix(const ZMatrix& m) {
  QMatrix q(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) q(r, c) = Rational(m(r, c));
  return q;
}

Integer det(const ZMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::invalid_argument, "determinant of a non-square matrix");
  const int n = m.rows();
  if (n == 0) return 1;
  ZMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      int p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Rational det(const QMatrix& m) {
  // Clear denominators row by row, then use the integer routine.
  ZMatrix z(m.rows(), m.cols());
  Rational scale = 1;
  for (int r = 0; r < m.rows(); ++r) {
    Integer l = 1;
    for (int c = 0; c < m.cols(); ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
    for (int c = 0; c < m.cols(); ++c) z(r, c) = m(r, c).get_num() * (l / m(r, c).get_den());
    scale *= l;
  }
  Rational d(det(z));
  d /= scale;
  return d;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<int> rref(QMatrix& a) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
    int p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    Rational inv = 1 / a(r, c);
    for (int j = 0; j < a.cols(); ++j) a(r, j) *= inv;
    for (int i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rational f = -a(i, c);
      a.add_row(i, r, f);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

int rank(const QMatrix& m) {
  QMatrix a = m;
  return static_cast<int>(rref(a).size());
}

int rank(const ZMatrix& m) { return rank(to_qmatrix(m)); }

QMatrix kernel(const QMatrix& m) {
  QMatrix a = m;
  auto pivots = rref(a);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> cols;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a(static_cast<int>(i), f);
    cols.push_back(std::move(v));
  }
  return QMatrix::from_columns(cols, m.cols());
}

QMatrix inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::invalid_argument, "inverse of a non-square matrix");
  const int n = m.rows();
  QMatrix a(n, 2 * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) a(r, c) = m(r, c);
    a(r, n + r) = 1;
  }
  auto pivots = rref(a);
  if (static_cast<int>(pivots.size()) < n || pivots[n - 1] != n - 1)
    fail(ErrorCode::degenerate_input, "singular matrix");
  QMatrix inv(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) inv(r, c) = a(r, n + c);
  return inv;
}

HermiteResult hermite_normal_form(const ZMatrix& A) {
  HermiteResult res{A, ZMatrix::identity(A.cols()), 0};
  ZMatrix& H = res.H;
  ZMatrix& U = res.U;
  int k = 0;
  for (int i = 0; i < H.rows() && k < H.cols(); ++i) {
    while (true) {
      int best = -1;
      for (int j = k; j < H.cols(); ++j)
        if (H(i, j) != 0 && (best < 0 || abs(H(i, j)) < abs(H(i, best)))) best = j;
      if (best < 0) break;
      H.swap_cols(k, best);
      U.swap_cols(k, best);
      bool clean = true;
      for (int j = k + 1; j < H.cols(); ++j) {
        if (H(i, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), H(i, j).get_mpz_t(), H(i, k).get_mpz_t());
        Integer f = -q;
        H.add_col(j, k, f);
        U.add_col(j, k, f);
        if (H(i, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (H(i, k) == 0) continue;
    if (H(i, k) < 0) {
      H.negate_col(k);
      U.negate_col(k);
    }
    for (int j = 0; j < k; ++j) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), H(i, j).get_mpz_t(), H(i, k).get_mpz_t());
      Integer f = -q;
      H.add_col(j, k, f);
      U.add_col(j, k, f);
    }
    ++k;
  }
  res.rank = k;
  return res;
}

SmithResult smith_normal_form(const ZMatrix& A) {
  SmithResult res{ZMatrix::identity(A.rows()), A, ZMatrix::identity(A.cols()), {}};
  ZMatrix& D = res.D;
  ZMatrix& U = res.U;
  ZMatrix& V = res.V;
  const int lim = std::min(D.rows(), D.cols());
  for (int t = 0; t < lim; ++t) {
    // Smallest nonzero entry of the trailing block goes to the pivot.
    int br = -1, bc = -1;
    for (int i = t; i < D.rows(); ++i)
      for (int j = t; j < D.cols(); ++j)
        if (D(i, j) != 0 && (br < 0 || abs(D(i, j)) < abs(D(br, bc)))) br = i, bc = j;
    if (br < 0) break;
    D.swap_rows(t, br);
    U.swap_rows(t, br);
    D.swap_cols(t, bc);
    V.swap_cols(t, bc);
    while (true) {
      bool clean = true;
      for (int i = t + 1; i < D.rows(); ++i) {
        if (D(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
        Integer f = -q;
        D.add_row(i, t, f);
        U.add_row(i, t, f);
        if (D(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < D.cols(); ++j) {
        if (D(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
        Integer f = -q;
        D.add_col(j, t, f);
        V.add_col(j, t, f);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) {
        int pr = t, pc = t;
        for (int i = t + 1; i < D.rows(); ++i)
          if (D(i, t) != 0 && abs(D(i, t)) < abs(D(pr, pc))) pr = i, pc = t;
        for (int j = t + 1; j < D.cols(); ++j)
          if (D(t, j) != 0 && abs(D(t, j)) < abs(D(pr, pc))) pr = t, pc = j;
        D.swap_rows(t, pr);
        U.swap_rows(t, pr);
        D.swap_cols(t, pc);
        V.swap_cols(t, pc);
        continue;
      }
      // Enforce divisibility of the trailing block by the pivot.
      int bad = -1;
      for (int i = t + 1; i < D.rows() && bad < 0; ++i)
        for (int j = t + 1; j < D.cols(); ++j)
          if (D(i, j) % D(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      D.add_row(t, bad, Integer(1));
      U.add_row(t, bad, Integer(1));
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      U.negate_row(t);
    }
    res.invariant_factors.push_back(D(t, t));
  }
  return res;
}

namespace {

ZMatrix first_columns(const ZMatrix& m, int k) {
  ZMatrix out(m.rows(), k);
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < k; ++c) out(r, c) = m(r, c);
  return out;
}

ZMatrix integer_inverse(const ZMatrix& U) { return to_zmatrix(inverse(to_qmatrix(U))); }

}  // namespace

AffineLatticeBasis affine_lattice_basis(std::span<const IntPoint> points) {
  if (points.empty()) fail(ErrorCode::degenerate_input, "no points");
  const int N = static_cast<int>(points[0].size());
  for (const auto& p : points)
    if (static_cast<int>(p.size()) != N) fail(ErrorCode::invalid_argument, "points of mixed dimension");
  AffineLatticeBasis L;
  L.origin = points[0];
  ZMatrix diffs(N, static_cast<int>(points.size()) - 1);
  for (int j = 1; j < static_cast<int>(points.size()); ++j)
    for (int r = 0; r < N; ++r) diffs(r, j - 1) = Integer(static_cast<long>(points[j][r] - points[0][r]));
  auto hnf = hermite_normal_form(diffs);
  const int d = hnf.rank;
  if (d == 0) {
    L.basis = ZMatrix(N, 0);
    L.left_inverse = ZMatrix(0, N);
    return L;
  }
  // Saturate: the first d columns of U^{-1} span (span H) ∩ Z^N.
  auto snf = smith_normal_form(first_columns(hnf.H, d));
  ZMatrix sat = first_columns(integer_inverse(snf.U), d);
  L.basis = first_columns(hermite_normal_form(sat).H, d);
  auto snf_b = smith_normal_form(L.basis);
  ZMatrix proj(d, N);
  for (int i = 0; i < d; ++i) proj(i, i) = 1;
  L.left_inverse = snf_b.V * proj * snf_b.U;
  return L;
}

ZVector lattice_coords(const AffineLatticeBasis& L, std::span<const Rational> x) {
  const int N = L.ambient_dim();
  if (static_cast<int>(x.size()) != N) fail(ErrorCode::invalid_argument, "point has wrong dimension");
  QVector y(N);
  for (int i = 0; i < N; ++i) y[i] = x[i] - Rational(static_cast<long>(L.origin[i]));
  QVector z(L.dim());
  for (int i = 0; i < L.dim(); ++i)
    for (int j = 0; j < N; ++j)
      if (L.left_inverse(i, j) != 0) z[i] += Rational(L.left_inverse(i, j)) * y[j];
  for (int r = 0; r < N; ++r) {
    Rational s = 0;
    for (int c = 0; c < L.dim(); ++c)
      if (L.basis(r, c) != 0) s += Rational(L.basis(r, c)) * z[c];
    if (s != y[r]) fail(ErrorCode::not_in_span, "point is not in the affine span");
  }
  ZVector out(L.dim());
  for (int i = 0; i < L.dim(); ++i) {
    if (z[i].get_den() != 1) fail(ErrorCode::not_in_lattice, "point is not in the affine lattice");
    out[i] = z[i].get_num();
  }
  return out;
}

ZVector lattice_coords(const AffineLatticeBasis& L, const IntPoint& x) {
  QVector q(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) q[i] = Rational(static_cast<long>(x[i]));
  return lattice_coords(L, std::span<const Rational>(q));
}

IntPoint lattice_coords_int(const AffineLatticeBasis& L, const IntPoint& x) {
  ZVector z = lattice_coords(L, x);
  IntPoint out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i].get_si();
  return out;
}

IntPoint from_lattice_coords(const AffineLatticeBasis& L, std::span<const std::int64_t> z,
                             std::int64_t origin_scale) {
  IntPoint x(L.ambient_dim());
  for (int r = 0; r < L.ambient_dim(); ++r) {
    std::int64_t s = origin_scale * L.origin[r];
    for (int c = 0; c < L.dim(); ++c) s += L.basis(r, c).get_si() * z[c];
    x[r] = s;
  }
  return x;
}

bool is_unimodular_simplex(std::span<const IntPoint> vertices) {
  if (vertices.empty()) fail(ErrorCode::degenerate_input, "empty simplex");
  const int N = static_cast<int>(vertices[0].size());
  const int d = static_cast<int>(vertices.size()) - 1;
  if (d == 0) return true;
  ZMatrix E(N, d);
  for (int j = 1; j <= d; ++j)
    for (int r = 0; r < N; ++r) E(r, j - 1) = Integer(static_cast<long>(vertices[j][r] - vertices[0][r]));
  if (rank(E) < d) fail(ErrorCode::degenerate_input, "affinely dependent vertices");
  auto snf = smith_normal_form(E);
  for (const auto& f : snf.invariant_factors)
    if (f != 1) return false;
  return true;
}

Integer gcd_full_minors(const ZMatrix& X) {
  if (rank(X) < X.cols()) fail(ErrorCode::dependent_columns, "columns are linearly dependent");
  auto snf = smith_normal_form(X);
  Integer p = 1;
  for (const auto& f : snf.invariant_factors) p *= f;
  return p;
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

Rational rational_from_string(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0) fail(ErrorCode::parse_error, "bad rational '" + s + "'");
  q.canonicalize();
  return q;
}

nlohmann::json to_json(const QMatrix& m) {
  auto rows = nlohmann::json::array();
  for (int r = 0; r < m.rows(); ++r) {
    auto row = nlohmann::json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(rational_to_string(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json to_json(const ZMatrix& m) { return to_json(to_qmatrix(m)); }

QMatrix qmatrix_from_json(const nlohmann::json& j) {
  if (!j.is_array()) fail(ErrorCode::parse_error, "matrix must be a JSON array of rows");
  const int rows = static_cast<int>(j.size());
  const int cols = rows ? static_cast<int>(j[0].size()) : 0;
  QMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols) fail(ErrorCode::parse_error, "ragged matrix");
    for (int c = 0; c < cols; ++c) {
      const auto& v = j[r][c];
      if (v.is_string()) m(r, c) = rational_from_string(v.get<std::string>());
      else if (v.is_number_integer()) m(r, c) = Rational(static_cast<long>(v.get<std::int64_t>()));
      else fail(ErrorCode::parse_error, "matrix entries must be \"p/q\" strings");
    }
  }
  return m;
}

namespace {

struct Tableau {
  int m = 0;
  int n = 0;
  std::vector<QVector> a;  // m rows of n+1 entries, last is the right-hand side
  std::vector<int> basis;

  void pivot(int r, int c, QVector& obj) {
    Rational inv = 1 / a[r][c];
    for (auto& v : a[r]) v *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (int j = 0; j <= n; ++j)
        if (a[r][j] != 0) a[i][j] -= f * a[r][j];
    }
    if (obj[c] != 0) {
      Rational f = obj[c];
      for (int j = 0; j <= n; ++j)
        if (a[r][j] != 0) obj[j] -= f * a[r][j];
    }
    basis[r] = c;
  }

  // Reduced costs of `c` over columns [0, n); obj[n] holds -value.
  QVector reduced(const QVector& c) const {
    QVector obj(n + 1);
    for (int j = 0; j < n; ++j) obj[j] = c[j];
    for (int i = 0; i < m; ++i) {
      const Rational& cb = c[basis[i]];
      if (cb == 0) continue;
      for (int j = 0; j <= n; ++j)
        if (a[i][j] != 0) obj[j] -= cb * a[i][j];
    }
    return obj;
  }

  // Bland's rule; returns false on unboundedness.
  bool run(QVector& obj, const std::vector<bool>& allowed) {
    while (true) {
      int enter = -1;
      for (int j = 0; j < n; ++j)
        if (allowed[j] && obj[j] > 0) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (int i = 0; i < m; ++i) {
        if (a[i][enter] <= 0) continue;
        Rational ratio = a[i][n] / a[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter, obj);
    }
  }
};

}  // namespace

LpResult lp_maximize(const QMatrix& A, const QVector& b, const QVector& c) {
  const int m = A.rows();
  const int nv = A.cols();
  if (static_cast<int>(b.size()) != m || static_cast<int>(c.size()) != nv)
    fail(ErrorCode::invalid_argument, "LP shape mismatch");
  Tableau t;
  t.m = m;
  t.n = nv + m;
  t.a.assign(m, QVector(t.n + 1));
  t.basis.resize(m);
  for (int i = 0; i < m; ++i) {
    const bool flip = b[i] < 0;
    for (int j = 0; j < nv; ++j) t.a[i][j] = flip ? Rational(-A(i, j)) : A(i, j);
    t.a[i][nv + i] = 1;
    t.a[i][t.n] = flip ? Rational(-b[i]) : b[i];
    t.basis[i] = nv + i;
  }
  QVector phase1(t.n, Rational(0));
  for (int i = 0; i < m; ++i) phase1[nv + i] = -1;
  std::vector<bool> all(t.n, true);
  QVector obj = t.reduced(phase1);
  t.run(obj, all);
  LpResult res;
  if (obj[t.n] != 0) {  // optimum of -sum(artificials) is -obj[n]
    res.status = LpResult::Status::infeasible;
    return res;
  }
  // Drive zero-level artificials out of the basis; drop redundant rows.
  for (int i = 0; i < t.m;) {
    if (t.basis[i] < nv) {
      ++i;
      continue;
    }
    int col = -1;
    for (int j = 0; j < nv; ++j)
      if (t.a[i][j] != 0) {
        col = j;
        break;
      }
    if (col >= 0) {
      t.pivot(i, col, obj);
      ++i;
    } else {
      t.a.erase(t.a.begin() + i);
      t.basis.erase(t.basis.begin() + i);
      --t.m;
    }
  }
  std::vector<bool> allowed(t.n, false);
  for (int j = 0; j < nv; ++j) allowed[j] = true;
  QVector cost(t.n, Rational(0));
  for (int j = 0; j < nv; ++j) cost[j] = c[j];
  QVector obj2 = t.reduced(cost);
  if (!t.run(obj2, allowed)) {
    res.status = LpResult::Status::unbounded;
    return res;
  }
  res.status = LpResult::Status::optimal;
  res.x.assign(nv, Rational(0));
  for (int i = 0; i < t.m; ++i)
    if (t.basis[i] < nv) res.x[t.basis[i]] = t.a[i][t.n];
  res.value = 0;
  for (int j = 0; j < nv; ++j) res.value += c[j] * res.x[j];
  return res;
}

}  // namespace patpoly
