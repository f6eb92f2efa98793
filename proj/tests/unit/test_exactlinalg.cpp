#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "patpoly/error.hpp"
#include "patpoly/exactlinalg.hpp"
#include "patpoly/unipoly.hpp"

using namespace patpoly;

namespace {

// Leibniz expansion; fine for n <= 6.
Integer leibniz(const ZMatrix& m) {
  const int n = m.rows();
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  Integer total = 0;
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inv += p[i] > p[j];
    Integer t = inv % 2 ? -1 : 1;
    for (int i = 0; i < n; ++i) t *= m(i, p[i]);
    total += t;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

ZMatrix random_matrix(std::mt19937_64& rng, int r, int c, int lo = -4, int hi = 4) {
  std::uniform_int_distribution<int> d(lo, hi);
  ZMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

// gcd of maximal minors by enumeration of row subsets
Integer brute_gcd_minors(const ZMatrix& X) {
  const int n = X.rows(), d = X.cols();
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + d, true);
  Integer g = 0;
  do {
    ZMatrix sub(d, d);
    int t = 0;
    for (int i = 0; i < n; ++i)
      if (pick[i]) {
        for (int j = 0; j < d; ++j) sub(t, j) = X(i, j);
        ++t;
      }
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), Integer(abs(leibniz(sub))).get_mpz_t());
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return g;
}

}  // namespace

TEST_CASE("determinants") {
  CHECK(det(ZMatrix::identity(3)) == 1);
  ZMatrix j(3, 3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) j(a, b) = (a == b) ? 2 : 1;
  CHECK(det(j) == 4);  // J + I of size n-1 with n = 4
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + t % 5;
    const auto m = random_matrix(rng, n, n);
    CHECK(det(m) == leibniz(m));
    CHECK(det(to_qmatrix(m)) == Rational(leibniz(m)));
  }
}

TEST_CASE("rank, kernel, inverse") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    const auto m = to_qmatrix(random_matrix(rng, 3 + t % 3, 4, -2, 2));
    const auto k = kernel(m);
    CHECK(rank(m) + k.cols() == m.cols());
    const auto prod = m * k;
    for (int i = 0; i < prod.rows(); ++i)
      for (int c = 0; c < prod.cols(); ++c) CHECK(prod(i, c) == 0);
  }
  const QMatrix a{{2, 1}, {1, 1}};
  CHECK(a * inverse(a) == QMatrix::identity(2));
  CHECK_THROWS_AS(inverse(QMatrix{{1, 2}, {2, 4}}), Error);
}

TEST_CASE("hermite and smith forms") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 40; ++t) {
    const auto A = random_matrix(rng, 2 + t % 4, 2 + (t / 4) % 4);
    const auto h = hermite_normal_form(A);
    CHECK(A * h.U == h.H);
    CHECK(abs(det(h.U)) == 1);
    CHECK(h.rank == rank(A));
    const auto s = smith_normal_form(A);
    CHECK(s.U * A * s.V == s.D);
    CHECK(abs(det(s.U)) == 1);
    CHECK(abs(det(s.V)) == 1);
    for (std::size_t i = 1; i < s.invariant_factors.size(); ++i)
      CHECK(s.invariant_factors[i] % s.invariant_factors[i - 1] == 0);
    if (A.rows() == A.cols()) {
      Integer prod = 1;
      for (const auto& f : s.invariant_factors) prod *= f;
      CHECK((rank(A) == A.rows() ? prod : Integer(0)) == abs(det(A)));
    }
  }
}

TEST_CASE("affine lattices") {
  const std::vector<IntPoint> tri = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  const auto L = affine_lattice_basis(tri);
  CHECK(L.dim() == 2);
  CHECK(L.ambient_dim() == 3);
  const auto c = lattice_coords_int(L, IntPoint{0, 1, 0});
  CHECK(std::count(c.begin(), c.end(), 0) + std::count(c.begin(), c.end(), 1) + std::count(c.begin(), c.end(), -1) == 2);
  // round trip on random lattice points
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> d(-50, 50);
  for (int t = 0; t < 100; ++t) {
    std::vector<std::int64_t> z = {d(rng), d(rng)};
    const auto x = from_lattice_coords(L, z);
    CHECK(lattice_coords_int(L, x) == IntPoint(z.begin(), z.end()));
  }
  const std::vector<Rational> half = {make_rational(1, 2), make_rational(1, 2), Rational(0)};
  try {
    lattice_coords(L, half);
    FAIL("expected NotInLattice");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_in_lattice);
  }
  const std::vector<Rational> off = {Rational(1), Rational(1), Rational(1)};
  try {
    lattice_coords(L, off);
    FAIL("expected NotInSpan");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_in_span);
  }
  const std::vector<IntPoint> single = {{3, 4}};
  CHECK(affine_lattice_basis(single).dim() == 0);
  // P_4(132,312) spans the lattice generated by e1 - ej
  const std::vector<IntPoint> pts = {{1, 2, 3, 4}, {2, 1, 3, 4}, {3, 2, 1, 4}, {4, 3, 2, 1}};
  const auto Lp = affine_lattice_basis(pts);
  CHECK(Lp.dim() == 3);
  CHECK_NOTHROW(lattice_coords_int(Lp, IntPoint{2, 1, 3, 4}));
  CHECK_NOTHROW(lattice_coords_int(Lp, IntPoint{0, 2, 3, 5}));
}

TEST_CASE("unimodular simplices") {
  CHECK_FALSE(is_unimodular_simplex(std::vector<IntPoint>{{0}, {2}}));
  CHECK(is_unimodular_simplex(std::vector<IntPoint>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  // lower triangular with unit diagonal and arbitrary entries below
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::int64_t> d(-9, 9);
  for (int t = 0; t < 30; ++t) {
    const int dim = 1 + t % 5;
    std::vector<IntPoint> v(dim + 1, IntPoint(dim, 0));
    for (int r = 1; r <= dim; ++r) {
      v[r][r - 1] = 1;
      for (int c = r; c < dim; ++c) v[r][c] = d(rng);
    }
    CHECK(is_unimodular_simplex(v));
  }
  CHECK_THROWS_AS(is_unimodular_simplex(std::vector<IntPoint>{{0, 0}, {1, 1}, {2, 2}}), Error);
}

TEST_CASE("gcd of full minors") {
  CHECK(gcd_full_minors(ZMatrix{{0}, {1}, {0}}) == 1);
  // columns sum_{i<=j} (e_i - e_{j+1}), n = 4
  const ZMatrix w{{1, 1, 1}, {-1, 1, 1}, {0, -2, 1}, {0, 0, -3}};
  CHECK(gcd_full_minors(w) == 6);
  CHECK(brute_gcd_minors(w) == 6);
  std::mt19937_64 rng(13);
  for (int t = 0; t < 20; ++t) {
    const auto X = random_matrix(rng, 6, 4, -3, 3);
    if (rank(X) < 4) continue;
    CHECK(gcd_full_minors(X) == brute_gcd_minors(X));
  }
  CHECK_THROWS_AS(gcd_full_minors(ZMatrix{{1, 2}, {2, 4}, {3, 6}}), Error);
}

TEST_CASE("exact LP") {
  // max x + y s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
  const QMatrix A{{1, 2, 1, 0}, {3, 1, 0, 1}};
  const auto r = lp_maximize(A, {Rational(4), Rational(6)}, {Rational(1), Rational(1), Rational(0), Rational(0)});
  REQUIRE(r.status == LpResult::Status::optimal);
  CHECK(r.value == make_rational(14, 5));
  const auto inf = lp_maximize(QMatrix{{1, 1}}, {Rational(-1)}, {Rational(1), Rational(0)});
  CHECK(inf.status == LpResult::Status::infeasible);
  const auto unb = lp_maximize(QMatrix{{1, -1}}, {Rational(0)}, {Rational(1), Rational(0)});
  CHECK(unb.status == LpResult::Status::unbounded);
}

TEST_CASE("polynomials") {
  const auto p = UniPoly::binomial(3, 3);  // C(m+3, 3)
  for (long m = 0; m <= 6; ++m) CHECK(p(m) == Rational((m + 3) * (m + 2) * (m + 1) / 6));
  CHECK(p.to_string() == "1 + 11/6 m + m^2 + 1/6 m^3");
  const auto q = UniPoly::interpolate_from_zero({1, 6, 19, 44});
  const long vals[] = {1, 6, 19, 44};
  for (long m = 0; m < 4; ++m) CHECK(q(m) == Rational(vals[m]));
  CHECK(q.degree() == 3);
  CHECK(q.leading() == make_rational(2, 3));
  CHECK(UniPoly::constant(1).to_string() == "1");
  CHECK(UniPoly().to_string() == "0");
  CHECK((UniPoly::monomial(1) * UniPoly::monomial(2)).degree() == 3);
  CHECK(UniPoly::from_json(p.to_json()) == p);
  CHECK(rational_to_string(rational_from_string("121/8")) == "121/8");
  CHECK(rational_from_string("6/4") == make_rational(3, 2));
}
