#include <doctest.h>

#include <algorithm>
#include <functional>

#include "patpoly/constructions.hpp"
#include "patpoly/error.hpp"
#include "patpoly/polytope.hpp"

using namespace patpoly;

namespace {

PatternSet pats(const char* s) { return parse_pattern_list(s); }

// Box scan of m*P with LP membership; independent of the counting code.
std::uint64_t brute_count(const VPolytope& P, int m, bool interior = false) {
  const int N = P.ambient_dim();
  std::vector<std::int64_t> lo(N, 0), hi(N, 0);
  for (int i = 0; i < N; ++i) {
    lo[i] = hi[i] = P.vertices()[0][i];
    for (const auto& v : P.vertices()) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
  }
  std::uint64_t count = 0;
  std::vector<Rational> x(N);
  std::function<void(int)> rec = [&](int i) {
    if (i == N) {
      count += contains_point_lp(P, x, interior);
      return;
    }
    for (std::int64_t t = lo[i] * m; t <= hi[i] * m; ++t) {
      x[i] = Rational(t) / (m == 0 ? 1 : m);
      rec(i + 1);
    }
  };
  if (m == 0) return 1;
  rec(0);
  return count;
}

std::vector<Integer> ints(std::initializer_list<long> v) {
  std::vector<Integer> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("dimensions") {
  CHECK(birkhoff(4, pats("123")).dim() == 9);
  CHECK(permutohedron(4, {}).dim() == 3);
  CHECK(birkhoff(4, pats("132,312")).dim() == 6);
  CHECK(permutohedron(5, pats("123,132,213,231,312")).dim() == 0);
}

TEST_CASE("membership") {
  const auto P = permutohedron(4, {});
  std::vector<Rational> c(4, Rational(0));
  for (const auto& v : P.vertices())
    for (int i = 0; i < 4; ++i) c[i] += Rational(v[i]);
  for (auto& x : c) x /= static_cast<long>(P.num_vertices());
  CHECK(contains_point(P, c));
  CHECK(contains_point(P, c, true));
  CHECK(contains_point_lp(P, c, true));
  CHECK(contains_point_hrep(P, c, true));
  std::vector<Rational> v(P.vertices()[0].begin(), P.vertices()[0].end());
  CHECK(contains_point(P, v));
  CHECK_FALSE(contains_point(P, v, true));
  CHECK_FALSE(contains_point_lp(P, v, true));
  std::vector<Rational> out = {Rational(5), Rational(0), Rational(3), Rational(2)};
  CHECK_FALSE(contains_point(P, out));
}

TEST_CASE("facets") {
  CHECK(permutohedron(4, pats("123")).hrep().facets.size() == 13);
  CHECK(permutohedron(4, pats("132")).hrep().facets.size() == 11);
  CHECK(permutohedron(5, pats("1423")).hrep().facets.size() == 48);
  CHECK(permutohedron(5, pats("2431")).hrep().facets.size() == 46);
  // every facet is valid, tight on at least dim vertices, and the incidence is consistent
  for (const auto& P : {permutohedron(5, pats("132")), birkhoff(3, {}), birkhoff(4, pats("132,312"))}) {
    const auto& h = P.hrep();
    for (std::size_t f = 0; f < h.facets.size(); ++f) {
      std::size_t tight = 0;
      for (std::size_t v = 0; v < P.num_vertices(); ++v) {
        Integer s = 0;
        for (int i = 0; i < P.ambient_dim(); ++i) s += h.facets[f].normal[i] * P.vertices()[v][i];
        CHECK(s <= h.facets[f].offset);
        CHECK((s == h.facets[f].offset) == static_cast<bool>(h.incidence[f][v]));
        tight += s == h.facets[f].offset;
      }
      CHECK(tight >= static_cast<std::size_t>(P.dim()));
    }
  }
}

TEST_CASE("f-vectors") {
  CHECK(f_vector(birkhoff(3, pats("123"))) == std::vector<std::uint64_t>{1, 5, 10, 10, 5, 1});
  CHECK(f_vector(birkhoff(4, pats("132"))) ==
        std::vector<std::uint64_t>{1, 14, 85, 290, 610, 822, 714, 390, 125, 20, 1});
  for (int d = 1; d <= 5; ++d) {
    const auto f = f_vector(standard_simplex(d));
    REQUIRE(f.size() == static_cast<std::size_t>(d + 2));
    for (int k = 0; k <= d + 1; ++k) CHECK(Integer(std::to_string(f[k])) == binomial(d + 1, k));
  }
  // Euler relation on a few polytopes
  for (const auto& P : {permutohedron(5, pats("123")), birkhoff(4, pats("132,312")), permutohedron(4, {})}) {
    const auto f = f_vector(P);
    long euler = 0;
    for (std::size_t k = 1; k + 1 < f.size(); ++k) euler += (k % 2 ? 1 : -1) * static_cast<long>(f[k]);
    CHECK(euler == (P.dim() % 2 ? 2 : 0));
  }
}

TEST_CASE("lattice point counts") {
  CHECK(count_lattice_points(permutohedron(3, pats("123")), 1) == 6);
  CHECK(count_lattice_points(permutohedron(4, pats("123,132")), 1) == 14);
  CHECK(count_lattice_points(birkhoff(4, pats("132")), 0) == 1);
  for (const auto& P : {permutohedron(3, pats("123")), permutohedron(3, {}), permutohedron(4, pats("132,312")),
                        birkhoff(3, pats("132")), pitman_stanley({1, 2})}) {
    const int top = P.ambient_dim() > 4 ? 2 : 3;  // the box grows like m^N
    for (int m = 1; m <= top; ++m) {
      CHECK(count_lattice_points(P, m) == brute_count(P, m));
      CHECK(count_lattice_points(P, m, {}, true) == brute_count(P, m, true));
    }
  }
}

TEST_CASE("counting strategies agree") {
  for (const auto& P : {birkhoff(3, {}), birkhoff(4, pats("132,312")), birkhoff(4, pats("123,231"))}) {
    CountOptions box, margins;
    box.strategy = CountStrategy::lattice_box;
    margins.strategy = CountStrategy::birkhoff_margins;
    for (int m = 1; m <= 4; ++m) {
      CHECK(count_lattice_points(P, m, box) == count_lattice_points(P, m, margins));
      CHECK(count_lattice_points(P, m, box, true) == count_lattice_points(P, m, margins, true));
    }
  }
}

TEST_CASE("budget") {
  CountOptions tiny;
  tiny.budget = 5;
  try {
    count_lattice_points(birkhoff(4, {}), 3, tiny);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::budget_exceeded);
  }
}

TEST_CASE("ehrhart polynomials") {
  CHECK(ehrhart(permutohedron(4, pats("132"))).to_string() == "1 + 4 m + 9 m^2 + 10 m^3");
  CHECK(ehrhart(permutohedron(5, pats("132,213,231"))).to_string() == "1 + 7/3 m + 3 m^2 + 8/3 m^3 + m^4");
  CHECK(ehrhart(permutohedron(4, pats("132,312"))).to_string() == "1 + 3 m + 6 m^2 + 6 m^3");
  // reciprocity against direct interior counts
  for (const auto& P : {permutohedron(4, pats("123")), birkhoff(3, {}), birkhoff(4, pats("132,312")),
                        permutohedron(5, pats("132,312"))}) {
    const auto e = ehrhart(P);
    CHECK(e(0L) == 1);
    for (int m = 1; m <= 3; ++m)
      CHECK(interior_count_from_ehrhart(e, P.dim(), m) == Integer(std::to_string(interior_count(P, m))));
  }
}

TEST_CASE("h* vectors and volumes") {
  CHECK(hstar(birkhoff(3, pats("132"))) == ints({1}));
  CHECK(hstar(birkhoff(4, pats("123"))) == ints({1, 4, 6, 4, 1}));
  CHECK(hstar(birkhoff(4, pats("132"))) == ints({1, 4, 7, 5, 1}));
  CHECK(normalized_volume(permutohedron(4, pats("123"))) == 62);
  // frozen: equals the sum of the h* entries above
  CHECK(normalized_volume(birkhoff(4, pats("132"))) == 18);
  const auto e = ehrhart(permutohedron(5, pats("132,312")));
  CHECK(e.leading() == Rational(24));
  CHECK(normalized_volume_from_ehrhart(e, 4) == 24 * 24);
  // h* entries are nonnegative and sum to the volume
  for (const auto& P : {permutohedron(5, pats("123")), birkhoff(4, pats("123,231")), cry(4)}) {
    const auto h = hstar(P);
    Integer s = 0;
    for (const auto& x : h) {
      CHECK(x >= 0);
      s += x;
    }
    CHECK(s == normalized_volume(P));
  }
}

TEST_CASE("interior points") {
  CHECK(interior_count(permutohedron(4, pats("132,312")), 1) == 2);
  for (int d = 1; d <= 4; ++d)
    for (int m = 0; m <= d; ++m) CHECK(interior_count(standard_simplex(d), m) == 0);
  CHECK(interior_count(standard_simplex(3), 4) == 1);
}

TEST_CASE("integer decomposition") {
  for (int d = 1; d <= 4; ++d) CHECK(is_idp(standard_simplex(d), 4).idp);
  // a non-IDP lattice simplex: (0,0,0),(1,1,0),(1,0,1),(0,1,1)
  const VPolytope reeve({{0, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}});
  const auto r = is_idp(reeve, 3);
  CHECK_FALSE(r.idp);
  REQUIRE(r.witness);
  CHECK(*r.witness == IntPoint{1, 1, 1});
  CHECK(r.witness_dilate == 2);
  const auto B = birkhoff(3, {});
  const auto pts = lattice_points(B, 1);
  CHECK(pts.size() == 6);
  const IntPoint two = {1, 1, 0, 1, 0, 1, 0, 1, 1};
  const auto d = decompose(B, two, 2, pts);
  REQUIRE(d);
  IntPoint sum(9, 0);
  for (const auto& p : *d)
    for (int i = 0; i < 9; ++i) sum[i] += p[i];
  CHECK(sum == two);
}

TEST_CASE("witness matrix in the fourth dilate") {
  const auto B = birkhoff(5, pats("2413,3124"));
  const IntPoint M = {0, 1, 1, 2, 0, 1, 0, 1, 0, 2, 1, 1, 0, 1, 1, 2, 0, 1, 0, 1, 0, 2, 1, 1, 0};
  std::vector<Rational> x;
  for (auto v : M) x.push_back(Rational(v, 4));
  CHECK(contains_point(B, x));
  CHECK(contains_point_lp(B, x));
  // frozen: the matrix does decompose into four vertices of the class
  const auto d = decompose(B, M, 4, lattice_points(B, 1));
  CHECK(d.has_value());
}

TEST_CASE("serialization") {
  const auto P = permutohedron(4, pats("123"));
  const auto Q = VPolytope::from_json(P.to_json());
  CHECK(Q.vertices() == P.vertices());
  const auto j = to_json(P.hrep());
  CHECK(j.at("facets").size() == 13);
  CHECK(j.at("equalities").size() == 1);
  CHECK_THROWS_AS(VPolytope::from_json(nlohmann::json::parse("{\"vertices\": 3}")), Error);
}
