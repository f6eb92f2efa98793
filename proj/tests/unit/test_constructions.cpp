#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "patpoly/constructions.hpp"
#include "patpoly/error.hpp"
#include "patpoly/polytope.hpp"

using namespace patpoly;

namespace {

PatternSet pats(const char* s) { return parse_pattern_list(s); }

std::vector<Permutation> all_perms(int n) {
  std::vector<int> w(n);
  std::iota(w.begin(), w.end(), 1);
  std::vector<Permutation> out;
  do out.emplace_back(w);
  while (std::next_permutation(w.begin(), w.end()));
  return out;
}

std::set<IntPoint> vertex_set(const VPolytope& P) { return {P.vertices().begin(), P.vertices().end()}; }

// lattice points of PS(c) by nested loops over the defining inequalities
std::uint64_t ps_brute(const std::vector<int>& c, int m) {
  const int n = static_cast<int>(c.size());
  std::uint64_t count = 0;
  std::vector<long> x(n);
  auto rec = [&](auto&& self, int i, long used, long cap) -> void {
    if (i == n) {
      ++count;
      return;
    }
    const long bound = cap + static_cast<long>(c[i]) * m;
    for (long v = 0; used + v <= bound; ++v) self(self, i + 1, used + v, bound);
  };
  rec(rec, 0, 0, 0);
  return count;
}

}  // namespace

TEST_CASE("small permutohedra") {
  const auto hex = permutohedron(3, {});
  CHECK(hex.num_vertices() == 6);
  CHECK(hex.dim() == 2);
  CHECK(hex.hrep().facets.size() == 6);
  CHECK(ehrhart(permutohedron(4, pats("123,132,231"))) == UniPoly::binomial(3, 3));
  const auto pt = permutohedron(5, pats("123,132,213,231,312"));
  REQUIRE(pt.num_vertices() == 1);
  CHECK(pt.vertices()[0] == IntPoint{5, 4, 3, 2, 1});
  CHECK_THROWS_AS(permutohedron(5, pats("123,321")), Error);
}

TEST_CASE("small Birkhoff polytopes") {
  CHECK(birkhoff(3, {}).dim() == 4);
  CHECK(birkhoff(3, {}).num_vertices() == 6);
  const auto b = birkhoff(4, pats("132,312"));
  CHECK(b.dim() == 6);
  CHECK(normalized_volume(b) == 2);
  const auto alt = birkhoff(8, pats("123"), true);
  CHECK(alt.num_vertices() == 14);
  CHECK(alt.dim() == 6);
  CHECK(normalized_volume(alt) == 16);
  // vertices are exactly the permutation matrices of the class
  for (const auto& s : avoidance_class(4, pats("132"))) {
    const auto v = perm_matrix_point(s);
    CHECK(std::count(v.begin(), v.end(), 1) == 4);
    CHECK(vertex_set(birkhoff(4, pats("132"))).count(v) == 1);
  }
}

TEST_CASE("CRY polytopes") {
  const auto v3 = cry_permutations(3);
  const std::set<Permutation> c3(v3.begin(), v3.end());
  CHECK(c3 == std::set<Permutation>{Permutation::parse("132"), Permutation::parse("231"),
                                    Permutation::parse("312"), Permutation::parse("321")});
  // brute force the zero condition over S_n
  for (int n = 2; n <= 5; ++n) {
    std::set<Permutation> want;
    for (const auto& s : all_perms(n)) {
      bool ok = true;
      for (int x = 1; x <= n; ++x) ok = ok && !(x >= n + 3 - s[x - 1]);
      if (ok) want.insert(s);
    }
    const auto got = cry_permutations(n);
    CHECK(std::set<Permutation>(got.begin(), got.end()) == want);
    CHECK(vertex_set(cry(n)) == vertex_set(birkhoff(n, pats("123,213"))));
  }
}

TEST_CASE("Pitman-Stanley polytopes") {
  const auto ps = pitman_stanley({1, 1, 1});
  CHECK(ps.num_vertices() == 8);
  CHECK(ps.dim() == 3);
  CHECK(is_combinatorial_cube(ps));
  CHECK(ehrhart(ps) == ps_ehrhart(3, 1, 1));
  for (int m = 0; m <= 4; ++m) CHECK(ps_ehrhart(3, 1, 1)(static_cast<long>(m)) == Rational(static_cast<long>(ps_brute({1, 1, 1}, m))));
  for (const std::vector<int>& c : {std::vector<int>{2, 1, 1}, std::vector<int>{1, 2}, std::vector<int>{1, 1, 1, 1}})
    for (int m = 1; m <= 2; ++m) CHECK(count_lattice_points(pitman_stanley(c), m) == ps_brute(c, m));
  CHECK(pitman_stanley_contains({1, 1}, IntPoint{0, 2}));
  CHECK_FALSE(pitman_stanley_contains({1, 1}, IntPoint{2, 0}));
  CHECK_FALSE(pitman_stanley_contains({1, 1}, IntPoint{-1, 0}));
}

TEST_CASE("combinatorial cubes") {
  CHECK(is_combinatorial_cube(pitman_stanley({1, 1})));
  CHECK_FALSE(is_combinatorial_cube(standard_simplex(3)));
  CHECK_FALSE(is_combinatorial_cube(permutohedron(3, {})));
  for (int n = 3; n <= 5; ++n) CHECK(is_combinatorial_cube(permutohedron(n, pats("123,132"))));
}

TEST_CASE("zonotope Ehrhart polynomials") {
  std::vector<IntPoint> v;
  for (int j = 2; j <= 4; ++j) {
    IntPoint g(4, 0);
    for (int i = 1; i < j; ++i) g[i - 1] = 1;
    g[j - 1] = -(j - 1);
    v.push_back(g);
  }
  CHECK(zonotope_ehrhart(v).to_string() == "1 + 3 m + 6 m^2 + 6 m^3");
  const std::vector<IntPoint> perm3 = {{1, -1, 0}, {1, 0, -1}, {0, 1, -1}};
  CHECK(zonotope_ehrhart(perm3).to_string() == "1 + 3 m + 3 m^2");
  CHECK(zonotope_ehrhart(perm3) == ehrhart(permutohedron(3, {})));
  CHECK(zonotope_ehrhart({}) == UniPoly::constant(1));
}

TEST_CASE("closed forms against enumeration") {
  for (int n = 1; n <= 7; ++n) {
    const auto perms = all_perms(n);
    long der = 0;
    std::vector<long> eul(n, 0);
    for (const auto& s : perms) {
      bool fixed = false;
      for (int i = 0; i < n; ++i) fixed = fixed || s[i] == i + 1;
      der += !fixed;
      eul[descents(s).size()]++;
    }
    CHECK(derangements(n) == der);
    const auto e = eulerian(n);
    REQUIRE(e.size() == static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) CHECK(e[k] == eul[k]);
    CHECK(catalan(n) == static_cast<long>(avoidance_class(n, pats("231")).size()));
    CHECK(factorial(n) == static_cast<long>(perms.size()));
  }
  CHECK(eulerian(3) == std::vector<Integer>{1, 4, 1});
  CHECK(hook_shifted(4) == 2);
  CHECK(hook_staircase(4) == 16);
  CHECK(trees(5) == 125);
  CHECK(falling_factorial(5, 2) == 20);
  CHECK(binomial(6, 3) == 20);
  CHECK(closed_form_eval("catalan", {5}) == 42);
  CHECK(closed_form_eval("falling", {5, 2}) == 20);
  CHECK_THROWS_AS(closed_form_eval("nope", {1}), Error);
}

TEST_CASE("named formulas") {
  CHECK(proposition_formula("ehr_132_312", 1) == UniPoly::constant(1));
  CHECK(proposition_formula("ehr_132_312", 4).to_string() == "1 + 3 m + 6 m^2 + 6 m^3");
  for (int n = 2; n <= 5; ++n) {
    CHECK(proposition_formula("ehr_123_132", n) == ehrhart(permutohedron(n, pats("123,132"))));
    CHECK(proposition_formula("ehr_132_312", n) == ehrhart(permutohedron(n, pats("132,312"))));
    CHECK(proposition_formula("ehr_123_132_231", n) == ehrhart(permutohedron(n, pats("123,132,231"))));
  }
  for (const auto& id : proposition_ids()) CHECK_NOTHROW(proposition_formula(id, 3));
  CHECK_THROWS_AS(proposition_formula("ehr_missing", 3), Error);
  CHECK_THROWS_AS(proposition_formula("ehr_132_312", 0), Error);
}

TEST_CASE("construction specs") {
  for (const char* s : {"P(4;123)", "B(4;132,312)", "Balt(8;123)", "CRY(5)", "PS(1,1,1)", "Simplex(3)"}) {
    const auto c = parse_construction(s);
    CHECK(c.name() == s);
    CHECK(parse_construction(c.name()).name() == c.name());
  }
  CHECK(parse_construction("altB(8;123)").kind == Construction::Kind::birkhoff_alternating);
  CHECK(build(parse_construction("P(3;)")).num_vertices() == 6);
  for (const char* bad : {"P4;123", "Q(4;123)", "P(x;123)", "B(4;1a3)", ""})
    CHECK_THROWS_AS(parse_construction(bad), Error);
  CHECK(construction_class(parse_construction("B(4;132,312)")).size() == 8);
}
