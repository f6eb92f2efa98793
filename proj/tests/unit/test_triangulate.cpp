#include <doctest.h>

#include <algorithm>

#include "patpoly/constructions.hpp"
#include "patpoly/error.hpp"
#include "patpoly/polytope.hpp"
#include "patpoly/posets.hpp"
#include "patpoly/triangulate.hpp"

using namespace patpoly;

namespace {

struct Case {
  VPolytope P;
  PermPoset L;
  EdgeLabeling lambda;
};

Case make(int n, bool alt) {
  auto L = alt ? q_alt_poset(n) : q_poset(n);
  auto P = birkhoff(n, parse_pattern_list(alt ? "123" : "132,312"), alt);
  const auto irr = labeled_irreducibles(L, alt ? LabelingKind::staircase : LabelingKind::shifted, n);
  auto lam = el_labeling(L.poset, irr.elements, irr.omega);
  return {std::move(P), std::move(L), std::move(lam)};
}

bool check_named(const TriangulationReport& r, const std::string& prefix) {
  for (const auto& c : r.checks)
    if (c.name.rfind(prefix, 0) == 0) return c.pass;
  return true;
}

}  // namespace

TEST_CASE("chain simplices") {
  CHECK(order_complex_simplices(make(3, false).L, make(3, false).lambda).size() == 1);
  const auto c4 = make(4, false);
  const auto s4 = order_complex_simplices(c4.L, c4.lambda);
  CHECK(s4.size() == 2);
  const auto c8 = make(8, true);
  const auto s8 = order_complex_simplices(c8.L, c8.lambda);
  CHECK(s8.size() == 16);
  for (const auto* cs : {&s4, &s8}) {
    const auto& P = cs == &s4 ? c4.P : c8.P;
    for (const auto& s : *cs) {
      CHECK(s.vertices.size() == static_cast<std::size_t>(P.dim() + 1));
      CHECK(s.labels.size() == static_cast<std::size_t>(P.dim()));
      CHECK(s.descent_count == descents_of(s.labels));
      // every vertex is a vertex of P
      for (const auto& v : s.vertices)
        CHECK(std::find(P.vertices().begin(), P.vertices().end(), v) != P.vertices().end());
    }
    // unimodular pieces: their number is the normalized volume
    CHECK(Integer(static_cast<long>(cs->size())) == normalized_volume(P));
  }
}

TEST_CASE("descent counts give h*") {
  for (auto [n, alt] : {std::pair{3, false}, std::pair{4, false}, std::pair{5, false}, std::pair{6, true}, std::pair{8, true}}) {
    const auto c = make(n, alt);
    const auto simplices = order_complex_simplices(c.L, c.lambda);
    std::vector<Integer> h(c.P.dim() + 1, 0);
    for (const auto& s : simplices) h[s.descent_count] += 1;
    auto want = hstar(c.P);
    want.resize(h.size(), 0);
    CHECK(h == want);
    const auto sh = hstar_via_shelling(c.P, c.L, c.lambda);
    CHECK(sh.from_descents == want);
    CHECK(sh.from_restrictions == want);
  }
  CHECK(hstar(birkhoff(3, parse_pattern_list("132,312"))) == std::vector<Integer>{1});
}

TEST_CASE("triangulation report") {
  for (auto [n, alt] : {std::pair{2, false}, std::pair{3, false}, std::pair{4, false}, std::pair{8, true}}) {
    const auto c = make(n, alt);
    const auto simplices = order_complex_simplices(c.L, c.lambda);
    TriangulationOptions o;
    o.hook_volume = alt ? hook_staircase((n + 1) / 2) : hook_shifted(n);
    const auto r = verify_unimodular_triangulation(c.P, c.L, simplices, o);
    CHECK(r.all_pass());
    CHECK(r.polytope_dim == c.L.poset.longest_chain());
    CHECK(r.simplex_count == simplices.size());
    CHECK_NOTHROW(require_triangulation(r));
    CHECK(r.to_json().contains("checks"));
  }
}

TEST_CASE("broken triangulations are caught") {
  const auto c = make(8, true);
  auto simplices = order_complex_simplices(c.L, c.lambda);
  TriangulationOptions o;
  o.check_flag = false;

  auto missing = simplices;
  missing.pop_back();
  const auto r1 = verify_unimodular_triangulation(c.P, c.L, missing, o);
  CHECK_FALSE(r1.all_pass());
  CHECK_THROWS_AS(require_triangulation(r1), Error);

  auto doubled = simplices;
  doubled.push_back(simplices.front());
  const auto r2 = verify_unimodular_triangulation(c.P, c.L, doubled, o);
  CHECK_FALSE(r2.all_pass());
  CHECK(check_named(r2, "unimodular"));
}

TEST_CASE("Gorenstein checks") {
  const auto B = birkhoff(4, parse_pattern_list("132,312"));
  const auto e = ehrhart(B);
  const auto h = hstar_from_ehrhart(e, B.dim());
  const auto g = gorenstein_checks(B, h, e);
  CHECK(g.palindromic);
  CHECK(g.unimodal);
  CHECK(g.gorenstein_candidate());
  int first = 1;
  while (interior_count(B, first) == 0) ++first;
  CHECK(g.first_interior_dilate == first);
  REQUIRE(g.interior_by_enumeration);
  CHECK(*g.interior_by_enumeration == 1);
  CHECK(g.interior_before.value_or(0) == 0);
  CHECK(g.to_json().at("palindromic") == true);

  // not palindromic
  const auto S = birkhoff(4, parse_pattern_list("132"));
  const auto eS = ehrhart(S);
  const auto gS = gorenstein_checks(S, hstar_from_ehrhart(eS, S.dim()), eS, false);
  CHECK_FALSE(gS.palindromic);
  CHECK_FALSE(gS.interior_by_enumeration);
}
