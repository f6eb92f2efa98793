#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "patpoly/error.hpp"
#include "patpoly/perms.hpp"

using namespace patpoly;

namespace {

Permutation P(const char* s) { return Permutation::parse(s); }

// Brute force over index subsets; adjacency gaps checked directly.
std::uint64_t brute_count(const std::vector<int>& w, const Pattern& p) {
  const int n = static_cast<int>(w.size()), k = p.size();
  if (k > n) return 0;
  std::vector<int> idx(k);
  std::uint64_t count = 0;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + k, true);
  do {
    int t = 0;
    for (int i = 0; i < n; ++i)
      if (pick[i]) idx[t++] = i;
    bool ok = true;
    for (int a = 0; a < k && ok; ++a)
      for (int b = 0; b < k && ok; ++b)
        ok = (w[idx[a]] < w[idx[b]]) == (p.perm[a] < p.perm[b]);
    for (int g : p.adjacent_gaps) {
      if (g == 0) ok = ok && idx[0] == 0;
      else ok = ok && idx[g] == idx[g - 1] + 1;
    }
    count += ok;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return count;
}

std::vector<Permutation> all_perms(int n) {
  std::vector<int> w(n);
  std::iota(w.begin(), w.end(), 1);
  std::vector<Permutation> out;
  do out.emplace_back(w);
  while (std::next_permutation(w.begin(), w.end()));
  return out;
}

}  // namespace

TEST_CASE("parse and print") {
  CHECK(P("2641753").to_string() == "2641753");
  CHECK(P("2641753").inverse().inverse() == P("2641753"));
  CHECK(Permutation::parse("10,1,2,3,4,5,6,7,8,9").size() == 10);
  CHECK_THROWS_AS(P("122"), Error);
  CHECK_THROWS_AS(P("1a3"), Error);
}

TEST_CASE("containment examples") {
  CHECK(contains(P("132"), Pattern::classical(P("12"))));
  CHECK_FALSE(contains(P("321"), Pattern::classical(P("12"))));
  CHECK(contains(P("2641753"), Pattern::classical(P("123"))));
}

TEST_CASE("vincular occurrences") {
  const Pattern p{P("231"), {2}};
  const auto w = P("4261573").word();
  CHECK(count_occurrences(w, p) == 5);
  CHECK(count_occurrences(w, Pattern::classical(P("231"))) >= 5);
  CHECK(count_occurrences(w, Pattern::classical(P("231"))) == brute_count(w, Pattern::classical(P("231"))));
  const Pattern eps21{P("21"), {0, 1}};
  CHECK(count_occurrences(P("1234567").word(), eps21) == 0);
}

TEST_CASE("occurrence counts agree with brute force on S_6") {
  const std::vector<Pattern> pats = {Pattern::classical(P("132")), Pattern::classical(P("2413")),
                                     Pattern{P("231"), {2}}, Pattern{P("123"), {1, 2}},
                                     Pattern{P("21"), {0, 1}}};
  for (const auto& s : all_perms(6))
    for (const auto& p : pats) REQUIRE(count_occurrences(s.word(), p) == brute_count(s.word(), p));
}

TEST_CASE("avoidance classes") {
  CHECK(avoidance_class(4, classical_patterns({"123"})).size() == 14);
  CHECK(avoidance_class(4, classical_patterns({"132", "312"})).size() == 8);
  CHECK(avoidance_class(5, classical_patterns({"123", "321"})).empty());
  // Catalan for every single pattern of S_3
  for (const char* p : {"123", "132", "213", "231", "312", "321"})
    CHECK(avoidance_class(6, classical_patterns({p})).size() == 132);
  const auto cls = avoidance_class(5, classical_patterns({"132"}));
  CHECK(std::is_sorted(cls.begin(), cls.end()));
}

TEST_CASE("alternating classes") {
  CHECK(alternating_avoidance_class(8, classical_patterns({"123"})).size() == 14);
  for (int n = 2; n <= 10; n += 2)
    CHECK(alternating_avoidance_class(n, classical_patterns({"123"})).size() ==
          alternating_avoidance_class(n - 1, classical_patterns({"123"})).size());
  const auto two = alternating_avoidance_class(2, {});
  REQUIRE(two.size() == 1);
  CHECK(two[0] == P("12"));
  // up-down counts (Euler zigzag numbers)
  const std::size_t zigzag[] = {1, 1, 1, 2, 5, 16, 61, 272};
  for (int n = 1; n <= 7; ++n) CHECK(alternating_avoidance_class(n, {}).size() == zigzag[n]);
  for (const auto& s : alternating_avoidance_class(7, {})) CHECK(is_alternating(s));
}

TEST_CASE("symmetries of the square") {
  CHECK(apply(Symmetry::reverse, P("123")) == P("321"));
  CHECK(apply(Symmetry::complement, P("2641753")) == P("6247135"));
  for (const auto& s : all_perms(5)) {
    CHECK(apply(Symmetry::rotate180, s) == apply(Symmetry::reverse, apply(Symmetry::complement, s)));
    CHECK(apply(Symmetry::inverse, s) == s.inverse());
    // group closure: four quarter turns
    auto t = s;
    for (int i = 0; i < 4; ++i) t = apply(Symmetry::rotate90, t);
    CHECK(t == s);
  }
  // avoidance commutes with the action
  const auto pats = classical_patterns({"132", "213"});
  for (auto g : all_symmetries) {
    const auto img = apply(g, pats);
    std::set<Permutation> a, b;
    for (const auto& s : avoidance_class(5, pats)) a.insert(apply(g, s));
    for (const auto& s : avoidance_class(5, img)) b.insert(s);
    CHECK(a == b);
  }
}

TEST_CASE("griddings") {
  const GridMatrix fig{3, 2, {0, 1, -1, -1, 0, -1}};
  CHECK(is_griddable(P("4261573"), fig));
  const GridMatrix col{2, 1, {1, -1}};
  for (int n = 1; n <= 7; ++n)
    for (const auto& s : avoidance_class(n, classical_patterns({"132", "312"}))) CHECK(is_griddable(s, col));
  // and conversely, griddable permutations avoid 132 and 312
  for (const auto& s : all_perms(6))
    CHECK(is_griddable(s, col) == avoids(s, classical_patterns({"132", "312"})));
  CHECK(is_griddable(P("12"), GridMatrix{1, 1, {-1}}) == false);
  CHECK(is_griddable(P("1"), GridMatrix{1, 1, {-1}}));
}

TEST_CASE("statistics") {
  CHECK(descents(P("4325167")) == std::vector<int>{1, 2, 4});
  CHECK(inversions(Permutation::identity(5)).empty());
  CHECK(value_inversions(P("4325167")).size() == inversions(P("4325167")).size());
  CHECK(inversions(P("4325167")).size() == 7);
}

TEST_CASE("weak order covers") {
  const auto rc = weak_covers(P("2613754"), Side::right);
  CHECK(std::find(rc.begin(), rc.end(), P("2631754")) != rc.end());
  const auto lc = weak_covers(Permutation::identity(4), Side::left);
  CHECK(lc.size() == 3);
  CHECK(weak_covers(P("4321"), Side::right).empty());
  CHECK(weak_covers(P("4321"), Side::left).empty());
  // each cover adds exactly one inversion and is above in the order
  for (const auto& s : all_perms(5))
    for (auto side : {Side::left, Side::right})
      for (const auto& t : weak_covers(s, side)) {
        CHECK(inversions(t).size() == inversions(s).size() + 1);
        CHECK(weak_leq(s, t, side));
        CHECK_FALSE(weak_leq(t, s, side));
      }
}
