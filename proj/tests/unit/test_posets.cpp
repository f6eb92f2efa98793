#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "patpoly/constructions.hpp"
#include "patpoly/error.hpp"
#include "patpoly/polytope.hpp"
#include "patpoly/posets.hpp"

using namespace patpoly;

namespace {

// every bijection checked against the order
long brute_linear_extensions(const Poset& Q) {
  std::vector<int> p(Q.size());
  std::iota(p.begin(), p.end(), 0);
  long count = 0;
  do {
    bool ok = true;
    for (int i = 0; i < Q.size() && ok; ++i)
      for (int j = i + 1; j < Q.size() && ok; ++j) ok = !Q.less(p[j], p[i]);
    count += ok;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

// all maps Q -> [m]
long brute_order_count(const Poset& Q, const NaturalLabeling& w, int m) {
  const int n = Q.size();
  if (m <= 0) return n == 0;
  std::vector<int> f(n, 1);
  long count = 0;
  while (true) {
    bool ok = true;
    for (int s = 0; s < n && ok; ++s)
      for (int t = 0; t < n && ok; ++t)
        if (Q.less(s, t)) ok = w.label[s] > w.label[t] ? f[s] < f[t] : f[s] <= f[t];
    count += ok;
    int i = 0;
    while (i < n && f[i] == m) f[i++] = 1;
    if (i == n) break;
    ++f[i];
  }
  return count;
}

Poset m3() { return Poset::from_relations(5, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}}); }

NaturalLabeling shuffled(int n, std::mt19937_64& rng) {
  NaturalLabeling w;
  w.label.resize(n);
  std::iota(w.label.begin(), w.label.end(), 1);
  std::shuffle(w.label.begin(), w.label.end(), rng);
  return w;
}

}  // namespace

TEST_CASE("basic posets") {
  const auto c = Poset::chain(4);
  CHECK(c.covers().size() == 3);
  CHECK(c.longest_chain() == 3);
  CHECK(c.is_graded());
  CHECK(c.is_lattice());
  CHECK(Poset::antichain(3).covers().empty());
  CHECK_FALSE(Poset::antichain(3).is_lattice());
  CHECK_THROWS_AS(Poset::from_relations(3, {{0, 1}, {1, 2}, {2, 0}}), Error);
  const auto M = m3();
  CHECK(M.is_lattice());
  CHECK_FALSE(is_distributive_lattice(M));
  CHECK(M.join(1, 2) == 4);
  CHECK(M.meet(1, 3) == 0);
  const auto d = M.dual();
  CHECK(d.top() == 0);
  CHECK(Poset::from_json(M.to_json()).covers() == M.covers());
}

TEST_CASE("weak order lattices") {
  const auto q5 = q_poset(5);
  CHECK(q5.perms.size() == 16);
  CHECK(q5.poset.covers().size() == 20);
  const auto qa = q_alt_poset(8);
  CHECK(qa.perms.size() == 14);
  CHECK(qa.poset.covers().size() == 21);
  const auto q2 = weak_order_poset(2, {}, Side::right);
  CHECK(q2.poset.size() == 2);
  CHECK(q2.poset.covers().size() == 1);
  CHECK(q5.index_of(Permutation::identity(5)) == q5.poset.bottom());
  CHECK(q5.index_of(Permutation::parse("21")) == -1);
  for (int n = 1; n <= 6; ++n) {
    CHECK(iso_check_M(q_poset(n), n));
    CHECK(is_distributive_lattice(q_poset(n).poset));
  }
  for (int n = 1; n <= 8; ++n) CHECK(iso_check_dyck(q_alt_poset(n), (n + 1) / 2));
  CHECK(dyck_word(Permutation::parse("78562413")) == "NNEENENE");
}

TEST_CASE("diagram lattices") {
  // M(n) has 2^n strict partitions with parts <= n
  for (int n = 0; n <= 5; ++n) CHECK(shifted_diagram_lattice(n).shapes.size() == (1u << n));
  // D_k^* has Catalan many shapes
  for (int k = 1; k <= 5; ++k) CHECK(Integer(static_cast<long>(staircase_diagram_lattice(k).shapes.size())) == catalan(k));
  CHECK(descent_shape(Permutation::parse("4325167")) == std::vector<int>{4, 2, 1});
}

TEST_CASE("join-irreducibles") {
  CHECK(join_irreducible_elements(q_poset(5).poset).size() == 10);
  CHECK(join_irreducible_elements(q_alt_poset(8).poset).size() == 6);
  CHECK(join_irreducibles(Poset::chain(5)).size() == 4);
  CHECK(ideal_lattice(Poset::antichain(2)).size() == 4);
  CHECK(ideal_lattice(Poset::chain(3)).size() == 4);
  CHECK(is_distributive_lattice(ideal_lattice(Poset::antichain(3))));
  CHECK(birkhoff_representation_holds(q_poset(5).poset));
  CHECK_FALSE(birkhoff_representation_holds(m3()));
}

TEST_CASE("natural labels") {
  CHECK(natural_label(LabelingKind::staircase, 8, 2, 1) == 4);
  CHECK(natural_label(LabelingKind::staircase, 8, 3, 1) == 6);
  CHECK(natural_label(LabelingKind::staircase, 7, 3, 1) == 6);
  // reading order gives 1, 2, ... across the full shape
  for (int n = 2; n <= 7; ++n) {
    int next = 1;
    for (int b = 1; b <= n - 1; ++b)
      for (int c = b; c <= n - 1; ++c) CHECK(natural_label(LabelingKind::shifted, n, b, c) == next++);
  }
  for (int n = 4; n <= 10; n += 2) {
    const int k = n / 2;
    int next = 1;
    for (int b = 1; b < k; ++b)
      for (int c = 1; c <= k - b; ++c) CHECK(natural_label(LabelingKind::staircase, n, b, c) == next++);
  }
  for (int n = 2; n <= 6; ++n) {
    const auto irr = labeled_irreducibles(q_poset(n), LabelingKind::shifted, n);
    CHECK(is_natural(irr.poset, irr.omega));
  }
  for (int n = 3; n <= 8; ++n) {
    const auto irr = labeled_irreducibles(q_alt_poset(n), LabelingKind::staircase, n);
    CHECK(is_natural(irr.poset, irr.omega));
  }
  NaturalLabeling bad{{2, 1}};
  CHECK_FALSE(is_natural(Poset::chain(2), bad));
}

TEST_CASE("EL-labelings and descents") {
  const auto q4 = q_poset(4);
  const auto i4 = labeled_irreducibles(q4, LabelingKind::shifted, 4);
  const auto l4 = el_labeling(q4.poset, i4.elements, i4.omega);
  CHECK(verify_el_labeling(q4.poset, l4));
  CHECK(count_maximal_chains(q4.poset) == 2);
  CHECK(h_from_descents(q4.poset, l4) == std::vector<Integer>{1, 1});

  const auto qa = q_alt_poset(8);
  const auto ia = labeled_irreducibles(qa, LabelingKind::staircase, 8);
  const auto la = el_labeling(qa.poset, ia.elements, ia.omega);
  CHECK(verify_el_labeling(qa.poset, la));
  CHECK(count_maximal_chains(qa.poset) == 16);
  const auto h = h_from_descents(qa.poset, la);
  Integer s = 0;
  for (const auto& x : h) s += x;
  CHECK(s == 16);
  CHECK(is_palindromic(h));

  // a labeling with two increasing chains on the square fails
  const auto sq = ideal_lattice(Poset::antichain(2));
  const auto ji = join_irreducible_elements(sq);
  EdgeLabeling flat;
  for (auto [a, b] : sq.covers()) flat.label[{a, b}] = 1;
  CHECK_FALSE(verify_el_labeling(sq, flat));
  CHECK(el_labeling(sq, ji, NaturalLabeling{{1, 2}}).label.size() == 4);
  CHECK_THROWS_AS(el_labeling(m3(), join_irreducible_elements(m3()), NaturalLabeling{{1, 2, 3}}), Error);
  CHECK(count_maximal_chains(Poset::chain(1)) == 1);
  CHECK(descents_of({1, 3, 2, 4, 1}) == 2);
}

TEST_CASE("Jordan-Holder sets") {
  const auto two = jordan_holder(Poset::antichain(2), NaturalLabeling{{1, 2}});
  CHECK(two == std::vector<std::vector<int>>{{1, 2}, {2, 1}});
  const auto one = jordan_holder(Poset::chain(3), NaturalLabeling{{1, 2, 3}});
  CHECK(one == std::vector<std::vector<int>>{{1, 2, 3}});
  CHECK_THROWS_AS(jordan_holder(Poset::antichain(6), some_natural_labeling(Poset::antichain(6)), 100), Error);
}

TEST_CASE("linear extensions against brute force") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 60; ++t) {
    const auto Q = random_poset(1 + t % 7, 0.35, rng);
    CHECK(linear_extensions(Q) == brute_linear_extensions(Q));
    CHECK(jordan_holder(Q, some_natural_labeling(Q)).size() == static_cast<std::size_t>(brute_linear_extensions(Q)));
  }
}

TEST_CASE("order polynomials") {
  const auto A = Poset::antichain(2);
  CHECK(order_polynomial_count(A, some_natural_labeling(A), 2) == 4);
  std::mt19937_64 rng(23);
  for (int t = 0; t < 40; ++t) {
    const int n = 1 + t % 5;
    const auto Q = random_poset(n, 0.4, rng);
    const auto w = shuffled(n, rng);
    const auto nat = some_natural_labeling(Q);
    CHECK(is_natural(Q, nat));
    const auto poly = order_polynomial(Q, w);
    for (int m = 0; m <= 4; ++m) {
      CHECK(order_polynomial_count(Q, w, m) == brute_order_count(Q, w, m));
      CHECK(poly(static_cast<long>(m)) == Rational(brute_order_count(Q, w, m)));
    }
    // reciprocity with the dual labeling
    const auto dual = order_polynomial(Q, w.dual());
    for (long m = 1; m <= 4; ++m) CHECK(dual(m) == (n % 2 ? -1 : 1) * poly(-m));
    CHECK(eulerian_series_identity(Q, w));
  }
}

TEST_CASE("graded and palindromic") {
  const auto V = Poset::from_relations(3, {{0, 1}, {0, 2}});
  const auto gv = graded_palindrome_check(V);
  CHECK(gv.graded);
  CHECK(gv.palindromic);
  const auto mixed = Poset::from_relations(4, {{0, 1}, {1, 2}, {3, 2}});
  const auto gm = graded_palindrome_check(mixed);
  CHECK_FALSE(gm.graded);
  CHECK_FALSE(gm.palindromic);
  CHECK(is_palindromic({0, 1, 2, 1}));
  CHECK_FALSE(is_palindromic({1, 2}));
  CHECK(is_unimodal({1, 3, 3, 1}));
  CHECK_FALSE(is_unimodal({1, 0, 1}));
}

TEST_CASE("order polytopes") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 12; ++t) {
    const int n = 1 + t % 4;
    const auto Q = random_poset(n, 0.4, rng);
    const auto O = order_polytope(Q);
    CHECK(O.dim() == n);
    const auto e = ehrhart(O);
    const auto nat = some_natural_labeling(Q);
    for (long m = 0; m <= 3; ++m) CHECK(e(m) == Rational(brute_order_count(Q, nat, static_cast<int>(m) + 1)));
  }
}
