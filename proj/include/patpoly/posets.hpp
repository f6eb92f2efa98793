#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <json.hpp>

#include "patpoly/perms.hpp"
#include "patpoly/polytope.hpp"
#include "patpoly/unipoly.hpp"

namespace patpoly {

/// Finite poset on elements 0..size()-1 with the full order relation cached.
class Poset {
 public:
  Poset() = default;
  /// leq[i][j] means i <= j. Throws InvalidArgument unless it is a partial order.
  static Poset from_relation(std::vector<boost::dynamic_bitset<>> leq,
                             std::vector<std::string> names = {});
  /// Transitive closure of the given relations; throws InvalidArgument on cycles.
  static Poset from_relations(int n, const std::vector<std::pair<int, int>>& less,
                              std::vector<std::string> names = {});
  static Poset chain(int n);
  static Poset antichain(int n);
  static Poset from_json(const nlohmann::json& j);

  int size() const { return static_cast<int>(leq_.size()); }
  bool leq(int a, int b) const { return leq_[a][b]; }
  bool less(int a, int b) const { return a != b && leq_[a][b]; }
  bool comparable(int a, int b) const { return leq_[a][b] || leq_[b][a]; }
  const std::string& name(int i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }

  /// Cover pairs (a, b), a covered by b, sorted.
  const std::vector<std::pair<int, int>>& covers() const { return covers_; }
  const std::vector<int>& upper_covers(int a) const { return up_[a]; }
  const std::vector<int>& lower_covers(int a) const { return down_[a]; }
  bool is_cover(int a, int b) const;

  std::vector<int> minimal_elements() const;
  std::vector<int> maximal_elements() const;
  std::optional<int> bottom() const;
  std::optional<int> top() const;

  /// Number of edges in a longest chain.
  int longest_chain() const;
  /// Every maximal chain has the same length.
  bool is_graded() const;
  /// Rank from the minimal elements; only meaningful when graded.
  std::vector<int> ranks() const;

  std::optional<int> meet(int a, int b) const;
  std::optional<int> join(int a, int b) const;
  bool is_lattice() const;

  Poset induced(const std::vector<int>& subset) const;
  Poset dual() const;

  nlohmann::json to_json() const;
  std::string to_dot(const std::string& graph_name = "poset") const;

 private:
  void finish();

  std::vector<boost::dynamic_bitset<>> leq_;
  std::vector<std::string> names_;
  std::vector<std::pair<int, int>> covers_;
  std::vector<std::vector<int>> up_, down_;
};

/// A poset whose elements are permutations, indexed in lexicographic order.
struct PermPoset {
  std::vector<Permutation> perms;
  Poset poset;
  int index_of(const Permutation& sigma) const;  // -1 when absent
};

/// Restriction of the right (or left) weak order to Av_n(patterns), or to the
/// up-down subclass. The relation comes from inversion-set containment. Throws EmptyClass.
PermPoset weak_order_poset(int n, const PatternSet& patterns, Side side, bool alternating = false);
/// Q_n(132,312): right weak order on Av_n(132,312).
PermPoset q_poset(int n);
/// Q~_n(123): left weak order on up-down permutations avoiding 123.
PermPoset q_alt_poset(int n);

/// Checks the lattice axioms and distributivity on all triples.
bool is_distributive_lattice(const Poset& L);
/// Elements covering exactly one element, as indices into L. Throws NotLattice.
std::vector<int> join_irreducible_elements(const Poset& L);
Poset join_irreducibles(const Poset& L);
/// Lattice of order ideals of P ordered by inclusion; element names list the ideal.
Poset ideal_lattice(const Poset& P, std::vector<boost::dynamic_bitset<>>* ideals = nullptr);
/// Checks that y -> {j in Irr(L) : j <= y} is an isomorphism L -> J(Irr(L)).
bool birkhoff_representation_holds(const Poset& L);

/// Checks that `map` (indices of A into B) is a bijection with a <= a' iff map(a) <= map(a').
bool is_order_isomorphism(const Poset& A, const Poset& B, const std::vector<int>& map);

/// Strict partitions with parts <= n ordered by shifted-diagram inclusion.
struct DiagramPoset {
  std::vector<std::vector<int>> shapes;  // row lengths, top row first
  Poset poset;
  int index_of(const std::vector<int>& shape) const;
};
DiagramPoset shifted_diagram_lattice(int n);  // M(n)
/// Young diagrams inside the staircase (k-1, ..., 1), ordered by inclusion.
DiagramPoset staircase_diagram_lattice(int k);  // D_k^*

/// Des(sigma) written in decreasing order, read as a shifted shape.
std::vector<int> descent_shape(const Permutation& sigma);
/// Lift of an up-down 123-avoider of odd length 2k-1 to length 2k (1 inserted at position 2k-1).
Permutation alternating_lift(const Permutation& sigma);
/// N steps at the values in odd positions, E steps at those in even positions.
/// Returns the step word ('N'/'E'); odd n is lifted first.
std::string dyck_word(const Permutation& sigma);
/// Row lengths of the region left of the path and below y = k.
std::vector<int> dyck_shape(const Permutation& sigma);

/// Q_n(132,312) ~= M(n-1) through descent_shape.
bool iso_check_M(const PermPoset& L, int n);
/// Q~_n(123) ~= D_k^* through dyck_shape.
bool iso_check_dyck(const PermPoset& L, int k);

enum class LabelingKind { shifted, staircase };
/// Reading order of cells (b, c) row by row: the shifted formula for M(n-1), and the
/// staircase formula for n even (odd n uses n+1).
int natural_label(LabelingKind kind, int n, int b, int c);

/// Inner corner (b, c) of a shape with a single inner corner.
std::pair<int, int> inner_corner(LabelingKind kind, const std::vector<int>& shape);

/// Labels on elements of a poset; label[i] in 1..size.
struct NaturalLabeling {
  std::vector<int> label;
  NaturalLabeling dual() const;
};
bool is_natural(const Poset& P, const NaturalLabeling& w);
/// Lexicographically first linear extension read as a labeling.
NaturalLabeling some_natural_labeling(const Poset& P);

/// Join-irreducibles of Q_n(132,312) or Q~_n(123) with their cells and labels.
struct IrreducibleData {
  std::vector<int> elements;                // indices into the lattice
  std::vector<std::pair<int, int>> cells;   // inner corners
  Poset poset;                              // Irr(L), same order as elements
  NaturalLabeling omega;                    // on poset
};
IrreducibleData labeled_irreducibles(const PermPoset& L, LabelingKind kind, int n);

struct EdgeLabeling {
  std::map<std::pair<int, int>, int> label;
  int operator()(int a, int b) const { return label.at({a, b}); }
};
/// Labels I < J by omega of the unique irreducible below J and not below I. Throws NotDistributive.
EdgeLabeling el_labeling(const Poset& L, const std::vector<int>& irreducibles,
                         const NaturalLabeling& omega);
/// Every interval has exactly one increasing maximal chain and it is lexicographically first.
bool verify_el_labeling(const Poset& L, const EdgeLabeling& lambda,
                        std::string* failure = nullptr);

/// Maximal chains from bottom to top in depth-first order (upper covers by index).
std::vector<std::vector<int>> maximal_chains(const Poset& L, bool reversed = false);
Integer count_maximal_chains(const Poset& L);
std::vector<int> chain_labels(const EdgeLabeling& lambda, const std::vector<int>& chain);
int descents_of(const std::vector<int>& word);
/// h_i = #{maximal chains with i descents}, padded with zeros to `length`.
std::vector<Integer> h_from_descents(const Poset& L, const EdgeLabeling& lambda, int length = 0);

/// Label words of all linear extensions, sorted. Throws BudgetExceeded past `cap`.
std::vector<std::vector<int>> jordan_holder(const Poset& Q, const NaturalLabeling& w,
                                            std::uint64_t cap = 10'000'000);
/// Dynamic programming over order ideals (size <= 62).
Integer linear_extensions(const Poset& Q);

/// Maps f: Q -> [m], weakly order preserving, strict on s < t with w(s) > w(t).
Integer order_polynomial_count(const Poset& Q, const NaturalLabeling& w, int m,
                               std::uint64_t budget = 100'000'000);
/// Interpolated from m = 0..|Q|.
UniPoly order_polynomial(const Poset& Q, const NaturalLabeling& w);
/// sum over L(Q, w) of t^{1 + des}.
UniPoly eulerian_poly(const Poset& Q, const NaturalLabeling& w);
/// sum_m Omega(m) t^m (1-t)^{n+1} == A(t) through degree 2n.
bool eulerian_series_identity(const Poset& Q, const NaturalLabeling& w);

/// Coefficients from the lowest nonzero to the highest read the same both ways.
bool is_palindromic(const std::vector<Integer>& coeffs);
bool is_unimodal(const std::vector<Integer>& coeffs);

struct GradedPalindrome {
  bool graded = false;
  bool palindromic = false;
};
GradedPalindrome graded_palindrome_check(const Poset& Q);

/// Random poset on n elements: i < j added with probability p for i < j, then closed.
Poset random_poset(int n, double p, std::mt19937_64& rng);

/// conv of indicator vectors of order ideals.
VPolytope order_polytope(const Poset& P);

}  // namespace patpoly
