#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace patpoly {

/// A permutation of {1..n} stored in one-line notation.
class Permutation {
 public:
  Permutation() = default;
  /// Throws ParseError unless the word is a bijection onto {1..n}.
  explicit Permutation(std::vector<int> word);

  static Permutation identity(int n);
  /// Digit string ("2641753") or comma separated ("10,1,2,...").
  static Permutation parse(std::string_view text);

  int size() const { return static_cast<int>(word_.size()); }
  /// 0-based position, value in 1..n.
  int operator[](std::size_t i) const { return word_[i]; }
  const std::vector<int>& word() const { return word_; }

  Permutation inverse() const;
  /// Digit string for n <= 9, comma separated otherwise.
  std::string to_string() const;

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<int> word_;
};

/// A classical pattern with optional adjacency requirements.
/// Gap g in 1..k-1 forces entries g and g+1 of an occurrence to sit in adjacent
/// positions. Gap 0 forces the occurrence to start at the first position.
struct Pattern {
  Permutation perm;
  std::vector<int> adjacent_gaps;

  static Pattern classical(Permutation p) { return Pattern{std::move(p), {}}; }
  int size() const { return perm.size(); }
  bool is_classical() const { return adjacent_gaps.empty(); }
  std::string to_string() const;
  auto operator<=>(const Pattern&) const = default;
};

using PatternSet = std::vector<Pattern>;

/// Parses "123,132" (empty string gives the empty set).
PatternSet parse_pattern_list(std::string_view text);
PatternSet classical_patterns(std::initializer_list<const char*> words);

nlohmann::json pattern_set_to_json(const PatternSet& patterns);
/// Accepts strings ("231") and objects {"pattern":"231","vincular":[2]}.
PatternSet pattern_set_from_json(const nlohmann::json& j);

/// Number of occurrences of a pattern in a sequence of distinct integers.
std::uint64_t count_occurrences(std::span<const int> seq, const Pattern& pattern);
bool contains(std::span<const int> seq, const Pattern& pattern);
bool contains(const Permutation& sigma, const Pattern& pattern);
bool avoids(const Permutation& sigma, const PatternSet& patterns);

/// Av_n(patterns) in lexicographic order.
std::vector<Permutation> avoidance_class(int n, const PatternSet& patterns);
/// Up-down permutations a1 < a2 > a3 < ... avoiding the given patterns.
std::vector<Permutation> alternating_avoidance_class(int n, const PatternSet& patterns);
/// The three adjacency patterns cutting out up-down permutations.
PatternSet alternating_patterns();
bool is_alternating(const Permutation& sigma);

/// Symmetries of the square acting on permutation diagrams.
enum class Symmetry {
  identity,
  rotate90,
  rotate180,
  rotate270,
  reverse,                     // reflection in a vertical axis
  complement,                  // reflection in a horizontal axis
  inverse,                     // reflection in the main diagonal
  reverse_complement_inverse,  // reflection in the anti-diagonal
};

inline constexpr Symmetry all_symmetries[] = {
    Symmetry::identity,  Symmetry::rotate90,   Symmetry::rotate180, Symmetry::rotate270,
    Symmetry::reverse,   Symmetry::complement, Symmetry::inverse,   Symmetry::reverse_complement_inverse};

const char* symmetry_name(Symmetry s);
Permutation apply(Symmetry s, const Permutation& sigma);
/// Classical patterns only.
PatternSet apply(Symmetry s, const PatternSet& patterns);

/// 0/+1/-1 sign matrix; row 0 is the top band of the diagram.
struct GridMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> entries;
  int at(int printed_row, int col) const { return entries[printed_row * cols + col]; }
};

/// Cut c means a line between values/positions c and c+1. Cuts are nondecreasing.
struct Gridding {
  std::vector<int> column_cuts;
  std::vector<int> row_cuts;
};

std::optional<Gridding> find_gridding(const Permutation& sigma, const GridMatrix& grid);
inline bool is_griddable(const Permutation& sigma, const GridMatrix& grid) {
  return find_gridding(sigma, grid).has_value();
}

/// Position pairs (i,j), i<j, a_i > a_j (1-based).
std::vector<std::pair<int, int>> inversions(const Permutation& sigma);
/// Value pairs (a_j, a_i) for each inversion (i,j).
std::vector<std::pair<int, int>> value_inversions(const Permutation& sigma);
/// Positions i with a_i > a_{i+1}, increasing.
std::vector<int> descents(const Permutation& sigma);

enum class Side { left, right };

/// Right covers swap adjacent positions, left covers swap values i and i+1.
std::vector<Permutation> weak_covers(const Permutation& sigma, Side side);
/// Inversion-set containment matching the side.
bool weak_leq(const Permutation& a, const Permutation& b, Side side);

}  // namespace patpoly
