#include "patpoly/posets.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "patpoly/constructions.hpp"
#include "patpoly/error.hpp"

namespace patpoly {

using Bits = boost::dynamic_bitset<>;

// ---------------------------------------------------------------- Poset

Poset Poset::from_relation(std::vector<Bits> leq, std::vector<std::string> names) {
  const int n = static_cast<int>(leq.size());
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(leq[i].size()) != n) fail(ErrorCode::invalid_argument, "relation is not square");
    if (!leq[i][i]) fail(ErrorCode::invalid_argument, "relation is not reflexive");
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i != j && leq[i][j] && leq[j][i]) fail(ErrorCode::invalid_argument, "relation is not antisymmetric");
      // i <= j implies up(j) inside up(i)
      if (leq[i][j] && !leq[j].is_subset_of(leq[i]))
        fail(ErrorCode::invalid_argument, "relation is not transitive");
    }
  Poset P;
  P.leq_ = std::move(leq);
  P.names_ = std::move(names);
  P.finish();
  return P;
}

Poset Poset::from_relations(int n, const std::vector<std::pair<int, int>>& less,
                            std::vector<std::string> names) {
  std::vector<Bits> up(n, Bits(n));
  for (int i = 0; i < n; ++i) up[i][i] = true;
  for (auto [a, b] : less) up[a][b] = true;
  // Warshall
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (up[i][k]) up[i] |= up[k];
  return from_relation(std::move(up), std::move(names));
}

Poset Poset::chain(int n) {
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i + 1 < n; ++i) rel.emplace_back(i, i + 1);
  return from_relations(n, rel);
}

Poset Poset::antichain(int n) { return from_relations(n, {}); }

void Poset::finish() {
  const int n = size();
  if (names_.empty())
    for (int i = 0; i < n; ++i) names_.push_back(std::to_string(i));
  if (static_cast<int>(names_.size()) != n) fail(ErrorCode::invalid_argument, "names do not match size");
  covers_.clear();
  up_.assign(n, {});
  down_.assign(n, {});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!less(a, b)) continue;
      bool cover = true;
      for (int c = 0; c < n && cover; ++c)
        if (less(a, c) && less(c, b)) cover = false;
      if (cover) {
        covers_.emplace_back(a, b);
        up_[a].push_back(b);
        down_[b].push_back(a);
      }
    }
}

bool Poset::is_cover(int a, int b) const {
  return std::binary_search(covers_.begin(), covers_.end(), std::make_pair(a, b));
}

std::vector<int> Poset::minimal_elements() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (down_[i].empty()) out.push_back(i);
  return out;
}

std::vector<int> Poset::maximal_elements() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (up_[i].empty()) out.push_back(i);
  return out;
}

std::optional<int> Poset::bottom() const {
  auto m = minimal_elements();
  if (m.size() == 1) return m[0];
  return std::nullopt;
}

std::optional<int> Poset::top() const {
  auto m = maximal_elements();
  if (m.size() == 1) return m[0];
  return std::nullopt;
}

namespace {

// Elements sorted so that every element comes after everything below it.
std::vector<int> topological_order(const Poset& P) {
  std::vector<int> order(P.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> below(P.size(), 0);
  for (int i = 0; i < P.size(); ++i)
    for (int j = 0; j < P.size(); ++j)
      if (P.less(j, i)) ++below[i];
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return below[a] < below[b]; });
  return order;
}

// Shortest and longest saturated chains from a minimal element up to each element.
void chain_lengths(const Poset& P, std::vector<int>& lo, std::vector<int>& hi) {
  lo.assign(P.size(), 0);
  hi.assign(P.size(), 0);
  for (int v : topological_order(P)) {
    if (P.lower_covers(v).empty()) continue;
    lo[v] = 1 << 29;
    for (int u : P.lower_covers(v)) {
      lo[v] = std::min(lo[v], lo[u] + 1);
      hi[v] = std::max(hi[v], hi[u] + 1);
    }
  }
}

}  // namespace

int Poset::longest_chain() const {
  std::vector<int> lo, hi;
  chain_lengths(*this, lo, hi);
  return size() == 0 ? 0 : *std::max_element(hi.begin(), hi.end());
}

bool Poset::is_graded() const {
  std::vector<int> lo, hi;
  chain_lengths(*this, lo, hi);
  for (int v = 0; v < size(); ++v)
    if (lo[v] != hi[v]) return false;
  auto tops = maximal_elements();
  for (int t : tops)
    if (hi[t] != hi[tops[0]]) return false;
  return true;
}

std::vector<int> Poset::ranks() const {
  std::vector<int> lo, hi;
  chain_lengths(*this, lo, hi);
  return hi;
}

std::optional<int> Poset::meet(int a, int b) const {
  Bits common(size());
  for (int i = 0; i < size(); ++i) common[i] = leq_[i][a] && leq_[i][b];
  for (int m = 0; m < size(); ++m) {
    if (!common[m]) continue;
    bool greatest = true;
    for (int i = 0; i < size() && greatest; ++i)
      if (common[i] && !leq_[i][m]) greatest = false;
    if (greatest) return m;
  }
  return std::nullopt;
}

std::optional<int> Poset::join(int a, int b) const {
  const Bits common = leq_[a] & leq_[b];
  for (auto j = common.find_first(); j != Bits::npos; j = common.find_next(j))
    if (common.is_subset_of(leq_[j])) return static_cast<int>(j);
  return std::nullopt;
}

bool Poset::is_lattice() const {
  if (size() == 0) return false;
  for (int a = 0; a < size(); ++a)
    for (int b = a + 1; b < size(); ++b)
      if (!meet(a, b) || !join(a, b)) return false;
  return true;
}

Poset Poset::induced(const std::vector<int>& subset) const {
  const int k = static_cast<int>(subset.size());
  std::vector<Bits> rel(k, Bits(k));
  std::vector<std::string> names;
  for (int i = 0; i < k; ++i) {
    names.push_back(names_[subset[i]]);
    for (int j = 0; j < k; ++j) rel[i][j] = leq_[subset[i]][subset[j]];
  }
  return from_relation(std::move(rel), std::move(names));
}

Poset Poset::dual() const {
  std::vector<Bits> rel(size(), Bits(size()));
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j) rel[i][j] = leq_[j][i];
  return from_relation(std::move(rel), names_);
}

nlohmann::json Poset::to_json() const {
  nlohmann::json covers = nlohmann::json::array();
  for (auto [a, b] : covers_) covers.push_back({a, b});
  return {{"elements", names_}, {"covers", covers}};
}

Poset Poset::from_json(const nlohmann::json& j) {
  auto names = j.at("elements").get<std::vector<std::string>>();
  std::vector<std::pair<int, int>> rel;
  for (const auto& c : j.at("covers")) rel.emplace_back(c.at(0).get<int>(), c.at(1).get<int>());
  const int n = static_cast<int>(names.size());
  for (auto [a, b] : rel)
    if (a < 0 || b < 0 || a >= n || b >= n) fail(ErrorCode::parse_error, "cover index out of range");
  return from_relations(n, rel, std::move(names));
}

std::string Poset::to_dot(const std::string& graph_name) const {
  std::ostringstream os;
  os << "digraph " << graph_name << " {\n  rankdir=BT;\n  node [shape=plaintext];\n";
  for (int i = 0; i < size(); ++i) os << "  n" << i << " [label=\"" << names_[i] << "\"];\n";
  for (auto [a, b] : covers_) os << "  n" << a << " -> n" << b << " [arrowhead=none];\n";
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------- weak order

int PermPoset::index_of(const Permutation& sigma) const {
  auto it = std::lower_bound(perms.begin(), perms.end(), sigma);
  return it != perms.end() && *it == sigma ? static_cast<int>(it - perms.begin()) : -1;
}

PermPoset weak_order_poset(int n, const PatternSet& patterns, Side side, bool alternating) {
  PermPoset out;
  out.perms = alternating ? alternating_avoidance_class(n, patterns) : avoidance_class(n, patterns);
  if (out.perms.empty()) fail(ErrorCode::empty_class, "no permutations of length " + std::to_string(n));
  const int k = static_cast<int>(out.perms.size());
  // inversion sets as bitsets over pairs
  std::vector<Bits> inv(k, Bits(static_cast<std::size_t>(n) * n));
  for (int i = 0; i < k; ++i) {
    auto pairs = side == Side::right ? value_inversions(out.perms[i]) : inversions(out.perms[i]);
    for (auto [a, b] : pairs) inv[i][(a - 1) * n + (b - 1)] = true;
  }
  std::vector<Bits> rel(k, Bits(k));
  std::vector<std::string> names;
  for (int i = 0; i < k; ++i) {
    names.push_back(out.perms[i].to_string());
    for (int j = 0; j < k; ++j) rel[i][j] = inv[i].is_subset_of(inv[j]);
  }
  out.poset = Poset::from_relation(std::move(rel), std::move(names));
  return out;
}

PermPoset q_poset(int n) { return weak_order_poset(n, classical_patterns({"132", "312"}), Side::right); }

PermPoset q_alt_poset(int n) {
  return weak_order_poset(n, classical_patterns({"123"}), Side::left, true);
}

// ---------------------------------------------------------------- lattices

bool is_distributive_lattice(const Poset& L) {
  if (!L.is_lattice()) return false;
  const int n = L.size();
  std::vector<int> meet(n * n), join(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      meet[a * n + b] = *L.meet(a, b);
      join[a * n + b] = *L.join(a, b);
    }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (meet[x * n + join[y * n + z]] != join[meet[x * n + y] * n + meet[x * n + z]]) return false;
  return true;
}

std::vector<int> join_irreducible_elements(const Poset& L) {
  if (!L.is_lattice()) fail(ErrorCode::not_lattice, "join-irreducibles need a lattice");
  std::vector<int> out;
  for (int i = 0; i < L.size(); ++i)
    if (L.lower_covers(i).size() == 1) out.push_back(i);
  return out;
}

Poset join_irreducibles(const Poset& L) { return L.induced(join_irreducible_elements(L)); }

Poset ideal_lattice(const Poset& P, std::vector<Bits>* ideals_out) {
  const int n = P.size();
  std::set<Bits> seen;
  std::vector<Bits> stack{Bits(n)};
  seen.insert(stack.back());
  while (!stack.empty()) {
    Bits I = stack.back();
    stack.pop_back();
    for (int x = 0; x < n; ++x) {
      if (I[x]) continue;
      bool addable = true;
      for (int y : P.lower_covers(x))
        if (!I[y]) addable = false;
      if (!addable) continue;
      Bits J = I;
      J[x] = true;
      if (seen.insert(J).second) stack.push_back(J);
    }
  }
  std::vector<Bits> ideals(seen.begin(), seen.end());
  std::stable_sort(ideals.begin(), ideals.end(),
                   [](const Bits& a, const Bits& b) { return a.count() < b.count(); });
  const int k = static_cast<int>(ideals.size());
  std::vector<Bits> rel(k, Bits(k));
  std::vector<std::string> names;
  for (int i = 0; i < k; ++i) {
    std::string s = "{";
    for (int x = 0; x < n; ++x)
      if (ideals[i][x]) s += (s.size() > 1 ? "," : "") + P.name(x);
    names.push_back(s + "}");
    for (int j = 0; j < k; ++j) rel[i][j] = ideals[i].is_subset_of(ideals[j]);
  }
  if (ideals_out) *ideals_out = ideals;
  return Poset::from_relation(std::move(rel), std::move(names));
}

bool is_order_isomorphism(const Poset& A, const Poset& B, const std::vector<int>& map) {
  if (A.size() != B.size() || static_cast<int>(map.size()) != A.size()) return false;
  std::vector<char> hit(B.size(), 0);
  for (int m : map) {
    if (m < 0 || m >= B.size() || hit[m]) return false;
    hit[m] = 1;
  }
  for (int a = 0; a < A.size(); ++a)
    for (int b = 0; b < A.size(); ++b)
      if (A.leq(a, b) != B.leq(map[a], map[b])) return false;
  return true;
}

bool birkhoff_representation_holds(const Poset& L) {
  if (!L.is_lattice()) return false;
  const auto irr = join_irreducible_elements(L);
  const Poset P = L.induced(irr);
  std::vector<Bits> ideals;
  const Poset J = ideal_lattice(P, &ideals);
  std::vector<int> map(L.size(), -1);
  for (int y = 0; y < L.size(); ++y) {
    Bits I(irr.size());
    for (std::size_t k = 0; k < irr.size(); ++k) I[k] = L.leq(irr[k], y);
    auto it = std::find(ideals.begin(), ideals.end(), I);
    if (it == ideals.end()) return false;
    map[y] = static_cast<int>(it - ideals.begin());
  }
  return is_order_isomorphism(L, J, map);
}

// ---------------------------------------------------------------- diagrams

namespace {

std::string shape_name(const std::vector<int>& shape) {
  std::string s = "(";
  for (std::size_t i = 0; i < shape.size(); ++i) s += (i ? "," : "") + std::to_string(shape[i]);
  return s + ")";
}

bool shape_leq(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() > b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

DiagramPoset diagram_poset(std::vector<std::vector<int>> shapes) {
  std::sort(shapes.begin(), shapes.end());
  DiagramPoset out;
  const int k = static_cast<int>(shapes.size());
  std::vector<Bits> rel(k, Bits(k));
  std::vector<std::string> names;
  for (int i = 0; i < k; ++i) {
    names.push_back(shape_name(shapes[i]));
    for (int j = 0; j < k; ++j) rel[i][j] = shape_leq(shapes[i], shapes[j]);
  }
  out.shapes = std::move(shapes);
  out.poset = Poset::from_relation(std::move(rel), std::move(names));
  return out;
}

void staircase_shapes(int k, int row, int cap, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out) {
  out.push_back(cur);
  const int limit = std::min(cap, k - row);  // row is 1-based index of the next row
  for (int len = 1; len <= limit; ++len) {
    cur.push_back(len);
    staircase_shapes(k, row + 1, len, cur, out);
    cur.pop_back();
  }
}

}  // namespace

int DiagramPoset::index_of(const std::vector<int>& shape) const {
  auto it = std::lower_bound(shapes.begin(), shapes.end(), shape);
  return it != shapes.end() && *it == shape ? static_cast<int>(it - shapes.begin()) : -1;
}

DiagramPoset shifted_diagram_lattice(int n) {
  std::vector<std::vector<int>> shapes;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> parts;
    for (int p = n; p >= 1; --p)
      if (mask >> (p - 1) & 1u) parts.push_back(p);
    shapes.push_back(parts);
  }
  return diagram_poset(std::move(shapes));
}

DiagramPoset staircase_diagram_lattice(int k) {
  std::vector<std::vector<int>> shapes;
  std::vector<int> cur;
  staircase_shapes(k, 1, k, cur, shapes);
  return diagram_poset(std::move(shapes));
}

std::vector<int> descent_shape(const Permutation& sigma) {
  auto d = descents(sigma);
  std::reverse(d.begin(), d.end());
  return d;
}

Permutation alternating_lift(const Permutation& sigma) {
  const int n = sigma.size();
  if (n % 2 == 0) fail(ErrorCode::invalid_argument, "lift expects odd length");
  std::vector<int> w;
  for (int i = 0; i < n - 1; ++i) w.push_back(sigma[i] + 1);
  w.push_back(1);
  w.push_back(sigma[n - 1] + 1);
  return Permutation(std::move(w));
}

std::string dyck_word(const Permutation& sigma) {
  const Permutation s = sigma.size() % 2 ? alternating_lift(sigma) : sigma;
  std::string w(s.size(), 'E');
  for (int i = 0; i < s.size(); i += 2) w[s[i] - 1] = 'N';
  return w;
}

std::vector<int> dyck_shape(const Permutation& sigma) {
  const std::string w = dyck_word(sigma);
  const int k = static_cast<int>(w.size()) / 2;
  std::vector<int> east_before;  // for each N step in order
  int east = 0;
  for (char c : w) {
    if (c == 'N')
      east_before.push_back(east);
    else
      ++east;
  }
  std::vector<int> shape;
  for (int i = 1; i <= k; ++i) {
    const int len = east_before[k - i];
    if (len == 0) break;
    shape.push_back(len);
  }
  return shape;
}

bool iso_check_M(const PermPoset& L, int n) {
  const auto M = shifted_diagram_lattice(n - 1);
  std::vector<int> map;
  for (const auto& s : L.perms) map.push_back(M.index_of(descent_shape(s)));
  return is_order_isomorphism(L.poset, M.poset, map);
}

bool iso_check_dyck(const PermPoset& L, int k) {
  const auto D = staircase_diagram_lattice(k);
  std::vector<int> map;
  for (const auto& s : L.perms) {
    if (s.size() != 2 * k && s.size() != 2 * k - 1) return false;
    map.push_back(D.index_of(dyck_shape(s)));
  }
  return is_order_isomorphism(L.poset, D.poset, map);
}

// ---------------------------------------------------------------- labelings

int natural_label(LabelingKind kind, int n, int b, int c) {
  if (kind == LabelingKind::shifted) return (b - 1) * n + c + 1 - b * (b + 1) / 2;
  const int m = n % 2 ? n + 1 : n;
  return (b - 1) * (m - b) / 2 + c;
}

std::pair<int, int> inner_corner(LabelingKind kind, const std::vector<int>& shape) {
  std::set<std::pair<int, int>> cells;
  for (int r = 1; r <= static_cast<int>(shape.size()); ++r) {
    const int start = kind == LabelingKind::shifted ? r : 1;
    for (int c = start; c < start + shape[r - 1]; ++c) cells.insert({r, c});
  }
  std::vector<std::pair<int, int>> corners;
  for (auto [r, c] : cells)
    if (!cells.count({r + 1, c}) && !cells.count({r, c + 1})) corners.push_back({r, c});
  if (corners.size() != 1) fail(ErrorCode::invalid_argument, "shape " + shape_name(shape) + " has " +
                                                                 std::to_string(corners.size()) + " corners");
  return corners[0];
}

NaturalLabeling NaturalLabeling::dual() const {
  NaturalLabeling d;
  const int n = static_cast<int>(label.size());
  for (int x : label) d.label.push_back(n + 1 - x);
  return d;
}

bool is_natural(const Poset& P, const NaturalLabeling& w) {
  const int n = P.size();
  if (static_cast<int>(w.label.size()) != n) return false;
  std::vector<char> seen(n + 1, 0);
  for (int x : w.label) {
    if (x < 1 || x > n || seen[x]) return false;
    seen[x] = 1;
  }
  for (auto [a, b] : P.covers())
    if (w.label[a] > w.label[b]) return false;
  return true;
}

NaturalLabeling some_natural_labeling(const Poset& P) {
  NaturalLabeling w;
  w.label.assign(P.size(), 0);
  std::vector<int> waiting(P.size());
  for (int i = 0; i < P.size(); ++i) waiting[i] = static_cast<int>(P.lower_covers(i).size());
  std::set<int> ready;
  for (int i = 0; i < P.size(); ++i)
    if (!waiting[i]) ready.insert(i);
  int next = 1;
  while (!ready.empty()) {
    const int x = *ready.begin();
    ready.erase(ready.begin());
    w.label[x] = next++;
    for (int y : P.upper_covers(x))
      if (--waiting[y] == 0) ready.insert(y);
  }
  return w;
}

IrreducibleData labeled_irreducibles(const PermPoset& L, LabelingKind kind, int n) {
  IrreducibleData out;
  out.elements = join_irreducible_elements(L.poset);
  out.poset = L.poset.induced(out.elements);
  for (int e : out.elements) {
    const auto& s = L.perms[e];
    auto cell = inner_corner(kind, kind == LabelingKind::shifted ? descent_shape(s) : dyck_shape(s));
    out.cells.push_back(cell);
    out.omega.label.push_back(natural_label(kind, n, cell.first, cell.second));
  }
  if (!is_natural(out.poset, out.omega))
    fail(ErrorCode::verification_failure, "reading-order labels are not a natural labeling");
  return out;
}

EdgeLabeling el_labeling(const Poset& L, const std::vector<int>& irreducibles,
                         const NaturalLabeling& omega) {
  EdgeLabeling lambda;
  for (auto [I, J] : L.covers()) {
    int found = -1, count = 0;
    for (std::size_t k = 0; k < irreducibles.size(); ++k)
      if (L.leq(irreducibles[k], J) && !L.leq(irreducibles[k], I)) {
        found = static_cast<int>(k);
        ++count;
      }
    if (count != 1)
      fail(ErrorCode::not_distributive, "cover " + L.name(I) + " < " + L.name(J) + " adds " +
                                            std::to_string(count) + " irreducibles");
    lambda.label[{I, J}] = omega.label[found];
  }
  return lambda;
}

namespace {

void saturated_chains(const Poset& L, int from, int to, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out, bool reversed = false) {
  cur.push_back(from);
  if (from == to) {
    out.push_back(cur);
  } else {
    auto ups = L.upper_covers(from);
    if (reversed) std::reverse(ups.begin(), ups.end());
    for (int u : ups)
      if (L.leq(u, to)) saturated_chains(L, u, to, cur, out, reversed);
  }
  cur.pop_back();
}

}  // namespace

std::vector<int> chain_labels(const EdgeLabeling& lambda, const std::vector<int>& chain) {
  std::vector<int> w;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) w.push_back(lambda(chain[i], chain[i + 1]));
  return w;
}

int descents_of(const std::vector<int>& word) {
  int d = 0;
  for (std::size_t i = 0; i + 1 < word.size(); ++i)
    if (word[i] > word[i + 1]) ++d;
  return d;
}

bool verify_el_labeling(const Poset& L, const EdgeLabeling& lambda, std::string* failure) {
  for (int x = 0; x < L.size(); ++x)
    for (int y = 0; y < L.size(); ++y) {
      if (!L.less(x, y)) continue;
      std::vector<std::vector<int>> chains;
      std::vector<int> cur;
      saturated_chains(L, x, y, cur, chains);
      std::vector<std::vector<int>> words;
      for (const auto& c : chains) words.push_back(chain_labels(lambda, c));
      int increasing = 0;
      std::size_t inc_at = 0;
      for (std::size_t i = 0; i < words.size(); ++i)
        if (std::is_sorted(words[i].begin(), words[i].end()) &&
            std::adjacent_find(words[i].begin(), words[i].end()) == words[i].end()) {
          ++increasing;
          inc_at = i;
        }
      bool ok = increasing == 1;
      for (std::size_t i = 0; ok && i < words.size(); ++i)
        if (i != inc_at && !(words[inc_at] < words[i])) ok = false;
      if (!ok) {
        if (failure) *failure = "[" + L.name(x) + ", " + L.name(y) + "]";
        return false;
      }
    }
  return true;
}

std::vector<std::vector<int>> maximal_chains(const Poset& L, bool reversed) {
  std::vector<std::vector<int>> out;
  auto starts = L.minimal_elements();
  if (reversed) std::reverse(starts.begin(), starts.end());
  std::vector<int> cur;
  std::function<void(int)> walk = [&](int v) {
    cur.push_back(v);
    auto ups = L.upper_covers(v);
    if (ups.empty()) out.push_back(cur);
    if (reversed) std::reverse(ups.begin(), ups.end());
    for (int u : ups) walk(u);
    cur.pop_back();
  };
  for (int s : starts) walk(s);
  return out;
}

Integer count_maximal_chains(const Poset& L) {
  std::vector<Integer> ways(L.size(), 0);
  Integer total = 0;
  for (int v : topological_order(L)) {
    if (L.lower_covers(v).empty()) ways[v] = 1;
    for (int u : L.lower_covers(v)) ways[v] += ways[u];
    if (L.upper_covers(v).empty()) total += ways[v];
  }
  return total;
}

std::vector<Integer> h_from_descents(const Poset& L, const EdgeLabeling& lambda, int length) {
  std::vector<Integer> h(std::max(length, 1), 0);
  for (const auto& c : maximal_chains(L)) {
    const int d = descents_of(chain_labels(lambda, c));
    if (d >= static_cast<int>(h.size())) h.resize(d + 1, 0);
    h[d] += 1;
  }
  return h;
}

// ---------------------------------------------------------------- extensions

std::vector<std::vector<int>> jordan_holder(const Poset& Q, const NaturalLabeling& w, std::uint64_t cap) {
  const int n = Q.size();
  std::vector<int> by_label(n);
  for (int i = 0; i < n; ++i) by_label[w.label[i] - 1] = i;
  std::vector<std::vector<int>> out;
  std::vector<int> waiting(n), word;
  for (int i = 0; i < n; ++i) waiting[i] = static_cast<int>(Q.lower_covers(i).size());
  std::function<void()> rec = [&] {
    if (static_cast<int>(word.size()) == n) {
      if (out.size() >= cap) fail(ErrorCode::budget_exceeded, "more than " + std::to_string(cap) + " linear extensions");
      out.push_back(word);
      return;
    }
    for (int lab = 1; lab <= n; ++lab) {
      const int x = by_label[lab - 1];
      if (waiting[x] != 0) continue;
      waiting[x] = -1;
      for (int y : Q.upper_covers(x)) --waiting[y];
      word.push_back(lab);
      rec();
      word.pop_back();
      for (int y : Q.upper_covers(x)) ++waiting[y];
      waiting[x] = 0;
    }
  };
  rec();
  return out;
}

Integer linear_extensions(const Poset& Q) {
  const int n = Q.size();
  if (n > 62) fail(ErrorCode::invalid_argument, "linear extension count supports at most 62 elements");
  std::vector<std::uint64_t> below(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (Q.less(j, i)) below[i] |= std::uint64_t{1} << j;
  std::unordered_map<std::uint64_t, Integer> level{{0, 1}};
  for (int step = 0; step < n; ++step) {
    std::unordered_map<std::uint64_t, Integer> next;
    for (const auto& [ideal, ways] : level)
      for (int x = 0; x < n; ++x) {
        const auto bit = std::uint64_t{1} << x;
        if (!(ideal & bit) && (below[x] & ~ideal) == 0) next[ideal | bit] += ways;
      }
    level = std::move(next);
  }
  Integer total = 0;
  for (const auto& kv : level) total += kv.second;
  return total;
}

Integer order_polynomial_count(const Poset& Q, const NaturalLabeling& w, int m, std::uint64_t budget) {
  if (m <= 0) return Q.size() == 0 ? 1 : 0;
  const auto order = topological_order(Q);
  const int n = Q.size();
  std::vector<int> val(n, 0);
  std::uint64_t visits = 0;
  std::function<Integer(int)> rec = [&](int pos) -> Integer {
    if (++visits > budget) fail(ErrorCode::budget_exceeded, "order polynomial count");
    if (pos == n) return 1;
    const int x = order[pos];
    int lo = 1;
    for (int q = 0; q < pos; ++q) {
      const int s = order[q];
      if (Q.less(s, x)) lo = std::max(lo, val[s] + (w.label[s] > w.label[x] ? 1 : 0));
    }
    if (pos == n - 1) return Integer(std::max(0, m - lo + 1));
    Integer total = 0;
    for (int v = lo; v <= m; ++v) {
      val[x] = v;
      total += rec(pos + 1);
    }
    return total;
  };
  return rec(0);
}

UniPoly order_polynomial(const Poset& Q, const NaturalLabeling& w) {
  std::vector<Integer> vals;
  for (int m = 0; m <= Q.size(); ++m) vals.push_back(order_polynomial_count(Q, w, m));
  return UniPoly::interpolate_from_zero(vals);
}

UniPoly eulerian_poly(const Poset& Q, const NaturalLabeling& w) {
  QVector c(Q.size() + 2, 0);
  for (const auto& word : jordan_holder(Q, w)) c[1 + descents_of(word)] += 1;
  return UniPoly(c);
}

bool eulerian_series_identity(const Poset& Q, const NaturalLabeling& w) {
  const int n = Q.size();
  const int deg = 2 * n;
  std::vector<Integer> series;
  for (int m = 0; m <= deg; ++m) series.push_back(order_polynomial_count(Q, w, m));
  // multiply by (1-t)^{n+1}
  std::vector<Integer> prod(deg + 1, 0);
  for (int i = 0; i <= deg; ++i)
    for (int j = 0; j <= n + 1 && i + j <= deg; ++j) {
      Integer b = binomial(n + 1, j);
      if (j % 2) b = -b;
      prod[i + j] += series[i] * b;
    }
  const UniPoly A = eulerian_poly(Q, w);
  for (int i = 0; i <= deg; ++i)
    if (Rational(prod[i]) != A.coeff(i)) return false;
  return true;
}

bool is_palindromic(const std::vector<Integer>& coeffs) {
  std::size_t lo = 0, hi = coeffs.size();
  while (lo < hi && coeffs[lo] == 0) ++lo;
  while (hi > lo && coeffs[hi - 1] == 0) --hi;
  for (std::size_t i = lo, j = hi; i < j; ++i, --j)
    if (coeffs[i] != coeffs[j - 1]) return false;
  return true;
}

bool is_unimodal(const std::vector<Integer>& coeffs) {
  std::size_t i = 0;
  while (i + 1 < coeffs.size() && coeffs[i] <= coeffs[i + 1]) ++i;
  while (i + 1 < coeffs.size() && coeffs[i] >= coeffs[i + 1]) ++i;
  return i + 1 >= coeffs.size();
}

GradedPalindrome graded_palindrome_check(const Poset& Q) {
  GradedPalindrome r;
  r.graded = Q.is_graded();
  const UniPoly A = eulerian_poly(Q, some_natural_labeling(Q));
  std::vector<Integer> c;
  for (const auto& q : A.coeffs()) c.push_back(q.get_num());
  r.palindromic = is_palindromic(c);
  return r;
}

Poset random_poset(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) rel.emplace_back(i, j);
  return Poset::from_relations(n, rel);
}

VPolytope order_polytope(const Poset& P) {
  std::vector<Bits> ideals;
  ideal_lattice(P, &ideals);
  std::vector<IntPoint> pts;
  for (const auto& I : ideals) {
    IntPoint x(P.size());
    for (int i = 0; i < P.size(); ++i) x[i] = I[i];
    pts.push_back(x);
  }
  return VPolytope(std::move(pts));
}

}  // namespace patpoly
