#include "patpoly/perms.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "patpoly/error.hpp"

namespace patpoly {

Permutation::Permutation(std::vector<int> word) : word_(std::move(word)) {
  const int n = size();
  std::vector<bool> seen(n + 1, false);
  for (int v : word_) {
    if (v < 1 || v > n || seen[v]) fail(ErrorCode::parse_error, "not a permutation of 1..n");
    seen[v] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> w(n);
  std::iota(w.begin(), w.end(), 1);
  return Permutation(std::move(w));
}

Permutation Permutation::parse(std::string_view text) {
  std::vector<int> w;
  if (text.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find(',', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view tok = text.substr(start, end - start);
      if (tok.empty()) fail(ErrorCode::parse_error, "empty entry in '" + std::string(text) + "'");
      int v = 0;
      for (char ch : tok) {
        if (ch < '0' || ch > '9') fail(ErrorCode::parse_error, "bad permutation '" + std::string(text) + "'");
        v = v * 10 + (ch - '0');
      }
      w.push_back(v);
      start = end + 1;
    }
  } else {
    for (char ch : text) {
      if (ch < '1' || ch > '9') fail(ErrorCode::parse_error, "bad permutation '" + std::string(text) + "'");
      w.push_back(ch - '0');
    }
  }
  return Permutation(std::move(w));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(word_.size());
  for (int i = 0; i < size(); ++i) inv[word_[i] - 1] = i + 1;
  return Permutation(std::move(inv));
}

std::string Permutation::to_string() const {
  std::string out;
  const bool short_form = size() <= 9;
  for (int i = 0; i < size(); ++i) {
    if (!short_form && i > 0) out += ',';
    out += std::to_string(word_[i]);
  }
  return out;
}

std::string Pattern::to_string() const {
  std::string out = perm.to_string();
  if (!adjacent_gaps.empty()) {
    out += '[';
    for (std::size_t i = 0; i < adjacent_gaps.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(adjacent_gaps[i]);
    }
    out += ']';
  }
  return out;
}

namespace {

Pattern parse_single_pattern(std::string_view tok) {
  Pattern p;
  auto bracket = tok.find('[');
  if (bracket == std::string_view::npos) {
    p.perm = Permutation::parse(tok);
    return p;
  }
  if (tok.back() != ']') fail(ErrorCode::parse_error, "bad pattern '" + std::string(tok) + "'");
  p.perm = Permutation::parse(tok.substr(0, bracket));
  std::string_view gaps = tok.substr(bracket + 1, tok.size() - bracket - 2);
  int v = -1;
  for (std::size_t i = 0; i <= gaps.size(); ++i) {
    if (i == gaps.size() || gaps[i] == ',') {
      if (v < 0 || v >= p.size()) fail(ErrorCode::parse_error, "bad gap in '" + std::string(tok) + "'");
      p.adjacent_gaps.push_back(v);
      v = -1;
    } else if (gaps[i] >= '0' && gaps[i] <= '9') {
      v = (v < 0 ? 0 : v * 10) + (gaps[i] - '0');
    } else {
      fail(ErrorCode::parse_error, "bad gap in '" + std::string(tok) + "'");
    }
  }
  std::sort(p.adjacent_gaps.begin(), p.adjacent_gaps.end());
  p.adjacent_gaps.erase(std::unique(p.adjacent_gaps.begin(), p.adjacent_gaps.end()), p.adjacent_gaps.end());
  return p;
}

}  // namespace

PatternSet parse_pattern_list(std::string_view text) {
  PatternSet out;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] == '[') ++depth;
    if (i < text.size() && text[i] == ']') --depth;
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      std::string_view tok = text.substr(start, i - start);
      while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
      while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
      if (!tok.empty()) out.push_back(parse_single_pattern(tok));
      start = i + 1;
    }
  }
  return out;
}

PatternSet classical_patterns(std::initializer_list<const char*> words) {
  PatternSet out;
  for (const char* w : words) out.push_back(Pattern::classical(Permutation::parse(w)));
  return out;
}

nlohmann::json pattern_set_to_json(const PatternSet& patterns) {
  auto arr = nlohmann::json::array();
  for (const auto& p : patterns) {
    if (p.is_classical()) {
      arr.push_back(p.perm.to_string());
    } else {
      arr.push_back({{"pattern", p.perm.to_string()}, {"vincular", p.adjacent_gaps}});
    }
  }
  return arr;
}

PatternSet pattern_set_from_json(const nlohmann::json& j) {
  if (!j.is_array()) fail(ErrorCode::parse_error, "pattern set must be a JSON array");
  PatternSet out;
  for (const auto& item : j) {
    if (item.is_string()) {
      out.push_back(Pattern::classical(Permutation::parse(item.get<std::string>())));
    } else if (item.is_object() && item.contains("pattern")) {
      Pattern p;
      p.perm = Permutation::parse(item.at("pattern").get<std::string>());
      if (item.contains("vincular")) p.adjacent_gaps = item.at("vincular").get<std::vector<int>>();
      for (int g : p.adjacent_gaps)
        if (g < 0 || g >= p.size()) fail(ErrorCode::parse_error, "gap index out of range");
      std::sort(p.adjacent_gaps.begin(), p.adjacent_gaps.end());
      out.push_back(std::move(p));
    } else {
      fail(ErrorCode::parse_error, "bad pattern entry " + item.dump());
    }
  }
  return out;
}

namespace {

// Enumerates occurrences by choosing positions left to right and rejecting any
// partial choice whose relative order already disagrees with the pattern.
// When `end_at_last` is set only occurrences using the final entry count.
// Returns the count, stopping early once `limit` is reached.
std::uint64_t search_occurrences(std::span<const int> seq, const Pattern& pat, bool end_at_last,
                                 std::uint64_t limit) {
  const int k = pat.size();
  const int len = static_cast<int>(seq.size());
  if (k == 0) return 1;
  if (k > len) return 0;
  std::vector<bool> tight(k, false);
  for (int g : pat.adjacent_gaps) tight[g] = true;
  const auto& pw = pat.perm.word();
  std::vector<int> pos(k);
  std::uint64_t count = 0;

  std::function<void(int, int)> rec = [&](int j, int from) {
    if (count >= limit) return;
    if (j == k) {
      if (!end_at_last || pos[k - 1] == len - 1) ++count;
      return;
    }
    int lo = from;
    int hi = len - (k - j);  // leave room for the remaining entries
    if (j == 0 && tight[0]) hi = std::min(hi, 0);
    if (j > 0 && tight[j]) hi = std::min(hi, from);
    if (end_at_last && j == k - 1) lo = std::max(lo, len - 1);
    for (int p = lo; p <= hi; ++p) {
      bool ok = true;
      for (int l = 0; l < j && ok; ++l) ok = (seq[pos[l]] < seq[p]) == (pw[l] < pw[j]);
      if (!ok) continue;
      pos[j] = p;
      rec(j + 1, p + 1);
      if (count >= limit) return;
    }
  };
  rec(0, 0);
  return count;
}

}  // namespace

std::uint64_t count_occurrences(std::span<const int> seq, const Pattern& pattern) {
  return search_occurrences(seq, pattern, false, UINT64_MAX);
}

bool contains(std::span<const int> seq, const Pattern& pattern) {
  return search_occurrences(seq, pattern, false, 1) > 0;
}

bool contains(const Permutation& sigma, const Pattern& pattern) {
  return contains(std::span<const int>(sigma.word()), pattern);
}

bool avoids(const Permutation& sigma, const PatternSet& patterns) {
  for (const auto& p : patterns)
    if (contains(sigma, p)) return false;
  return true;
}

std::vector<Permutation> avoidance_class(int n, const PatternSet& patterns) {
  std::vector<Permutation> out;
  if (n < 0) return out;
  std::vector<int> prefix;
  std::vector<bool> used(n + 1, false);
  std::function<void()> rec = [&]() {
    if (static_cast<int>(prefix.size()) == n) {
      out.emplace_back(prefix);
      return;
    }
    for (int v = 1; v <= n; ++v) {
      if (used[v]) continue;
      prefix.push_back(v);
      bool ok = true;
      for (const auto& p : patterns) {
        if (search_occurrences(prefix, p, true, 1) > 0) {
          ok = false;
          break;
        }
      }
      if (ok) {
        used[v] = true;
        rec();
        used[v] = false;
      }
      prefix.pop_back();
    }
  };
  rec();
  return out;
}

PatternSet alternating_patterns() {
  PatternSet out;
  out.push_back(Pattern{Permutation::parse("21"), {0, 1}});
  out.push_back(Pattern{Permutation::parse("123"), {1, 2}});
  out.push_back(Pattern{Permutation::parse("321"), {1, 2}});
  return out;
}

std::vector<Permutation> alternating_avoidance_class(int n, const PatternSet& patterns) {
  PatternSet all = alternating_patterns();
  all.insert(all.end(), patterns.begin(), patterns.end());
  return avoidance_class(n, all);
}

bool is_alternating(const Permutation& sigma) {
  for (int i = 0; i + 1 < sigma.size(); ++i) {
    const bool up = sigma[i] < sigma[i + 1];
    if (up != (i % 2 == 0)) return false;
  }
  return true;
}

const char* symmetry_name(Symmetry s) {
  switch (s) {
    case Symmetry::identity: return "identity";
    case Symmetry::rotate90: return "rotate90";
    case Symmetry::rotate180: return "rotate180";
    case Symmetry::rotate270: return "rotate270";
    case Symmetry::reverse: return "reverse";
    case Symmetry::complement: return "complement";
    case Symmetry::inverse: return "inverse";
    case Symmetry::reverse_complement_inverse: return "reverse_complement_inverse";
  }
  return "?";
}

Permutation apply(Symmetry s, const Permutation& sigma) {
  const int n = sigma.size();
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) {
    const int x = i + 1;
    const int y = sigma[i];
    int nx = x, ny = y;
    switch (s) {
      case Symmetry::identity: break;
      case Symmetry::rotate90: nx = n + 1 - y; ny = x; break;
      case Symmetry::rotate180: nx = n + 1 - x; ny = n + 1 - y; break;
      case Symmetry::rotate270: nx = y; ny = n + 1 - x; break;
      case Symmetry::reverse: nx = n + 1 - x; break;
      case Symmetry::complement: ny = n + 1 - y; break;
      case Symmetry::inverse: nx = y; ny = x; break;
      case Symmetry::reverse_complement_inverse: nx = n + 1 - y; ny = n + 1 - x; break;
    }
    out[nx - 1] = ny;
  }
  return Permutation(std::move(out));
}

PatternSet apply(Symmetry s, const PatternSet& patterns) {
  PatternSet out;
  for (const auto& p : patterns) {
    if (!p.is_classical()) fail(ErrorCode::invalid_argument, "symmetries act on classical patterns only");
    out.push_back(Pattern::classical(apply(s, p.perm)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool next_cuts(std::vector<int>& cuts, int n) {
  // Advance a nondecreasing tuple in [0,n] lexicographically.
  for (int i = static_cast<int>(cuts.size()) - 1; i >= 0; --i) {
    if (cuts[i] < n) {
      ++cuts[i];
      for (std::size_t j = i + 1; j < cuts.size(); ++j) cuts[j] = cuts[i];
      return true;
    }
  }
  return false;
}

int band_of(const std::vector<int>& cuts, int coord) {
  int b = 0;
  while (b < static_cast<int>(cuts.size()) && coord > cuts[b]) ++b;
  return b;
}

}  // namespace

std::optional<Gridding> find_gridding(const Permutation& sigma, const GridMatrix& grid) {
  const int n = sigma.size();
  if (grid.rows <= 0 || grid.cols <= 0 || static_cast<int>(grid.entries.size()) != grid.rows * grid.cols)
    fail(ErrorCode::invalid_argument, "malformed grid matrix");
  std::vector<int> col_cuts(grid.cols - 1, 0);
  do {
    std::vector<int> row_cuts(grid.rows - 1, 0);
    do {
      // Last point seen in each cell, to test monotonicity along x.
      std::vector<int> last(grid.rows * grid.cols, 0);
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) {
        const int x = i + 1;
        const int y = sigma[i];
        const int c = band_of(col_cuts, x);
        const int r = band_of(row_cuts, y);
        const int printed_row = grid.rows - 1 - r;
        const int entry = grid.at(printed_row, c);
        int& prev = last[printed_row * grid.cols + c];
        if (entry == 0) {
          ok = false;
        } else if (prev != 0 && ((entry > 0) != (y > prev))) {
          ok = false;
        }
        prev = y;
      }
      if (ok) return Gridding{col_cuts, row_cuts};
    } while (next_cuts(row_cuts, n));
  } while (next_cuts(col_cuts, n));
  return std::nullopt;
}

std::vector<std::pair<int, int>> inversions(const Permutation& sigma) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < sigma.size(); ++i)
    for (int j = i + 1; j < sigma.size(); ++j)
      if (sigma[i] > sigma[j]) out.emplace_back(i + 1, j + 1);
  return out;
}

std::vector<std::pair<int, int>> value_inversions(const Permutation& sigma) {
  std::vector<std::pair<int, int>> out;
  for (auto [i, j] : inversions(sigma)) out.emplace_back(sigma[j - 1], sigma[i - 1]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> descents(const Permutation& sigma) {
  std::vector<int> out;
  for (int i = 0; i + 1 < sigma.size(); ++i)
    if (sigma[i] > sigma[i + 1]) out.push_back(i + 1);
  return out;
}

std::vector<Permutation> weak_covers(const Permutation& sigma, Side side) {
  std::vector<Permutation> out;
  const int n = sigma.size();
  if (side == Side::right) {
    for (int i = 0; i + 1 < n; ++i) {
      if (sigma[i] < sigma[i + 1]) {
        auto w = sigma.word();
        std::swap(w[i], w[i + 1]);
        out.emplace_back(std::move(w));
      }
    }
  } else {
    const auto inv = sigma.inverse();
    for (int v = 1; v < n; ++v) {
      if (inv[v - 1] < inv[v]) {
        auto w = sigma.word();
        std::swap(w[inv[v - 1] - 1], w[inv[v] - 1]);
        out.emplace_back(std::move(w));
      }
    }
  }
  return out;
}

bool weak_leq(const Permutation& a, const Permutation& b, Side side) {
  if (a.size() != b.size()) return false;
  const auto sa = side == Side::right ? value_inversions(a) : inversions(a);
  const auto sb = side == Side::right ? value_inversions(b) : inversions(b);
  auto sorted_a = sa, sorted_b = sb;
  std::sort(sorted_a.begin(), sorted_a.end());
  std::sort(sorted_b.begin(), sorted_b.end());
  return std::includes(sorted_b.begin(), sorted_b.end(), sorted_a.begin(), sorted_a.end());
}

}  // namespace patpoly
