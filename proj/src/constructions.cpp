#include "patpoly/constructions.hpp"

#include <algorithm>

#include "patpoly/error.hpp"

namespace patpoly {

IntPoint perm_point(const Permutation& sigma) {
  return IntPoint(sigma.word().begin(), sigma.word().end());
}

IntPoint perm_matrix_point(const Permutation& sigma) {
  const int n = sigma.size();
  IntPoint m(static_cast<std::size_t>(n) * n, 0);
  for (int x = 0; x < n; ++x) m[x * n + (sigma[x] - 1)] = 1;
  return m;
}

namespace {

[[noreturn]] void empty_class(int n, const PatternSet& patterns) {
  std::string names;
  for (const auto& p : patterns) names += (names.empty() ? "" : ",") + p.to_string();
  fail(ErrorCode::empty_class, "no permutation of length " + std::to_string(n) + " avoids {" + names + "}");
}

}  // namespace

VPolytope permutohedron(int n, const PatternSet& patterns) {
  auto cls = avoidance_class(n, patterns);
  if (cls.empty() || n < 1) empty_class(n, patterns);
  std::vector<IntPoint> pts;
  for (const auto& s : cls) pts.push_back(perm_point(s));
  return VPolytope(std::move(pts));
}

VPolytope birkhoff(int n, const PatternSet& patterns, bool alternating) {
  auto cls = alternating ? alternating_avoidance_class(n, patterns) : avoidance_class(n, patterns);
  if (cls.empty() || n < 1) empty_class(n, patterns);
  std::vector<IntPoint> pts;
  for (const auto& s : cls) pts.push_back(perm_matrix_point(s));
  return VPolytope(std::move(pts));
}

std::vector<Permutation> cry_permutations(int n) {
  std::vector<Permutation> out;
  for (const auto& s : avoidance_class(n, {})) {
    bool ok = true;
    for (int x = 1; x <= n && ok; ++x) ok = x < n + 3 - s[x - 1];
    if (ok) out.push_back(s);
  }
  return out;
}

VPolytope cry(int n) {
  if (n < 2) fail(ErrorCode::invalid_argument, "CRY needs n >= 2");
  std::vector<IntPoint> pts;
  for (const auto& s : cry_permutations(n)) pts.push_back(perm_matrix_point(s));
  return VPolytope(std::move(pts));
}

std::vector<IntPoint> pitman_stanley_vertices(const std::vector<int>& c) {
  const int n = static_cast<int>(c.size());
  for (int v : c)
    if (v <= 0) fail(ErrorCode::invalid_argument, "Pitman-Stanley parameters must be positive");
  std::vector<IntPoint> out;
  IntPoint v(n, 0);
  // `prev` is the 0-based index of the previous nonzero entry, or -1.
  auto rec = [&](auto&& self, int j, int prev) -> void {
    if (j == n) {
      out.push_back(v);
      return;
    }
    v[j] = 0;
    self(self, j + 1, prev);
    std::int64_t s = 0;
    for (int i = prev + 1; i <= j; ++i) s += c[i];
    v[j] = s;
    self(self, j + 1, j);
    v[j] = 0;
  };
  rec(rec, 0, -1);
  std::sort(out.begin(), out.end());
  return out;
}

VPolytope pitman_stanley(const std::vector<int>& c) { return VPolytope(pitman_stanley_vertices(c)); }

bool pitman_stanley_contains(const std::vector<int>& c, const IntPoint& x) {
  if (x.size() != c.size()) return false;
  std::int64_t sx = 0, sc = 0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (x[j] < 0) return false;
    sx += x[j];
    sc += c[j];
    if (sx > sc) return false;
  }
  return true;
}

VPolytope standard_simplex(int d) {
  std::vector<IntPoint> pts;
  for (int i = 0; i <= d; ++i) {
    IntPoint e(d + 1, 0);
    e[i] = 1;
    pts.push_back(e);
  }
  return VPolytope(std::move(pts));
}

UniPoly zonotope_ehrhart(const std::vector<IntPoint>& generators) {
  const int k = static_cast<int>(generators.size());
  if (k > 24) fail(ErrorCode::invalid_argument, "too many zonotope generators");
  QVector coeffs(k + 1, Rational(0));
  coeffs[0] = 1;
  if (k == 0) return UniPoly(coeffs);
  const int N = static_cast<int>(generators[0].size());
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < k; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    ZMatrix X(N, static_cast<int>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c)
      for (int r = 0; r < N; ++r) X(r, static_cast<int>(c)) = Integer(static_cast<long>(generators[idx[c]][r]));
    if (rank(X) < X.cols()) continue;
    coeffs[idx.size()] += Rational(gcd_full_minors(X));
  }
  return UniPoly(coeffs);
}

Integer factorial(long n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return b;
}

Integer falling_factorial(long n, long k) {
  Integer f = 1;
  for (long i = 0; i < k; ++i) f *= (n - i);
  return f;
}

Integer derangements(long n) {
  // D_n = n! sum_{i=0}^n (-1)^i / i!
  Integer acc = 0;
  for (long i = 0; i <= n; ++i) {
    Integer term = factorial(n) / factorial(i);
    acc += (i % 2 == 0) ? term : Integer(-term);
  }
  return acc;
}

Integer catalan(long n) { return binomial(2 * n, n) / (n + 1); }

Integer trees(long n) {
  if (n <= 2) return 1;
  Integer t;
  mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(n - 2));
  return t;
}

std::vector<Integer> eulerian(long n) {
  // A(n,k) = (k+1) A(n-1,k) + (n-k) A(n-1,k-1)
  std::vector<Integer> a{1};
  for (long m = 1; m <= n; ++m) {
    std::vector<Integer> b(m, 0);
    for (long k = 0; k < m; ++k) {
      if (k < static_cast<long>(a.size())) b[k] += (k + 1) * a[k];
      if (k >= 1 && k - 1 < static_cast<long>(a.size())) b[k] += (m - k) * a[k - 1];
    }
    a = std::move(b);
  }
  return a;
}

Integer hook_shifted(long n) {
  Integer num = factorial(n * (n - 1) / 2);
  Integer den = 1;
  for (long i = 1; i <= n - 1; ++i) {
    num *= factorial(i - 1);
    den *= factorial(2 * i - 1);
  }
  return num / den;
}

Integer hook_staircase(long k) {
  Integer num = factorial(k * (k - 1) / 2);
  Integer den = 1;
  for (long i = 1; i <= k - 1; ++i)
    for (long r = 0; r < k - i; ++r) den *= (2 * i - 1);
  return num / den;
}

UniPoly ps_ehrhart(int n, long a, long b) {
  UniPoly p(QVector{Rational(1), Rational(a)});
  for (int j = 2; j <= n; ++j) p = p * UniPoly(QVector{Rational(j), Rational(a + n * b)});
  return p * (Rational(1) / Rational(factorial(n)));
}

Integer closed_form_eval(std::string_view kind, const std::vector<long>& p) {
  auto need = [&](std::size_t k) {
    if (p.size() != k) fail(ErrorCode::invalid_argument, std::string(kind) + " takes " + std::to_string(k) + " parameters");
    for (long v : p)
      if (v < 0) fail(ErrorCode::invalid_argument, std::string(kind) + " needs nonnegative parameters");
  };
  if (kind == "falling") { need(2); return falling_factorial(p[0], p[1]); }
  if (kind == "derangements") { need(1); return derangements(p[0]); }
  if (kind == "catalan") { need(1); return catalan(p[0]); }
  if (kind == "trees") { need(1); return trees(p[0]); }
  if (kind == "hook_shifted") { need(1); return hook_shifted(p[0]); }
  if (kind == "hook_staircase") { need(1); return hook_staircase(p[0]); }
  if (kind == "factorial") { need(1); return factorial(p[0]); }
  if (kind == "binomial") { need(2); return binomial(p[0], p[1]); }
  fail(ErrorCode::unknown_id, "unknown closed form '" + std::string(kind) + "'");
}

std::vector<std::string> proposition_ids() {
  return {"ehr_123_132", "ehr_123_132_312", "ehr_132_312", "ehr_123_132_231", "ehr_123_312_birkhoff"};
}

UniPoly proposition_formula(std::string_view id, int n) {
  if (n < 1) fail(ErrorCode::invalid_argument, "n must be positive");
  if (id == "ehr_123_132") {
    // (m+1)/(n-1)! prod_{j=2}^{n-1} (n m + j)
    UniPoly p(QVector{Rational(1), Rational(1)});
    for (int j = 2; j <= n - 1; ++j) p = p * UniPoly(QVector{Rational(j), Rational(n)});
    return p * (Rational(1) / Rational(factorial(n - 1)));
  }
  if (id == "ehr_123_132_312") {
    UniPoly p = UniPoly::constant(1);
    for (int i = 0; i < n - 1; ++i) p = p * UniPoly(QVector{Rational(1), Rational(1)});
    return p;
  }
  if (id == "ehr_132_312") {
    QVector c(n);
    for (int k = 0; k < n; ++k) c[k] = Rational(falling_factorial(n - 1, k));
    return UniPoly(c);
  }
  if (id == "ehr_123_132_231") return UniPoly::binomial(n - 1, n - 1);
  if (id == "ehr_123_312_birkhoff") {
    const int d = n * (n - 1) / 2;
    return UniPoly::binomial(d, d);
  }
  fail(ErrorCode::unknown_id, "unknown formula id '" + std::string(id) + "'");
}

std::string Construction::name() const {
  std::string pats;
  for (const auto& p : patterns) pats += (pats.empty() ? "" : ",") + p.to_string();
  switch (kind) {
    case Kind::permutohedron: return "P(" + std::to_string(n) + ";" + pats + ")";
    case Kind::birkhoff: return "B(" + std::to_string(n) + ";" + pats + ")";
    case Kind::birkhoff_alternating: return "Balt(" + std::to_string(n) + ";" + pats + ")";
    case Kind::cry: return "CRY(" + std::to_string(n) + ")";
    case Kind::simplex: return "Simplex(" + std::to_string(n) + ")";
    case Kind::pitman_stanley: {
      std::string s;
      for (int v : c) s += (s.empty() ? "" : ",") + std::to_string(v);
      return "PS(" + s + ")";
    }
  }
  return "?";
}

namespace {

int parse_int(std::string_view s, std::string_view whole) {
  if (s.empty() || s.size() > 6) fail(ErrorCode::parse_error, "bad number in '" + std::string(whole) + "'");
  int v = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9') fail(ErrorCode::parse_error, "bad number in '" + std::string(whole) + "'");
    v = v * 10 + (ch - '0');
  }
  return v;
}

}  // namespace

Construction parse_construction(std::string_view text) {
  auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')')
    fail(ErrorCode::parse_error, "expected NAME(args) but got '" + std::string(text) + "'");
  std::string_view head = text.substr(0, open);
  std::string_view args = text.substr(open + 1, text.size() - open - 2);
  Construction c;
  auto split_n = [&](Construction::Kind kind) {
    c.kind = kind;
    auto semi = args.find(';');
    c.n = parse_int(args.substr(0, semi), text);
    if (semi != std::string_view::npos) c.patterns = parse_pattern_list(args.substr(semi + 1));
  };
  if (head == "P") split_n(Construction::Kind::permutohedron);
  else if (head == "B") split_n(Construction::Kind::birkhoff);
  else if (head == "Balt" || head == "altB") split_n(Construction::Kind::birkhoff_alternating);
  else if (head == "CRY") {
    c.kind = Construction::Kind::cry;
    c.n = parse_int(args, text);
  } else if (head == "Simplex") {
    c.kind = Construction::Kind::simplex;
    c.n = parse_int(args, text);
  } else if (head == "PS") {
    c.kind = Construction::Kind::pitman_stanley;
    std::size_t start = 0;
    while (start <= args.size()) {
      auto end = args.find(',', start);
      if (end == std::string_view::npos) end = args.size();
      c.c.push_back(parse_int(args.substr(start, end - start), text));
      start = end + 1;
    }
    c.n = static_cast<int>(c.c.size());
  } else {
    fail(ErrorCode::parse_error, "unknown construction '" + std::string(head) + "'");
  }
  if (c.n < 1) fail(ErrorCode::parse_error, "n must be positive in '" + std::string(text) + "'");
  return c;
}

std::vector<Permutation> construction_class(const Construction& c) {
  switch (c.kind) {
    case Construction::Kind::permutohedron:
    case Construction::Kind::birkhoff: return avoidance_class(c.n, c.patterns);
    case Construction::Kind::birkhoff_alternating: return alternating_avoidance_class(c.n, c.patterns);
    case Construction::Kind::cry: return cry_permutations(c.n);
    default: return {};
  }
}

bool is_combinatorial_cube(const VPolytope& P) {
  const int d = P.dim();
  if (d == 0) return P.num_vertices() == 1;
  const auto& inc = P.hrep().incidence;
  const std::size_t nv = P.num_vertices();
  if (inc.size() != static_cast<std::size_t>(2 * d) || nv != (std::size_t{1} << d)) return false;
  // pair each facet with the unique facet whose vertex set is its complement
  std::vector<int> partner(inc.size(), -1);
  for (std::size_t i = 0; i < inc.size(); ++i)
    for (std::size_t j = i + 1; j < inc.size(); ++j)
      if ((inc[i] & inc[j]).none() && (inc[i] | inc[j]).all()) {
        if (partner[i] >= 0 || partner[j] >= 0) return false;
        partner[i] = static_cast<int>(j);
        partner[j] = static_cast<int>(i);
      }
  std::vector<std::size_t> firsts;
  for (std::size_t i = 0; i < inc.size(); ++i) {
    if (partner[i] < 0) return false;
    if (static_cast<std::size_t>(partner[i]) > i) firsts.push_back(i);
  }
  std::vector<char> seen(nv, 0);
  for (std::size_t v = 0; v < nv; ++v) {
    std::size_t code = 0;
    for (std::size_t k = 0; k < firsts.size(); ++k)
      if (inc[firsts[k]][v]) code |= std::size_t{1} << k;
    if (seen[code]) return false;
    seen[code] = 1;
  }
  return true;
}

VPolytope build(const Construction& c) {
  switch (c.kind) {
    case Construction::Kind::permutohedron: return permutohedron(c.n, c.patterns);
    case Construction::Kind::birkhoff: return birkhoff(c.n, c.patterns, false);
    case Construction::Kind::birkhoff_alternating: return birkhoff(c.n, c.patterns, true);
    case Construction::Kind::cry: return cry(c.n);
    case Construction::Kind::pitman_stanley: return pitman_stanley(c.c);
    case Construction::Kind::simplex: return standard_simplex(c.n);
  }
  fail(ErrorCode::invalid_argument, "unknown construction kind");
}

}  // namespace patpoly
