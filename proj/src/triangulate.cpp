#include "patpoly/triangulate.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <thread>

#include "patpoly/constructions.hpp"
#include "patpoly/error.hpp"

namespace patpoly {

using Bits = boost::dynamic_bitset<>;

std::vector<ChainSimplex> order_complex_simplices(const PermPoset& L, const EdgeLabeling& lambda,
                                                  bool reversed) {
  std::vector<ChainSimplex> out;
  for (auto& chain : maximal_chains(L.poset, reversed)) {
    ChainSimplex s;
    for (int e : chain) s.vertices.push_back(perm_matrix_point(L.perms[e]));
    s.labels = chain_labels(lambda, chain);
    s.descent_count = descents_of(s.labels);
    s.chain = std::move(chain);
    out.push_back(std::move(s));
  }
  return out;
}

bool TriangulationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

nlohmann::json TriangulationReport::to_json() const {
  nlohmann::json j;
  j["dim"] = polytope_dim;
  j["simplices"] = simplex_count;
  j["volume"] = volume.get_str();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["pass"] = all_pass();
  return j;
}

void require_triangulation(const TriangulationReport& r) {
  for (const auto& c : r.checks)
    if (!c.pass) fail(ErrorCode::verification_failure, c.name + ": " + c.detail);
}

namespace {

unsigned worker_count(unsigned requested, std::size_t tasks) {
  unsigned w = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(w, std::max<std::size_t>(tasks, 1)));
}

// Runs body(i) for i in [0, n) on striped workers.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body) {
  const unsigned w = worker_count(workers, n);
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(w);
  for (unsigned t = 0; t < w; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += w) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::string chain_name(const PermPoset& L, const std::vector<int>& chain) {
  std::string s;
  for (int e : chain) s += (s.empty() ? "" : "<") + L.perms[e].to_string();
  return s;
}

// Barycentric coordinates need the square system [z_0 .. z_d ; 1 .. 1].
QMatrix barycentric_system(const std::vector<IntPoint>& z) {
  const int d = static_cast<int>(z.size()) - 1;
  QMatrix A(d + 1, d + 1);
  for (int c = 0; c <= d; ++c) {
    for (int r = 0; r < d; ++r) A(r, c) = Rational(static_cast<long>(z[c][r]));
    A(d, c) = 1;
  }
  return A;
}

}  // namespace

TriangulationReport verify_unimodular_triangulation(const VPolytope& P, const PermPoset& L,
                                                    const std::vector<ChainSimplex>& simplices,
                                                    const TriangulationOptions& opt) {
  TriangulationReport rep;
  const int d = P.dim();
  rep.polytope_dim = d;
  rep.simplex_count = simplices.size();
  const auto& lat = P.lattice();
  const auto& verts = P.vertices();

  // vertices of the simplices are vertices of P
  {
    CheckResult c{"vertices_of_polytope", true, ""};
    for (const auto& s : simplices)
      for (const auto& v : s.vertices)
        if (!std::binary_search(verts.begin(), verts.end(), v)) {
          c.pass = false;
          c.detail = "chain " + chain_name(L, s.chain) + " has a non-vertex";
        }
    rep.checks.push_back(c);
  }

  // lattice coordinates of every simplex
  std::vector<std::vector<IntPoint>> coords(simplices.size());
  for (std::size_t i = 0; i < simplices.size(); ++i)
    for (const auto& v : simplices[i].vertices) coords[i].push_back(lattice_coords_int(lat, v));

  {
    CheckResult c{"dimension", true, "all simplices have " + std::to_string(d + 1) + " vertices"};
    for (const auto& s : simplices)
      if (static_cast<int>(s.vertices.size()) != d + 1) {
        c.pass = false;
        c.detail = "chain " + chain_name(L, s.chain) + " has " + std::to_string(s.vertices.size()) +
                   " vertices, dim P = " + std::to_string(d);
        break;
      }
    rep.checks.push_back(c);
    if (!c.pass) return rep;
  }

  {
    std::vector<char> ok(simplices.size(), 0);
    parallel_for(simplices.size(), opt.workers, [&](std::size_t i) {
      const auto& z = coords[i];
      ZMatrix D(d, d);
      for (int col = 0; col < d; ++col)
        for (int r = 0; r < d; ++r) D(r, col) = Integer(static_cast<long>(z[col + 1][r] - z[0][r]));
      const Integer det_p = abs(det(D));
      ok[i] = det_p == 1 && is_unimodular_simplex(simplices[i].vertices);
    });
    CheckResult c{"unimodular", true, "every maximal simplex has determinant 1 in the lattice of P"};
    for (std::size_t i = 0; i < simplices.size(); ++i)
      if (!ok[i]) {
        c.pass = false;
        c.detail = "chain " + chain_name(L, simplices[i].chain);
        break;
      }
    rep.checks.push_back(c);
  }

  {
    const UniPoly ehr = ehrhart(P, opt.count);
    rep.volume = normalized_volume_from_ehrhart(ehr, d);
    CheckResult c{"volume", rep.volume == Integer(static_cast<unsigned long>(simplices.size())), ""};
    c.detail = std::to_string(simplices.size()) + " simplices, Ehrhart volume " + rep.volume.get_str();
    if (opt.hook_volume) {
      c.detail += ", hook formula " + opt.hook_volume->get_str();
      c.pass = c.pass && *opt.hook_volume == rep.volume;
    }
    rep.checks.push_back(c);
  }

  if (opt.check_intersections) {
    CheckResult c{"intersections", true, ""};
    std::size_t pairs = 0;
    std::vector<std::pair<std::size_t, std::size_t>> todo;
    for (std::size_t i = 0; i < simplices.size(); ++i)
      for (std::size_t j = i + 1; j < simplices.size(); ++j) todo.emplace_back(i, j);
    std::vector<char> bad(todo.size(), 0);
    parallel_for(todo.size(), opt.workers, [&](std::size_t t) {
      auto [i, j] = todo[t];
      const auto& a = simplices[i].chain;
      const auto& b = simplices[j].chain;
      // lambda on a, mu on b, sum lambda z_a - sum mu z_b = 0, both sum to 1
      const int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
      QMatrix A(d + 2, na + nb);
      QVector rhs(d + 2, 0), obj(na + nb, 0);
      for (int k = 0; k < na; ++k) {
        for (int r = 0; r < d; ++r) A(r, k) = Rational(static_cast<long>(coords[i][k][r]));
        A(d, k) = 1;
        if (std::find(b.begin(), b.end(), a[k]) == b.end()) obj[k] = 1;
      }
      for (int k = 0; k < nb; ++k) {
        for (int r = 0; r < d; ++r) A(r, na + k) = -Rational(static_cast<long>(coords[j][k][r]));
        A(d + 1, na + k) = 1;
      }
      rhs[d] = 1;
      rhs[d + 1] = 1;
      const auto res = lp_maximize(A, rhs, obj);
      bad[t] = res.status != LpResult::Status::optimal || res.value != 0;
    });
    for (std::size_t t = 0; t < todo.size(); ++t) {
      ++pairs;
      if (bad[t] && c.pass) {
        c.pass = false;
        c.detail = "chains " + chain_name(L, simplices[todo[t].first].chain) + " and " +
                   chain_name(L, simplices[todo[t].second].chain) + " overlap outside their common face";
      }
    }
    if (c.pass) c.detail = std::to_string(pairs) + " pairs meet in the hull of their common vertices";
    rep.checks.push_back(c);
  }

  if (opt.check_flag) {
    CheckResult c{"flag", true, ""};
    const Poset& Q = L.poset;
    const int n = Q.size();
    std::vector<Bits> facets;
    for (const auto& s : simplices) {
      Bits b(n);
      for (int e : s.chain) b[e] = true;
      facets.push_back(b);
    }
    // edges of the complex are exactly the comparable pairs
    for (int x = 0; x < n && c.pass; ++x)
      for (int y = x + 1; y < n && c.pass; ++y) {
        bool edge = false;
        for (const auto& f : facets)
          if (f[x] && f[y]) edge = true;
        if (edge != Q.comparable(x, y)) {
          c.pass = false;
          c.detail = "pair " + L.perms[x].to_string() + ", " + L.perms[y].to_string();
        }
      }
    // every chain spans a face
    std::size_t chains = 0;
    Bits cur(n);
    std::function<void(int)> grow = [&](int last) {
      if (!c.pass) return;
      ++chains;
      bool inside = false;
      for (const auto& f : facets)
        if (cur.is_subset_of(f)) {
          inside = true;
          break;
        }
      if (!inside) {
        c.pass = false;
        c.detail = "a chain lies in no maximal simplex";
        return;
      }
      for (int y = 0; y < n; ++y)
        if (last < 0 || Q.less(last, y)) {
          cur[y] = true;
          grow(y);
          cur[y] = false;
        }
    };
    grow(-1);
    if (c.pass) c.detail = std::to_string(chains) + " chains (with the empty one) are faces";
    rep.checks.push_back(c);
  }

  if (opt.check_barycenters) {
    CheckResult c{"barycenters", true, ""};
    std::vector<QMatrix> inv(simplices.size());
    parallel_for(simplices.size(), opt.workers,
                 [&](std::size_t i) { inv[i] = inverse(barycentric_system(coords[i])); });
    std::vector<char> bad(simplices.size(), 0);
    parallel_for(simplices.size(), opt.workers, [&](std::size_t i) {
      QVector b(d + 1, 0);
      for (const auto& z : coords[i])
        for (int r = 0; r < d; ++r) b[r] += Rational(static_cast<long>(z[r]));
      for (int r = 0; r < d; ++r) b[r] /= d + 1;
      b[d] = 1;
      for (std::size_t j = 0; j < simplices.size(); ++j) {
        if (j == i) continue;
        const QVector lam = inv[j] * b;
        if (std::all_of(lam.begin(), lam.end(), [](const Rational& x) { return x >= 0; })) bad[i] = 1;
      }
    });
    for (std::size_t i = 0; i < simplices.size(); ++i)
      if (bad[i]) {
        c.pass = false;
        c.detail = "barycenter of " + chain_name(L, simplices[i].chain) + " lies in another simplex";
        break;
      }
    if (c.pass) c.detail = "no barycenter lies in another maximal simplex";
    rep.checks.push_back(c);
  }
  return rep;
}

ShellingH hstar_via_shelling(const VPolytope& P, const PermPoset& L, const EdgeLabeling& lambda,
                             const CountOptions& opt) {
  ShellingH out;
  const int d = P.dim();
  out.from_descents = h_from_descents(L.poset, lambda, d + 1);

  auto chains = maximal_chains(L.poset);
  std::vector<std::vector<int>> words;
  for (const auto& c : chains) words.push_back(chain_labels(lambda, c));
  std::vector<std::size_t> order(chains.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return words[a] < words[b]; });

  const int n = L.poset.size();
  std::vector<Bits> done;
  out.from_restrictions.assign(d + 1, 0);
  for (std::size_t idx : order) {
    Bits F(n);
    for (int e : chains[idx]) F[e] = true;
    int r = 0;
    for (int v : chains[idx]) {
      Bits G = F;
      G[v] = false;
      for (const auto& E : done)
        if (G.is_subset_of(E)) {
          ++r;
          break;
        }
    }
    if (r >= static_cast<int>(out.from_restrictions.size())) out.from_restrictions.resize(r + 1, 0);
    out.from_restrictions[r] += 1;
    done.push_back(F);
  }

  out.hstar = hstar(P, opt);
  out.hstar.resize(std::max<std::size_t>(out.hstar.size(), d + 1), 0);
  if (out.from_descents != out.hstar || out.from_restrictions != out.hstar)
    fail(ErrorCode::mismatch_against_ehrhart, "shelling h-vector differs from the Ehrhart h*-vector");
  return out;
}

nlohmann::json GorensteinReport::to_json() const {
  nlohmann::json j{{"palindromic", palindromic},
                   {"unimodal", unimodal},
                   {"first_interior_dilate", first_interior_dilate},
                   {"interior_by_reciprocity", interior_by_reciprocity.get_str()}};
  if (interior_by_enumeration) j["interior_by_enumeration"] = *interior_by_enumeration;
  if (interior_before) j["interior_at_previous_dilate"] = *interior_before;
  return j;
}

GorensteinReport gorenstein_checks(const VPolytope& P, const std::vector<Integer>& hstar,
                                   const UniPoly& ehr, bool enumerate, const CountOptions& opt) {
  GorensteinReport r;
  std::vector<Integer> h = hstar;
  while (h.size() > 1 && h.back() == 0) h.pop_back();
  r.palindromic = is_palindromic(h);
  r.unimodal = is_unimodal(h);
  const int deg = static_cast<int>(h.size()) - 1;
  r.first_interior_dilate = P.dim() - deg + 1;
  r.interior_by_reciprocity = interior_count_from_ehrhart(ehr, P.dim(), r.first_interior_dilate);
  if (enumerate) {
    r.interior_by_enumeration = interior_count(P, r.first_interior_dilate, opt);
    if (r.first_interior_dilate > 1) r.interior_before = interior_count(P, r.first_interior_dilate - 1, opt);
  }
  return r;
}

}  // namespace patpoly
