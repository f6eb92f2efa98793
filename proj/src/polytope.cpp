#include "patpoly/polytope.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

#include "patpoly/error.hpp"

namespace patpoly {

using Bits = boost::dynamic_bitset<>;

struct VPolytope::State {
  std::vector<IntPoint> vertices;
  AffineLatticeBasis lattice;
  std::once_flag facets_once;
  LatticeForm lattice_form;
  HRep hrep;
  std::atomic<bool> has_hrep{false};
  int birkhoff_order = 0;
};

namespace {

Integer to_integer(std::int64_t v) { return Integer(static_cast<long>(v)); }

int detect_birkhoff_order(const std::vector<IntPoint>& vs) {
  const int N = static_cast<int>(vs[0].size());
  int n = 0;
  while (n * n < N) ++n;
  if (n * n != N || n == 0) return 0;
  for (const auto& v : vs) {
    std::vector<int> row(n, 0), col(n, 0);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        const auto e = v[x * n + y];
        if (e != 0 && e != 1) return 0;
        row[x] += static_cast<int>(e);
        col[y] += static_cast<int>(e);
      }
    for (int i = 0; i < n; ++i)
      if (row[i] != 1 || col[i] != 1) return 0;
  }
  return n;
}

void make_primitive(ZVector& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1)
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

// Facets of conv(points) in R^d (points affinely spanning R^d) by double
// description on the cone {(c, c0) : c.p <= c0 for all p}.
struct DDRay {
  ZVector v;  // (c_1..c_d, c0)
  Bits zero;
};

std::vector<DDRay> double_description(const std::vector<IntPoint>& pts, int d) {
  const int nv = static_cast<int>(pts.size());
  auto row_dot = [&](int p, const ZVector& y) {
    Integer s = -y[d];
    for (int i = 0; i < d; ++i)
      if (pts[p][i] != 0) s += to_integer(pts[p][i]) * y[i];
    return s;
  };
  // Greedy affinely independent start.
  std::vector<int> start;
  {
    QMatrix acc(0, d + 1);
    for (int p = 0; p < nv && static_cast<int>(start.size()) < d + 1; ++p) {
      QMatrix trial(static_cast<int>(start.size()) + 1, d + 1);
      for (std::size_t r = 0; r < start.size(); ++r)
        for (int c = 0; c <= d; ++c) trial(static_cast<int>(r), c) = acc(static_cast<int>(r), c);
      for (int c = 0; c < d; ++c) trial(static_cast<int>(start.size()), c) = Rational(to_integer(pts[p][c]));
      trial(static_cast<int>(start.size()), d) = -1;
      if (rank(trial) == static_cast<int>(start.size()) + 1) {
        start.push_back(p);
        acc = trial;
      }
    }
    if (static_cast<int>(start.size()) != d + 1) fail(ErrorCode::degenerate_input, "points do not span");
    QMatrix inv = inverse(acc);
    std::vector<DDRay> rays;
    for (int i = 0; i <= d; ++i) {
      Integer l = 1;
      for (int r = 0; r <= d; ++r) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), inv(r, i).get_den_mpz_t());
      DDRay ray;
      ray.v.resize(d + 1);
      for (int r = 0; r <= d; ++r) ray.v[r] = -(inv(r, i).get_num() * (l / inv(r, i).get_den()));
      make_primitive(ray.v);
      ray.zero.resize(nv);
      for (int j = 0; j <= d; ++j)
        if (j != i) ray.zero.set(start[j]);
      rays.push_back(std::move(ray));
    }
    std::vector<bool> used(nv, false);
    for (int s : start) used[s] = true;
    for (int h = 0; h < nv; ++h) {
      if (used[h]) continue;
      std::vector<Integer> val(rays.size());
      std::vector<int> pos, neg;
      std::vector<DDRay> next;
      for (std::size_t r = 0; r < rays.size(); ++r) {
        val[r] = row_dot(h, rays[r].v);
        if (val[r] > 0) pos.push_back(static_cast<int>(r));
        else if (val[r] < 0) neg.push_back(static_cast<int>(r));
      }
      if (pos.empty()) {
        for (std::size_t r = 0; r < rays.size(); ++r)
          if (val[r] == 0) rays[r].zero.set(h);
        continue;
      }
      for (int p : pos) {
        for (int q : neg) {
          Bits common = rays[p].zero & rays[q].zero;
          if (static_cast<int>(common.count()) < d - 1) continue;
          bool adjacent = true;
          for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
            if (static_cast<int>(r) == p || static_cast<int>(r) == q) continue;
            if (common.is_subset_of(rays[r].zero)) adjacent = false;
          }
          if (!adjacent) continue;
          DDRay nr;
          nr.v.resize(d + 1);
          for (int k = 0; k <= d; ++k) nr.v[k] = val[p] * rays[q].v[k] - val[q] * rays[p].v[k];
          make_primitive(nr.v);
          nr.zero = common;
          nr.zero.set(h);
          next.push_back(std::move(nr));
        }
      }
      for (std::size_t r = 0; r < rays.size(); ++r) {
        if (val[r] > 0) continue;
        if (val[r] == 0) rays[r].zero.set(h);
        next.push_back(std::move(rays[r]));
      }
      rays = std::move(next);
    }
    return rays;
  }
}

void compute_facets(VPolytope::State& s);

}  // namespace

VPolytope::VPolytope(std::vector<IntPoint> vertices) : s_(std::make_shared<State>()) {
  if (vertices.empty()) fail(ErrorCode::degenerate_input, "polytope needs at least one vertex");
  const std::size_t N = vertices[0].size();
  for (const auto& v : vertices)
    if (v.size() != N) fail(ErrorCode::invalid_argument, "vertices of mixed dimension");
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
    fail(ErrorCode::invalid_argument, "duplicate vertex");
  s_->vertices = std::move(vertices);
  s_->lattice = affine_lattice_basis(s_->vertices);
  s_->birkhoff_order = detect_birkhoff_order(s_->vertices);
}

VPolytope VPolytope::hull_of(std::vector<IntPoint> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() <= 2) return VPolytope(points);
  std::vector<IntPoint> keep;
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::vector<IntPoint> others;
    for (std::size_t j = 0; j < points.size(); ++j)
      if (j != i) others.push_back(points[j]);
    VPolytope rest(others);
    QVector x(points[i].size());
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = Rational(to_integer(points[i][k]));
    if (!contains_point_lp(rest, x)) keep.push_back(points[i]);
  }
  return VPolytope(std::move(keep));
}

VPolytope VPolytope::from_json(const nlohmann::json& j) {
  if (!j.contains("vertices")) fail(ErrorCode::parse_error, "polytope JSON needs \"vertices\"");
  std::vector<IntPoint> vs;
  try {
    if (!j.at("vertices").is_array()) fail(ErrorCode::parse_error, "\"vertices\" must be an array");
    for (const auto& v : j.at("vertices")) vs.push_back(v.get<IntPoint>());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse_error, e.what());
  }
  return VPolytope(std::move(vs));
}

int VPolytope::ambient_dim() const { return static_cast<int>(s_->vertices[0].size()); }
std::size_t VPolytope::num_vertices() const { return s_->vertices.size(); }
const std::vector<IntPoint>& VPolytope::vertices() const { return s_->vertices; }
int VPolytope::dim() const { return s_->lattice.dim(); }
const AffineLatticeBasis& VPolytope::lattice() const { return s_->lattice; }
int VPolytope::birkhoff_order() const { return s_->birkhoff_order; }
bool VPolytope::has_hrep() const { return s_->has_hrep.load(); }

const LatticeForm& VPolytope::lattice_form() const {
  std::call_once(s_->facets_once, [this] { compute_facets(*s_); });
  return s_->lattice_form;
}

const HRep& VPolytope::hrep() const {
  lattice_form();
  return s_->hrep;
}

nlohmann::json VPolytope::to_json() const {
  return {{"ambient_dim", ambient_dim()}, {"dim", dim()}, {"vertices", s_->vertices}};
}

namespace {

void compute_facets(VPolytope::State& s) {
  const auto& L = s.lattice;
  const int d = L.dim();
  const int N = L.ambient_dim();
  const int nv = static_cast<int>(s.vertices.size());
  LatticeForm& lf = s.lattice_form;
  for (const auto& v : s.vertices) lf.vertex_coords.push_back(lattice_coords_int(L, v));

  // Equalities: integer basis of the orthogonal complement of the direction space.
  QMatrix Bt = to_qmatrix(L.basis.transpose());
  if (d == 0) Bt = QMatrix(0, N);
  QMatrix K = d == 0 ? QMatrix::identity(N) : kernel(Bt);
  for (int c = 0; c < K.cols(); ++c) {
    Integer l = 1;
    for (int r = 0; r < N; ++r) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), K(r, c).get_den_mpz_t());
    Inequality eq;
    eq.normal.resize(N);
    for (int r = 0; r < N; ++r) eq.normal[r] = K(r, c).get_num() * (l / K(r, c).get_den());
    make_primitive(eq.normal);
    eq.offset = 0;
    for (int r = 0; r < N; ++r) eq.offset += eq.normal[r] * to_integer(L.origin[r]);
    s.hrep.equalities.push_back(std::move(eq));
  }

  if (d == 0) {
    s.has_hrep = true;
    return;
  }

  std::vector<DDRay> rays = double_description(lf.vertex_coords, d);

  // Ambient normal: orthogonal projection of the functional onto the direction space.
  QMatrix B = to_qmatrix(L.basis);
  QMatrix Ginv = inverse(B.transpose() * B);
  struct Entry {
    Inequality amb;
    LatticeFacet lat;
    Bits inc;
  };
  std::vector<Entry> entries;
  for (auto& ray : rays) {
    ZVector c(ray.v.begin(), ray.v.begin() + d);
    make_primitive(c);
    Integer scale = 0;
    for (int i = 0; i < d; ++i)
      if (ray.v[i] != 0) {
        scale = ray.v[i] / c[i];
        break;
      }
    Entry e;
    e.lat.normal.resize(d);
    for (int i = 0; i < d; ++i) e.lat.normal[i] = c[i].get_si();
    e.lat.offset = Integer(ray.v[d] / scale).get_si();
    QVector cq(d);
    for (int i = 0; i < d; ++i) cq[i] = Rational(c[i]);
    QVector w = Ginv * cq;
    QVector a = B * w;
    Integer l = 1;
    for (const auto& x : a) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    e.amb.normal.resize(N);
    for (int r = 0; r < N; ++r) e.amb.normal[r] = a[r].get_num() * (l / a[r].get_den());
    make_primitive(e.amb.normal);
    const int tight = static_cast<int>(ray.zero.find_first());
    e.amb.offset = 0;
    for (int r = 0; r < N; ++r) e.amb.offset += e.amb.normal[r] * to_integer(s.vertices[tight][r]);
    e.inc = ray.zero;
    entries.push_back(std::move(e));
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& x, const Entry& y) { return x.amb.normal < y.amb.normal; });
  for (auto& e : entries) {
    lf.facets.push_back(std::move(e.lat));
    s.hrep.facets.push_back(std::move(e.amb));
    s.hrep.incidence.push_back(std::move(e.inc));
  }
  (void)nv;
  s.has_hrep = true;
}

Rational dot(const ZVector& a, std::span<const Rational> x) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) s += Rational(a[i]) * x[i];
  return s;
}

}  // namespace

bool contains_point_hrep(const VPolytope& P, std::span<const Rational> x, bool strict) {
  const HRep& h = P.hrep();
  if (static_cast<int>(x.size()) != P.ambient_dim()) fail(ErrorCode::invalid_argument, "point has wrong dimension");
  for (const auto& eq : h.equalities)
    if (dot(eq.normal, x) != Rational(eq.offset)) return false;
  for (const auto& f : h.facets) {
    Rational v = dot(f.normal, x);
    if (strict ? v >= Rational(f.offset) : v > Rational(f.offset)) return false;
  }
  return true;
}

bool contains_point_lp(const VPolytope& P, std::span<const Rational> x, bool strict) {
  const auto& vs = P.vertices();
  const int N = P.ambient_dim();
  const int V = static_cast<int>(vs.size());
  if (static_cast<int>(x.size()) != N) fail(ErrorCode::invalid_argument, "point has wrong dimension");
  // Variables: mu_v >= 0 (lambda_v = mu_v + t) and t >= 0 when strict.
  const int nvars = V + (strict ? 1 : 0);
  QMatrix A(N + 1, nvars);
  QVector b(N + 1), c(nvars, Rational(0));
  for (int i = 0; i < N; ++i) {
    Rational rowsum = 0;
    for (int v = 0; v < V; ++v) {
      A(i, v) = Rational(to_integer(vs[v][i]));
      rowsum += A(i, v);
    }
    if (strict) A(i, V) = rowsum;
    b[i] = x[i];
  }
  for (int v = 0; v < V; ++v) A(N, v) = 1;
  if (strict) {
    A(N, V) = V;
    c[V] = 1;
  }
  b[N] = 1;
  auto res = lp_maximize(A, b, c);
  if (res.status != LpResult::Status::optimal) return false;
  return strict ? res.value > 0 : true;
}

bool contains_point(const VPolytope& P, std::span<const Rational> x, bool strict) {
  return P.has_hrep() ? contains_point_hrep(P, x, strict) : contains_point_lp(P, x, strict);
}

std::vector<std::uint64_t> f_vector(const VPolytope& P) {
  const int d = P.dim();
  if (d == 0) return {1, 1};
  const HRep& h = P.hrep();
  const auto& coords = P.lattice_form().vertex_coords;
  std::set<Bits> faces(h.incidence.begin(), h.incidence.end());
  std::vector<Bits> frontier(h.incidence.begin(), h.incidence.end());
  while (!frontier.empty()) {
    std::vector<Bits> next;
    for (const auto& f : frontier) {
      for (const auto& g : h.incidence) {
        Bits x = f & g;
        if (x.none()) continue;
        if (faces.insert(x).second) next.push_back(x);
      }
    }
    frontier = std::move(next);
  }
  std::vector<std::uint64_t> fv(d + 2, 0);
  fv[0] = 1;
  fv[d + 1] = 1;
  for (const auto& f : faces) {
    std::vector<int> idx;
    for (auto i = f.find_first(); i != Bits::npos; i = f.find_next(i)) idx.push_back(static_cast<int>(i));
    QMatrix diffs(static_cast<int>(idx.size()) - 1, d);
    for (std::size_t r = 1; r < idx.size(); ++r)
      for (int c = 0; c < d; ++c)
        diffs(static_cast<int>(r) - 1, c) = Rational(to_integer(coords[idx[r]][c] - coords[idx[0]][c]));
    const int fd = idx.size() == 1 ? 0 : rank(diffs);
    if (fd >= d) continue;
    ++fv[fd + 1];
  }
  return fv;
}

// ---------------------------------------------------------------- counting

namespace {

class Budget {
 public:
  explicit Budget(std::uint64_t limit) : limit_(limit) {}
  // Returns false once the shared limit is exceeded.
  bool charge(std::uint64_t n) {
    const auto used = used_.fetch_add(n) + n;
    return used <= limit_;
  }
  std::uint64_t used() const { return used_.load(); }

 private:
  std::uint64_t limit_;
  std::atomic<std::uint64_t> used_{0};
};

struct BudgetHit {};

unsigned resolve_workers(unsigned w) {
  if (w == 0) w = std::max(1u, std::thread::hardware_concurrency());
  return w;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

// Enumeration in lattice coordinates over the vertex bounding box, with the
// facet inequalities used to narrow each coordinate's range.
class BoxEnumerator {
 public:
  BoxEnumerator(const VPolytope& P, int m, bool interior) : d_(P.dim()), m_(m) {
    const auto& lf = P.lattice_form();
    F_ = static_cast<int>(lf.facets.size());
    A_.resize(static_cast<std::size_t>(F_) * d_);
    rhs_.resize(F_);
    for (int i = 0; i < F_; ++i) {
      for (int k = 0; k < d_; ++k) A_[i * d_ + k] = lf.facets[i].normal[k];
      rhs_[i] = static_cast<std::int64_t>(m) * lf.facets[i].offset - (interior ? 1 : 0);
    }
    lo_.assign(d_, INT64_MAX);
    hi_.assign(d_, INT64_MIN);
    for (const auto& z : lf.vertex_coords)
      for (int k = 0; k < d_; ++k) {
        lo_[k] = std::min(lo_[k], z[k] * m);
        hi_[k] = std::max(hi_[k], z[k] * m);
      }
    if (interior) {
      // Interior points avoid the box boundary only if a facet says so; keep the box.
    }
    minrest_.assign(static_cast<std::size_t>(d_ + 1) * F_, 0);
    for (int k = d_ - 1; k >= 0; --k)
      for (int i = 0; i < F_; ++i) {
        const std::int64_t a = A_[i * d_ + k];
        minrest_[k * F_ + i] = minrest_[(k + 1) * F_ + i] + std::min(a * lo_[k], a * hi_[k]);
      }
  }

  int dim() const { return d_; }

  // Feasible range of coordinate k given the partial sums; false if empty.
  bool range(int k, const std::vector<std::int64_t>& s, std::int64_t& lo, std::int64_t& hi) const {
    lo = lo_[k];
    hi = hi_[k];
    for (int i = 0; i < F_; ++i) {
      const std::int64_t a = A_[i * d_ + k];
      const std::int64_t R = rhs_[i] - s[i] - minrest_[(k + 1) * F_ + i];
      if (a > 0) hi = std::min(hi, floor_div(R, a));
      else if (a < 0) lo = std::max(lo, ceil_div(R, a));
      else if (R < 0) return false;
      if (lo > hi) return false;
    }
    return true;
  }

  void advance(int k, std::int64_t z, std::vector<std::int64_t>& s) const {
    for (int i = 0; i < F_; ++i) s[i] += A_[i * d_ + k] * z;
  }

  template <class Visit>
  void run(std::int64_t outer, Budget& budget, Visit&& visit) const {
    std::vector<std::int64_t> s(F_, 0), z(d_, 0);
    std::uint64_t local = 0;
    auto charge = [&] {
      if (++local == 4096) {
        if (!budget.charge(local)) throw BudgetHit{};
        local = 0;
      }
    };
    advance(0, outer, s);
    z[0] = outer;
    rec(1, s, z, charge, visit);
    if (!budget.charge(local)) throw BudgetHit{};
  }

 private:
  template <class Charge, class Visit>
  void rec(int k, std::vector<std::int64_t>& s, std::vector<std::int64_t>& z, Charge& charge,
           Visit& visit) const {
    charge();
    if (k == d_) {
      // Only reached for d == 1 when the outer value was already checked.
      visit(z, z[d_ - 1], z[d_ - 1]);
      return;
    }
    std::int64_t lo, hi;
    if (!range(k, s, lo, hi)) return;
    if (k == d_ - 1) {
      visit(z, lo, hi);
      return;
    }
    for (std::int64_t v = lo; v <= hi; ++v) {
      z[k] = v;
      advance(k, v, s);
      rec(k + 1, s, z, charge, visit);
      advance(k, -v, s);
    }
  }

  int d_;
  int m_;
  int F_ = 0;
  std::vector<std::int64_t> A_, rhs_, lo_, hi_, minrest_;
};

// Nonnegative integer matrices with all line sums m, zero outside the vertex
// support, filtered by the polytope's equalities and facets.
class MarginEnumerator {
 public:
  MarginEnumerator(const VPolytope& P, int m, bool interior) : n_(P.birkhoff_order()), m_(m) {
    const int N = n_ * n_;
    support_.assign(N, false);
    for (const auto& v : P.vertices())
      for (int e = 0; e < N; ++e)
        if (v[e]) support_[e] = true;
    const HRep& h = P.hrep();
    auto load = [&](const std::vector<Inequality>& src, std::vector<std::int64_t>& A, std::vector<std::int64_t>& b,
                    std::int64_t shift) {
      for (const auto& q : src) {
        for (int e = 0; e < N; ++e) A.push_back(q.normal[e].get_si());
        b.push_back(static_cast<std::int64_t>(m) * q.offset.get_si() - shift);
      }
    };
    load(h.equalities, Aeq_, beq_, 0);
    load(h.facets, Af_, bf_, interior ? 1 : 0);
    F_ = static_cast<int>(bf_.size());
    // Most negative possible contribution of rows >= x to each facet.
    negrest_.assign(static_cast<std::size_t>(n_ + 1) * F_, 0);
    for (int x = n_ - 1; x >= 0; --x)
      for (int i = 0; i < F_; ++i) {
        std::int64_t acc = negrest_[(x + 1) * F_ + i];
        for (int y = 0; y < n_; ++y) {
          const int e = x * n_ + y;
          if (support_[e]) acc += std::min<std::int64_t>(0, Af_[i * N + e]) * m;
        }
        negrest_[x * F_ + i] = acc;
      }
    later_support_.assign(static_cast<std::size_t>(n_ + 1) * n_, false);
    for (int x = n_ - 1; x >= 0; --x)
      for (int y = 0; y < n_; ++y)
        later_support_[x * n_ + y] = later_support_[(x + 1) * n_ + y] || support_[x * n_ + y];
  }

  // All admissible first rows.
  std::vector<std::vector<std::int64_t>> first_rows() const {
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> row(n_, 0);
    std::vector<std::int64_t> cap(n_, m_);
    fill_row(0, 0, m_, row, cap, [&](const std::vector<std::int64_t>& r) { out.push_back(r); });
    return out;
  }

  template <class Visit>
  void run(const std::vector<std::int64_t>& first, Budget& budget, Visit&& visit) const {
    std::vector<std::int64_t> x(n_ * n_, 0), s(F_, 0), cap(n_, m_);
    std::uint64_t local = 0;
    auto charge = [&] {
      if (++local == 4096) {
        if (!budget.charge(local)) throw BudgetHit{};
        local = 0;
      }
    };
    if (place_row(0, first, x, s, cap)) rows(1, x, s, cap, charge, visit);
    if (!budget.charge(local)) throw BudgetHit{};
  }

 private:
  template <class Emit>
  void fill_row(int r, int y, std::int64_t left, std::vector<std::int64_t>& row, std::vector<std::int64_t>& cap,
                Emit&& emit) const {
    if (y == n_) {
      if (left == 0) emit(row);
      return;
    }
    const int e = r * n_ + y;
    if (!support_[e]) {
      row[y] = 0;
      fill_row(r, y + 1, left, row, cap, emit);
      return;
    }
    // Remaining supported capacity in this row bounds how little we may place.
    std::int64_t rest = 0;
    for (int yy = y + 1; yy < n_; ++yy)
      if (support_[r * n_ + yy]) rest += cap[yy];
    const std::int64_t hi = std::min(left, cap[y]);
    const std::int64_t lo = std::max<std::int64_t>(0, left - rest);
    for (std::int64_t v = lo; v <= hi; ++v) {
      row[y] = v;
      fill_row(r, y + 1, left - v, row, cap, emit);
    }
    row[y] = 0;
  }

  bool place_row(int r, const std::vector<std::int64_t>& row, std::vector<std::int64_t>& x,
                 std::vector<std::int64_t>& s, std::vector<std::int64_t>& cap) const {
    const int N = n_ * n_;
    for (int y = 0; y < n_; ++y) {
      x[r * n_ + y] = row[y];
      cap[y] -= row[y];
    }
    for (int i = 0; i < F_; ++i)
      for (int y = 0; y < n_; ++y) s[i] += Af_[i * N + r * n_ + y] * row[y];
    for (int y = 0; y < n_; ++y)
      if (cap[y] > 0 && !later_support_[(r + 1) * n_ + y]) return false;
    for (int i = 0; i < F_; ++i)
      if (s[i] + negrest_[(r + 1) * F_ + i] > bf_[i]) return false;
    return true;
  }

  void unplace_row(int r, const std::vector<std::int64_t>& row, std::vector<std::int64_t>& x,
                   std::vector<std::int64_t>& s, std::vector<std::int64_t>& cap) const {
    const int N = n_ * n_;
    for (int y = 0; y < n_; ++y) {
      x[r * n_ + y] = 0;
      cap[y] += row[y];
    }
    for (int i = 0; i < F_; ++i)
      for (int y = 0; y < n_; ++y) s[i] -= Af_[i * N + r * n_ + y] * row[y];
  }

  bool accept(const std::vector<std::int64_t>& x) const {
    const int N = n_ * n_;
    for (std::size_t i = 0; i < beq_.size(); ++i) {
      std::int64_t v = 0;
      for (int e = 0; e < N; ++e) v += Aeq_[i * N + e] * x[e];
      if (v != beq_[i]) return false;
    }
    for (int i = 0; i < F_; ++i) {
      std::int64_t v = 0;
      for (int e = 0; e < N; ++e) v += Af_[i * N + e] * x[e];
      if (v > bf_[i]) return false;
    }
    return true;
  }

  template <class Charge, class Visit>
  void rows(int r, std::vector<std::int64_t>& x, std::vector<std::int64_t>& s, std::vector<std::int64_t>& cap,
            Charge& charge, Visit& visit) const {
    charge();
    if (r == n_) {
      if (accept(x)) visit(x);
      return;
    }
    if (r == n_ - 1) {
      std::vector<std::int64_t> row(cap);
      bool ok = true;
      for (int y = 0; y < n_ && ok; ++y)
        if (row[y] != 0 && !support_[r * n_ + y]) ok = false;
      if (!ok) return;
      if (place_row(r, row, x, s, cap)) rows(r + 1, x, s, cap, charge, visit);
      unplace_row(r, row, x, s, cap);
      return;
    }
    std::vector<std::int64_t> row(n_, 0);
    std::vector<std::vector<std::int64_t>> options;
    fill_row(r, 0, m_, row, cap, [&](const std::vector<std::int64_t>& rr) { options.push_back(rr); });
    for (const auto& opt : options) {
      if (place_row(r, opt, x, s, cap)) rows(r + 1, x, s, cap, charge, visit);
      unplace_row(r, opt, x, s, cap);
    }
  }

  int n_;
  int m_;
  int F_ = 0;
  std::vector<bool> support_, later_support_;
  std::vector<std::int64_t> Aeq_, beq_, Af_, bf_, negrest_;
};

CountStrategy pick_strategy(const VPolytope& P, const CountOptions& opt) {
  if (opt.strategy != CountStrategy::automatic) {
    if (opt.strategy == CountStrategy::birkhoff_margins && P.birkhoff_order() == 0)
      fail(ErrorCode::invalid_argument, "margin enumeration needs permutation-matrix vertices");
    return opt.strategy;
  }
  // Margins pay off only when the polytope fills most of the Birkhoff polytope.
  const int n = P.birkhoff_order();
  if (n > 0 && P.dim() >= (n - 1) * (n - 1) - 1) return CountStrategy::birkhoff_margins;
  return CountStrategy::lattice_box;
}

// Runs `work(task)` for tasks [0, ntasks) striped across workers.
template <class Work>
void parallel_tasks(std::size_t ntasks, unsigned workers, Work&& work) {
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(ntasks, 1)));
  if (workers <= 1) {
    for (std::size_t t = 0; t < ntasks; ++t) work(t, 0u);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t t = w; t < ntasks; t += workers) work(t, w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

[[noreturn]] void budget_exceeded(const CountOptions& opt, int m) {
  fail(ErrorCode::budget_exceeded,
       "lattice point enumeration at dilate " + std::to_string(m) + " exceeded " + std::to_string(opt.budget) +
           " visits");
}

// Core enumeration; `on_points` receives ambient points when non-null.
std::uint64_t enumerate(const VPolytope& P, int m, const CountOptions& opt, bool interior,
                        std::vector<IntPoint>* points) {
  if (m < 0) fail(ErrorCode::invalid_argument, "negative dilate");
  const int d = P.dim();
  if (d == 0) {
    if (points) {
      IntPoint x = P.vertices()[0];
      for (auto& v : x) v *= m;
      points->push_back(x);
    }
    return 1;
  }
  const unsigned workers = resolve_workers(opt.workers);
  Budget budget(opt.budget);
  std::mutex mu;
  std::vector<std::uint64_t> counts(workers, 0);
  const auto& L = P.lattice();
  try {
    if (pick_strategy(P, opt) == CountStrategy::birkhoff_margins) {
      MarginEnumerator en(P, m, interior);
      auto firsts = en.first_rows();
      parallel_tasks(firsts.size(), workers, [&](std::size_t t, unsigned w) {
        en.run(firsts[t], budget, [&](const std::vector<std::int64_t>& x) {
          ++counts[w];
          if (points) {
            std::lock_guard<std::mutex> lock(mu);
            points->push_back(x);
          }
        });
      });
    } else {
      BoxEnumerator en(P, m, interior);
      std::int64_t lo, hi;
      std::vector<std::int64_t> zero(P.lattice_form().facets.size(), 0);
      if (en.range(0, zero, lo, hi)) {
        const std::size_t ntasks = static_cast<std::size_t>(hi - lo + 1);
        parallel_tasks(ntasks, workers, [&](std::size_t t, unsigned w) {
          const std::int64_t outer = lo + static_cast<std::int64_t>(t);
          auto visit = [&](std::vector<std::int64_t>& z, std::int64_t a, std::int64_t b) {
            if (a > b) return;
            counts[w] += static_cast<std::uint64_t>(b - a + 1);
            if (points) {
              std::lock_guard<std::mutex> lock(mu);
              for (std::int64_t v = a; v <= b; ++v) {
                z[d - 1] = v;
                points->push_back(from_lattice_coords(L, z, m));
              }
            }
          };
          if (d == 1) {
            std::vector<std::int64_t> z{outer};
            visit(z, outer, outer);
            if (!budget.charge(1)) throw BudgetHit{};
          } else {
            en.run(outer, budget, visit);
          }
        });
      }
    }
  } catch (const BudgetHit&) {
    budget_exceeded(opt, m);
  }
  if (points) std::sort(points->begin(), points->end());
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

}  // namespace

std::uint64_t count_lattice_points(const VPolytope& P, int m, const CountOptions& opt, bool interior) {
  return enumerate(P, m, opt, interior, nullptr);
}

std::vector<IntPoint> lattice_points(const VPolytope& P, int m, const CountOptions& opt) {
  std::vector<IntPoint> pts;
  enumerate(P, m, opt, false, &pts);
  return pts;
}

UniPoly ehrhart(const VPolytope& P, const CountOptions& opt) {
  const int d = P.dim();
  std::vector<Integer> values;
  for (int m = 0; m <= d; ++m) values.emplace_back(static_cast<unsigned long>(count_lattice_points(P, m, opt)));
  UniPoly p = UniPoly::interpolate_from_zero(values);
  for (int m = d + 1; m <= d + 3; ++m)
    if (p(static_cast<long>(m)).get_den() != 1)
      fail(ErrorCode::verification_failure, "Ehrhart interpolant is not integral at m=" + std::to_string(m));
  if (p.degree() != d) fail(ErrorCode::verification_failure, "Ehrhart interpolant has the wrong degree");
  return p;
}

std::vector<Integer> hstar_from_ehrhart(const UniPoly& ehr, int d) {
  std::vector<Integer> h(d + 1);
  for (int j = 0; j <= d; ++j) {
    Rational acc = 0;
    Integer binom = 1;  // C(d+1, i)
    for (int i = 0; i <= j; ++i) {
      Rational term = ehr(static_cast<long>(j - i)) * Rational(binom);
      acc += (i % 2 == 0) ? term : Rational(-term);
      binom = binom * (d + 1 - i) / (i + 1);
    }
    if (acc.get_den() != 1) fail(ErrorCode::verification_failure, "non-integral h* entry");
    if (acc < 0) fail(ErrorCode::negative_entry, "h*_" + std::to_string(j) + " = " + acc.get_str());
    h[j] = acc.get_num();
  }
  while (h.size() > 1 && h.back() == 0) h.pop_back();
  return h;
}

std::vector<Integer> hstar(const VPolytope& P, const CountOptions& opt) {
  return hstar_from_ehrhart(ehrhart(P, opt), P.dim());
}

std::uint64_t interior_count(const VPolytope& P, int m, const CountOptions& opt) {
  return count_lattice_points(P, m, opt, true);
}

Integer interior_count_from_ehrhart(const UniPoly& ehr, int d, int m) {
  Rational v = ehr(static_cast<long>(-m));
  if (d % 2) v = -v;
  if (v.get_den() != 1) fail(ErrorCode::verification_failure, "non-integral interior count");
  return v.get_num();
}

Integer normalized_volume_from_ehrhart(const UniPoly& ehr, int d) {
  Rational v = ehr.coeff(d);
  for (int i = 2; i <= d; ++i) v *= i;
  if (v.get_den() != 1) fail(ErrorCode::verification_failure, "non-integral normalized volume");
  return v.get_num();
}

Integer normalized_volume(const VPolytope& P, const CountOptions& opt) {
  return normalized_volume_from_ehrhart(ehrhart(P, opt), P.dim());
}

namespace {

struct AmbientChecker {
  std::vector<std::vector<std::int64_t>> A;
  std::vector<std::int64_t> b;

  explicit AmbientChecker(const VPolytope& P) {
    for (const auto& f : P.hrep().facets) {
      std::vector<std::int64_t> row;
      for (const auto& x : f.normal) row.push_back(x.get_si());
      A.push_back(std::move(row));
      b.push_back(f.offset.get_si());
    }
  }

  // y is assumed to lie in the affine hull of kP.
  bool in_dilate(const IntPoint& y, int k) const {
    for (std::size_t i = 0; i < A.size(); ++i) {
      std::int64_t s = 0;
      for (std::size_t e = 0; e < y.size(); ++e) s += A[i][e] * y[e];
      if (s > b[i] * k) return false;
    }
    return true;
  }
};

bool decompose_rec(const AmbientChecker& chk, const IntPoint& x, int k, const std::vector<IntPoint>& pts,
                   const std::set<IntPoint>& pts_set, std::set<std::pair<IntPoint, int>>& dead,
                   std::vector<IntPoint>& out, std::uint64_t& visits, std::uint64_t budget) {
  if (k == 1) {
    if (pts_set.count(x)) {
      out.push_back(x);
      return true;
    }
    return false;
  }
  if (dead.count({x, k})) return false;
  if (++visits > budget) throw BudgetHit{};
  IntPoint y(x.size());
  for (const auto& p : pts) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] - p[i];
    if (!chk.in_dilate(y, k - 1)) continue;
    out.push_back(p);
    if (decompose_rec(chk, y, k - 1, pts, pts_set, dead, out, visits, budget)) return true;
    out.pop_back();
  }
  dead.insert({x, k});
  return false;
}

}  // namespace

std::optional<std::vector<IntPoint>> decompose(const VPolytope& P, const IntPoint& x, int k,
                                               const std::vector<IntPoint>& points) {
  AmbientChecker chk(P);
  std::set<IntPoint> pts_set(points.begin(), points.end());
  std::set<std::pair<IntPoint, int>> dead;
  std::vector<IntPoint> out;
  std::uint64_t visits = 0;
  try {
    if (decompose_rec(chk, x, k, points, pts_set, dead, out, visits, UINT64_MAX)) return out;
  } catch (const BudgetHit&) {
  }
  return std::nullopt;
}

IdpResult is_idp(const VPolytope& P, int max_m, const CountOptions& opt) {
  IdpResult res;
  const auto pts = lattice_points(P, 1, opt);
  AmbientChecker chk(P);
  std::set<IntPoint> pts_set(pts.begin(), pts.end());
  std::set<std::pair<IntPoint, int>> dead;
  std::uint64_t visits = 0;
  for (int k = 2; k <= max_m; ++k) {
    for (const auto& x : lattice_points(P, k, opt)) {
      std::vector<IntPoint> out;
      bool ok;
      try {
        ok = decompose_rec(chk, x, k, pts, pts_set, dead, out, visits, opt.budget);
      } catch (const BudgetHit&) {
        budget_exceeded(opt, k);
      }
      if (!ok) {
        res.idp = false;
        res.witness = x;
        res.witness_dilate = k;
        return res;
      }
    }
  }
  return res;
}

nlohmann::json to_json(const HRep& h) {
  auto conv = [](const std::vector<Inequality>& v) {
    auto arr = nlohmann::json::array();
    for (const auto& q : v) {
      std::vector<std::string> normal;
      for (const auto& x : q.normal) normal.push_back(x.get_str());
      arr.push_back({{"normal", normal}, {"offset", q.offset.get_str()}});
    }
    return arr;
  };
  return {{"equalities", conv(h.equalities)}, {"facets", conv(h.facets)}};
}

}  // namespace patpoly
