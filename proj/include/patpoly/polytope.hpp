#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <json.hpp>

#include "patpoly/exactlinalg.hpp"
#include "patpoly/unipoly.hpp"

namespace patpoly {

/// normal . x <= offset (or == offset for equalities).
struct Inequality {
  ZVector normal;
  Integer offset;
};

/// Ambient description. Facet normals are primitive, orthogonal to the
/// equalities, and sorted lexicographically.
struct HRep {
  std::vector<Inequality> equalities;
  std::vector<Inequality> facets;
  std::vector<boost::dynamic_bitset<>> incidence;  // vertices tight on each facet
};

/// Facets in lattice coordinates z (x = origin + B z): normal . z <= offset.
struct LatticeFacet {
  std::vector<std::int64_t> normal;
  std::int64_t offset = 0;
};

struct LatticeForm {
  std::vector<IntPoint> vertex_coords;
  std::vector<LatticeFacet> facets;  // same order as HRep::facets
};

/// Lattice polytope given by its vertices.
class VPolytope {
 public:
  /// Sorts the vertices; throws on duplicates, empty input or ragged points.
  explicit VPolytope(std::vector<IntPoint> vertices);
  /// Drops points that are not vertices of the hull.
  static VPolytope hull_of(std::vector<IntPoint> points);
  static VPolytope from_json(const nlohmann::json& j);

  int ambient_dim() const;
  std::size_t num_vertices() const;
  const std::vector<IntPoint>& vertices() const;
  int dim() const;
  const AffineLatticeBasis& lattice() const;

  /// Computed once by double description and cached.
  const LatticeForm& lattice_form() const;
  const HRep& hrep() const;
  bool has_hrep() const;

  /// n when every vertex is a flattened n x n permutation matrix, else 0.
  int birkhoff_order() const;

  nlohmann::json to_json() const;

  struct State;  // shared, immutable once facets are computed

 private:
  std::shared_ptr<State> s_;
};

inline int dimension(const VPolytope& P) { return P.dim(); }
inline const HRep& facets(const VPolytope& P) { return P.hrep(); }

/// Uses the cached H-representation when present, otherwise an exact LP.
/// `strict` asks for the relative interior.
bool contains_point(const VPolytope& P, std::span<const Rational> x, bool strict = false);
bool contains_point_lp(const VPolytope& P, std::span<const Rational> x, bool strict = false);
bool contains_point_hrep(const VPolytope& P, std::span<const Rational> x, bool strict = false);

/// (f_{-1}, f_0, ..., f_dim) = (1, #vertices, ..., 1).
std::vector<std::uint64_t> f_vector(const VPolytope& P);

enum class CountStrategy { automatic, lattice_box, birkhoff_margins };

struct CountOptions {
  std::uint64_t budget = 1'000'000'000ULL;  // search-node visits
  unsigned workers = 0;                      // 0: hardware concurrency
  CountStrategy strategy = CountStrategy::automatic;
};

/// #(mP ∩ Z^N), or interior points when `interior` is set.
std::uint64_t count_lattice_points(const VPolytope& P, int m, const CountOptions& opt = {},
                                   bool interior = false);
/// The lattice points of mP in ambient coordinates, sorted.
std::vector<IntPoint> lattice_points(const VPolytope& P, int m, const CountOptions& opt = {});

/// Interpolated from counts at m = 0..dim; integrality is checked at dim+1..dim+3.
UniPoly ehrhart(const VPolytope& P, const CountOptions& opt = {});

/// h* from an Ehrhart polynomial of a d-dimensional lattice polytope; trailing
/// zeros dropped. Throws NegativeEntry if a coefficient is negative.
std::vector<Integer> hstar_from_ehrhart(const UniPoly& ehr, int d);
std::vector<Integer> hstar(const VPolytope& P, const CountOptions& opt = {});

/// Interior points of mP by enumeration; the second form uses reciprocity.
std::uint64_t interior_count(const VPolytope& P, int m, const CountOptions& opt = {});
Integer interior_count_from_ehrhart(const UniPoly& ehr, int d, int m);

Integer normalized_volume_from_ehrhart(const UniPoly& ehr, int d);
Integer normalized_volume(const VPolytope& P, const CountOptions& opt = {});

struct IdpResult {
  bool idp = true;
  std::optional<IntPoint> witness;  // lattice point of k P with no decomposition
  int witness_dilate = 0;
};
/// Checks that every lattice point of kP, 2 <= k <= max_m, is a sum of k lattice points of P.
IdpResult is_idp(const VPolytope& P, int max_m, const CountOptions& opt = {});
/// Decomposes x in kP into k lattice points of P (from `points`), if possible.
std::optional<std::vector<IntPoint>> decompose(const VPolytope& P, const IntPoint& x, int k,
                                               const std::vector<IntPoint>& points);

nlohmann::json to_json(const HRep& h);

}  // namespace patpoly
