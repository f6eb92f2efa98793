#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "patpoly/polytope.hpp"
#include "patpoly/posets.hpp"

namespace patpoly {

/// conv of the permutation matrices along a chain of the lattice.
struct ChainSimplex {
  std::vector<int> chain;  // lattice indices, bottom to top
  std::vector<IntPoint> vertices;
  std::vector<int> labels;
  int descent_count = 0;
};

/// One simplex per maximal chain, in depth-first chain order.
std::vector<ChainSimplex> order_complex_simplices(const PermPoset& L, const EdgeLabeling& lambda,
                                                  bool reversed = false);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct TriangulationOptions {
  bool check_intersections = true;  // pairwise LP, quadratic in the simplex count
  bool check_flag = true;           // enumerates every chain of the lattice
  bool check_barycenters = true;
  std::optional<Integer> hook_volume;  // closed-form oracle, when known
  CountOptions count;
  unsigned workers = 0;
};

struct TriangulationReport {
  int polytope_dim = 0;
  std::size_t simplex_count = 0;
  Integer volume;  // from the Ehrhart polynomial
  std::vector<CheckResult> checks;
  bool all_pass() const;
  nlohmann::json to_json() const;
};

/// Checks unimodularity, dimensions, volume accounting, proper pairwise
/// intersections, the flag property and barycenter separation.
TriangulationReport verify_unimodular_triangulation(const VPolytope& P, const PermPoset& L,
                                                    const std::vector<ChainSimplex>& simplices,
                                                    const TriangulationOptions& opt = {});
/// Throws VerificationFailure naming the first failing check.
void require_triangulation(const TriangulationReport& r);

struct ShellingH {
  std::vector<Integer> from_descents;     // padded to dim + 1
  std::vector<Integer> from_restrictions; // shelling in lexicographic label order
  std::vector<Integer> hstar;             // Ehrhart
};
/// Throws MismatchAgainstEhrhart unless the three vectors agree.
ShellingH hstar_via_shelling(const VPolytope& P, const PermPoset& L, const EdgeLabeling& lambda,
                             const CountOptions& opt = {});

struct GorensteinReport {
  bool palindromic = false;
  bool unimodal = false;
  int first_interior_dilate = 0;         // dim - deg h* + 1
  Integer interior_by_reciprocity;       // at that dilate
  std::optional<std::uint64_t> interior_by_enumeration;
  std::optional<std::uint64_t> interior_before;  // at the previous dilate
  bool gorenstein_candidate() const { return palindromic && interior_by_reciprocity == 1; }
  nlohmann::json to_json() const;
};
GorensteinReport gorenstein_checks(const VPolytope& P, const std::vector<Integer>& hstar,
                                   const UniPoly& ehr, bool enumerate = true,
                                   const CountOptions& opt = {});

}  // namespace patpoly
