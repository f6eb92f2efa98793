#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "patpoly/perms.hpp"
#include "patpoly/polytope.hpp"

namespace patpoly {

/// One-line notation as a point of Z^n.
IntPoint perm_point(const Permutation& sigma);
/// Permutation matrix m_{x,y} = [sigma(x) = y], flattened with x outer.
IntPoint perm_matrix_point(const Permutation& sigma);

/// conv of Av_n(patterns) in one-line notation. Throws EmptyClass.
VPolytope permutohedron(int n, const PatternSet& patterns);
/// conv of the permutation matrices of Av_n(patterns), or of the up-down class.
VPolytope birkhoff(int n, const PatternSet& patterns, bool alternating = false);
/// Permutation matrices with m_{x,y} = 0 whenever x >= n+3-y.
VPolytope cry(int n);
std::vector<Permutation> cry_permutations(int n);

std::vector<IntPoint> pitman_stanley_vertices(const std::vector<int>& c);
VPolytope pitman_stanley(const std::vector<int>& c);
/// x >= 0 and x_1 + ... + x_j <= c_1 + ... + c_j for all j.
bool pitman_stanley_contains(const std::vector<int>& c, const IntPoint& x);

/// Standard simplex conv(e_1, ..., e_{d+1}).
VPolytope standard_simplex(int d);

/// Sum over independent generator subsets X of gcd(full minors of X) m^|X|.
UniPoly zonotope_ehrhart(const std::vector<IntPoint>& generators);

/// Face lattice check against the d-cube: 2d facets falling into d disjoint opposite
/// pairs, every vertex on exactly one facet of each pair, and all 2^d sign patterns hit.
bool is_combinatorial_cube(const VPolytope& P);

Integer factorial(long n);
Integer binomial(long n, long k);
Integer falling_factorial(long n, long k);
Integer derangements(long n);
Integer catalan(long n);
Integer trees(long n);  // n^{n-2}
/// Coefficients of sum over S_n of t^{des}.
std::vector<Integer> eulerian(long n);
/// Standard shifted tableaux of staircase shape (n-1, ..., 1).
Integer hook_shifted(long n);
/// Standard tableaux of staircase shape (k-1, ..., 1).
Integer hook_staircase(long k);
/// (a m + 1)/n! prod_{j=2}^{n} ((a + n b) m + j).
UniPoly ps_ehrhart(int n, long a, long b);
/// Named evaluators: falling(n,k), derangements(n), catalan(n), trees(n),
/// hook_shifted(n), hook_staircase(k), factorial(n), binomial(n,k).
Integer closed_form_eval(std::string_view kind, const std::vector<long>& params);

/// Closed Ehrhart formulas by id; throws UnknownId.
UniPoly proposition_formula(std::string_view id, int n);
std::vector<std::string> proposition_ids();

/// Named constructions: "P(4;123)", "B(4;132,312)", "Balt(8;123)" (also
/// "altB(8;123)"), "CRY(5)", "PS(1,1,1)", "Simplex(3)".
struct Construction {
  enum class Kind { permutohedron, birkhoff, birkhoff_alternating, cry, pitman_stanley, simplex };
  Kind kind = Kind::permutohedron;
  int n = 0;
  PatternSet patterns;
  std::vector<int> c;
  std::string name() const;
};

Construction parse_construction(std::string_view text);
VPolytope build(const Construction& c);
std::vector<Permutation> construction_class(const Construction& c);

}  // namespace patpoly
