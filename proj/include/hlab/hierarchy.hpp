#ifndef HLAB_HIERARCHY_HPP
#define HLAB_HIERARCHY_HPP

#include "hlab/diffpoly.hpp"

namespace hlab {

enum class Family { KdV, mKdV };

inline const char* family_name(Family f) { return f == Family::KdV ? "kdv" : "mkdv"; }
inline char family_symbol(Family f) { return f == Family::KdV ? 'u' : 'v'; }
inline RankConvention family_rank(Family f) {
  return f == Family::KdV ? RankConvention::KdV : RankConvention::mKdV;
}

// A generated monomial violated the degree / derivative-count normal form.
struct ShapeViolation : std::runtime_error {
  explicit ShapeViolation(const std::string& what) : std::runtime_error(what) {}
};

// d_x(gradient) split into the pure dispersion term and the rest.
struct HierarchyEquation {
  Family family;
  int j;
  Rat dispersion_coeff;  // coefficient of d^{2j+1} u
  DiffPoly nonlinear;
};

// N g = d_x^3 g - 2 u_1 g - 4 u d_x g.
DiffPoly lenard_apply(const DiffPoly& g);

// G_1 = u_2 - 3u^2, then G_{k+1} = antiderivative(-N G_k). Memoized.
DiffPoly kdv_gradient(int j);

// Gt_j = (-d_x + 2v) G_{j-1}(d_x v + v^2), with G_0 = -u. Memoized.
DiffPoly mkdv_gradient(int j);

// Independent route: d_x Gt_{k+1} = ct_k (d_x^2 - 4v^2 - 4 v_1 d_x^{-1} v.) d_x Gt_k,
// ct_k fixed by matching the dispersion coefficient of the direct route.
DiffPoly mkdv_gradient_via_recursion(int j);

HierarchyEquation hierarchy_equation(Family family, int j);

// Density with euler(P) = G_k, via the exact homotopy formula.
DiffPoly hamiltonian_density(Family family, int k);

// true iff euler(G_k * d_x G_l) = 0. KdV admits k,l >= 0, mKdV k,l >= 1.
bool involution_check(Family family, int k, int l);

// substitute(d_x G_j, v_1 + v^2) == (d_x + 2v) d_x Gt_j as exact identity.
bool miura_identity_check(int j);

// Pure weight audit: every term of the equation carries scaling weight
// 2j+3 (KdV, weight 2m+n) resp. 2j+2 (mKdV, weight m+n).
bool scaling_check(const HierarchyEquation& eq);

}  // namespace hlab

#endif
