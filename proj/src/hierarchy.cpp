#include "hlab/hierarchy.hpp"

#include <mutex>
#include <vector>

namespace hlab {

namespace {

const DiffPoly& u() {
  static const DiffPoly p = DiffPoly::var(0);
  return p;
}

std::mutex table_mutex;

}  // namespace

DiffPoly lenard_apply(const DiffPoly& g) {
  return d_x(g, 3) - Rat(2) * DiffPoly::var(1) * g - Rat(4) * u() * d_x(g);
}

DiffPoly kdv_gradient(int j) {
  if (j < 1) throw std::invalid_argument("kdv_gradient requires j >= 1");
  std::lock_guard<std::mutex> lock(table_mutex);
  static std::vector<DiffPoly> table = {
      DiffPoly::var(2) - Rat(3) * DiffPoly::monomial(1, {0, 0})};  // G_1
  while (static_cast<int>(table.size()) < j)
    table.push_back(antiderivative(-lenard_apply(table.back())));
  return table[j - 1];
}

DiffPoly mkdv_gradient(int j) {
  if (j < 1) throw std::invalid_argument("mkdv_gradient requires j >= 1");
  // Gt_j = (-d_x + 2v) S with S = G_{j-1}(d_x v + v^2), G_0 = -u.
  DiffPoly g_prev = (j == 1) ? -u() : kdv_gradient(j - 1);
  DiffPoly miura = DiffPoly::var(1) + DiffPoly::monomial(1, {0, 0});
  DiffPoly s = substitute(g_prev, miura);
  return -d_x(s) + Rat(2) * u() * s;
}

DiffPoly mkdv_gradient_via_recursion(int j) {
  if (j < 2) throw std::invalid_argument("mkdv_gradient_via_recursion requires j >= 2");
  DiffPoly g = mkdv_gradient(1);
  for (int k = 1; k < j; ++k) {
    DiffPoly w = d_x(g);
    DiffPoly a = d_x(w, 2) - Rat(4) * DiffPoly::monomial(1, {0, 0}) * w -
                 Rat(4) * DiffPoly::var(1) * antiderivative(u() * w);
    DiffPoly next = antiderivative(a);
    // Fix ct_k by matching the dispersion coefficient of the direct route.
    Rat have = next.coefficient({2 * (k + 1)});
    Rat want = mkdv_gradient(k + 1).coefficient({2 * (k + 1)});
    if (have == 0) throw InternalError("recursion lost the dispersion term");
    g = next * (want / have);
  }
  return g;
}

HierarchyEquation hierarchy_equation(Family family, int j) {
  if (j < 1) throw std::invalid_argument("hierarchy_equation requires j >= 1");
  DiffPoly grad = (family == Family::KdV) ? kdv_gradient(j) : mkdv_gradient(j);
  DiffPoly eq = d_x(grad);

  HierarchyEquation out{family, j, Rat(0), DiffPoly::zero()};
  std::vector<DiffMonomial> nonlinear;
  for (const auto& t : eq.terms()) {
    if (t.degree() == 1 && t.orders[0] == 2 * j + 1) {
      out.dispersion_coeff = t.coeff;
      continue;
    }
    const int m = t.degree();
    const int n = t.deriv_index();
    if (family == Family::KdV) {
      // degree k in [2, j+1], derivative count 2(j-k)+3
      if (m < 2 || m > j + 1 || n != 2 * (j - m) + 3)
        throw ShapeViolation("kdv j=" + std::to_string(j) + " monomial degree " +
                             std::to_string(m) + " index " + std::to_string(n));
    } else {
      // odd degree 2k+1 with k in [1, j], derivative count 2(j-k)+1
      if (m % 2 == 0 || m < 3 || m > 2 * j + 1 || n != 2 * j + 2 - m)
        throw ShapeViolation("mkdv j=" + std::to_string(j) + " monomial degree " +
                             std::to_string(m) + " index " + std::to_string(n));
    }
    nonlinear.push_back(t);
  }
  if (out.dispersion_coeff == 0) throw ShapeViolation("missing dispersion term");
  out.nonlinear = DiffPoly::from_terms(std::move(nonlinear));
  // Both nonlinear parts are total x-derivatives; let NotExact propagate.
  antiderivative(out.nonlinear);
  return out;
}

DiffPoly hamiltonian_density(Family family, int k) {
  DiffPoly g;
  if (family == Family::KdV) {
    if (k < 0) throw std::invalid_argument("kdv density requires k >= 0");
    g = (k == 0) ? -u() : kdv_gradient(k);
  } else {
    if (k < 1) throw std::invalid_argument("mkdv density requires k >= 1");
    g = mkdv_gradient(k);
  }
  // Homotopy formula P = int_0^1 u G(lambda u) dlambda: a degree-m monomial
  // of G contributes u*T/(m+1).
  DiffPoly p;
  for (const auto& t : g.terms()) {
    DiffPoly term = DiffPoly::monomial(t.coeff / (t.degree() + 1), t.orders) * u();
    p = p + term;
  }
  return p;
}

bool involution_check(Family family, int k, int l) {
  auto grad = [&](int i) {
    if (family == Family::KdV) return (i == 0) ? -u() : kdv_gradient(i);
    return mkdv_gradient(i);
  };
  return euler(grad(k) * d_x(grad(l))).is_zero();
}

bool miura_identity_check(int j) {
  DiffPoly miura = DiffPoly::var(1) + DiffPoly::monomial(1, {0, 0});
  DiffPoly lhs = substitute(d_x(kdv_gradient(j)), miura);
  DiffPoly q = d_x(mkdv_gradient(j));
  DiffPoly rhs = d_x(q) + Rat(2) * u() * q;
  return lhs == rhs;
}

bool scaling_check(const HierarchyEquation& eq) {
  const int target = (eq.family == Family::KdV) ? 2 * eq.j + 3 : 2 * eq.j + 2;
  auto weight = [&](int m, int n) {
    return (eq.family == Family::KdV) ? 2 * m + n : m + n;
  };
  if (weight(1, 2 * eq.j + 1) != target) return false;  // dispersion term
  for (const auto& t : eq.nonlinear.terms()) {
    if (weight(t.degree(), t.deriv_index()) != target) return false;
  }
  return true;
}

}  // namespace hlab
