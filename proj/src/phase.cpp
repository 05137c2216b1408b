#include "hlab/phase.hpp"

#include <cmath>
#include <limits>

namespace hlab {

void SymmetricPoly3::insert(const Key& k, const Rat& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

SymmetricPoly3 SymmetricPoly3::variable(int i) {
  SymmetricPoly3 p;
  Key k{0, 0, 0};
  k[i] = 1;
  p.terms_[k] = 1;
  return p;
}

SymmetricPoly3 SymmetricPoly3::constant(Rat c) {
  SymmetricPoly3 p;
  if (c != 0) p.terms_[{0, 0, 0}] = std::move(c);
  return p;
}

SymmetricPoly3 SymmetricPoly3::operator+(const SymmetricPoly3& o) const {
  SymmetricPoly3 p = *this;
  for (const auto& [k, c] : o.terms_) p.insert(k, c);
  return p;
}

SymmetricPoly3 SymmetricPoly3::operator-(const SymmetricPoly3& o) const {
  SymmetricPoly3 p = *this;
  for (const auto& [k, c] : o.terms_) p.insert(k, -c);
  return p;
}

SymmetricPoly3 SymmetricPoly3::operator*(const SymmetricPoly3& o) const {
  SymmetricPoly3 p;
  for (const auto& [ka, ca] : terms_) {
    for (const auto& [kb, cb] : o.terms_) {
      p.insert({ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]}, ca * cb);
    }
  }
  return p;
}

SymmetricPoly3 SymmetricPoly3::pow(int n) const {
  SymmetricPoly3 r = constant(1);
  for (int i = 0; i < n; ++i) r = r * *this;
  return r;
}

SymmetricPoly3 SymmetricPoly3::divide_exact(int a, int b) const {
  // Long division in xi_a with coefficients polynomial in the other two
  // variables: dividing sum c_k xi_a^k by (xi_a + xi_b).
  int dmax = 0;
  for (const auto& [k, c] : terms_) dmax = std::max(dmax, k[a]);
  std::vector<SymmetricPoly3> coeff(dmax + 1);
  for (const auto& [k, c] : terms_) {
    Key rest = k;
    rest[a] = 0;
    coeff[k[a]].insert(rest, c);
  }
  SymmetricPoly3 xb = variable(b);
  SymmetricPoly3 quotient;
  for (int k = dmax; k >= 1; --k) {
    // q_{k-1} = c_k; c_{k-1} -= xi_b * q_{k-1}
    for (const auto& [key, c] : coeff[k].terms_) {
      Key shifted = key;
      shifted[a] = k - 1;
      quotient.insert(shifted, c);
    }
    coeff[k - 1] = coeff[k - 1] - xb * coeff[k];
  }
  if (!coeff[0].is_zero()) throw InternalError("nonzero remainder in resonance division");
  return quotient;
}

bool SymmetricPoly3::symmetric() const {
  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                  {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (const auto& p : perms) {
    for (const auto& [k, c] : terms_) {
      Key pk{k[p[0]], k[p[1]], k[p[2]]};
      auto it = terms_.find(pk);
      if (it == terms_.end() || it->second != c) return false;
    }
  }
  return true;
}

Rat SymmetricPoly3::eval(const Rat& x1, const Rat& x2, const Rat& x3) const {
  auto rpow = [](const Rat& x, int n) {
    Rat r = 1;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
  };
  Rat sum = 0;
  for (const auto& [k, c] : terms_)
    sum += c * rpow(x1, k[0]) * rpow(x2, k[1]) * rpow(x3, k[2]);
  return sum;
}

double SymmetricPoly3::eval(double x1, double x2, double x3) const {
  double sum = 0;
  for (const auto& [k, c] : terms_)
    sum += c.get_d() * std::pow(x1, k[0]) * std::pow(x2, k[1]) * std::pow(x3, k[2]);
  return sum;
}

SymmetricPoly3 resonance_sigma(int j) {
  if (j < 1) throw std::invalid_argument("resonance_sigma requires j >= 1");
  SymmetricPoly3 x1 = SymmetricPoly3::variable(0);
  SymmetricPoly3 x2 = SymmetricPoly3::variable(1);
  SymmetricPoly3 x3 = SymmetricPoly3::variable(2);
  const int p = 2 * j + 1;
  SymmetricPoly3 lhs = (x1 + x2 + x3).pow(p) - x1.pow(p) - x2.pow(p) - x3.pow(p);
  return lhs.divide_exact(0, 1).divide_exact(1, 2).divide_exact(2, 0);
}

RatioReport resonance_lower_bound_check(int j,
                                        std::span<const std::array<double, 3>> samples,
                                        double c_j) {
  SymmetricPoly3 sigma = resonance_sigma(j);
  double min_ratio = std::numeric_limits<double>::infinity();
  size_t used = 0;
  for (const auto& s : samples) {
    double rhs = std::pow(s[0] + s[1], 2 * j - 2) + std::pow(s[1] + s[2], 2 * j - 2) +
                 std::pow(s[2] + s[0], 2 * j - 2);
    if (rhs == 0) continue;
    ++used;
    min_ratio = std::min(min_ratio, sigma.eval(s[0], s[1], s[2]) / rhs);
  }
  return {used == 0 || min_ratio >= c_j, min_ratio, used};
}

double quadratic_resonance(int j, double xi1, double xi2) {
  return std::abs(xi1 * xi2 * (xi1 + xi2)) *
         (std::pow(xi1, 2 * j - 2) + std::pow(xi2, 2 * j - 2));
}

CriticalExponents critical_exponents(Family family, int j, const Rat& r) {
  if (j < 1) throw std::invalid_argument("critical_exponents requires j >= 1");
  if (!(r > 1 && r <= 2)) throw DomainError("r must lie in (1, 2]");
  CriticalExponents out;
  out.family = family;
  out.j = j;
  out.s_crit = (family == Family::KdV) ? Rat(-3, 2) : Rat(-1, 2);
  // 1/r' = 1 - 1/r = (r-1)/r
  Rat inv_rprime = (r - 1) / r;
  out.s_j = Rat(2 * j - 1) * inv_rprime / 2;
  out.kdv_threshold = Rat(j) - Rat(3, 2) - Rat(1, 2 * j) + out.s_j;
  out.kdv_threshold.canonicalize();
  out.s_j.canonicalize();
  return out;
}

}  // namespace hlab
