#include "hlab/solutions.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace hlab {

GaussRat GaussRat::operator/(const GaussRat& o) const {
  Rat denom = o.re * o.re + o.im * o.im;
  if (denom == 0) throw std::domain_error("division by zero GaussRat");
  GaussRat num = *this * GaussRat{o.re, -o.im};
  return {num.re / denom, num.im / denom};
}

std::string GaussRat::str() const {
  if (im == 0) return re.get_str();
  std::string s = re.get_str();
  s += (im < 0) ? "-" : "+";
  Rat a = abs(im);
  s += a.get_str();
  s += "i";
  return s;
}

void FRingElem::insert(const Key& k, const GaussRat& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(k, c);
  if (!fresh) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

FRingElem FRingElem::term(GaussRat c, int mpow, int fpow, int fppow) {
  FRingElem e;
  e.insert({mpow, fpow, fppow}, c);
  return e;
}

FRingElem FRingElem::operator+(const FRingElem& o) const {
  FRingElem e = *this;
  for (const auto& [k, c] : o.terms_) e.insert(k, c);
  return e;
}

FRingElem FRingElem::operator-(const FRingElem& o) const {
  FRingElem e = *this;
  for (const auto& [k, c] : o.terms_) e.insert(k, -c);
  return e;
}

FRingElem FRingElem::operator*(const FRingElem& o) const {
  FRingElem e;
  for (const auto& [ka, ca] : terms_) {
    for (const auto& [kb, cb] : o.terms_) {
      GaussRat c = ca * cb;
      int mp = ka[0] + kb[0], fp = ka[1] + kb[1], fpp = ka[2] + kb[2];
      if (fpp == 2) {
        // f'^2 = f^2 - f^4
        e.insert({mp, fp + 2, 0}, c);
        e.insert({mp, fp + 4, 0}, -c);
      } else {
        e.insert({mp, fp, fpp}, c);
      }
    }
  }
  return e;
}

FRingElem FRingElem::scaled(const GaussRat& c) const {
  FRingElem e;
  for (const auto& [k, v] : terms_) e.insert(k, v * c);
  return e;
}

FRingElem FRingElem::dz() const {
  FRingElem e;
  for (const auto& [k, c] : terms_) {
    const int mp = k[0], p = k[1];
    if (k[2] == 0) {
      if (p >= 1) e.insert({mp, p - 1, 1}, c * GaussRat(Rat(p)));
    } else {
      // d/dz (f^p f') = (p+1) f^{p+1} - (p+2) f^{p+3}
      e.insert({mp, p + 1, 0}, c * GaussRat(Rat(p + 1)));
      e.insert({mp, p + 3, 0}, -(c * GaussRat(Rat(p + 2))));
    }
  }
  return e;
}

FRingElem FRingElem::dx_twisted() const {
  FRingElem im_m;
  for (const auto& [k, c] : terms_)
    im_m.insert({k[0] + 1, k[1], k[2]}, c * GaussRat(Rat(0), Rat(1)));
  return im_m + dz();
}

FRingElem FRingElem::eval_m(const Rat& m) const {
  FRingElem e;
  for (const auto& [k, c] : terms_) {
    Rat scale = 1;
    for (int i = 0; i < k[0]; ++i) scale *= m;
    e.insert({0, k[1], k[2]}, c * GaussRat(scale));
  }
  return e;
}

namespace {

Rat binom(int n, int k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rat(b);
}

}  // namespace

std::pair<Rat, Rat> delta_c_exact(int j, const Rat& n, const Rat& omega) {
  auto rpow = [](const Rat& x, int e) {
    Rat r = 1;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
  };
  Rat delta = 0, c = 0;
  for (int m = 0; m <= j; ++m) {
    Rat sign = (m % 2 == 0) ? 1 : -1;
    delta += sign * binom(2 * j + 1, 2 * m) * rpow(n, 2 * (j - m) + 1) * rpow(omega, 2 * m);
    c += -sign * binom(2 * j + 1, 2 * m + 1) * rpow(n, 2 * (j - m)) * rpow(omega, 2 * m);
  }
  return {delta, c};
}

std::pair<double, double> delta_c(int j, double n, double omega) {
  double delta = 0, c = 0;
  for (int m = 0; m <= j; ++m) {
    double sign = (m % 2 == 0) ? 1.0 : -1.0;
    double b0 = binom(2 * j + 1, 2 * m).get_d();
    double b1 = binom(2 * j + 1, 2 * m + 1).get_d();
    delta += sign * b0 * std::pow(n, 2 * (j - m) + 1) * std::pow(omega, 2 * m);
    c += -sign * b1 * std::pow(n, 2 * (j - m)) * std::pow(omega, 2 * m);
  }
  return {delta, c};
}

SechFamilyParams::SechFamilyParams(int j_, double n_, double omega_)
    : j(j_), carrier(n_), omega(omega_) {
  if (omega <= 0) throw std::invalid_argument("omega must be positive");
  auto [d, c] = hlab::delta_c(j, carrier, omega);
  delta = d;
  speed = c;
}

std::complex<double> v_family_eval(const SechFamilyParams& p, double x, double t) {
  std::complex<double> phase = std::exp(
      std::complex<double>(0.0, p.carrier * x + p.delta * t));
  return p.omega * phase / std::cosh(p.omega * (x - p.speed * t));
}

std::complex<double> v_family_fourier(const SechFamilyParams& p, double xi, double t) {
  const double pi = 4.0 * std::atan(1.0);
  double arg = pi * (xi - p.carrier) / (2.0 * p.omega);
  double env = (std::abs(arg) > 700.0) ? 0.0 : pi / std::cosh(arg);
  std::complex<double> phase =
      std::exp(std::complex<double>(0.0, p.delta * t - (xi - p.carrier) * p.speed * t));
  return env * phase;
}

namespace {

// e^{-i(Mx + delta_0 t)} (d_t u + (-1)^{j+1} d_x^{2j+1} u) for
// u = e^{i(Mx + delta_0 t)} f(x - c_0 t), as an element of the ring.
FRingElem linear_residual(int j) {
  FRingElem r;
  // d_t u = e^{i theta} (i delta_0 f - c_0 f')
  for (int n = 0; n <= j; ++n) {
    Rat sign = (n % 2 == 0) ? 1 : -1;
    r = r + FRingElem::term(GaussRat(Rat(0), sign * binom(2 * j + 1, 2 * n)),
                            2 * (j - n) + 1, 1, 0);
    r = r + FRingElem::term(GaussRat(sign * binom(2 * j + 1, 2 * n + 1)),
                            2 * (j - n), 0, 1);
  }
  FRingElem dx = FRingElem::f();
  for (int i = 0; i < 2 * j + 1; ++i) dx = dx.dx_twisted();
  if (j % 2 == 1) return r + dx;
  return r - dx;
}

FRingElem candidate_term(int j, int k, int l) {
  FRingElem fk = FRingElem::term(GaussRat(Rat(1)), 0, 2 * k, 0);  // |u|^{2k} = f^{2k}
  for (int i = 0; i < l; ++i) fk = fk.dz();
  FRingElem us = FRingElem::f();
  for (int i = 0; i < 2 * (j - k) + 1 - l; ++i) us = us.dx_twisted();
  return fk * us;
}

}  // namespace

CoefficientSet solve_coefficients(int j) {
  if (j < 1) throw std::invalid_argument("solve_coefficients requires j >= 1");

  std::vector<std::pair<int, int>> index;
  for (int k = 1; k <= j; ++k)
    for (int l = 0; l <= 2 * (j - k) + 1; ++l) index.emplace_back(k, l);
  const size_t ncols = index.size();  // j(j+1)

  std::vector<FRingElem> cand(ncols);
  for (size_t c = 0; c < ncols; ++c) cand[c] = candidate_term(j, index[c].first, index[c].second);
  FRingElem rhs = linear_residual(j);

  std::vector<FRingElem::Key> keys;
  auto collect = [&](const FRingElem& e) {
    for (const auto& [k, c] : e.terms())
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  };
  for (const auto& e : cand) collect(e);
  collect(rhs);

  // Augmented system: sum_c x_c cand[c][key] = -rhs[key] for every key.
  const size_t nrows = keys.size();
  std::vector<std::vector<GaussRat>> m(nrows, std::vector<GaussRat>(ncols + 1));
  for (size_t r = 0; r < nrows; ++r) {
    for (size_t c = 0; c < ncols; ++c) {
      auto it = cand[c].terms().find(keys[r]);
      if (it != cand[c].terms().end()) m[r][c] = it->second;
    }
    auto it = rhs.terms().find(keys[r]);
    if (it != rhs.terms().end()) m[r][ncols] = -it->second;
  }

  // Gaussian elimination over Q(i).
  size_t row = 0;
  std::vector<size_t> pivot_col;
  for (size_t col = 0; col < ncols && row < nrows; ++col) {
    size_t pr = row;
    while (pr < nrows && m[pr][col].is_zero()) ++pr;
    if (pr == nrows) continue;
    std::swap(m[row], m[pr]);
    GaussRat inv = GaussRat(Rat(1)) / m[row][col];
    for (size_t c = col; c <= ncols; ++c) m[row][c] = m[row][c] * inv;
    for (size_t r = 0; r < nrows; ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      GaussRat factor = m[r][col];
      for (size_t c = col; c <= ncols; ++c) m[r][c] = m[r][c] - factor * m[row][c];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (size_t r = row; r < nrows; ++r) {
    if (!m[r][ncols].is_zero()) throw SingularSystem("inconsistent matching system");
  }

  CoefficientSet out;
  out.j = j;
  for (size_t c = 0; c < ncols; ++c) out.a[index[c]] = GaussRat();  // free vars -> 0
  for (size_t r = 0; r < pivot_col.size(); ++r) out.a[index[pivot_col[r]]] = m[r][ncols];

  if (!residual_check(j, out).is_zero())
    throw SingularSystem("matching system admits no exact solution");
  return out;
}

FRingElem residual_check(int j, const CoefficientSet& coeffs) {
  FRingElem r = linear_residual(j);
  for (const auto& [kl, a] : coeffs.a)
    r = r + candidate_term(j, kl.first, kl.second).scaled(a);
  return r;
}

double kdv_soliton(double c, double x, double t) {
  if (c <= 0) throw std::invalid_argument("soliton speed must be positive");
  double s = 1.0 / std::cosh(std::sqrt(c) * (x - c * t) / 2.0);
  return -0.5 * c * s * s;
}

namespace {

// Naive DFT pair under modes-as-coefficients convention:
// u(x_m) = sum_k modes[k] e^{i xi_k x_m}. Grid sizes here are small.
std::vector<std::complex<double>> dft_core(const std::vector<std::complex<double>>& in,
                                           double dir) {
  const size_t n = in.size();
  const double pi = 4.0 * std::atan(1.0);
  std::vector<std::complex<double>> out(n);
  for (size_t k = 0; k < n; ++k) {
    double ang = dir * 2.0 * pi * double(k) / double(n);
    std::complex<double> step(std::cos(ang), std::sin(ang));
    std::complex<double> w = 1.0, sum = 0.0;
    for (size_t m = 0; m < n; ++m) {
      sum += in[m] * w;
      w *= step;
    }
    out[k] = sum;
  }
  return out;
}

std::vector<std::complex<double>> dft_forward(const std::vector<std::complex<double>>& u) {
  auto modes = dft_core(u, -1.0);
  for (auto& m : modes) m /= double(u.size());
  return modes;
}

std::vector<std::complex<double>> dft_inverse(const std::vector<std::complex<double>>& modes) {
  return dft_core(modes, 1.0);
}

std::vector<std::complex<double>> spectral_derivative(
    const std::vector<std::complex<double>>& u, int order, double l) {
  const size_t n = u.size();
  const double pi = 4.0 * std::atan(1.0);
  auto modes = dft_forward(u);
  for (size_t k = 0; k < n; ++k) {
    long kk = static_cast<long>(k);
    if (kk >= static_cast<long>(n) / 2) kk -= static_cast<long>(n);
    if (order % 2 == 1 && kk == -static_cast<long>(n) / 2) {
      modes[k] = 0;  // Nyquist asymmetry
      continue;
    }
    std::complex<double> mult = std::pow(std::complex<double>(0.0, 2.0 * pi * kk / l), order);
    modes[k] *= mult;
  }
  return dft_inverse(modes);
}

}  // namespace

double residual_check_numeric(int j, const CoefficientSet& coeffs,
                              const SechFamilyParams& p, int grid_m, double grid_l,
                              double t) {
  const int n = grid_m;
  std::vector<std::complex<double>> v(n), vt(n);
  for (int m = 0; m < n; ++m) {
    double x = grid_l * m / n - grid_l / 2.0;
    v[m] = v_family_eval(p, x, t);
    // d_t v analytically: i delta v - c omega^2 e^{i(Nx+delta t)} f'(omega(x-ct))
    double z = p.omega * (x - p.speed * t);
    std::complex<double> phase =
        std::exp(std::complex<double>(0.0, p.carrier * x + p.delta * t));
    double fp = -std::tanh(z) / std::cosh(z);
    vt[m] = std::complex<double>(0.0, p.delta) * v[m] -
            p.speed * p.omega * p.omega * phase * fp;
  }

  std::vector<std::complex<double>> residual = vt;
  double sign = (j % 2 == 1) ? 1.0 : -1.0;
  auto disp = spectral_derivative(v, 2 * j + 1, grid_l);
  for (int m = 0; m < n; ++m) residual[m] += sign * disp[m];

  for (const auto& [kl, a] : coeffs.a) {
    if (a.is_zero()) continue;
    const auto [k, l] = kl;
    std::vector<std::complex<double>> vk(n);
    for (int m = 0; m < n; ++m) vk[m] = std::pow(std::abs(v[m]), 2 * k);
    if (l > 0) vk = spectral_derivative(vk, l, grid_l);
    auto vd = spectral_derivative(v, 2 * (j - k) + 1 - l, grid_l);
    std::complex<double> ac = a.to_complex();
    for (int m = 0; m < n; ++m) residual[m] += ac * vk[m] * vd[m];
  }

  double max_res = 0, max_vt = 0;
  for (int m = 0; m < n; ++m) {
    max_res = std::max(max_res, std::abs(residual[m]));
    max_vt = std::max(max_vt, std::abs(vt[m]));
  }
  return max_res / max_vt;
}

}  // namespace hlab
