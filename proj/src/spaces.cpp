#include "hlab/spaces.hpp"

#include <algorithm>
#include <cmath>

namespace hlab {

namespace {

// Composite Simpson with the edge-decay validation shared by the norms.
double simpson_validated(const std::function<double(double)>& g, double lo,
                         double hi, double step, bool check_tail) {
  if (!(hi > lo) || !(step > 0.0)) throw WindowError("empty window or bad step");
  long n = std::lround(std::ceil((hi - lo) / step));
  if (n < 2) n = 2;
  if (n % 2 == 1) ++n;
  double h = (hi - lo) / n;

  std::vector<double> v(n + 1);
  double peak = 0.0;
  for (long i = 0; i <= n; ++i) {
    v[i] = g(lo + i * h);
    peak = std::max(peak, v[i]);
  }
  if (check_tail && peak > 0.0 &&
      (v.front() > 1e-12 * peak || v.back() > 1e-12 * peak))
    throw WindowError("integrand has not decayed at the window edges");

  double sum = v.front() + v.back();
  for (long i = 1; i < n; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * v[i];
  return sum * h / 3.0;
}

double bracket(double xi) { return std::sqrt(1.0 + xi * xi); }

}  // namespace

NormSpec::NormSpec(double s_, double r_) : s(s_), r(r_) {
  if (!(r > 1.0) || !(r <= 2.0)) throw DomainError("norm index r must lie in (1, 2]");
}

double hhat_norm_grid(const SpectralState& state, const NormSpec& spec) {
  const Grid& g = state.grid;
  double rp = spec.rprime();
  double dxi = 2.0 * Grid::pi() / g.L;
  double sum = 0.0;
  for (int k = 0; k < g.M; ++k) {
    double amp = std::pow(bracket(g.xi(k)), spec.s) * std::abs(state.modes[k]) * g.L;
    if (amp > 0.0) sum += std::pow(amp, rp);
  }
  return std::pow(dxi * sum, 1.0 / rp);
}

double hhat_norm_quadrature(const std::function<Cplx(double)>& fhat,
                            const NormSpec& spec, double lo, double hi,
                            double step) {
  double rp = spec.rprime();
  auto g = [&](double xi) {
    double amp = std::pow(bracket(xi), spec.s) * std::abs(fhat(xi));
    return amp > 0.0 ? std::pow(amp, rp) : 0.0;
  };
  return std::pow(simpson_validated(g, lo, hi, step, true), 1.0 / rp);
}

IllposedScenario::IllposedScenario(int j_, double r_, double s_, double c_,
                                   double t_, std::vector<double> n_list_)
    : j(j_), r(r_), s(s_), C(c_), T(t_), n_list(std::move(n_list_)) {
  if (j < 1) throw DomainError("scenario needs j >= 1");
  NormSpec check(s, r);  // validates r
  double rp = check.rprime();
  double s_top = (2.0 * j - 1.0) / (2.0 * rp);
  if (!(s > -1.0 / rp) || !(s < s_top))
    throw DomainError("scenario s outside (-1/r', (2j-1)/(2r'))");
  if (!(C > 0.0) || !(T > 0.0)) throw DomainError("scenario needs C > 0, T > 0");
  if (n_list.empty() || !std::is_sorted(n_list.begin(), n_list.end()))
    throw DomainError("carrier list must be increasing and nonempty");
}

double IllposedScenario::omega(double n) const {
  return std::pow(n, -s * (r / (r - 1.0)));
}

double IllposedScenario::n2(double n) const {
  double rp = r / (r - 1.0);
  return n + (C / T) * std::pow(n, s * rp - (2.0 * j - 1.0));
}

DemoReport illposed_demo(const IllposedScenario& sc) {
  NormSpec spec(sc.s, sc.r);
  DemoReport rep;
  rep.slope_theory = 2.0 * sc.s * spec.rprime() - (2.0 * sc.j - 1.0);

  for (double n : sc.n_list) {
    double w = sc.omega(n);
    double n2 = sc.n2(n);
    SechFamilyParams p1(sc.j, n, w), p2(sc.j, n2, w);

    double center = 0.5 * (n + n2);
    double half = 40.0 * std::max(w, std::abs(n2 - n));
    double step = w / 64.0;
    auto diff_norm = [&](double t) {
      return hhat_norm_quadrature(
          [&](double xi) {
            return v_family_fourier(p1, xi, t) - v_family_fourier(p2, xi, t);
          },
          spec, center - half, center + half, step);
    };

    DemoRow row;
    row.n = n;
    row.omega = w;
    row.n2 = n2;
    row.d0 = (n2 == n) ? 0.0 : diff_norm(0.0);
    row.dT = (n2 == n) ? 0.0 : diff_norm(sc.T);
    row.single = hhat_norm_quadrature(
        [&](double xi) { return v_family_fourier(p1, xi, 0.0); }, spec,
        n - half, n + half, step);
    row.sep_ratio = std::pow(n, 2.0 * sc.j - 1.0) * std::abs(n2 - n) * sc.T * w;
    rep.rows.push_back(row);
  }

  // least-squares slope of log d0 against log N
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  long m = 0;
  for (const DemoRow& row : rep.rows) {
    if (row.d0 <= 0.0) continue;
    double x = std::log(row.n), y = std::log(row.d0);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  rep.slope_fit = (m >= 2) ? (m * sxy - sx * sy) / (m * sxx - sx * sx) : 0.0;
  rep.min_dT = rep.rows.empty() ? 0.0 : rep.rows.front().dT;
  rep.max_dT = rep.min_dT;
  for (const DemoRow& row : rep.rows) {
    rep.min_dT = std::min(rep.min_dT, row.dT);
    rep.max_dT = std::max(rep.max_dT, row.dT);
  }
  return rep;
}

ScalingAuditReport scaling_norm_audit(Family family,
                                      const std::vector<double>& lambdas,
                                      double s_override, bool use_override) {
  double s = use_override ? s_override : (family == Family::KdV ? -1.5 : -0.5);
  // reference profile: a Gaussian bump in frequency, supported away from 0
  auto bump = [](double xi) { return std::exp(-8.0 * (xi - 3.0) * (xi - 3.0)); };
  // scaled transform: u_lambda has uhat_lambda(xi) = lambda^p uhat(xi/lambda)
  double p = (family == Family::KdV) ? 1.0 : 0.0;

  auto norm_for = [&](double lam) {
    auto g = [&](double xi) {
      double amp = std::pow(std::abs(xi), s) * std::pow(lam, p) * bump(xi / lam);
      return amp * amp;
    };
    return std::sqrt(simpson_validated(g, 0.8 * lam, 5.2 * lam, 4.4 * lam / 2048.0,
                                       true));
  };

  ScalingAuditReport rep;
  rep.s = s;
  double base = norm_for(1.0);
  rep.max_deviation = 0.0;
  for (double lam : lambdas) {
    if (!(lam > 0.0)) throw DomainError("scaling factors must be positive");
    ScalingAuditRow row;
    row.lambda = lam;
    row.norm = norm_for(lam);
    row.deviation = std::abs(row.norm - base) / base;
    rep.max_deviation = std::max(rep.max_deviation, row.deviation);
    rep.rows.push_back(row);
  }
  rep.pass = rep.max_deviation < 1e-3;
  return rep;
}

}  // namespace hlab
