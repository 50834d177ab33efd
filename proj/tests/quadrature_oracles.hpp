#pragma once
// Independent double-precision integral oracles for 1s STOs on two centers a distance R apart.

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace oracle {

using boost::math::quadrature::gauss_kronrod;

/// integral over space of f(rA, rB) in prolate spheroidal coordinates
inline double space_integral(double R, const std::function<double(double, double)>& f) {
  const double h = R / 2;
  auto inner = [&](double mu) {
    auto g = [&](double nu) { return (mu * mu - nu * nu) * f(h * (mu + nu), h * (mu - nu)); };
    return gauss_kronrod<double, 61>::integrate(g, -1.0, 1.0, 8, 1e-13);
  };
  double lim = std::numeric_limits<double>::infinity();
  return 2 * M_PI * h * h * h * gauss_kronrod<double, 61>::integrate(inner, 1.0, lim, 12, 1e-12);
}

/// potential of the unit-charge density (alpha^3 / 8 pi) exp(-alpha r)
inline double unit_potential(double alpha, double rho) {
  double x = alpha * rho;
  if (x < 1e-8) return alpha / 2;
  return (-std::expm1(-x)) / rho - std::exp(-x) * alpha / 2;
}

inline double overlap(double R) {
  return space_integral(R, [](double a, double b) { return std::exp(-a - b) / M_PI; });
}

/// <A| -1/r_B |A>
inline double attraction_aa_b(double R) {
  return space_integral(R, [](double a, double b) { return -std::exp(-2 * a) / (M_PI * b); });
}

/// <A| -1/r_A |B>
inline double attraction_ab(double R) {
  return space_integral(R, [](double a, double b) { return -std::exp(-a - b) / (M_PI * a); });
}

/// <A| -lap/2 |B>; for exp(-r), -lap/2 phi = phi/r - phi/2
inline double kinetic_ab(double R) {
  double s = overlap(R);
  return -s / 2 + space_integral(R, [](double a, double b) { return std::exp(-a - b) / (M_PI * b); });
}

/// [AA|BB] with exponents za, zb on A and zc, zd on B, as charge times potential
inline double coulomb(double za, double zb, double zc, double zd, double R) {
  double al = za + zb, be = zc + zd;
  double qa = std::sqrt(za * za * za * zb * zb * zb) * 8 / (al * al * al);
  return space_integral(R, [&](double a, double b) {
    return std::sqrt(zc * zc * zc * zd * zd * zd) / M_PI * std::exp(-be * b) * qa * unit_potential(al, a);
  });
}

/// (AA|AB)
inline double hybrid(double R) {
  return space_integral(R, [](double a, double b) { return std::exp(-a - b) / M_PI * unit_potential(2, a); });
}

/**
 * Two-electron integral of two axially symmetric densities via a Legendre expansion about the bond
 * midpoint. rho(r, x) with x = cos(theta); the densities are sampled on piecewise Gauss grids split at
 * r = R/2 where the nuclear cusps sit.
 */
inline double multipole_repulsion(double R, const std::function<double(double, double)>& rho1,
                                  const std::function<double(double, double)>& rho2, int lmax) {
  using boost::math::quadrature::gauss;
  const double h = R / 2;
  // radial panels
  std::vector<double> edges{0, h * 0.5, h, h * 1.02, h * 1.2, h + 1, h + 3, h + 7, h + 14, h + 28, h + 45};
  const auto& gx = gauss<double, 40>::abscissa();
  const auto& gw = gauss<double, 40>::weights();
  auto panel_nodes = [&](double a, double b, std::vector<double>& r, std::vector<double>& w) {
    double c = (a + b) / 2, d = (b - a) / 2;
    for (size_t i = 0; i < gx.size(); ++i) {
      for (int s : {-1, 1}) {
        if (gx[i] == 0 && s == 1) continue;
        r.push_back(c + s * d * gx[i]);
        w.push_back(d * gw[i]);
      }
    }
  };
  // angular moments rho_l(r) = (2l+1)/2 int rho(r,x) P_l(x) dx on a composite rule graded toward x = +-1
  std::vector<double> ax, aw;
  {
    std::vector<double> xe{-1, -0.9999, -0.999, -0.99, -0.9, -0.5, 0, 0.5, 0.9, 0.99, 0.999, 0.9999, 1};
    for (size_t p = 0; p + 1 < xe.size(); ++p) panel_nodes(xe[p], xe[p + 1], ax, aw);
  }
  auto moments = [&](const std::function<double(double, double)>& rho, double r) {
    std::vector<double> out(lmax + 1, 0.0);
    for (size_t k = 0; k < ax.size(); ++k) {
      double f = aw[k] * rho(r, ax[k]);
      double p0 = 1, p1 = ax[k];
      out[0] += f;
      if (lmax >= 1) out[1] += f * p1;
      for (int l = 2; l <= lmax; ++l) {
        double p2 = ((2 * l - 1) * ax[k] * p1 - (l - 1) * p0) / l;
        out[l] += f * p2;
        p0 = p1;
        p1 = p2;
      }
    }
    for (int l = 0; l <= lmax; ++l) out[l] *= (2 * l + 1) / 2.0;
    return out;
  };
  // cumulative Q_l(r) = int_0^r rho2_l(s) s^(l+2) ds and tail T_l(r) = int_r^inf rho2_l(s) s^(1-l) ds
  // are accumulated panel by panel, with a sub-panel rule for the partial piece
  double total = 0;
  std::vector<double> qfull(lmax + 1, 0.0);
  // full-panel tails first
  std::vector<std::vector<double>> panel_t(edges.size() - 1, std::vector<double>(lmax + 1, 0.0));
  for (size_t p = 0; p + 1 < edges.size(); ++p) {
    std::vector<double> r, w;
    panel_nodes(edges[p], edges[p + 1], r, w);
    for (size_t i = 0; i < r.size(); ++i) {
      auto m2 = moments(rho2, r[i]);
      for (int l = 0; l <= lmax; ++l) panel_t[p][l] += w[i] * m2[l] * std::pow(r[i], 1 - l);
    }
  }
  for (size_t p = 0; p + 1 < edges.size(); ++p) {
    std::vector<double> tail_after(lmax + 1, 0.0);
    for (size_t q = p + 1; q + 1 < edges.size(); ++q)
      for (int l = 0; l <= lmax; ++l) tail_after[l] += panel_t[q][l];
    std::vector<double> r, w;
    panel_nodes(edges[p], edges[p + 1], r, w);
    for (size_t i = 0; i < r.size(); ++i) {
      auto m1 = moments(rho1, r[i]);
      // partial integrals of rho2 over [edges[p], r_i] and [r_i, edges[p+1]]
      std::vector<double> lo_r, lo_w, hi_r, hi_w;
      panel_nodes(edges[p], r[i], lo_r, lo_w);
      panel_nodes(r[i], edges[p + 1], hi_r, hi_w);
      std::vector<double> q(lmax + 1), t(lmax + 1);
      for (int l = 0; l <= lmax; ++l) {
        q[l] = qfull[l];
        t[l] = tail_after[l];
      }
      for (size_t k = 0; k < lo_r.size(); ++k) {
        auto m2 = moments(rho2, lo_r[k]);
        for (int l = 0; l <= lmax; ++l) q[l] += lo_w[k] * m2[l] * std::pow(lo_r[k], l + 2);
      }
      for (size_t k = 0; k < hi_r.size(); ++k) {
        auto m2 = moments(rho2, hi_r[k]);
        for (int l = 0; l <= lmax; ++l) t[l] += hi_w[k] * m2[l] * std::pow(hi_r[k], 1 - l);
      }
      for (int l = 0; l <= lmax; ++l) {
        double c = 4 * M_PI / (2 * l + 1);
        double radial = q[l] * std::pow(r[i], -(l + 1)) + t[l] * std::pow(r[i], l);
        total += c * c * w[i] * m1[l] * r[i] * r[i] * radial;
      }
    }
    // advance the cumulative moment over this full panel
    for (size_t i = 0; i < r.size(); ++i) {
      auto m2 = moments(rho2, r[i]);
      for (int l = 0; l <= lmax; ++l) qfull[l] += w[i] * m2[l] * std::pow(r[i], l + 2);
    }
  }
  return total;
}

/// distances to the nuclei at z = -R/2 (A) and z = +R/2 (B) from the point (r, x) about the midpoint
inline double dist_a(double R, double r, double x) { return std::sqrt(std::max(0.0, r * r + R * R / 4 + r * R * x)); }
inline double dist_b(double R, double r, double x) { return std::sqrt(std::max(0.0, r * r + R * R / 4 - r * R * x)); }

}  // namespace oracle
