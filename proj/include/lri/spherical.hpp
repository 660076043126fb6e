#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace lri {

/// Fully normalized associated Legendre values P~_l^m(x) for 0 <= m <= l,
/// Condon-Shortley phase included, so Y_lm = P~_l^m(cos th) e^{i m phi}.
/// Returns the column m for l = m..lmax by the stable three-term recurrence.
inline std::vector<double> normalized_plm_column(int m, int lmax, double x) {
  if (m < 0 || m > lmax) throw std::invalid_argument("normalized_plm_column");
  std::vector<double> col(lmax - m + 1);
  double somx2 = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));
  double pmm = std::sqrt(1.0 / (4.0 * M_PI));
  for (int k = 1; k <= m; ++k)
    pmm *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * somx2;
  col[0] = pmm;
  if (lmax == m) return col;
  double pmmp1 = x * std::sqrt(2.0 * m + 3.0) * pmm;
  col[1] = pmmp1;
  for (int l = m + 2; l <= lmax; ++l) {
    double a = std::sqrt((4.0 * l * l - 1.0) / double(l * l - m * m));
    double b = std::sqrt(((l - 1.0) * (l - 1.0) - m * m) /
                         (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
    double pll = a * (x * pmmp1 - b * pmm);
    pmm = pmmp1;
    pmmp1 = pll;
    col[l - m] = pll;
  }
  return col;
}

/// Spherical harmonic Y_lm(theta, phi), complex, Condon-Shortley phase.
inline std::complex<double> sph_harmonic(int l, int m, double theta,
                                         double phi) {
  if (l < 0 || std::abs(m) > l) throw std::invalid_argument("sph_harmonic");
  int am = std::abs(m);
  double plm = normalized_plm_column(am, l, std::cos(theta))[l - am];
  std::complex<double> y =
      plm * std::exp(std::complex<double>(0.0, am * phi));
  if (m < 0) {
    y = std::conj(y);
    if (am % 2) y = -y;
  }
  return y;
}

} // namespace lri
