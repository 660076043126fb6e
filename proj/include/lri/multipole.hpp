#pragma once

#include <array>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "constants.hpp"
#include "numerics.hpp"
#include "spherical.hpp"
#include "wigner.hpp"

// Classical multipolar expansion of the electrostatic interaction energy
// between two non-overlapping charge distributions, in Cartesian and
// spherical forms, body-fixed and space-fixed frames, plus the direct
// pairwise-Coulomb oracle. Atomic units: 4 pi eps0 = 1, lengths in bohr,
// energies in hartree.

namespace lri {

using Vec3 = std::array<double, 3>;
using Complex = std::complex<double>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3 operator*(double s, const Vec3& a) {
  return {s * a[0], s * a[1], s * a[2]};
}

struct PointCharge {
  double q = 0;
  Vec3 r{0, 0, 0};
};

struct ChargeDistribution {
  std::vector<PointCharge> charges;
  Vec3 origin{0, 0, 0};

  double total_charge() const {
    double s = 0;
    for (auto& c : charges) s += c.q;
    return s;
  }
  double extent() const {
    double m = 0;
    for (auto& c : charges) m = std::max(m, norm(c.r - origin));
    return m;
  }
};

struct SphericalMultipole {
  int l = 0, m = 0;
  Complex value{0, 0};
};

/// Spherical multipole moments Q_lm for l <= lmax, indexed (l, m).
class MultipoleSet {
public:
  MultipoleSet() : lmax_(-1) {}
  explicit MultipoleSet(int lmax) : lmax_(lmax), q_((lmax + 1) * (lmax + 1)) {}

  int lmax() const { return lmax_; }
  bool has_rank(int l) const { return l >= 0 && l <= lmax_; }
  Complex operator()(int l, int m) const { return q_[idx(l, m)]; }
  Complex& at(int l, int m) { return q_[idx(l, m)]; }

  std::vector<SphericalMultipole> list() const {
    std::vector<SphericalMultipole> out;
    for (int l = 0; l <= lmax_; ++l)
      for (int m = -l; m <= l; ++m) out.push_back({l, m, (*this)(l, m)});
    return out;
  }

private:
  int lmax_;
  std::vector<Complex> q_;
  std::size_t idx(int l, int m) const {
    if (l < 0 || l > lmax_ || std::abs(m) > l)
      throw std::out_of_range("MultipoleSet: rank (" + std::to_string(l) +
                              "," + std::to_string(m) + ") absent");
    return static_cast<std::size_t>(l * l + l + m);
  }
};

/// Q_lm = sqrt(4 pi/(2l+1)) sum_i q_i r_i^l Y_lm(th_i, ph_i), relative to
/// the distribution origin.
inline MultipoleSet spherical_moments(const ChargeDistribution& dist,
                                      int lmax) {
  if (lmax < 0) throw std::invalid_argument("spherical_moments: lmax < 0");
  MultipoleSet out(lmax);
  for (auto& c : dist.charges) {
    Vec3 r = c.r - dist.origin;
    double rr = norm(r);
    double theta = rr > 0 ? std::acos(std::clamp(r[2] / rr, -1.0, 1.0)) : 0.0;
    double phi = std::atan2(r[1], r[0]);
    double rl = 1.0;
    for (int l = 0; l <= lmax; ++l) {
      double pref = std::sqrt(4.0 * M_PI / (2.0 * l + 1.0)) * c.q * rl;
      for (int m = -l; m <= l; ++m)
        out.at(l, m) += pref * sph_harmonic(l, m, theta, phi);
      rl *= rr;
    }
  }
  return out;
}

struct CartesianMoments {
  double q = 0;
  Vec3 d{0, 0, 0};
  std::array<std::array<double, 3>, 3> Q{}; // symmetric traceless

  void validate() const {
    double tr = Q[0][0] + Q[1][1] + Q[2][2];
    double scale = 0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        scale = std::max(scale, std::abs(Q[a][b]));
        if (std::abs(Q[a][b] - Q[b][a]) > 1e-12 * std::max(scale, 1.0))
          throw std::invalid_argument("quadrupole not symmetric");
      }
    if (std::abs(tr) > 1e-12 * std::max(scale, 1.0))
      throw std::invalid_argument("quadrupole not traceless");
  }
};

/// Charge, dipole and quadrupole Q_ab = sum_i q_i (3 r_a r_b - r^2 d_ab)/2,
/// traceless and symmetric by construction.
inline CartesianMoments cartesian_moments(const ChargeDistribution& dist) {
  CartesianMoments m;
  for (auto& c : dist.charges) {
    Vec3 r = c.r - dist.origin;
    m.q += c.q;
    for (int a = 0; a < 3; ++a) m.d[a] += c.q * r[a];
    double r2 = dot(r, r);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        m.Q[a][b] += c.q * (3.0 * r[a] * r[b] - (a == b ? r2 : 0.0)) / 2.0;
  }
  return m;
}

/// Rank-0,1,2 spherical components from Cartesian moments.
inline MultipoleSet cartesian_to_spherical(const CartesianMoments& m) {
  m.validate();
  MultipoleSet out(2);
  out.at(0, 0) = m.q;
  out.at(1, 0) = m.d[2];
  out.at(1, 1) = Complex(-m.d[0], -m.d[1]) / std::sqrt(2.0);
  out.at(1, -1) = Complex(m.d[0], -m.d[1]) / std::sqrt(2.0);
  out.at(2, 0) = m.Q[2][2];
  out.at(2, 1) = -std::sqrt(2.0 / 3.0) * Complex(m.Q[0][2], m.Q[1][2]);
  out.at(2, -1) = std::sqrt(2.0 / 3.0) * Complex(m.Q[0][2], -m.Q[1][2]);
  out.at(2, 2) = Complex(m.Q[0][0] - m.Q[1][1], 2.0 * m.Q[0][1]) / std::sqrt(6.0);
  out.at(2, -2) = Complex(m.Q[0][0] - m.Q[1][1], -2.0 * m.Q[0][1]) / std::sqrt(6.0);
  return out;
}

/// f_{lA lB m} = (-1)^lB (lA+lB)! / sqrt((lA+m)!(lA-m)!(lB+m)!(lB-m)!),
/// exact. Domain error when |m| > min(lA, lB).
inline Surd f_coeff(int lA, int lB, int m) {
  if (lA < 0 || lB < 0) throw std::domain_error("f_coeff: negative rank");
  if (std::abs(m) > std::min(lA, lB))
    throw std::domain_error("f_coeff: |m| exceeds min(lA, lB)");
  BigRat num(detail::factorial(lA + lB));
  BigRat den = BigRat(detail::factorial(lA + m)) * detail::factorial(lA - m) *
               detail::factorial(lB + m) * detail::factorial(lB - m);
  Surd v = Surd(num) / Surd::sqrt_of(den);
  return (lB % 2 == 0) ? v : -v;
}

struct Orientation {
  double theta = 0; // [0, pi]
  double phi = 0;
};

namespace detail {

// the requested expansion order must be reachable from the supplied ranks
inline void require_order(const MultipoleSet& qa, const MultipoleSet& qb,
                          int lmax_sum, const char* who) {
  if (lmax_sum < 0) throw std::invalid_argument("negative lmax_sum");
  if (qa.lmax() + qb.lmax() < lmax_sum) {
    std::ostringstream os;
    os << who << ": order lA+lB = " << lmax_sum
       << " requested but supplied ranks reach only "
       << qa.lmax() + qb.lmax() << " (absent:";
    for (int l = std::min(qa.lmax(), qb.lmax()) + 1; l <= lmax_sum; ++l)
      for (int m = -l; m <= l; ++m) os << " (" << l << "," << m << ")";
    os << ")";
    throw std::invalid_argument(os.str());
  }
}

} // namespace detail

/// Body-fixed interaction energy
///   V = sum_{lA lB m} f_{lA lB m} / R^{1+lA+lB} Q_{lA m}(A) Q_{lB,-m}(B),
/// real for real charge distributions. Sums every term with
/// lA+lB <= lmax_sum that the supplied rank sets can form; errors when the
/// requested order is unreachable from the supplied ranks.
inline double bf_energy(const MultipoleSet& qa, const MultipoleSet& qb,
                        double R, int lmax_sum = 4) {
  if (R <= 0) throw std::invalid_argument("bf_energy: R must be positive");
  detail::require_order(qa, qb, lmax_sum, "bf_energy");
  Complex acc{0, 0};
  for (int lA = 0; lA <= std::min(lmax_sum, qa.lmax()); ++lA)
    for (int lB = 0; lB + lA <= lmax_sum && lB <= qb.lmax(); ++lB) {
      double rn = std::pow(R, -(1 + lA + lB));
      int lmin = std::min(lA, lB);
      for (int m = -lmin; m <= lmin; ++m)
        acc += f_coeff(lA, lB, m).to_double() * rn * qa(lA, m) * qb(lB, -m);
    }
  if (std::abs(acc.imag()) > 1e-10 * std::max(1.0, std::abs(acc.real())))
    throw std::runtime_error("bf_energy: non-real energy from complex moments");
  return acc.real();
}

/// One (lA, lB) term of the BF series (for parity/swap checks).
inline double bf_energy_term(const MultipoleSet& qa, const MultipoleSet& qb,
                             double R, int lA, int lB) {
  Complex acc{0, 0};
  double rn = std::pow(R, -(1 + lA + lB));
  int lmin = std::min(lA, lB);
  for (int m = -lmin; m <= lmin; ++m)
    acc += f_coeff(lA, lB, m).to_double() * rn * qa(lA, m) * qb(lB, -m);
  return acc.real();
}

/// Space-fixed interaction energy with the inter-partner axis at (Theta,
/// Phi); reduces to bf_energy at Theta = Phi = 0.
inline double sf_energy(const MultipoleSet& qa, const MultipoleSet& qb,
                        double R, const Orientation& orient, int lmax_sum = 4) {
  if (R <= 0) throw std::invalid_argument("sf_energy: R must be positive");
  detail::require_order(qa, qb, lmax_sum, "sf_energy");
  Complex acc{0, 0};
  for (int lA = 0; lA <= std::min(lmax_sum, qa.lmax()); ++lA)
    for (int lB = 0; lB + lA <= lmax_sum && lB <= qb.lmax(); ++lB) {
      int l = lA + lB;
      double pref =
          (lB % 2 ? -1.0 : 1.0) * std::pow(R, -(1 + l)) *
          std::sqrt(BigRat(detail::factorial(2 * l),
                           detail::factorial(2 * lA) * detail::factorial(2 * lB))
                        .convert_to<double>());
      for (int m = -l; m <= l; ++m) {
        Complex ylm = std::conj(sph_harmonic(l, m, orient.theta, orient.phi)) *
                      std::sqrt(4.0 * M_PI / (2.0 * l + 1.0));
        Complex inner{0, 0};
        for (int mA = std::max(-lA, m - lB); mA <= std::min(lA, m + lB); ++mA) {
          int mB = m - mA;
          inner += cg(lA, mA, lB, mB, l, m) * qa(lA, mA) * qb(lB, mB);
        }
        acc += pref * ylm * inner;
      }
    }
  if (std::abs(acc.imag()) > 1e-10 * std::max(1.0, std::abs(acc.real())))
    throw std::runtime_error("sf_energy: non-real energy from complex moments");
  return acc.real();
}

/// Direct pairwise Coulomb sum, sum_{i in A, j in B} q_i q_j/|R + r_j - r_i|:
/// the oracle the expansions are checked against. Rvec joins the two
/// coordinate frames; the origin fields are expansion bookkeeping and do not
/// enter. Compensated summation keeps the cancellation noise down at large R.
inline double direct_coulomb(const ChargeDistribution& a,
                             const ChargeDistribution& b, const Vec3& Rvec) {
  KahanSum acc;
  for (auto& ca : a.charges)
    for (auto& cb : b.charges) {
      Vec3 sep = (Rvec + cb.r) - ca.r;
      double d = norm(sep);
      if (d < 1e-12)
        throw std::domain_error("direct_coulomb: coincident charges");
      acc.add(ca.q * cb.q / d);
    }
  return acc.value();
}

/// Explicit R^-1..R^-3 terms of the Cartesian expansion:
///   q(A)q(B)/R + [d_u(A)q(B) - q(A)d_u(B)]/R^2
///   + [Q_uu(A)q(B) + q(A)Q_uu(B) + d(A).d(B) - 3 d_u(A)d_u(B)]/R^3
inline double cartesian_energy_loworder(const CartesianMoments& a,
                                        const CartesianMoments& b, double R,
                                        const Vec3& u) {
  if (std::abs(norm(u) - 1.0) > 1e-12)
    throw std::invalid_argument("cartesian_energy_loworder: |u| != 1");
  double du_a = dot(u, a.d), du_b = dot(u, b.d);
  double quu_a = 0, quu_b = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      quu_a += u[i] * u[j] * a.Q[i][j];
      quu_b += u[i] * u[j] * b.Q[i][j];
    }
  double v = a.q * b.q / R;
  v += (du_a * b.q - a.q * du_b) / (R * R);
  v += (quu_a * b.q + a.q * quu_b + dot(a.d, b.d) - 3.0 * du_a * du_b) /
       (R * R * R);
  return v;
}

/// Magnetic dipole-dipole energy (mu0/4pi R^3)[mA.mB - 3(u.mA)(u.mB)];
/// moments in Bohr magnetons (1 mu_B = 1/2 a.u.), mu0/4pi = alpha^2 a.u.
inline double magnetic_dd_energy(const Vec3& mA_muB, const Vec3& mB_muB,
                                 double R, const Vec3& u) {
  if (std::abs(norm(u) - 1.0) > 1e-12)
    throw std::invalid_argument("magnetic_dd_energy: |u| != 1");
  Vec3 ma = 0.5 * mA_muB; // mu_B -> atomic units
  Vec3 mb = 0.5 * mB_muB;
  double a2 = constants::alpha_fs * constants::alpha_fs;
  return a2 / (R * R * R) * (dot(ma, mb) - 3.0 * dot(u, ma) * dot(u, mb));
}

} // namespace lri
