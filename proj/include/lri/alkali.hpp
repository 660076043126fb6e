#pragma once

#include <cmath>
#include <optional>

#include "constants.hpp"
#include "perturb.hpp"

// Atom-pair applications and universal scales: van der Waals length/energy,
// LeRoy radius, Lennard-Jones utility, ground-pair C6, resonant C3, and the
// isotropic/anisotropic C6 combinations for S+P pairs.

namespace lri {

struct AtomSpecies {
  std::string name;
  double mass_amu = 0;
  const SpectrumTable* spectrum = nullptr;
  std::optional<double> mean_radius; // <r^2>^{1/2} (bohr)
};

struct ScaleResult {
  double R_vdw = 0;    // bohr
  double E_vdw = 0;    // hartree
  double E_vdw_mK = 0; // millikelvin
  std::optional<double> R_leroy;
};

/// van der Waals length and energy scales of a colliding pair:
///   R_vdw = (1/2) (2 mu |C6|)^{1/4},  E_vdw = 1/(2 mu R_vdw^2)
/// with the reduced mass mu in electron masses (inputs in amu, C6 in a.u.).
inline ScaleResult vdw_scales(double mA_amu, double mB_amu, double C6_au) {
  if (C6_au == 0.0) throw std::domain_error("vdw_scales: C6 = 0");
  if (mA_amu <= 0 || mB_amu <= 0)
    throw std::domain_error("vdw_scales: masses must be positive");
  double ma = constants::amu_to_me(mA_amu);
  double mb = constants::amu_to_me(mB_amu);
  double mu = ma * mb / (ma + mb);
  ScaleResult out;
  out.R_vdw = 0.5 * std::pow(2.0 * mu * std::abs(C6_au), 0.25);
  out.E_vdw = 1.0 / (2.0 * mu * out.R_vdw * out.R_vdw);
  out.E_vdw_mK = out.E_vdw * constants::hartree_in_mK;
  return out;
}

/// LeRoy radius 2(sqrt(<r_A^2>) + sqrt(<r_B^2>)), inputs in bohr^2.
inline double leroy_radius(double rA2, double rB2) {
  if (rA2 < 0 || rB2 < 0) throw std::domain_error("leroy_radius: <r^2> < 0");
  return 2.0 * (std::sqrt(rA2) + std::sqrt(rB2));
}

/// 4 eps [ (R0/R)^12 - (R0/R)^6 ]; eps is the well depth (positive).
inline double lennard_jones(double eps, double R0, double R) {
  if (R <= 0) throw std::domain_error("lennard_jones: R <= 0");
  double x6 = std::pow(R0 / R, 6);
  return 4.0 * eps * (x6 * x6 - x6);
}

enum class C6Method { direct, quadrature };

/// Isotropic C6 of two ground S-state (J = 0) partners; `direct` sums over
/// intermediate states, `quadrature` integrates the dynamic polarizabilities
/// along the imaginary axis. Both give the coefficient of R^-6 (negative).
inline CnCoefficient c6_ground_pair(const AtomSpecies& specA,
                                    const AtomSpecies& specB,
                                    C6Method method = C6Method::direct) {
  if (!specA.spectrum || !specB.spectrum)
    throw std::invalid_argument("c6_ground_pair: species without spectra");
  LevelKey ga = specA.spectrum->ground();
  LevelKey gb = specB.spectrum->ground();
  if (ga.J.twice() != 0 || gb.J.twice() != 0)
    throw std::invalid_argument(
        "c6_ground_pair: ground level is not J = 0; build the degenerate "
        "block with the perturbation engine instead");
  auto blk = block_from_levels(*specA.spectrum, *specB.spectrum, ga, gb);
  RankSet rk{1, 1, 1, 1};
  EffectiveMatrix w = method == C6Method::direct
                          ? second_order_block(blk, rk)
                          : dispersion_block_quadrature(blk, rk);
  CnCoefficient out;
  out.n = 6;
  out.value = w.coeff.at(6)(0, 0);
  out.eigenvector = {1.0};
  return out;
}

struct ResonantC3 {
  double c3_sigma = 0; // |C3(Sigma)| = 2|<upper||Q1||lower>|^2/3
  double c3_pi = 0;    // |C3(Pi)| = |C3(Sigma)|/2
  bool coupled = true; // false when no dipole element links the levels
  // eigenvectors: (|lower upper,M> -+ |upper,M lower>)/sqrt(2) for -+|C3|
};

/// Resonant dipolar interaction of two like atoms sharing an excitation:
/// eigenvalues +-2|red|^2/3 (Sigma, M = 0) and +-|red|^2/3 (Pi, |M| = 1).
inline ResonantC3 resonant_c3(const AtomSpecies& spec, const LevelKey& lower,
                              const LevelKey& upper) {
  if (!spec.spectrum) throw std::invalid_argument("resonant_c3: no spectrum");
  const SpectrumTable& t = *spec.spectrum;
  double red = t.reduced(upper, lower, 1);
  ResonantC3 out;
  if (red == 0.0) {
    out.coupled = false;
    return out;
  }
  out.c3_sigma = 2.0 * red * red / 3.0;
  out.c3_pi = out.c3_sigma / 2.0;
  return out;
}

/// Isotropic / anisotropic combinations of the BF-frame S+P coefficients:
///   C6_000 = (Sigma + 2 Pi)/3,  C6_022 = 5 (Sigma - Pi)/3.
inline std::pair<double, double> sp_c6_combine(double c6_sigma, double c6_pi) {
  return {(c6_sigma + 2.0 * c6_pi) / 3.0, 5.0 * (c6_sigma - c6_pi) / 3.0};
}

} // namespace lri
