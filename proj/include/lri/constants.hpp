#pragma once

// Physical constants and unit conversions (CODATA 2018).
// All internal math is in Hartree atomic units: hbar = e = m_e = 1,
// 4*pi*eps0 = 1, lengths in bohr, energies in hartree.

namespace lri::constants {

inline constexpr const char* version = "CODATA-2018";

// 1 atomic mass unit in electron masses
inline constexpr double amu_in_me = 1822.888486217;

// 1 hartree in kelvin (E_h / k_B)
inline constexpr double hartree_in_K = 315775.02480407;
inline constexpr double hartree_in_mK = hartree_in_K * 1e3;

// 1 hartree in cm^-1
inline constexpr double hartree_in_cm1 = 219474.6313632;

// 1 debye in e*a0
inline constexpr double debye_in_au = 0.3934302695199;

// 1 atomic unit of electric field in V/cm
inline constexpr double field_au_in_V_per_cm = 5.14220675e9;
inline constexpr double field_au_in_kV_per_cm = field_au_in_V_per_cm * 1e-3;

// fine-structure constant; mu0/(4 pi) = alpha^2 in atomic units
inline constexpr double alpha_fs = 7.2973525693e-3;

inline double amu_to_me(double amu) { return amu * amu_in_me; }
inline double debye_to_au(double d) { return d * debye_in_au; }
inline double cm1_to_hartree(double e) { return e / hartree_in_cm1; }
inline double kV_per_cm_to_au(double f) { return f / field_au_in_kV_per_cm; }

} // namespace lri::constants
