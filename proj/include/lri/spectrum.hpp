#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "constants.hpp"
#include "halfint.hpp"
#include "numerics.hpp"
#include "wigner.hpp"

// Species data model: unperturbed levels with reduced multipole matrix
// elements, Wigner-Eckart evaluation of full matrix elements, hydrogenic and
// fine-structure reduced elements, rigid-rotor dipoles, and dipole
// polarizabilities with their rank decomposition.

namespace lri {

struct LookupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResonanceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegeneracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LevelKey {
  std::string beta;
  HalfInt J;

  friend bool operator==(const LevelKey& a, const LevelKey& b) {
    return a.beta == b.beta && a.J == b.J;
  }
  friend bool operator<(const LevelKey& a, const LevelKey& b) {
    if (a.beta != b.beta) return a.beta < b.beta;
    return a.J.twice() < b.J.twice();
  }
  std::string str() const { return beta + "[J=" + J.str() + "]"; }
};

/// Unperturbed levels and reduced multipole matrix elements of one species.
/// Reduced elements are stored in both directions, related by
///   <a||Q_l||b> = (-1)^{J_a - J_b} <b||Q_l||a>   (real elements).
class SpectrumTable {
public:
  std::string name;

  void add_level(const LevelKey& key, double energy) {
    if (!key.J.valid_magnitude()) throw DataError("level with negative J");
    if (!std::isfinite(energy)) throw DataError("non-finite level energy");
    if (!levels_.emplace(key, energy).second)
      throw DataError("duplicate level " + key.str());
  }

  /// registers <to||Q_l||from> = value (and the implied reverse element)
  void add_reduced(const LevelKey& from, const LevelKey& to, int l,
                   double value) {
    const HalfInt Jf = require(from).first, Jt = require(to).first;
    if (!triangle_ok(Jf, l, Jt))
      throw DataError("reduced element violates the triangle rule: " +
                      from.str() + " -> " + to.str() + " rank " +
                      std::to_string(l));
    insert(to, from, l, value);
    insert(from, to, l, phase(Jf - Jt) * value);
  }

  bool has_level(const LevelKey& key) const { return levels_.count(key) > 0; }
  double energy(const LevelKey& key) const { return require(key).second; }

  /// <bra||Q_l||ket>, zero when no element is on file
  double reduced(const LevelKey& bra, const LevelKey& ket, int l) const {
    auto it = reduced_.find({bra, ket, l});
    return it == reduced_.end() ? 0.0 : it->second;
  }
  bool has_reduced(const LevelKey& bra, const LevelKey& ket, int l) const {
    return reduced_.count({bra, ket, l}) > 0;
  }
  /// ranks with any element on file
  std::vector<int> ranks() const {
    std::vector<int> out;
    for (auto& [k, v] : reduced_) {
      int l = std::get<2>(k);
      if (out.empty() || out.back() != l) out.push_back(l);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  const std::map<LevelKey, double>& levels() const { return levels_; }

  /// lowest-energy level
  LevelKey ground() const {
    if (levels_.empty()) throw LookupError("empty spectrum table");
    auto best = levels_.begin();
    for (auto it = levels_.begin(); it != levels_.end(); ++it)
      if (it->second < best->second) best = it;
    return best->first;
  }

private:
  std::map<LevelKey, double> levels_;
  std::map<std::tuple<LevelKey, LevelKey, int>, double> reduced_;

  std::pair<HalfInt, double> require(const LevelKey& key) const {
    auto it = levels_.find(key);
    if (it == levels_.end()) throw LookupError("unknown level " + key.str());
    return {key.J, it->second};
  }
  void insert(const LevelKey& bra, const LevelKey& ket, int l, double v) {
    auto [it, fresh] = reduced_.emplace(std::tuple{bra, ket, l}, v);
    if (!fresh && std::abs(it->second - v) > 1e-12 * std::max(1.0, std::abs(v)))
      throw DataError("conflicting reduced element for " + ket.str() + " -> " +
                      bra.str());
  }
};

struct StateRef {
  LevelKey level;
  HalfInt M;
};

/// Full matrix element <to.level, to.M| Q_{l m} |from.level, from.M> by the
/// Wigner-Eckart theorem; zero when M' != M+m or the triangle rule fails.
inline double we_element(const SpectrumTable& table, const StateRef& from,
                         const StateRef& to, int l, HalfInt m) {
  if (!table.has_level(from.level) || !table.has_level(to.level))
    throw LookupError("we_element: unknown level");
  HalfInt J = from.level.J, Jp = to.level.J;
  if (!J.valid_projection(from.M) || !Jp.valid_projection(to.M))
    throw std::invalid_argument("we_element: invalid projection");
  if (to.M != from.M + m || !triangle_ok(J, l, Jp)) return 0.0;
  double red = table.reduced(to.level, from.level, l);
  if (red == 0.0) return 0.0;
  return cg(J, from.M, l, m, Jp, to.M) / std::sqrt(Jp.twice() + 1.0) * red;
}

// ---------------------------------------------------------------------------
// reduced matrix elements from radial functions and recoupling

struct RadialFunction {
  std::vector<double> r;   // strictly increasing radii (bohr)
  std::vector<double> val; // R_nL(r)

  double norm() const { // int r^2 R^2 dr, trapezoid
    KahanSum acc;
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
      double f0 = r[i] * r[i] * val[i] * val[i];
      double f1 = r[i + 1] * r[i + 1] * val[i + 1] * val[i + 1];
      acc.add(0.5 * (f0 + f1) * (r[i + 1] - r[i]));
    }
    return acc.value();
  }
};

/// <bra L'|| Q_l || ket L> = sqrt(2L+1) C^{L'0}_{L0 l0} int r^{l+2} R' R dr.
/// The two radial functions must share one grid (no resampling).
inline double hydrogenic_reduced(const RadialFunction& bra, int Lbra,
                                 const RadialFunction& ket, int Lket, int l) {
  if (bra.r.size() != ket.r.size())
    throw DataError("hydrogenic_reduced: grid size mismatch");
  for (std::size_t i = 0; i < bra.r.size(); ++i)
    if (bra.r[i] != ket.r[i])
      throw DataError("hydrogenic_reduced: grids differ");
  if (std::abs(bra.norm() - 1.0) > 1e-6 || std::abs(ket.norm() - 1.0) > 1e-6)
    throw DataError("hydrogenic_reduced: radial function not normalized");
  double ang = cg(Lket, 0, l, 0, Lbra, 0);
  if (ang == 0.0) return 0.0;
  KahanSum acc;
  for (std::size_t i = 0; i + 1 < bra.r.size(); ++i) {
    double f0 = std::pow(bra.r[i], l + 2) * bra.val[i] * ket.val[i];
    double f1 = std::pow(bra.r[i + 1], l + 2) * bra.val[i + 1] * ket.val[i + 1];
    acc.add(0.5 * (f0 + f1) * (bra.r[i + 1] - bra.r[i]));
  }
  return std::sqrt(2.0 * Lket + 1.0) * ang * acc.value();
}

struct FsReduced {
  double value = 0;
  bool spin_forbidden = false;
};

/// Fine-structure recoupling of a spin-independent rank-l operator:
///   <n'L'S'J'||Q_l||nLSJ> = delta_{SS'} (-1)^{S+J+l+L'}
///     sqrt((2J+1)(2J'+1)) {L S J; J' l L'} <n'L'||Q_l||nL>
inline FsReduced fine_structure_reduced(double orbital_reduced, HalfInt L,
                                        HalfInt S, HalfInt J, HalfInt Lp,
                                        HalfInt Sp, HalfInt Jp, int l) {
  FsReduced out;
  if (S != Sp) {
    out.spin_forbidden = true;
    return out;
  }
  double six = sixj(L, S, J, Jp, l, Lp);
  if (six == 0.0) return out;
  out.value = phase(S + J + HalfInt(l) + Lp) *
              std::sqrt((J.twice() + 1.0) * (Jp.twice() + 1.0)) * six *
              orbital_reduced;
  return out;
}

/// Rigid-rotor reduced dipole <J'||Q_1||J> = sqrt(2J+1) C^{J'0}_{J0 10} d0;
/// vanishes for J' = J.
inline double rotor_reduced_dipole(int J, int Jp, double d0) {
  if (J < 0 || Jp < 0) throw std::invalid_argument("negative rotor J");
  return std::sqrt(2.0 * J + 1.0) * cg(J, 0, 1, 0, Jp, 0) * d0;
}

/// Rigid rotor parameters, all in atomic units.
struct RotorSpecies {
  std::string name;
  double B0 = 0;   // rotational constant (hartree)
  double d0 = 0;   // permanent frame dipole (e a0)
  double mass = 0; // molecule mass (electron masses)
};

/// Rotational ladder J = 0..Jmax with energies B0 J(J+1) and the rotor
/// dipole elements between adjacent J.
inline SpectrumTable rotor_table(const RotorSpecies& mol, int Jmax) {
  SpectrumTable t;
  t.name = mol.name;
  for (int J = 0; J <= Jmax; ++J)
    t.add_level({"", HalfInt(J)}, mol.B0 * J * (J + 1));
  for (int J = 0; J < Jmax; ++J)
    t.add_reduced({"", HalfInt(J)}, {"", HalfInt(J + 1)}, 1,
                  rotor_reduced_dipole(J, J + 1, mol.d0));
  return t;
}

// ---------------------------------------------------------------------------
// dipole polarizability

struct Frequency {
  double value = 0;       // hartree
  bool imaginary = false; // evaluate at i*value instead of value
  static Frequency real(double w) { return {w, false}; }
  static Frequency imag(double w) { return {w, true}; }
};

inline constexpr double resonance_tolerance = 1e-6; // hartree

namespace detail {

inline double alpha_denominator(double gap, const Frequency& w) {
  if (w.imaginary) return gap * gap + w.value * w.value;
  if (std::abs(std::abs(gap) - std::abs(w.value)) < resonance_tolerance) {
    std::ostringstream os;
    os << "frequency " << w.value << " within " << resonance_tolerance
       << " of transition gap " << gap;
    throw ResonanceError(os.str());
  }
  return gap * gap - w.value * w.value;
}

} // namespace detail

/// alpha_zz of sublevel |level M> at frequency w (real axis or imaginary
/// axis): 2 sum_{level''} dE |<''M|Q_10|level M>|^2 / (dE^2 -+ w^2).
inline double alpha_zz(const SpectrumTable& table, const LevelKey& level,
                       HalfInt M, const Frequency& w = {}) {
  double e0 = table.energy(level);
  double acc = 0;
  for (auto& [key, energy] : table.levels()) {
    if (key == level) continue;
    if (!key.J.valid_projection(M)) continue;
    double up = we_element(table, {level, M}, {key, M}, 1, 0);
    if (up == 0.0) continue;
    double down = we_element(table, {key, M}, {level, M}, 1, 0);
    double gap = energy - e0;
    acc += 2.0 * gap * up * down / detail::alpha_denominator(gap, w);
  }
  return acc;
}

struct PolarizabilityComponent {
  int k = 0;
  double value = 0;
};

/// Rank decomposition alpha_{(11)k}(w), k = 0 and 2 (k = 1 is absent for
/// z polarization since C^{10}_{1010} = 0):
///   alpha_{(11)k} = 2 (-1)^{2J} sqrt(2k+1) sum_{''} {1 1 k; J J J''}
///     <J||Q_1||J''><J''||Q_1||J> dE / (dE^2 -+ w^2)
inline std::vector<PolarizabilityComponent> alpha_decompose(
    const SpectrumTable& table, const LevelKey& level, const Frequency& w = {}) {
  double e0 = table.energy(level);
  HalfInt J = level.J;
  std::vector<PolarizabilityComponent> out;
  for (int k : {0, 2}) {
    double acc = 0;
    for (auto& [key, energy] : table.levels()) {
      if (key == level) continue;
      double red_up = table.reduced(level, key, 1);   // <J||Q1||J''>
      double red_down = table.reduced(key, level, 1); // <J''||Q1||J>
      if (red_up == 0.0 || red_down == 0.0) continue;
      double gap = energy - e0;
      acc += 2.0 * sixj(1, 1, k, J, J, key.J) * red_up * red_down * gap /
             detail::alpha_denominator(gap, w);
    }
    int sgn = (J.twice() % 2 == 0) ? 1 : -1; // (-1)^{2J}
    out.push_back({k, sgn * std::sqrt(2.0 * k + 1.0) * acc});
  }
  return out;
}

/// alpha_zz(M) from the rank components (the Wigner-Eckart recomposition).
inline double alpha_recompose(const std::vector<PolarizabilityComponent>& comps,
                              HalfInt J, HalfInt M) {
  double acc = 0;
  for (auto& c : comps)
    acc += cg(1, 0, 1, 0, c.k, 0) * cg(J, M, c.k, 0, J, M) /
           std::sqrt(J.twice() + 1.0) * c.value;
  return acc;
}

/// scalar polarizability alpha_scal = -alpha_{(11)0}/sqrt(3)
inline double alpha_scalar(const SpectrumTable& table, const LevelKey& level,
                           const Frequency& w = {}) {
  auto comps = alpha_decompose(table, level, w);
  return -comps[0].value / std::sqrt(3.0);
}

// ---------------------------------------------------------------------------
// Stark coupling

struct LevelBasis {
  std::vector<LevelKey> keys;
  Matrix matrix;
};

/// First-order Stark coupling matrix over every table level carrying the
/// projection M: entries -E C^{J'M}_{JM 10}/sqrt(2J'+1) <J'||Q_1||J>.
/// Diagonal in M by construction (z-polarized field).
inline LevelBasis stark_first_order(const SpectrumTable& table, HalfInt M,
                                    double field_au) {
  LevelBasis out;
  for (auto& [key, e] : table.levels())
    if (key.J.valid_projection(M)) out.keys.push_back(key);
  std::size_t n = out.keys.size();
  out.matrix = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out.matrix(i, j) =
          -field_au *
          we_element(table, {out.keys[j], M}, {out.keys[i], M}, 1, 0);
  return out;
}

/// Dipole operator Q_10 in the same basis (for induced-dipole expectations).
inline LevelBasis dipole_z_matrix(const SpectrumTable& table, HalfInt M) {
  LevelBasis out = stark_first_order(table, M, -1.0);
  return out;
}

} // namespace lri
