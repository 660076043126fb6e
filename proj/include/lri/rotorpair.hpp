#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "perturb.hpp"
#include "spectrum.hpp"

// Two polar rigid rotors: body-fixed coupled-rotor Hamiltonian, space-fixed
// Hamiltonian with partial waves and Stark coupling, basis construction and
// transformation, analytic two-channel formulas, PEC scans and induced-dipole
// curves. Atomic units throughout.

namespace lri {

/// characteristic distance (d0^2/B0)^{1/3} below which dipole-dipole
/// coupling mixes rotational pairs strongly
inline double rstar(const RotorSpecies& mol) {
  if (mol.B0 <= 0) throw std::domain_error("rstar: B0 must be positive");
  if (mol.d0 == 0) return 0.0;
  return std::cbrt(mol.d0 * mol.d0 / mol.B0);
}

/// rotational C6 of the (0,0) pair restricted to J'' = 1 intermediates:
///   C6g = -d0A^2 d0B^2 / (3 (B0A + B0B)); like pair: -d0^4/(6 B0)
inline CnCoefficient vdw00(const RotorSpecies& a, const RotorSpecies& b) {
  CnCoefficient out;
  out.n = 6;
  out.value = -a.d0 * a.d0 * b.d0 * b.d0 / (3.0 * (a.B0 + b.B0));
  out.eigenvector = {1.0};
  return out;
}

// ---------------------------------------------------------------------------
// body-fixed frame

struct BFPairState {
  int JA = 0, MA = 0, JB = 0, MB = 0;
  std::string str() const {
    return "|" + std::to_string(JA) + "," + std::to_string(MA) + ";" +
           std::to_string(JB) + "," + std::to_string(MB) + ">";
  }
  friend bool operator==(const BFPairState& x, const BFPairState& y) {
    return x.JA == y.JA && x.MA == y.MA && x.JB == y.JB && x.MB == y.MB;
  }
};

inline std::vector<BFPairState> bf_basis(int Jmax, int Mtot) {
  std::vector<BFPairState> out;
  for (int JA = 0; JA <= Jmax; ++JA)
    for (int JB = 0; JB <= Jmax; ++JB)
      for (int MA = -JA; MA <= JA; ++MA) {
        int MB = Mtot - MA;
        if (std::abs(MB) <= JB) out.push_back({JA, MA, JB, MB});
      }
  return out;
}

namespace detail {

// dipole-dipole BF element between rotor pair states, f111-weighted
inline double bf_dd_element(const RotorSpecies& a, const RotorSpecies& b,
                            const BFPairState& bra, const BFPairState& ket) {
  if (bra.MA + bra.MB != ket.MA + ket.MB) return 0.0;
  if (std::abs(bra.JA - ket.JA) != 1 || std::abs(bra.JB - ket.JB) != 1)
    return 0.0;
  int m = bra.MA - ket.MA;
  if (std::abs(m) > 1) return 0.0;
  double redA = rotor_reduced_dipole(ket.JA, bra.JA, a.d0);
  double redB = rotor_reduced_dipole(ket.JB, bra.JB, b.d0);
  double f = (m == 0) ? -2.0 : -1.0;
  return f * cg(ket.JA, ket.MA, 1, m, bra.JA, bra.MA) /
         std::sqrt(2.0 * bra.JA + 1.0) * redA *
         cg(ket.JB, ket.MB, 1, -m, bra.JB, bra.MB) /
         std::sqrt(2.0 * bra.JB + 1.0) * redB;
}

} // namespace detail

/// BF coupled-rotor Hamiltonian at separation R: rotational diagonal plus
/// the dipole-dipole coupling between (JA, JB) and (JA+-1, JB+-1) pairs,
/// within fixed M_tot.
inline Matrix bf_hamiltonian(const RotorSpecies& a, const RotorSpecies& b,
                             const std::vector<BFPairState>& basis, double R) {
  if (R <= 0) throw std::domain_error("bf_hamiltonian: R <= 0");
  const std::size_t n = basis.size();
  Matrix h(n, n);
  double r3 = 1.0 / (R * R * R);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = a.B0 * basis[i].JA * (basis[i].JA + 1) +
              b.B0 * basis[i].JB * (basis[i].JB + 1);
    for (std::size_t j = 0; j < n; ++j) {
      double v = detail::bf_dd_element(a, b, basis[i], basis[j]);
      if (v != 0.0) h(i, j) += v * r3;
    }
  }
  return h;
}

enum class Frame { bf, sf };

struct TwoChannelCurves {
  double lowest = 0, highest = 0;
};

/// Closed-form extreme eigenvalues of the {(0,0),(1,1)} restriction:
/// BF:  2B0 (1 -++ sqrt(1 + d0^4/(6 B0^2 R^6)))
/// SF:  as BF with 2B0 -> 2B0 + 3/(2 mu R^2) (L = 2 centrifugal share)
inline TwoChannelCurves two_channel_analytic(const RotorSpecies& mol, double R,
                                             Frame frame, double mu = 0) {
  double beta = 2.0 * mol.B0;
  if (frame == Frame::sf) {
    if (mu <= 0) throw std::domain_error("two_channel_analytic: mu required");
    beta += 1.5 / (mu * R * R);
  }
  double d4 = std::pow(mol.d0, 4);
  double root = std::sqrt(1.0 + 2.0 * d4 / (3.0 * beta * beta * R * R * R *
                                            R * R * R));
  return {beta * (1.0 - root), beta * (1.0 + root)};
}

// ---------------------------------------------------------------------------
// exact (1,1) van der Waals block and (1,0)+(0,1) resonant block

struct ExactEigenEntry {
  SurdSum value;                 // in units d0^4/(16 pi^2 eps0^2 B0)
  std::vector<SurdSum> vector;   // exact, unnormalized, over the BF states
  int mtot = 0;
  bool exchange_even = true;
};

struct Vdw11Result {
  std::vector<BFPairState> states;          // the 9 (MA, MB) states
  std::vector<std::vector<SurdSum>> matrix; // W in rescaled units
  std::vector<ExactEigenEntry> eigen;       // ascending by value
};

namespace detail {

inline Surd exact_rotor_red(int bra, int ket) {
  // <J'||Q_1||J> for d0 = 1: (1,0) -> 1, (0,1) -> -1, (2,1) -> sqrt2,
  // (1,2) -> -sqrt2
  if (bra == 1 && ket == 0) return Surd(1);
  if (bra == 0 && ket == 1) return -Surd(1);
  if (bra == 2 && ket == 1) return Surd::sqrt_of(BigRat(2));
  if (bra == 1 && ket == 2) return -Surd::sqrt_of(BigRat(2));
  return Surd();
}

inline Surd exact_f11(int m) { return Surd(m == 0 ? -2 : -1); }

// <1 M'|Q_{1 m'}|J'' M''><J'' M''|Q_{1 m}|1 M> exactly (d0 = 1)
inline Surd exact_chain(int Jpp, int Mfrom, int Mto, int m) {
  int Mmid = Mfrom + m;
  if (std::abs(Mmid) > Jpp) return Surd();
  int mp = Mto - Mmid;
  if (std::abs(mp) > 1) return Surd();
  Surd dn = clebsch_gordan(1, Mfrom, 1, m, Jpp, Mmid) /
            Surd::sqrt_of(BigRat(2 * Jpp + 1)) * exact_rotor_red(Jpp, 1);
  Surd up = clebsch_gordan(Jpp, Mmid, 1, mp, 1, Mto) /
            Surd::sqrt_of(BigRat(3)) * exact_rotor_red(1, Jpp);
  return up * dn;
}

} // namespace detail

/// Second-order dipole-dipole matrix of the like-pair (1,1) block in exact
/// arithmetic (units d0^4/(16 pi^2 eps0^2 B0) at the R^-6 exponent), with
/// the exact eigensystem obtained after block-diagonalization by |MA+MB|
/// and permutation symmetry.
inline Vdw11Result vdw11_block_exact() {
  Vdw11Result out;
  for (int MA = -1; MA <= 1; ++MA)
    for (int MB = -1; MB <= 1; ++MB) out.states.push_back({1, MA, 1, MB});
  const int n = 9;
  out.matrix.assign(n, std::vector<SurdSum>(n));

  // intermediates (J''A, J''B) in {0,2}^2; E(J) = J(J+1), block at 4
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const BFPairState& sp = out.states[i];
      const BFPairState& s = out.states[j];
      if (sp.MA + sp.MB != s.MA + s.MB) continue;
      SurdSum acc;
      for (int JppA : {0, 2})
        for (int JppB : {0, 2}) {
          BigRat denom(JppA * (JppA + 1) + JppB * (JppB + 1) - 4);
          for (int m = -1; m <= 1; ++m) {
            Surd ca = detail::exact_chain(JppA, s.MA, sp.MA, m);
            if (ca.is_zero()) continue;
            Surd cb = detail::exact_chain(JppB, s.MB, sp.MB, -m);
            if (cb.is_zero()) continue;
            int mp = sp.MA - (s.MA + m);
            Surd term = detail::exact_f11(mp) * detail::exact_f11(m) * ca * cb;
            acc = acc + SurdSum(-(Surd(BigRat(1) / denom)) * term);
          }
        }
      out.matrix[i][j] = acc;
    }

  // symmetrized combinations: index pairs (i, j) with i = (MA,MB), j = (MB,MA)
  auto idx = [&](int MA, int MB) { return (MA + 1) * 3 + (MB + 1); };
  auto w = [&](int i, int j) { return out.matrix[i][j]; };

  struct Sym {
    std::vector<std::pair<int, SurdSum>> combo; // unnormalized
    int mtot;
    bool even;
  };
  std::vector<Sym> symbasis;
  for (int MA = -1; MA <= 1; ++MA)
    for (int MB = MA; MB <= 1; ++MB) {
      if (MA == MB) {
        symbasis.push_back({{{idx(MA, MB), SurdSum(1)}}, MA + MB, true});
      } else {
        symbasis.push_back(
            {{{idx(MA, MB), SurdSum(1)}, {idx(MB, MA), SurdSum(1)}},
             MA + MB,
             true});
        symbasis.push_back(
            {{{idx(MA, MB), SurdSum(1)}, {idx(MB, MA), -SurdSum(1)}},
             MA + MB,
             false});
      }
    }

  // matrix element between two (unnormalized) symmetric combinations,
  // divided by the norm product later only through the eigenproblem of the
  // small blocks, where normalization scales out
  auto sym_elem = [&](const Sym& x, const Sym& y) {
    SurdSum acc;
    for (auto& [i, ci] : x.combo)
      for (auto& [j, cj] : y.combo) acc = acc + ci * cj * w(i, j);
    // both combos carry norm 1/sqrt(men) with men = combo size; the
    // (1/sqrt2)(1/sqrt2) product is men-dependent
    BigRat normsq(1, int(x.combo.size()) * int(y.combo.size()));
    return acc * SurdSum(Surd::sqrt_of(normsq));
  };

  // group by (mtot, even) and solve 1x1 / 2x2 blocks exactly
  for (int mtot = -2; mtot <= 2; ++mtot)
    for (bool even : {true, false}) {
      std::vector<const Sym*> members;
      for (auto& sbv : symbasis)
        if (sbv.mtot == mtot && sbv.even == even) members.push_back(&sbv);
      if (members.empty()) continue;
      if (members.size() == 1) {
        ExactEigenEntry e;
        e.value = sym_elem(*members[0], *members[0]);
        e.mtot = mtot;
        e.exchange_even = even;
        e.vector.assign(n, SurdSum());
        for (auto& [i, c] : members[0]->combo) e.vector[i] = c;
        out.eigen.push_back(std::move(e));
      } else if (members.size() == 2) {
        SurdSum a = sym_elem(*members[0], *members[0]);
        SurdSum b = sym_elem(*members[1], *members[1]);
        SurdSum c = sym_elem(*members[0], *members[1]);
        // diagonal entries are rational; the cross entry may carry 1/sqrt2
        // but its square is rational, which is all the quadratic needs
        BigRat ar = a.as_rational(), br = b.as_rational();
        BigRat c2 = (c * c).as_rational();
        BigRat mean = (ar + br) / 2;
        BigRat disc = (ar - br) * (ar - br) / 4 + c2;
        Surd root = Surd::sqrt_of(disc);
        Surd inv_sqrt2 = Surd::sqrt_of(BigRat(1, 2));
        for (int sign : {-1, 1}) {
          ExactEigenEntry e;
          e.value = SurdSum(Surd(mean)) +
                    (sign > 0 ? SurdSum(root) : SurdSum(-root));
          e.mtot = mtot;
          e.exchange_even = even;
          // eigenvector c * u1 + (lambda - a) * u2 over the normalized
          // combos; each two-state combo carries 1/sqrt2
          SurdSum comp2 = e.value - SurdSum(Surd(ar));
          e.vector.assign(n, SurdSum());
          Surd norm1 = members[0]->combo.size() == 2 ? inv_sqrt2 : Surd(1);
          Surd norm2 = members[1]->combo.size() == 2 ? inv_sqrt2 : Surd(1);
          for (auto& [i, cc] : members[0]->combo)
            e.vector[i] = e.vector[i] + cc * c * SurdSum(norm1);
          for (auto& [i, cc] : members[1]->combo)
            e.vector[i] = e.vector[i] + cc * comp2 * SurdSum(norm2);
          out.eigen.push_back(std::move(e));
        }
      } else {
        throw std::logic_error("unexpected symmetry block size");
      }
    }

  std::sort(out.eigen.begin(), out.eigen.end(),
            [](const ExactEigenEntry& x, const ExactEigenEntry& y) {
              return x.value.to_double() < y.value.to_double();
            });
  return out;
}

struct C3BlockResult {
  std::vector<BFPairState> states; // (1,0)+(0,1) product states, JA = 1 first
  std::vector<ExactEigenEntry> eigen; // values in units d0^2 at R^-3
};

/// Resonant block of a like pair in (J_A, J_B) = (1,0) and (0,1): exact
/// eigenvalues +-2 d0^2/3 (M = 0) and +-d0^2/3 (|M| = 1) with symmetric /
/// antisymmetric eigenvectors. Different species have no such degeneracy.
inline C3BlockResult c3_block(const RotorSpecies& a, const RotorSpecies& b) {
  if (std::abs(a.B0 - b.B0) > degeneracy_merge_tol || a.d0 != b.d0)
    throw DegeneracyError(
        "c3_block: (1,0)+(0,1) levels of different species are not "
        "degenerate");
  C3BlockResult out;
  for (int M = -1; M <= 1; ++M) out.states.push_back({1, M, 0, 0});
  for (int M = -1; M <= 1; ++M) out.states.push_back({0, 0, 1, M});
  // per-M 2x2 block [[0, w],[w, 0]] with the exchange coupling
  //   w(M) = (-1)^{1-M} (1 + delta_{M0}) d0^2/3   (units d0^2 at R^-3):
  // eigenvalues sign*w with eigenvectors (|1M,00> + sign |00,1M>)/sqrt2
  Surd inv_sqrt2 = Surd::sqrt_of(BigRat(1, 2));
  for (int M = -1; M <= 1; ++M) {
    BigRat w = BigRat((M % 2 == 0 ? -1 : 1) * (M == 0 ? 2 : 1), 3);
    for (int sign : {-1, 1}) {
      ExactEigenEntry e;
      e.mtot = M;
      e.value = SurdSum(Surd(w * sign));
      e.vector.assign(6, SurdSum());
      e.vector[M + 1] = SurdSum(inv_sqrt2);
      e.vector[M + 4] = SurdSum(Surd(sign) * inv_sqrt2);
      e.exchange_even = (sign > 0);
      out.eigen.push_back(std::move(e));
    }
  }
  std::sort(out.eigen.begin(), out.eigen.end(),
            [](const ExactEigenEntry& x, const ExactEigenEntry& y) {
              return x.value.to_double() < y.value.to_double();
            });
  return out;
}

// ---------------------------------------------------------------------------
// space-fixed frame

struct UncoupledSFState {
  int JA = 0, MA = 0, JB = 0, MB = 0, L = 0, ML = 0;
  std::string str() const {
    return "|" + std::to_string(JA) + " " + std::to_string(MA) + " " +
           std::to_string(JB) + " " + std::to_string(MB) + "; L=" +
           std::to_string(L) + " " + std::to_string(ML) + ">";
  }
};

struct CoupledSFState {
  int JA = 0, JB = 0, JAB = 0, L = 0, J = 0, M = 0;
  std::string str() const {
    return "((" + std::to_string(JA) + std::to_string(JB) + ")" +
           std::to_string(JAB) + "," + std::to_string(L) + ")" +
           std::to_string(J) + "," + std::to_string(M);
  }
  friend bool operator==(const CoupledSFState& x, const CoupledSFState& y) {
    return x.JA == y.JA && x.JB == y.JB && x.JAB == y.JAB && x.L == y.L &&
           x.J == y.J && x.M == y.M;
  }
};

struct Truncation {
  int jrot_max = 6;
  int lmax = 8;
  int jtot_max = 3;
};

inline std::vector<UncoupledSFState> uncoupled_sf_basis(int jrot_max, int lmax,
                                                        int Mtot) {
  std::vector<UncoupledSFState> out;
  for (int JA = 0; JA <= jrot_max; ++JA)
    for (int JB = 0; JB <= jrot_max; ++JB)
      for (int L = 0; L <= lmax; ++L)
        for (int MA = -JA; MA <= JA; ++MA)
          for (int MB = -JB; MB <= JB; ++MB) {
            int ML = Mtot - MA - MB;
            if (std::abs(ML) <= L) out.push_back({JA, MA, JB, MB, L, ML});
          }
  return out;
}

inline std::vector<CoupledSFState> coupled_sf_basis(const Truncation& tr,
                                                    int M) {
  std::vector<CoupledSFState> out;
  for (int JA = 0; JA <= tr.jrot_max; ++JA)
    for (int JB = 0; JB <= tr.jrot_max; ++JB)
      for (int JAB = std::abs(JA - JB); JAB <= JA + JB; ++JAB)
        for (int L = 0; L <= tr.lmax; ++L)
          for (int J = std::abs(JAB - L);
               J <= std::min(JAB + L, tr.jtot_max); ++J)
            if (std::abs(M) <= J) out.push_back({JA, JB, JAB, L, J, M});
  return out;
}

/// Orthonormal transformation from the uncoupled to the fully coupled basis:
///   T[u][c] = C^{JAB, MA+MB}_{JA MA JB MB} C^{J M}_{JAB (MA+MB) L ML}
/// (for matching (JA, JB, L) and M = MA+MB+ML; J unrestricted for unitarity).
inline Matrix couple_basis(const std::vector<UncoupledSFState>& unc,
                           const std::vector<CoupledSFState>& cpl) {
  Matrix t(unc.size(), cpl.size());
  for (std::size_t u = 0; u < unc.size(); ++u)
    for (std::size_t c = 0; c < cpl.size(); ++c) {
      const auto& x = unc[u];
      const auto& y = cpl[c];
      if (x.JA != y.JA || x.JB != y.JB || x.L != y.L) continue;
      if (x.MA + x.MB + x.ML != y.M) continue;
      int MAB = x.MA + x.MB;
      if (std::abs(MAB) > y.JAB) continue;
      t(u, c) = cg(x.JA, x.MA, x.JB, x.MB, y.JAB, MAB) *
                cg(y.JAB, MAB, x.L, x.ML, y.J, y.M);
    }
  return t;
}

/// General multipole-multipole element in the uncoupled SF basis
/// (l = lA + lB):
///   (-1)^{lB} sqrt((2l)!/((2lA)!(2lB)!)) sqrt((2L+1)/(2L'+1)) C^{L'0}_{L0l0}
///   [redA/sqrt(2J'A+1)] [redB/sqrt(2J'B+1)]
///   sum_{mA mB} (-1)^{mA+mB} C^{l,mA+mB}_{lA mA lB mB}
///     C^{L'M'L}_{L ML l,-mA-mB} C^{J'A M'A}_{JA MA lA mA}
///     C^{J'B M'B}_{JB MB lB mB} / R^{1+l}
inline double sf_uncoupled_element(const UncoupledSFState& bra,
                                   const UncoupledSFState& ket, int lA, int lB,
                                   double redA, double redB, double R) {
  if (redA == 0.0 || redB == 0.0) return 0.0;
  const int l = lA + lB;
  double angL = cg(ket.L, 0, l, 0, bra.L, 0);
  if (angL == 0.0) return 0.0;
  double pref = (lB % 2 ? -1.0 : 1.0) *
                std::sqrt(BigRat(detail::factorial(2 * l),
                                 detail::factorial(2 * lA) *
                                     detail::factorial(2 * lB))
                              .convert_to<double>()) *
                std::sqrt((2.0 * ket.L + 1.0) / (2.0 * bra.L + 1.0)) * angL *
                redA / std::sqrt(2.0 * bra.JA + 1.0) * redB /
                std::sqrt(2.0 * bra.JB + 1.0) / std::pow(R, 1 + l);
  int mA = bra.MA - ket.MA;
  int mB = bra.MB - ket.MB;
  if (std::abs(mA) > lA || std::abs(mB) > lB) return 0.0;
  int m = mA + mB;
  if (bra.ML != ket.ML - m) return 0.0;
  double ang = ((m % 2) ? -1.0 : 1.0) * cg(lA, mA, lB, mB, l, m) *
               cg(ket.L, ket.ML, l, -m, bra.L, bra.ML) *
               cg(ket.JA, ket.MA, lA, mA, bra.JA, bra.MA) *
               cg(ket.JB, ket.MB, lB, mB, bra.JB, bra.MB);
  return pref * ang;
}

/// Dipole-dipole element in the fully coupled basis:
///   -sqrt(30)/R^3 delta_{JJ'} delta_{MM'} (-1)^{J+JAB+L'} C^{L'0}_{L0 20}
///   {9j: J'A J'B J'AB / JA JB JAB / 1 1 2} {6j: JAB L J; L' J'AB 2}
///   sqrt((2L+1)(2JAB+1)(2J'AB+1)) redA redB
inline double sf_dd_element(const CoupledSFState& bra,
                            const CoupledSFState& ket, double redA,
                            double redB, double R) {
  if (bra.J != ket.J || bra.M != ket.M) return 0.0;
  if (redA == 0.0 || redB == 0.0) return 0.0;
  double angL = cg(ket.L, 0, 2, 0, bra.L, 0); // kills (L,L') = (0,0)
  if (angL == 0.0) return 0.0;
  double nj = ninej(bra.JA, bra.JB, bra.JAB, ket.JA, ket.JB, ket.JAB, 1, 1, 2);
  if (nj == 0.0) return 0.0;
  double sj = sixj(ket.JAB, ket.L, ket.J, bra.L, bra.JAB, 2);
  if (sj == 0.0) return 0.0;
  int ph = (ket.J + ket.JAB + bra.L) % 2 ? -1 : 1;
  return -std::sqrt(30.0) / (R * R * R) * ph * angL * nj * sj *
         std::sqrt((2.0 * ket.L + 1.0) * (2.0 * ket.JAB + 1.0) *
                   (2.0 * bra.JAB + 1.0)) *
         redA * redB;
}

enum class Molecule { A, B };

/// Q_10 element of one molecule in the fully coupled basis, from the
/// double recoupling (operator on A, spectators JB and L):
///   delta_{JB J'B} delta_{LL'} delta_{MM'} (-1)^{J'A+JB+JAB+J'AB+L+J}
///   {JA JB JAB; J'AB 1 J'A} {JAB L J; J' 1 J'AB}
///   sqrt((2JAB+1)(2J'AB+1)(2J+1)) C^{J'M}_{JM 10} redA
/// (molecule B through the (JA <-> JB) reordering phase of both kets).
/// The overall sign is pinned by the expansion of |((10)10)10> and
/// |((00)00)00> into product states, where the element is +d0/sqrt3.
inline double sf_dipole_element(const CoupledSFState& bra,
                                const CoupledSFState& ket, Molecule which,
                                double red) {
  if (bra.M != ket.M || bra.L != ket.L) return 0.0;
  if (red == 0.0) return 0.0;
  CoupledSFState b = bra, k = ket;
  int reorder = 1;
  if (which == Molecule::B) {
    std::swap(b.JA, b.JB);
    std::swap(k.JA, k.JB);
    reorder = ((b.JA + b.JB - b.JAB + k.JA + k.JB - k.JAB) % 2) ? -1 : 1;
  }
  if (b.JB != k.JB) return 0.0;
  double cgf = cg(k.J, k.M, 1, 0, b.J, b.M);
  if (cgf == 0.0) return 0.0;
  double s1 = sixj(k.JA, k.JB, k.JAB, b.JAB, 1, b.JA);
  if (s1 == 0.0) return 0.0;
  double s2 = sixj(k.JAB, k.L, k.J, b.J, 1, b.JAB);
  if (s2 == 0.0) return 0.0;
  int ph = (b.JA + k.JB + k.JAB + b.JAB + k.L + k.J) % 2 ? -1 : 1;
  return reorder * ph * s1 * s2 *
         std::sqrt((2.0 * k.JAB + 1.0) * (2.0 * b.JAB + 1.0) *
                   (2.0 * k.J + 1.0)) *
         cgf * red;
}

/// Pair setup for SF-frame scans.
struct PairSetup {
  RotorSpecies A, B;
  Truncation trunc;
  int M = 0;           // total projection
  double field_au = 0; // z-polarized field amplitude
  // restrict identical pairs to the exchange-even sector (holds the lowest
  // adiabatic state; halves the basis)
  bool exchange_even = false;
  double reduced_mass() const {
    if (A.mass <= 0 || B.mass <= 0)
      throw std::domain_error("reduced_mass: molecule masses required");
    return A.mass * B.mass / (A.mass + B.mass);
  }
};

/// Exchange-adapted combinations of coupled states for an identical pair:
/// P |(JA JB) JAB L J M> = (-1)^{JA+JB-JAB+L} |(JB JA) JAB L J M>.
struct EvenBasis {
  std::vector<CoupledSFState> full;
  // each even vector: one or two (full index, coefficient) terms
  std::vector<std::vector<std::pair<std::size_t, double>>> combos;
};

inline EvenBasis build_even_basis(const std::vector<CoupledSFState>& full) {
  EvenBasis out;
  out.full = full;
  auto find = [&](const CoupledSFState& s) -> std::size_t {
    for (std::size_t i = 0; i < full.size(); ++i)
      if (full[i] == s) return i;
    throw std::logic_error("exchange partner missing from the basis");
  };
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < full.size(); ++i) {
    const auto& s = full[i];
    int phase = ((s.JA + s.JB - s.JAB + s.L) % 2) ? -1 : 1;
    if (s.JA == s.JB) {
      if (phase == 1) out.combos.push_back({{i, 1.0}});
    } else if (s.JA < s.JB) {
      CoupledSFState bar = s;
      std::swap(bar.JA, bar.JB);
      out.combos.push_back(
          {{i, inv_sqrt2}, {find(bar), phase * inv_sqrt2}});
    }
  }
  return out;
}

/// Projects an exchange-symmetric operator onto the even sector.
inline Matrix project_even(const EvenBasis& eb, const Matrix& full) {
  const std::size_t n = eb.combos.size();
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0;
      for (auto& [a, ca] : eb.combos[i])
        for (auto& [b, cb] : eb.combos[j]) acc += ca * cb * full(a, b);
      out(i, j) = acc;
    }
  return out;
}

/// Full SF Hamiltonian over the coupled basis at separation R: rotational
/// diagonal + centrifugal L(L+1)/(2 mu R^2) + dipole-dipole + Stark.
inline Matrix sf_hamiltonian(const PairSetup& setup,
                             const std::vector<CoupledSFState>& basis,
                             double R) {
  if (R <= 0) throw std::domain_error("sf_hamiltonian: R <= 0");
  const std::size_t n = basis.size();
  const double mu = setup.reduced_mass();
  Matrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& si = basis[i];
    h(i, i) = setup.A.B0 * si.JA * (si.JA + 1) +
              setup.B.B0 * si.JB * (si.JB + 1) +
              si.L * (si.L + 1) / (2.0 * mu * R * R);
    for (std::size_t j = 0; j < n; ++j) {
      const auto& sj = basis[j];
      if (std::abs(si.JA - sj.JA) == 1 && std::abs(si.JB - sj.JB) == 1) {
        double redA = rotor_reduced_dipole(sj.JA, si.JA, setup.A.d0);
        double redB = rotor_reduced_dipole(sj.JB, si.JB, setup.B.d0);
        h(i, j) += sf_dd_element(si, sj, redA, redB, R);
      }
      if (setup.field_au != 0.0) {
        if (si.JB == sj.JB && std::abs(si.JA - sj.JA) == 1)
          h(i, j) -= setup.field_au *
                     sf_dipole_element(
                         si, sj, Molecule::A,
                         rotor_reduced_dipole(sj.JA, si.JA, setup.A.d0));
        if (si.JA == sj.JA && std::abs(si.JB - sj.JB) == 1)
          h(i, j) -= setup.field_au *
                     sf_dipole_element(
                         si, sj, Molecule::B,
                         rotor_reduced_dipole(sj.JB, si.JB, setup.B.d0));
      }
    }
  }
  return h;
}

/// Total z dipole operator Q_10(A) + Q_10(B) in the coupled basis.
inline Matrix sf_total_dipole(const PairSetup& setup,
                              const std::vector<CoupledSFState>& basis) {
  const std::size_t n = basis.size();
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& si = basis[i];
      const auto& sj = basis[j];
      if (si.JB == sj.JB && std::abs(si.JA - sj.JA) == 1)
        d(i, j) += sf_dipole_element(
            si, sj, Molecule::A,
            rotor_reduced_dipole(sj.JA, si.JA, setup.A.d0));
      if (si.JA == sj.JA && std::abs(si.JB - sj.JB) == 1)
        d(i, j) += sf_dipole_element(
            si, sj, Molecule::B,
            rotor_reduced_dipole(sj.JB, si.JB, setup.B.d0));
    }
  return d;
}

struct PECResult {
  std::vector<double> R;                       // bohr, increasing
  std::vector<std::vector<double>> energies;   // [iR][curve], tracked
  std::vector<std::string> labels;             // per-curve asymptotic label
  std::vector<std::vector<double>> dipole;     // [iR][curve] <Q10(A)+Q10(B)>
  std::vector<std::vector<double>> weight;     // [iR][curve] dominant |c|^2
  std::vector<std::string> warnings;
  std::size_t curves() const { return labels.size(); }
};

/// Eigenvalue scan over an R grid with continuity tracking by maximal
/// eigenvector overlap (ties by energy order). With no field the basis is
/// diagonalized per total-J block. `max_curves` keeps the lowest curves.
inline PECResult pec_scan(const PairSetup& setup,
                          const std::vector<double>& R_grid,
                          std::size_t max_curves = 0,
                          bool with_dipole = false) {
  for (std::size_t i = 0; i + 1 < R_grid.size(); ++i)
    if (R_grid[i] >= R_grid[i + 1])
      throw std::invalid_argument("pec_scan: R grid must increase");
  auto basis = coupled_sf_basis(setup.trunc, setup.M);
  if (basis.empty()) throw std::invalid_argument("pec_scan: empty basis");
  PECResult out;
  out.R = R_grid;
  if (setup.trunc.jrot_max < 1)
    out.warnings.push_back(
        "basis truncated below the first dipole-coupled channel");

  EvenBasis eb;
  const bool sym = setup.exchange_even;
  if (sym) {
    if (setup.A.name != setup.B.name)
      throw std::invalid_argument(
          "exchange_even requires an identical pair");
    eb = build_even_basis(basis);
  }
  const std::size_t n = sym ? eb.combos.size() : basis.size();
  auto state_J = [&](std::size_t w) {
    return sym ? basis[eb.combos[w].front().first].J : basis[w].J;
  };
  auto dominant_label = [&](const Matrix& vecs, std::size_t col) {
    if (!sym) {
      std::size_t best = 0;
      for (std::size_t a = 1; a < n; ++a)
        if (std::abs(vecs(a, col)) > std::abs(vecs(best, col))) best = a;
      return basis[best].str();
    }
    std::size_t best = 0;
    for (std::size_t a = 1; a < n; ++a)
      if (std::abs(vecs(a, col)) > std::abs(vecs(best, col))) best = a;
    return basis[eb.combos[best].front().first].str() + "+";
  };

  // block structure: J conserved without a field
  std::vector<std::vector<std::size_t>> groups;
  if (setup.field_au == 0.0) {
    std::map<int, std::vector<std::size_t>> byj;
    for (std::size_t i = 0; i < n; ++i) byj[state_J(i)].push_back(i);
    for (auto& [j, idx] : byj) groups.push_back(idx);
  } else {
    groups.emplace_back(n);
    std::iota(groups.back().begin(), groups.back().end(), 0);
  }

  Matrix dip;
  if (with_dipole) {
    dip = sf_total_dipole(setup, basis);
    if (sym) dip = project_even(eb, dip);
  }

  std::size_t ncurve = max_curves == 0 ? n : std::min(max_curves, n);
  out.energies.assign(R_grid.size(), std::vector<double>(ncurve));
  if (with_dipole)
    out.dipole.assign(R_grid.size(), std::vector<double>(ncurve));
  out.weight.assign(R_grid.size(), std::vector<double>(ncurve));
  out.labels.assign(ncurve, "");

  Matrix prev_vec; // n x ncurve, tracked order
  std::vector<std::size_t> order(ncurve);

  for (std::size_t ir = 0; ir < R_grid.size(); ++ir) {
    Matrix h = sf_hamiltonian(setup, basis, R_grid[ir]);
    if (sym) h = project_even(eb, h);
    // assemble eigenpairs from the symmetry blocks
    std::vector<double> vals(n);
    Matrix vecs(n, n);
    std::size_t col = 0;
    for (auto& idx : groups) {
      Matrix sub(idx.size(), idx.size());
      for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b)
          sub(a, b) = h(idx[a], idx[b]);
      auto eig = eig_sym(sub);
      for (std::size_t k = 0; k < idx.size(); ++k, ++col) {
        vals[col] = eig.values[k];
        for (std::size_t a = 0; a < idx.size(); ++a)
          vecs(idx[a], col) = eig.vectors(a, k);
      }
    }
    std::vector<std::size_t> bye(n);
    std::iota(bye.begin(), bye.end(), 0);
    std::stable_sort(bye.begin(), bye.end(),
                     [&](std::size_t x, std::size_t y) {
                       return vals[x] < vals[y];
                     });

    if (ir == 0) {
      for (std::size_t k = 0; k < ncurve; ++k) order[k] = bye[k];
    } else {
      // greedy maximal-overlap assignment against the previous columns
      std::vector<bool> taken(n, false);
      std::vector<std::size_t> assign(ncurve, n);
      std::vector<std::tuple<double, std::size_t, std::size_t>> cand;
      for (std::size_t k = 0; k < ncurve; ++k)
        for (std::size_t s = 0; s < n; ++s) {
          double ov = 0;
          for (std::size_t a = 0; a < n; ++a)
            ov += prev_vec(a, k) * vecs(a, s);
          cand.emplace_back(std::abs(ov), k, s);
        }
      std::stable_sort(cand.begin(), cand.end(), [](auto& x, auto& y) {
        return std::get<0>(x) > std::get<0>(y);
      });
      std::size_t filled = 0;
      for (auto& [ov, k, s] : cand) {
        if (filled == ncurve) break;
        if (assign[k] != n || taken[s]) continue;
        assign[k] = s;
        taken[s] = true;
        ++filled;
      }
      for (std::size_t k = 0; k < ncurve; ++k) order[k] = assign[k];
    }

    Matrix cur(n, ncurve);
    for (std::size_t k = 0; k < ncurve; ++k) {
      std::size_t s = order[k];
      out.energies[ir][k] = vals[s];
      double wmax = 0;
      for (std::size_t a = 0; a < n; ++a)
        wmax = std::max(wmax, vecs(a, s) * vecs(a, s));
      out.weight[ir][k] = wmax;
      for (std::size_t a = 0; a < n; ++a) cur(a, k) = vecs(a, s);
      if (with_dipole) {
        double dv = 0;
        for (std::size_t a = 0; a < n; ++a) {
          double acc = 0;
          for (std::size_t b = 0; b < n; ++b) acc += dip(a, b) * vecs(b, s);
          dv += vecs(a, s) * acc;
        }
        out.dipole[ir][k] = dv;
      }
    }
    prev_vec = std::move(cur);

    if (ir + 1 == R_grid.size())
      for (std::size_t k = 0; k < ncurve; ++k)
        out.labels[k] = dominant_label(vecs, order[k]);
  }
  return out;
}

/// Total induced dipole <Q10(A) + Q10(B)> on the lowest adiabatic state per
/// R, one curve per field amplitude.
inline std::vector<std::vector<double>> induced_dipole_curve(
    PairSetup setup, const std::vector<double>& R_grid,
    const std::vector<double>& fields_au) {
  std::vector<std::vector<double>> out;
  for (double f : fields_au) {
    setup.field_au = f;
    auto pec = pec_scan(setup, R_grid, 1, true);
    std::vector<double> curve(R_grid.size());
    for (std::size_t ir = 0; ir < R_grid.size(); ++ir)
      curve[ir] = pec.dipole[ir][0];
    out.push_back(std::move(curve));
  }
  return out;
}

/// Ground-state induced dipole of one isolated molecule in a z field
/// (rotational ladder to Jmax, M = 0).
inline double single_molecule_induced_dipole(const RotorSpecies& mol,
                                             double field_au, int Jmax = 8) {
  auto table = rotor_table(mol, Jmax);
  auto stark = stark_first_order(table, 0, field_au);
  const std::size_t n = stark.keys.size();
  Matrix h = stark.matrix;
  for (std::size_t i = 0; i < n; ++i) h(i, i) += table.energy(stark.keys[i]);
  auto eig = eig_sym(h);
  auto dip = dipole_z_matrix(table, 0);
  double dv = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      dv += eig.vectors(a, 0) * dip.matrix(a, b) * eig.vectors(b, 0);
  return dv;
}

} // namespace lri
