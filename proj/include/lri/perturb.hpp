#pragma once

#include <functional>
#include <map>
#include <set>
#include <vector>

#include "multipole.hpp"
#include "spectrum.hpp"

// Degenerate first- and second-order perturbation theory over product states
// of two partners coupled by the body-fixed multipolar expansion. Effective
// operators are assembled as per-R-exponent coefficient matrices:
//   V(R) = sum_n coeff[n] / R^n.

namespace lri {

struct ProductState {
  LevelKey a;
  HalfInt Ma;
  LevelKey b;
  HalfInt Mb;

  std::string str() const {
    return "|" + a.str() + " M=" + Ma.str() + "; " + b.str() +
           " M=" + Mb.str() + ">";
  }
};

inline constexpr double degeneracy_merge_tol = 1e-12; // hartree
inline constexpr double degeneracy_guard_tol = 1e-9;  // hartree

/// Product states sharing one unperturbed energy. Usually built from a
/// single level pair; resonant blocks carry the exchanged pair as well.
struct DegenerateBlock {
  const SpectrumTable* A = nullptr;
  const SpectrumTable* B = nullptr;
  std::vector<std::pair<LevelKey, LevelKey>> pairs;
  double E0 = 0;
  std::vector<ProductState> states;

  bool single_pair() const { return pairs.size() == 1; }
};

inline DegenerateBlock make_block(
    const SpectrumTable& A, const SpectrumTable& B,
    std::vector<std::pair<LevelKey, LevelKey>> pairs) {
  if (pairs.empty()) throw std::invalid_argument("make_block: no level pairs");
  DegenerateBlock blk;
  blk.A = &A;
  blk.B = &B;
  blk.E0 = A.energy(pairs.front().first) + B.energy(pairs.front().second);
  for (auto& [la, lb] : pairs) {
    double e = A.energy(la) + B.energy(lb);
    if (std::abs(e - blk.E0) > degeneracy_merge_tol)
      throw DegeneracyError("make_block: level pair " + la.str() + " + " +
                            lb.str() + " not degenerate with the block");
    for (int tMa = -la.J.twice(); tMa <= la.J.twice(); tMa += 2)
      for (int tMb = -lb.J.twice(); tMb <= lb.J.twice(); tMb += 2)
        blk.states.push_back({la, half(tMa), lb, half(tMb)});
  }
  blk.pairs = std::move(pairs);
  return blk;
}

inline DegenerateBlock block_from_levels(const SpectrumTable& A,
                                         const SpectrumTable& B,
                                         const LevelKey& la,
                                         const LevelKey& lb) {
  return make_block(A, B, {{la, lb}});
}

/// Effective operator restricted to a degenerate block, as coefficient
/// matrices per inverse-R exponent.
struct EffectiveMatrix {
  std::vector<ProductState> states;
  std::map<int, Matrix> coeff;
  std::vector<std::string> warnings;
  double tail_fraction = 0; // contribution share of the highest intermediates

  Matrix evaluate(double R) const {
    Matrix v(states.size(), states.size());
    for (auto& [n, c] : coeff) v += std::pow(R, -n) * c;
    return v;
  }
  Matrix& at(int n) {
    auto it = coeff.find(n);
    if (it == coeff.end())
      it = coeff.emplace(n, Matrix(states.size(), states.size())).first;
    return it->second;
  }
};

/// Multipole ranks (l'_A, l_A, l'_B, l_B) of one second-order contribution;
/// the R exponent is 2 + l'_A + l_A + l'_B + l_B.
struct RankSet {
  int lpA = 1, lA = 1, lpB = 1, lB = 1;
  int exponent() const { return 2 + lpA + lA + lpB + lB; }
};

// ---------------------------------------------------------------------------
// first order

/// Matrix of the multipolar expansion restricted to the block, all terms
/// with lA+lB <= lmax_sum. Absent reduced moments enter as zero; permanent
/// moments that the triangle rule allows but the table lacks are flagged.
inline EffectiveMatrix first_order_block(const DegenerateBlock& blk,
                                         int lmax_sum = 4) {
  EffectiveMatrix out;
  out.states = blk.states;
  const std::size_t n = blk.states.size();
  std::set<std::string> missing;

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const ProductState& sp = blk.states[i]; // bra
      const ProductState& s = blk.states[j];  // ket
      if (sp.Ma + sp.Mb != s.Ma + s.Mb) continue;
      HalfInt m = sp.Ma - s.Ma;
      if (!m.is_integer()) continue;
      for (int lA = 0; lA <= lmax_sum; ++lA)
        for (int lB = 0; lB + lA <= lmax_sum; ++lB) {
          if (std::abs(m.twice()) > 2 * std::min(lA, lB)) continue;
          double redA = blk.A->reduced(sp.a, s.a, lA);
          double redB = blk.B->reduced(sp.b, s.b, lB);
          if (redA == 0.0 || redB == 0.0) continue;
          double wa = cg(s.a.J, s.Ma, lA, m, sp.a.J, sp.Ma) /
                      std::sqrt(sp.a.J.twice() + 1.0) * redA;
          double wb = cg(s.b.J, s.Mb, lB, -m, sp.b.J, sp.Mb) /
                      std::sqrt(sp.b.J.twice() + 1.0) * redB;
          if (wa == 0.0 || wb == 0.0) continue;
          out.at(1 + lA + lB)(i, j) +=
              f_coeff(lA, lB, m.twice() / 2).to_double() * wa * wb;
        }
    }

  // flag triangle-allowed permanent moments with no data on file
  for (auto& [la, lb] : blk.pairs) {
    for (int l = 1; l <= lmax_sum; ++l) {
      if (triangle_ok(la.J, l, la.J) && !blk.A->has_reduced(la, la, l))
        missing.insert("A " + la.str() + " rank " + std::to_string(l));
      if (triangle_ok(lb.J, l, lb.J) && !blk.B->has_reduced(lb, lb, l))
        missing.insert("B " + lb.str() + " rank " + std::to_string(l));
    }
  }
  for (auto& s : missing)
    out.warnings.push_back("permanent moment treated as zero: " + s);
  return out;
}

// ---------------------------------------------------------------------------
// second order

namespace detail {

// sum_{M''} <a' M'|Q_{l' m'}|a'' M''><a'' M''|Q_{l m}|a M> collapses to the
// single M'' = M + m
inline double chain(const SpectrumTable& t, const LevelKey& from, HalfInt Mfrom,
                    const LevelKey& mid, const LevelKey& to, HalfInt Mto,
                    int lp, int l, HalfInt m) {
  HalfInt Mmid = Mfrom + m;
  if (!mid.J.valid_projection(Mmid)) return 0.0;
  HalfInt mp = Mto - Mmid;
  double dn = we_element(t, {from, Mfrom}, {mid, Mmid}, l, m);
  if (dn == 0.0) return 0.0;
  double up = we_element(t, {mid, Mmid}, {to, Mto}, lp, mp);
  return up * dn;
}

enum class SecondOrderPart { full, induction_b_to_a, induction_a_to_b,
                             dispersion };

inline bool pair_selected(SecondOrderPart part, bool a_same, bool b_same) {
  switch (part) {
    case SecondOrderPart::full: return true;
    case SecondOrderPart::induction_b_to_a: return b_same && !a_same;
    case SecondOrderPart::induction_a_to_b: return a_same && !b_same;
    case SecondOrderPart::dispersion: return !a_same && !b_same;
  }
  return false;
}

inline EffectiveMatrix second_order_direct(const DegenerateBlock& blk,
                                           const RankSet& rk,
                                           SecondOrderPart part) {
  if (!blk.single_pair())
    throw std::invalid_argument(
        "second order requires a block built from one level pair");
  EffectiveMatrix out;
  out.states = blk.states;
  const std::size_t n = blk.states.size();
  Matrix& w = out.at(rk.exponent());
  const LevelKey& la = blk.pairs.front().first;
  const LevelKey& lb = blk.pairs.front().second;

  double total_norm = 0, tail_norm = 0;
  double top_energy = -1e300;
  for (auto& [ka, ea] : blk.A->levels())
    for (auto& [kb, eb] : blk.B->levels())
      top_energy = std::max(top_energy, ea + eb);

  for (auto& [ka, ea] : blk.A->levels())
    for (auto& [kb, eb] : blk.B->levels()) {
      double denom = ea + eb - blk.E0;
      bool a_same = (ka == la), b_same = (kb == lb);
      if (std::abs(denom) <= degeneracy_merge_tol) continue;
      if (!pair_selected(part, a_same, b_same)) continue;
      // any coupling at all?
      double ra = blk.A->reduced(la, ka, rk.lpA) * blk.A->reduced(ka, la, rk.lA);
      double rb = blk.B->reduced(lb, kb, rk.lpB) * blk.B->reduced(kb, lb, rk.lB);
      if (ra == 0.0 || rb == 0.0) continue;
      if (std::abs(denom) < degeneracy_guard_tol)
        throw DegeneracyError("second order: intermediate pair " + ka.str() +
                              " + " + kb.str() +
                              " is quasi-degenerate with the block");
      double pair_norm = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const ProductState& sp = blk.states[i];
          const ProductState& s = blk.states[j];
          if (sp.Ma + sp.Mb != s.Ma + s.Mb) continue;
          double elem = 0;
          for (int tm = -2 * std::min(rk.lA, rk.lB);
               tm <= 2 * std::min(rk.lA, rk.lB); tm += 2) {
            HalfInt m = half(tm);
            HalfInt mp = sp.Ma - s.Ma - m;
            if (std::abs(mp.twice()) > 2 * std::min(rk.lpA, rk.lpB)) continue;
            double ca = chain(*blk.A, s.a, s.Ma, ka, sp.a, sp.Ma, rk.lpA,
                              rk.lA, m);
            if (ca == 0.0) continue;
            double cb = chain(*blk.B, s.b, s.Mb, kb, sp.b, sp.Mb, rk.lpB,
                              rk.lB, -m);
            if (cb == 0.0) continue;
            elem += f_coeff(rk.lpA, rk.lpB, -mp.twice() / 2).to_double() *
                    f_coeff(rk.lA, rk.lB, tm / 2).to_double() * ca * cb;
          }
          double contrib = -elem / denom;
          w(i, j) += contrib;
          pair_norm += contrib * contrib;
        }
      total_norm += pair_norm;
      if (ea + eb > top_energy - degeneracy_merge_tol) tail_norm += pair_norm;
    }
  out.tail_fraction =
      total_norm > 0 ? std::sqrt(tail_norm / total_norm) : 0.0;
  return out;
}

} // namespace detail

/// Direct sum-over-states second-order effective matrix for one rank set.
inline EffectiveMatrix second_order_block(const DegenerateBlock& blk,
                                          const RankSet& rk) {
  return detail::second_order_direct(blk, rk, detail::SecondOrderPart::full);
}

enum class InductionDirection { b_to_a, a_to_b };

/// Second-order restriction to intermediates with one partner unchanged.
inline EffectiveMatrix induction_block(const DegenerateBlock& blk,
                                       const RankSet& rk,
                                       InductionDirection dir) {
  return detail::second_order_direct(
      blk, rk,
      dir == InductionDirection::b_to_a
          ? detail::SecondOrderPart::induction_b_to_a
          : detail::SecondOrderPart::induction_a_to_b);
}

/// Direct sum-over-states dispersion part (both partners in intermediates).
inline EffectiveMatrix dispersion_block(const DegenerateBlock& blk,
                                        const RankSet& rk) {
  return detail::second_order_direct(blk, rk,
                                     detail::SecondOrderPart::dispersion);
}

namespace detail {

// polarizability-like factor of one partner at imaginary frequency u:
//   2 sum_{k != level, M''} <s' |Q_{l' m'}|k M''><k M''|Q_{l m}|s> g/(g^2+u^2)
// with signed gaps g (upward and downward transitions both enter).
struct PartnerFactor {
  const SpectrumTable* t;
  LevelKey level;
  int lp, l;
  std::vector<std::pair<LevelKey, double>> inter; // (level, gap)

  PartnerFactor(const SpectrumTable& table, const LevelKey& lev, int lp_,
                int l_)
      : t(&table), level(lev), lp(lp_), l(l_) {
    double e0 = table.energy(lev);
    for (auto& [k, e] : table.levels()) {
      if (k == level) continue;
      if (table.reduced(level, k, lp) == 0.0 ||
          table.reduced(k, level, l) == 0.0)
        continue;
      inter.push_back({k, e - e0});
    }
  }
  bool all_upward() const {
    for (auto& [k, g] : inter)
      if (g <= 0) return false;
    return true;
  }
  double eval(HalfInt Mfrom, HalfInt Mto, HalfInt m, double u) const {
    double acc = 0;
    for (auto& [k, g] : inter) {
      double c = chain(*t, level, Mfrom, k, level, Mto, lp, l, m);
      if (c == 0.0) continue;
      acc += 2.0 * c * g / (g * g + u * u);
    }
    return acc;
  }
};

} // namespace detail

/// Dispersion via the imaginary-frequency quadrature
///   W = -(1/2pi) sum f' f / R^n Int du alphaA(iu) alphaB(iu).
/// Requires both partners in their lowest coupled level (all gaps > 0);
/// otherwise use excited_dispersion_correction.
inline EffectiveMatrix dispersion_block_quadrature(const DegenerateBlock& blk,
                                                   const RankSet& rk,
                                                   int nodes = 0) {
  if (!blk.single_pair())
    throw std::invalid_argument("dispersion requires a single level pair");
  const LevelKey& la = blk.pairs.front().first;
  const LevelKey& lb = blk.pairs.front().second;
  detail::PartnerFactor fa(*blk.A, la, rk.lpA, rk.lA);
  detail::PartnerFactor fb(*blk.B, lb, rk.lpB, rk.lB);
  if (!fa.all_upward() || !fb.all_upward())
    throw std::invalid_argument(
        "dispersion_block_quadrature: downward transitions present; use "
        "excited_dispersion_correction");

  // geometric-mean gap sets the quadrature scale
  double logsum = 0;
  int cnt = 0;
  for (auto& [k, g] : fa.inter) { logsum += std::log(g); ++cnt; }
  for (auto& [k, g] : fb.inter) { logsum += std::log(g); ++cnt; }
  double u0 = cnt ? std::exp(logsum / cnt) : 1.0;
  auto rule = semi_infinite_rule(nodes > 0 ? nodes : 100, u0);

  EffectiveMatrix out;
  out.states = blk.states;
  const std::size_t n = blk.states.size();
  Matrix& w = out.at(rk.exponent());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const ProductState& sp = blk.states[i];
      const ProductState& s = blk.states[j];
      if (sp.Ma + sp.Mb != s.Ma + s.Mb) continue;
      double elem = 0;
      for (int tm = -2 * std::min(rk.lA, rk.lB);
           tm <= 2 * std::min(rk.lA, rk.lB); tm += 2) {
        HalfInt m = half(tm);
        HalfInt mp = sp.Ma - s.Ma - m;
        if (std::abs(mp.twice()) > 2 * std::min(rk.lpA, rk.lpB)) continue;
        KahanSum integral;
        for (int node = 0; node < rule.count(); ++node) {
          double u = rule.nodes[node];
          double va = fa.eval(s.Ma, sp.Ma, m, u);
          if (va == 0.0) continue;
          double vb = fb.eval(s.Mb, sp.Mb, -m, u);
          if (vb == 0.0) continue;
          integral.add(rule.weights[node] * va * vb);
        }
        elem += f_coeff(rk.lpA, rk.lpB, -mp.twice() / 2).to_double() *
                f_coeff(rk.lA, rk.lB, tm / 2).to_double() * integral.value() /
                (2.0 * M_PI);
      }
      w(i, j) = -elem;
    }
  return out;
}

/// Dispersion for blocks with an excited partner: the quadrature part (with
/// signed gaps) plus the real-frequency correction for every intermediate
/// pair involving a downward transition:
///   1/(a+b) = (2/pi) Int ab/((a^2+u^2)(b^2+u^2)) du + corr(a,b),
///   corr = 2a/(a^2-b^2) for a>0>b, 2b/(b^2-a^2) for b>0>a,
///          -2/(|a|+|b|) for a,b<0.
inline EffectiveMatrix excited_dispersion_correction(const DegenerateBlock& blk,
                                                     const RankSet& rk,
                                                     int nodes = 0) {
  if (!blk.single_pair())
    throw std::invalid_argument("dispersion requires a single level pair");
  const LevelKey& la = blk.pairs.front().first;
  const LevelKey& lb = blk.pairs.front().second;
  detail::PartnerFactor fa(*blk.A, la, rk.lpA, rk.lA);
  detail::PartnerFactor fb(*blk.B, lb, rk.lpB, rk.lB);

  double logsum = 0;
  int cnt = 0;
  for (auto& [k, g] : fa.inter) { logsum += std::log(std::abs(g)); ++cnt; }
  for (auto& [k, g] : fb.inter) { logsum += std::log(std::abs(g)); ++cnt; }
  double u0 = cnt ? std::exp(logsum / cnt) : 1.0;
  auto rule = semi_infinite_rule(nodes > 0 ? nodes : 100, u0);

  EffectiveMatrix out;
  out.states = blk.states;
  const std::size_t n = blk.states.size();
  Matrix& w = out.at(rk.exponent());

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const ProductState& sp = blk.states[i];
      const ProductState& s = blk.states[j];
      if (sp.Ma + sp.Mb != s.Ma + s.Mb) continue;
      double elem = 0;
      for (int tm = -2 * std::min(rk.lA, rk.lB);
           tm <= 2 * std::min(rk.lA, rk.lB); tm += 2) {
        HalfInt m = half(tm);
        HalfInt mp = sp.Ma - s.Ma - m;
        if (std::abs(mp.twice()) > 2 * std::min(rk.lpA, rk.lpB)) continue;
        double ff = f_coeff(rk.lpA, rk.lpB, -mp.twice() / 2).to_double() *
                    f_coeff(rk.lA, rk.lB, tm / 2).to_double();
        KahanSum integral;
        for (int node = 0; node < rule.count(); ++node) {
          double u = rule.nodes[node];
          double va = fa.eval(s.Ma, sp.Ma, m, u);
          if (va == 0.0) continue;
          double vb = fb.eval(s.Mb, sp.Mb, -m, u);
          if (vb == 0.0) continue;
          integral.add(rule.weights[node] * va * vb);
        }
        elem += ff * integral.value() / (2.0 * M_PI);
        // per-pair corrections where a gap is negative
        for (auto& [kaLev, ga] : fa.inter)
          for (auto& [kbLev, gb] : fb.inter) {
            if (ga > 0 && gb > 0) continue;
            double ca = detail::chain(*blk.A, s.a, s.Ma, kaLev, sp.a, sp.Ma,
                                      rk.lpA, rk.lA, m);
            if (ca == 0.0) continue;
            double cb = detail::chain(*blk.B, s.b, s.Mb, kbLev, sp.b, sp.Mb,
                                      rk.lpB, rk.lB, -m);
            if (cb == 0.0) continue;
            double corr;
            if (ga > 0 && gb < 0) {
              if (std::abs(ga + gb) < degeneracy_guard_tol)
                throw DegeneracyError(
                    "excited dispersion: zero total gap for " + kaLev.str() +
                    " + " + kbLev.str());
              corr = 2.0 * ga / (ga * ga - gb * gb);
            } else if (ga < 0 && gb > 0) {
              if (std::abs(ga + gb) < degeneracy_guard_tol)
                throw DegeneracyError(
                    "excited dispersion: zero total gap for " + kaLev.str() +
                    " + " + kbLev.str());
              corr = 2.0 * gb / (gb * gb - ga * ga);
            } else {
              corr = -2.0 / (std::abs(ga) + std::abs(gb));
            }
            elem += ff * ca * cb * corr;
          }
      }
      w(i, j) = -elem;
    }
  return out;
}

// ---------------------------------------------------------------------------
// irreducible-tensor form

struct TensorKey {
  int kA, kB, k;
  friend bool operator<(const TensorKey& x, const TensorKey& y) {
    return std::tie(x.kA, x.kB, x.k) < std::tie(y.kA, y.kB, y.k);
  }
};

struct TensorDecomposition {
  EffectiveMatrix total;
  std::map<TensorKey, Matrix> parts;
};

/// Second-order effective matrix assembled from irreducible tensor ranks
/// (k_A, k_B, k); the sum over all ranks reproduces second_order_block.
inline TensorDecomposition tensor_decomposed_block(const DegenerateBlock& blk,
                                                   const RankSet& rk) {
  if (!blk.single_pair())
    throw std::invalid_argument("tensor form requires a single level pair");
  const LevelKey& la = blk.pairs.front().first;
  const LevelKey& lb = blk.pairs.front().second;
  const HalfInt JA = la.J, JB = lb.J;
  TensorDecomposition out;
  out.total.states = blk.states;
  const std::size_t n = blk.states.size();
  Matrix& w = out.total.at(rk.exponent());

  const int lsumP = rk.lpA + rk.lpB, lsum = rk.lA + rk.lB;
  double bigfac =
      std::sqrt(BigRat(detail::factorial(2 * rk.lpA + 2 * rk.lpB + 1) *
                           detail::factorial(2 * rk.lA + 2 * rk.lB + 1),
                       detail::factorial(2 * rk.lpA) *
                           detail::factorial(2 * rk.lpB) *
                           detail::factorial(2 * rk.lA) *
                           detail::factorial(2 * rk.lB))
                    .convert_to<double>());
  int sign0 = ((rk.lpB + rk.lB + JA.twice() + JB.twice()) % 2) ? -1 : 1;

  for (int kA = std::abs(rk.lpA - rk.lA); kA <= rk.lpA + rk.lA; ++kA)
    for (int kB = std::abs(rk.lpB - rk.lB); kB <= rk.lpB + rk.lB; ++kB)
      for (int k = std::abs(kA - kB); k <= kA + kB; ++k) {
        double c_ll = cg(lsumP, 0, lsum, 0, k, 0);
        if (c_ll == 0.0) continue;
        // sum over intermediates with the two 6j weights
        double sos = 0;
        for (auto& [ka, ea] : blk.A->levels())
          for (auto& [kb, eb] : blk.B->levels()) {
            double denom = ea + eb - blk.E0;
            if (std::abs(denom) <= degeneracy_merge_tol) continue;
            double ra =
                blk.A->reduced(la, ka, rk.lpA) * blk.A->reduced(ka, la, rk.lA);
            double rb =
                blk.B->reduced(lb, kb, rk.lpB) * blk.B->reduced(kb, lb, rk.lB);
            if (ra == 0.0 || rb == 0.0) continue;
            if (std::abs(denom) < degeneracy_guard_tol)
              throw DegeneracyError("tensor form: intermediate pair " +
                                    ka.str() + " + " + kb.str() +
                                    " quasi-degenerate with the block");
            sos += ra * rb / denom *
                   sixj(rk.lA, rk.lpA, kA, JA, JA, ka.J) *
                   sixj(rk.lB, rk.lpB, kB, JB, JB, kb.J);
          }
        if (sos == 0.0) continue;
        double nj = ninej(rk.lpA, rk.lA, kA, rk.lpB, rk.lB, kB, lsumP, lsum, k);
        if (nj == 0.0) continue;
        int signk = ((kA + kB) % 2) ? -1 : 1;
        double pref = -sign0 * signk * bigfac * (2.0 * kA + 1.0) *
                      (2.0 * kB + 1.0) * c_ll * nj * sos /
                      std::sqrt((JA.twice() + 1.0) * (JB.twice() + 1.0));
        Matrix part(n, n);
        bool any = false;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            const ProductState& sp = blk.states[i];
            const ProductState& s = blk.states[j];
            if (sp.Ma + sp.Mb != s.Ma + s.Mb) continue;
            HalfInt q = sp.Ma - s.Ma;
            if (std::abs(q.twice()) > 2 * std::min(kA, kB)) continue;
            double cq = cg(kA, q, kB, -q, k, 0);
            if (cq == 0.0) continue;
            double v = pref * cq * cg(JA, s.Ma, kA, q, JA, sp.Ma) *
                       cg(JB, s.Mb, kB, -q, JB, sp.Mb);
            if (v != 0.0) {
              part(i, j) = v;
              any = true;
            }
          }
        if (any) {
          w += part;
          out.parts[{kA, kB, k}] = std::move(part);
        }
      }
  return out;
}

// ---------------------------------------------------------------------------

struct CnCoefficient {
  int n = 0;
  double value = 0;
  std::vector<double> eigenvector;
};

/// Eigenvalues (ascending) and eigenvectors of the exponent-n coefficient
/// matrix of an effective operator.
inline std::vector<CnCoefficient> extract_cn(const EffectiveMatrix& em, int n) {
  auto it = em.coeff.find(n);
  if (it == em.coeff.end())
    throw std::invalid_argument("extract_cn: exponent " + std::to_string(n) +
                                " absent");
  auto eig = eig_sym(it->second);
  std::vector<CnCoefficient> out(eig.values.size());
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    out[k].n = n;
    out[k].value = eig.values[k];
    out[k].eigenvector.resize(eig.values.size());
    for (std::size_t i = 0; i < eig.values.size(); ++i)
      out[k].eigenvector[i] = eig.vectors(i, k);
  }
  return out;
}

} // namespace lri
