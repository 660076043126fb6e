#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <mutex>

#include "halfint.hpp"
#include "surd.hpp"

// Exact angular-momentum algebra: Clebsch-Gordan coefficients (Racah's
// finite sum, Condon-Shortley phase convention), Wigner 6j (Racah single
// sum) and 9j (single sum over products of three 6j) symbols.

namespace lri {

namespace detail {

// integer value of a HalfInt known to be whole
inline long iv(HalfInt h) {
  if (!h.is_integer())
    throw std::invalid_argument("expected integer-valued HalfInt, got " + h.str());
  return h.twice() / 2;
}

// Delta(abc) = (a+b-c)!(a-b+c)!(-a+b+c)!/(a+b+c+1)!
inline BigRat triangle_delta(HalfInt a, HalfInt b, HalfInt c) {
  BigRat num = BigRat(factorial(iv(a + b - c))) * factorial(iv(a - b + c)) *
               factorial(iv(-a + b + c));
  return num / factorial(iv(a + b + c) + 1);
}

} // namespace detail

/// C^{JM}_{j1 m1 j2 m2}, exact. Zero unless M = m1+m2 and (j1,j2,J) satisfy
/// the triangle rule. Throws on parity-malformed (j,m) pairs and negative j.
inline Surd clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2,
                           HalfInt J, HalfInt M) {
  for (auto [j, m] : {std::pair{j1, m1}, {j2, m2}, {J, M}}) {
    if (!j.valid_magnitude())
      throw std::invalid_argument("negative angular momentum " + j.str());
    if ((j - m).twice() % 2 != 0)
      throw std::invalid_argument("projection parity mismatch: j=" + j.str() +
                                  " m=" + m.str());
    if (std::abs(m.twice()) > j.twice()) return Surd();
  }
  if (M != m1 + m2 || !triangle_ok(j1, j2, J)) return Surd();

  using detail::iv;
  const long kA = iv(j1 + j2 - J);
  const long kB = iv(j1 - m1);
  const long kC = iv(j2 + m2);
  const long kD = iv(J - j2 + m1);
  const long kE = iv(J - j1 - m2);
  const long kmin = std::max({0L, -kD, -kE});
  const long kmax = std::min({kA, kB, kC});

  BigRat sum = 0;
  for (long k = kmin; k <= kmax; ++k) {
    BigInt den = detail::factorial(k) * detail::factorial(kA - k) *
                 detail::factorial(kB - k) * detail::factorial(kC - k) *
                 detail::factorial(kD + k) * detail::factorial(kE + k);
    BigRat term = BigRat(1, den);
    sum += (k % 2 == 0) ? term : -term;
  }
  if (sum == 0) return Surd();

  BigRat pref = BigRat(J.twice() + 1) * detail::triangle_delta(j1, j2, J);
  pref *= BigRat(detail::factorial(iv(j1 + m1))) * detail::factorial(kB) *
          detail::factorial(kC) * detail::factorial(iv(j2 - m2)) *
          detail::factorial(iv(J + M)) * detail::factorial(iv(J - M));
  return Surd::sqrt_of(pref) * Surd(sum);
}

/// Stretched-coupling CG coefficient C^{l m}_{lA mA lB mB} with
/// l = lA+lB, m = mA+mB, in closed factorial form. Integer ranks.
inline Surd cg_stretched(HalfInt lA, HalfInt mA, HalfInt lB, HalfInt mB) {
  using detail::iv;
  const long a = iv(lA), b = iv(lB);
  if (a < 0 || b < 0) throw std::invalid_argument("negative rank");
  const long ma = iv(mA), mb = iv(mB);
  const long l = a + b, m = ma + mb;
  if (std::abs(ma) > a || std::abs(mb) > b || std::abs(m) > l) return Surd();
  BigRat v = BigRat(detail::factorial(2 * a) * detail::factorial(2 * b),
                    detail::factorial(2 * l));
  v *= BigRat(detail::factorial(l + m) * detail::factorial(l - m),
              detail::factorial(a + ma) * detail::factorial(a - ma) *
                  detail::factorial(b + mb) * detail::factorial(b - mb));
  return Surd::sqrt_of(v);
}

/// Wigner 6j symbol {a b c; d e f}, exact; zero when any of the four
/// embedded triads (abc) (aef) (dbf) (dec) violates the triangle rule.
inline Surd wigner_6j(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e,
                      HalfInt f) {
  if (!triangle_ok(a, b, c) || !triangle_ok(a, e, f) || !triangle_ok(d, b, f) ||
      !triangle_ok(d, e, c))
    return Surd();

  using detail::iv;
  const long t1 = iv(a + b + c), t2 = iv(a + e + f);
  const long t3 = iv(d + b + f), t4 = iv(d + e + c);
  const long q1 = iv(a + b + d + e), q2 = iv(b + c + e + f);
  const long q3 = iv(a + c + d + f);
  const long tmin = std::max({t1, t2, t3, t4});
  const long tmax = std::min({q1, q2, q3});

  BigRat sum = 0;
  for (long t = tmin; t <= tmax; ++t) {
    BigInt den = detail::factorial(t - t1) * detail::factorial(t - t2) *
                 detail::factorial(t - t3) * detail::factorial(t - t4) *
                 detail::factorial(q1 - t) * detail::factorial(q2 - t) *
                 detail::factorial(q3 - t);
    BigRat term = BigRat(detail::factorial(t + 1), den);
    sum += (t % 2 == 0) ? term : -term;
  }
  if (sum == 0) return Surd();

  BigRat pref = detail::triangle_delta(a, b, c) * detail::triangle_delta(a, e, f) *
                detail::triangle_delta(d, b, f) * detail::triangle_delta(d, e, c);
  return Surd::sqrt_of(pref) * Surd(sum);
}

/// Wigner 9j symbol {a b c; d e f; g h i}, exact; zero on any violated
/// row or column triad. Single sum over products of three 6j symbols.
inline Surd wigner_9j(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e,
                      HalfInt f, HalfInt g, HalfInt h, HalfInt i) {
  if (!triangle_ok(a, b, c) || !triangle_ok(d, e, f) || !triangle_ok(g, h, i) ||
      !triangle_ok(a, d, g) || !triangle_ok(b, e, h) || !triangle_ok(c, f, i))
    return Surd();

  const int tmin = std::max({std::abs(a.twice() - i.twice()),
                             std::abs(b.twice() - f.twice()),
                             std::abs(d.twice() - h.twice())});
  const int tmax = std::min(
      {a.twice() + i.twice(), b.twice() + f.twice(), d.twice() + h.twice()});

  SurdSum sum;
  for (int tt = tmin; tt <= tmax; tt += 2) {
    HalfInt t = half(tt);
    Surd prod = wigner_6j(a, b, c, f, i, t) * wigner_6j(d, e, f, b, t, h) *
                wigner_6j(g, h, i, t, a, d);
    int sgn = (tt % 2 == 0) ? 1 : -1; // (-1)^{2t}
    sum.add(Surd(sgn * (tt + 1)) * prod);
  }
  // the t-dependent triangle factors pair up across the three 6j symbols,
  // so the sum collapses to a single radicand
  return sum.as_surd();
}

// -- memoized double-precision frontends ------------------------------------

namespace detail {

template <std::size_t N>
class WignerCache {
public:
  template <typename F>
  double get(const std::array<int, N>& key, F&& compute) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = map_.find(key);
      if (it != map_.end()) return it->second;
    }
    double v = compute();
    std::lock_guard<std::mutex> lock(mu_);
    map_.emplace(key, v);
    return v;
  }

private:
  std::map<std::array<int, N>, double> map_;
  std::mutex mu_;
};

} // namespace detail

/// CG as double, memoized on the doubled arguments.
inline double cg(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J,
                 HalfInt M) {
  static detail::WignerCache<6> cache;
  std::array<int, 6> key{j1.twice(), m1.twice(), j2.twice(),
                         m2.twice(), J.twice(),  M.twice()};
  return cache.get(key, [&] {
    return clebsch_gordan(j1, m1, j2, m2, J, M).to_double();
  });
}

inline double sixj(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e,
                   HalfInt f) {
  static detail::WignerCache<6> cache;
  std::array<int, 6> key{a.twice(), b.twice(), c.twice(),
                         d.twice(), e.twice(), f.twice()};
  return cache.get(key, [&] { return wigner_6j(a, b, c, d, e, f).to_double(); });
}

inline double ninej(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e,
                    HalfInt f, HalfInt g, HalfInt h, HalfInt i) {
  static detail::WignerCache<9> cache;
  std::array<int, 9> key{a.twice(), b.twice(), c.twice(), d.twice(), e.twice(),
                         f.twice(), g.twice(), h.twice(), i.twice()};
  return cache.get(
      key, [&] { return wigner_9j(a, b, c, d, e, f, g, h, i).to_double(); });
}

} // namespace lri
