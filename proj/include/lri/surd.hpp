#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lri {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

namespace detail {

/// Factorials as exact integers, cached eagerly up to `eager` and grown on
/// demand under a mutex (reads of settled entries are lock-free by index).
class FactorialCache {
public:
  static const BigInt& get(unsigned n) {
    static FactorialCache cache;
    return cache.at(n);
  }

private:
  static constexpr unsigned eager = 201; // 2*j_max + 2 for j up to ~100
  std::vector<BigInt> tab_;
  std::mutex mu_;

  FactorialCache() {
    tab_.reserve(2 * eager);
    tab_.push_back(1);
    for (unsigned i = 1; i < eager; ++i) tab_.push_back(tab_.back() * i);
  }
  const BigInt& at(unsigned n) {
    if (n < eager) return tab_[n];
    std::lock_guard<std::mutex> lock(mu_);
    while (tab_.size() <= n) tab_.push_back(tab_.back() * BigInt(tab_.size()));
    return tab_[n];
  }
};

inline const BigInt& factorial(long n) {
  if (n < 0) throw std::domain_error("factorial of negative integer");
  return FactorialCache::get(static_cast<unsigned>(n));
}

/// Splits n = s^2 * f with f square-free (by trial division up to `limit`,
/// then a perfect-square check on the remainder). Values whose leftover
/// cofactor exceeds limit^2 may keep hidden square factors; Surd equality
/// falls back to squared-rational comparison so this stays sound.
inline std::pair<BigInt, BigInt> extract_square(BigInt n,
                                                std::uint64_t limit = 1000000) {
  if (n < 0) throw std::domain_error("extract_square of negative integer");
  BigInt s = 1, f = 1;
  if (n == 0) return {1, 0};
  for (std::uint64_t p = 2; p * p <= n && p <= limit; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) { n /= p; ++e; }
      for (int i = 0; i < e / 2; ++i) s *= p;
      if (e % 2) f *= p;
    }
  }
  if (n > 1) {
    BigInt r = boost::multiprecision::sqrt(n);
    if (r * r == n) s *= r;
    else f *= n;
  }
  return {s, f};
}

} // namespace detail

/// Exact number sign * (p/q) * sqrt(r/s), closed under multiplication and
/// division; the natural value class of Clebsch-Gordan and 3n-j symbols.
/// Canonical form: rational factor reduced, radicand a square-free positive
/// integer (the 1/s part of sqrt(r/s) is folded into the rational factor).
class Surd {
public:
  Surd() : rat_(0), rad_(1) {}
  Surd(long v) : rat_(v), rad_(1) {}
  Surd(const BigRat& v) : rat_(v), rad_(1) {}
  Surd(const BigInt& num, const BigInt& den) : rat_(BigRat(num, den)), rad_(1) {}

  /// sqrt of a nonnegative rational, canonicalized
  static Surd sqrt_of(const BigRat& v) {
    if (v < 0) throw std::domain_error("Surd::sqrt_of negative");
    if (v == 0) return Surd();
    // sqrt(a/b) = sqrt(a*b)/b
    BigInt a = boost::multiprecision::numerator(v);
    BigInt b = boost::multiprecision::denominator(v);
    auto [s, f] = detail::extract_square(a * b);
    Surd out;
    out.rat_ = BigRat(s, b);
    out.rad_ = f;
    return out;
  }

  bool is_zero() const { return rat_ == 0; }
  bool is_rational() const { return rad_ == 1 || rat_ == 0; }
  int sign() const { return rat_ == 0 ? 0 : (rat_ > 0 ? 1 : -1); }

  /// rational factor p/q (signed); radicand r (square-free integer)
  const BigRat& rational_factor() const { return rat_; }
  const BigInt& radicand() const { return rad_; }

  BigRat as_rational() const {
    if (!is_rational()) throw std::domain_error("Surd is irrational");
    return rat_;
  }
  /// exact square, always rational
  BigRat squared() const { return rat_ * rat_ * rad_; }

  Surd operator-() const {
    Surd out = *this;
    out.rat_ = -out.rat_;
    return out;
  }
  friend Surd operator*(const Surd& x, const Surd& y) {
    Surd out;
    out.rat_ = x.rat_ * y.rat_;
    if (out.rat_ == 0) return Surd();
    if (x.rad_ == y.rad_) {
      out.rat_ *= x.rad_;
      out.rad_ = 1;
    } else {
      auto [s, f] = detail::extract_square(x.rad_ * y.rad_);
      out.rat_ *= s;
      out.rad_ = f;
    }
    return out;
  }
  friend Surd operator/(const Surd& x, const Surd& y) {
    if (y.is_zero()) throw std::domain_error("Surd division by zero");
    Surd inv;
    inv.rat_ = BigRat(1) / (y.rat_ * y.rad_);
    inv.rad_ = y.rad_;
    return x * inv;
  }
  /// Sum, defined when the radicands match (or one operand is zero).
  friend Surd operator+(const Surd& x, const Surd& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    if (x.rad_ != y.rad_)
      throw std::domain_error("Surd sum with incompatible radicands");
    Surd out;
    out.rat_ = x.rat_ + y.rat_;
    out.rad_ = out.rat_ == 0 ? BigInt(1) : x.rad_;
    return out;
  }
  friend Surd operator-(const Surd& x, const Surd& y) { return x + (-y); }

  friend bool operator==(const Surd& x, const Surd& y) {
    if (x.sign() != y.sign()) return false;
    return x.squared() == y.squared();
  }

  double to_double() const {
    double r = rat_.convert_to<double>();
    if (rad_ == 1) return r;
    return r * std::sqrt(rad_.convert_to<double>());
  }

  /// "0", "-2/3", "sqrt(2/3)", "-1/sqrt(3)", "3/5*sqrt(7)"
  std::string str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    if (sign() < 0) os << "-";
    if (is_rational()) {
      os << abs_str(rat_);
      return os.str();
    }
    BigRat sq = squared(); // positive
    BigInt n = boost::multiprecision::numerator(sq);
    BigInt d = boost::multiprecision::denominator(sq);
    if (n == 1 && d != 1) {
      os << "1/sqrt(" << d << ")";
    } else if (is_squarefree_pair(n, d)) {
      os << "sqrt(" << n;
      if (d != 1) os << "/" << d;
      os << ")";
    } else {
      os << abs_str(rat_) << "*sqrt(" << rad_ << ")";
    }
    return os.str();
  }

private:
  BigRat rat_;
  BigInt rad_;

  static std::string abs_str(const BigRat& v) {
    BigRat a = v < 0 ? BigRat(-v) : v;
    std::ostringstream os;
    os << boost::multiprecision::numerator(a);
    if (boost::multiprecision::denominator(a) != 1)
      os << "/" << boost::multiprecision::denominator(a);
    return os.str();
  }
  // does value^2 = n/d reproduce the value as sqrt(n/d) cleanly?
  bool is_squarefree_pair(const BigInt& n, const BigInt& d) const {
    BigInt q = boost::multiprecision::denominator(rat_);
    BigInt p = boost::multiprecision::numerator(rat_);
    if (p < 0) p = -p;
    return (p == 1 || p == rad_ || d == q * q) ? true : (n == rad_);
  }
};

/// Sum of surds with pairwise distinct radicands: the exact accumulator for
/// Wigner-symbol contractions and the rotor-pair coefficient matrices.
class SurdSum {
public:
  SurdSum() = default;
  SurdSum(const Surd& s) { add(s); }
  SurdSum(const BigRat& v) { add(Surd(v)); }
  SurdSum(long v) { add(Surd(v)); }

  void add(const Surd& s) {
    if (s.is_zero()) return;
    auto it = terms_.find(s.radicand());
    if (it == terms_.end()) {
      terms_.emplace(s.radicand(), s.rational_factor());
    } else {
      it->second += s.rational_factor();
      if (it->second == 0) terms_.erase(it);
    }
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
  }
  BigRat as_rational() const {
    if (terms_.empty()) return BigRat(0);
    if (!is_rational()) throw std::domain_error("SurdSum is irrational");
    return terms_.begin()->second;
  }
  bool is_single_surd() const { return terms_.size() <= 1; }
  Surd as_surd() const {
    if (terms_.empty()) return Surd();
    if (!is_single_surd())
      throw std::domain_error("SurdSum has multiple radicands");
    Surd unit = Surd::sqrt_of(BigRat(terms_.begin()->first));
    return Surd(terms_.begin()->second) * unit;
  }
  std::size_t term_count() const { return terms_.size(); }

  SurdSum operator-() const {
    SurdSum out;
    for (auto& [rad, c] : terms_) out.terms_.emplace(rad, -c);
    return out;
  }
  friend SurdSum operator+(const SurdSum& x, const SurdSum& y) {
    SurdSum out = x;
    for (auto& [rad, c] : y.terms_) {
      Surd t = Surd(c) * Surd::sqrt_of(BigRat(rad));
      out.add(t);
    }
    return out;
  }
  friend SurdSum operator-(const SurdSum& x, const SurdSum& y) {
    return x + (-y);
  }
  friend SurdSum operator*(const SurdSum& x, const SurdSum& y) {
    SurdSum out;
    for (auto& [rx, cx] : x.terms_)
      for (auto& [ry, cy] : y.terms_) {
        Surd t = (Surd(cx) * Surd::sqrt_of(BigRat(rx))) *
                 (Surd(cy) * Surd::sqrt_of(BigRat(ry)));
        out.add(t);
      }
    return out;
  }
  friend bool operator==(const SurdSum& x, const SurdSum& y) {
    return (x - y).is_zero();
  }

  double to_double() const {
    double v = 0;
    for (auto& [rad, c] : terms_)
      v += c.convert_to<double>() * std::sqrt(BigInt(rad).convert_to<double>());
    return v;
  }

  /// "-4/25", "(13/100*sqrt(3) - 4/25)", ...
  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    if (terms_.size() > 1) os << "(";
    bool first = true;
    for (auto& [rad, c] : terms_) {
      Surd t = Surd(c) * Surd::sqrt_of(BigRat(rad));
      std::string s = t.str();
      if (!first) {
        if (s.size() && s[0] == '-') {
          os << " - " << s.substr(1);
        } else {
          os << " + " << s;
        }
      } else {
        os << s;
      }
      first = false;
    }
    if (terms_.size() > 1) os << ")";
    return os.str();
  }

private:
  std::map<BigInt, BigRat> terms_; // radicand -> coefficient
};

} // namespace lri
