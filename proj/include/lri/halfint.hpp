#pragma once

#include <compare>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace lri {

/// Half-integer angular momentum stored as 2j, so 1/2, 3/2, ... are exact.
/// Implicitly constructible from a whole integer; use HalfInt::twice() or
/// half() for doubled input (the convention of every CLI / file surface).
class HalfInt {
public:
  constexpr HalfInt() : tw_(0) {}
  constexpr HalfInt(int whole) : tw_(2 * whole) {}
  static constexpr HalfInt from_twice(int tw) {
    HalfInt h;
    h.tw_ = tw;
    return h;
  }

  constexpr int twice() const { return tw_; }
  constexpr bool is_integer() const { return tw_ % 2 == 0; }
  constexpr bool is_nonneg() const { return tw_ >= 0; }
  double value() const { return 0.5 * tw_; }

  // valid magnitude j: 2j >= 0
  constexpr bool valid_magnitude() const { return tw_ >= 0; }
  // m is a valid projection of j: |2m| <= 2j and 2m == 2j (mod 2)
  constexpr bool valid_projection(HalfInt m) const {
    return std::abs(m.tw_) <= tw_ && ((tw_ - m.tw_) % 2 == 0);
  }

  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) {
    return from_twice(a.tw_ + b.tw_);
  }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) {
    return from_twice(a.tw_ - b.tw_);
  }
  constexpr HalfInt operator-() const { return from_twice(-tw_); }
  friend constexpr auto operator<=>(HalfInt a, HalfInt b) = default;

  std::string str() const {
    if (is_integer()) return std::to_string(tw_ / 2);
    return std::to_string(tw_) + "/2";
  }

private:
  int tw_;
};

inline HalfInt half(int twice) { return HalfInt::from_twice(twice); }

/// (-1)^p for integer p given as a HalfInt sum; throws if p is half-odd.
inline int phase(HalfInt p) {
  if (!p.is_integer())
    throw std::invalid_argument("phase(): half-odd exponent " + p.str());
  return (p.twice() / 2) % 2 == 0 ? 1 : -1;
}

/// Triangle rule |a-b| <= c <= a+b with integer perimeter a+b+c.
inline bool triangle_ok(HalfInt a, HalfInt b, HalfInt c) {
  if (!(a + b + c).is_integer()) return false;
  int ab = std::abs(a.twice() - b.twice());
  return ab <= c.twice() && c.twice() <= a.twice() + b.twice();
}

struct TriangleTriple {
  HalfInt a, b, c;
  bool ok() const { return triangle_ok(a, b, c); }
};

} // namespace lri
