#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <memory>
#include <string>
#include <string_view>

namespace dlr {

// Exact rational number in lowest terms with a positive denominator.
// Values whose numerator and denominator fit in int64 are stored inline;
// larger values live in a shared, immutable mpq_class.
class Rational {
 public:
  Rational() noexcept = default;

  template <std::integral T>
  Rational(T v) {  // NOLINT: implicit on purpose
    if constexpr (std::is_signed_v<T>) {
      if (static_cast<long long>(v) != std::numeric_limits<long long>::min()) {
        n_ = static_cast<std::int64_t>(v);
        return;
      }
    } else {
      if (static_cast<unsigned long long>(v) <= static_cast<unsigned long long>(kMax)) {
        n_ = static_cast<std::int64_t>(v);
        return;
      }
    }
    *this = from_i128(static_cast<__int128>(v), 1);
  }

  template <std::integral A, std::integral B>
  Rational(A num, B den) {
    *this = make(static_cast<__int128>(num), static_cast<__int128>(den));
  }

  explicit Rational(const mpq_class& q);
  explicit Rational(const mpz_class& z);

  // Accepts "p", "p/q", and plain decimals such as "-0.125".
  static Rational parse(std::string_view text);
  // 2^e for any integer e.
  static Rational pow2(long e);

  bool is_small() const noexcept { return !big_; }
  bool is_zero() const noexcept { return !big_ && n_ == 0; }
  int sign() const noexcept;
  bool is_integer() const noexcept;

  mpz_class num() const;
  mpz_class den() const;
  mpq_class to_mpq() const;
  double to_double() const;
  std::string str() const;

  // Bit length of |numerator| and of the denominator.
  std::size_t num_bits() const;
  std::size_t den_bits() const;

  mpz_class floor() const;
  mpz_class ceil() const;
  Rational abs() const { return sign() < 0 ? -*this : *this; }
  Rational inverse() const;

  // For x > 0: the exponent e with 2^e <= x < 2^(e+1).
  long floor_log2() const;
  // For x > 0: 2^floor_log2(x).
  Rational floor_pow2() const { return pow2(floor_log2()); }
  // Largest multiple of g not exceeding x (g > 0).
  Rational floor_to(const Rational& g) const;
  // True iff x * 2^k is an integer.
  bool is_multiple_of_pow2(long k) const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  std::size_t hash() const;

 private:
  static constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

  static Rational make(__int128 num, __int128 den);
  static Rational small(std::int64_t num, std::int64_t den) noexcept;  // reduced, den > 0
  static Rational from_i128(__int128 num, __int128 den);  // already reduced, den > 0
  static Rational from_big(mpq_class q);                  // canonical
  static Rational big_add(const Rational& a, const Rational& b);
  static Rational big_mul(const Rational& a, const Rational& b);
  static std::strong_ordering big_cmp(const Rational& a, const Rational& b);

  std::int64_t n_ = 0;
  std::int64_t d_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

Rational pow(const Rational& base, unsigned long exp);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);
std::ostream& operator<<(std::ostream& os, const Rational& r);

namespace detail {

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) noexcept {
  if (a == 0) return b;
  if (b == 0) return a;
  int shift = __builtin_ctzll(a | b);
  a >>= __builtin_ctzll(a);
  do {
    b >>= __builtin_ctzll(b);
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b != 0);
  return a << shift;
}

inline std::uint64_t uabs(std::int64_t v) noexcept {
  return v < 0 ? static_cast<std::uint64_t>(0) - static_cast<std::uint64_t>(v)
               : static_cast<std::uint64_t>(v);
}

}  // namespace detail

inline int Rational::sign() const noexcept {
  if (big_) return sgn(*big_);
  return (n_ > 0) - (n_ < 0);
}

inline bool Rational::is_integer() const noexcept {
  if (big_) return big_->get_den() == 1;
  return d_ == 1;
}

inline Rational Rational::operator-() const {
  if (!big_) {
    Rational r;
    r.n_ = -n_;
    r.d_ = d_;
    return r;
  }
  return from_big(-*big_);
}

inline Rational Rational::small(std::int64_t num, std::int64_t den) noexcept {
  Rational r;
  r.n_ = num;
  r.d_ = den;
  return r;
}

inline Rational operator+(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (b.n_ == 0) return a;
    if (a.n_ == 0) return b;
    const std::uint64_t g = a.d_ == b.d_ ? static_cast<std::uint64_t>(a.d_)
                                         : detail::gcd_u64(static_cast<std::uint64_t>(a.d_),
                                                           static_cast<std::uint64_t>(b.d_));
    const std::int64_t ad = a.d_ / static_cast<std::int64_t>(g), bd = b.d_ / static_cast<std::int64_t>(g);
    std::int64_t x, y, t, den;
    if (!__builtin_mul_overflow(a.n_, bd, &x) && !__builtin_mul_overflow(b.n_, ad, &y) &&
        !__builtin_add_overflow(x, y, &t) && !__builtin_mul_overflow(ad, b.d_, &den) &&
        t != std::numeric_limits<std::int64_t>::min()) {
      if (t == 0) return Rational();
      const auto g2 = static_cast<std::int64_t>(detail::gcd_u64(detail::uabs(t), g));
      return Rational::small(t / g2, ad * (b.d_ / g2));
    }
    const __int128 wide = static_cast<__int128>(a.n_) * bd + static_cast<__int128>(b.n_) * ad;
    if (wide == 0) return Rational();
    __int128 at = wide < 0 ? -wide : wide;
    std::uint64_t g2 = detail::gcd_u64(static_cast<std::uint64_t>(at % g), g);
    return Rational::from_i128(wide / g2, static_cast<__int128>(ad) * (b.d_ / static_cast<std::int64_t>(g2)));
  }
  return Rational::big_add(a, b);
}

inline Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

inline Rational operator*(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.n_ == 0 || b.n_ == 0) return Rational();
    std::int64_t g1 = static_cast<std::int64_t>(detail::gcd_u64(detail::uabs(a.n_), static_cast<std::uint64_t>(b.d_)));
    std::int64_t g2 = static_cast<std::int64_t>(detail::gcd_u64(detail::uabs(b.n_), static_cast<std::uint64_t>(a.d_)));
    std::int64_t n64, d64;
    if (!__builtin_mul_overflow(a.n_ / g1, b.n_ / g2, &n64) && !__builtin_mul_overflow(a.d_ / g2, b.d_ / g1, &d64) &&
        n64 != std::numeric_limits<std::int64_t>::min())
      return Rational::small(n64, d64);
    __int128 n = static_cast<__int128>(a.n_ / g1) * (b.n_ / g2);
    __int128 d = static_cast<__int128>(a.d_ / g2) * (b.d_ / g1);
    return Rational::from_i128(n, d);
  }
  return Rational::big_mul(a, b);
}

inline Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }

inline bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical forms differ in storage class only when values differ
}

inline std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.d_ == b.d_) return a.n_ <=> b.n_;
    __int128 l = static_cast<__int128>(a.n_) * b.d_;
    __int128 r = static_cast<__int128>(b.n_) * a.d_;
    return l < r ? std::strong_ordering::less : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  return Rational::big_cmp(a, b);
}

}  // namespace dlr

template <>
struct std::hash<dlr::Rational> {
  std::size_t operator()(const dlr::Rational& r) const noexcept { return r.hash(); }
};
