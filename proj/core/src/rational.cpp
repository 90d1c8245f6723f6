#include "dlr/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace dlr {

namespace {

mpz_class mpz_from_i128(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(0) - static_cast<unsigned __int128>(v)
                            : static_cast<unsigned __int128>(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  if (neg) r = -r;
  return r;
}

std::size_t bitlen(const mpz_class& z) {
  if (z == 0) return 0;
  return mpz_sizeinbase(z.get_mpz_t(), 2);
}

std::size_t bitlen_u64(std::uint64_t v) { return v == 0 ? 0 : 64 - __builtin_clzll(v); }

}  // namespace

Rational::Rational(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  *this = from_big(std::move(c));
}

Rational::Rational(const mpz_class& z) { *this = from_big(mpq_class(z)); }

Rational Rational::from_big(mpq_class q) {
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (mpz_fits_slong_p(n.get_mpz_t()) && mpz_fits_slong_p(d.get_mpz_t())) {
    long nv = n.get_si();
    if (nv != std::numeric_limits<long>::min()) {
      Rational r;
      r.n_ = nv;
      r.d_ = d.get_si();
      return r;
    }
  }
  Rational r;
  r.n_ = 0;
  r.d_ = 1;
  r.big_ = std::make_shared<const mpq_class>(std::move(q));
  return r;
}

Rational Rational::from_i128(__int128 num, __int128 den) {
  if (num >= -static_cast<__int128>(kMax) && num <= kMax && den <= kMax) {
    Rational r;
    r.n_ = static_cast<std::int64_t>(num);
    r.d_ = static_cast<std::int64_t>(den);
    return r;
  }
  mpq_class q;
  q.get_num() = mpz_from_i128(num);
  q.get_den() = mpz_from_i128(den);
  return from_big(std::move(q));
}

Rational Rational::make(__int128 num, __int128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (num == 0) return Rational();
  mpq_class q(mpz_from_i128(num), mpz_from_i128(den));
  q.canonicalize();
  return from_big(std::move(q));
}

Rational Rational::big_add(const Rational& a, const Rational& b) {
  return from_big(a.to_mpq() + b.to_mpq());
}

Rational Rational::big_mul(const Rational& a, const Rational& b) {
  return from_big(a.to_mpq() * b.to_mpq());
}

std::strong_ordering Rational::big_cmp(const Rational& a, const Rational& b) {
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  s = s.substr(b);
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    if (s.find('/') != std::string::npos) throw std::invalid_argument("bad rational: " + s);
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac = s.size() - dot - 1;
    mpz_class n;
    if (n.set_str(digits, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    mpz_class d;
    mpz_ui_pow_ui(d.get_mpz_t(), 10, frac);
    return Rational(mpq_class(n, d));
  }
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  return Rational(q);
}

Rational Rational::pow2(long e) {
  if (e >= 0 && e < 62) return Rational(std::int64_t{1} << e);
  if (e < 0 && e > -62) return Rational(std::int64_t{1}, std::int64_t{1} << (-e));
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
  return e >= 0 ? Rational(p) : Rational(mpq_class(mpz_class(1), p));
}

mpz_class Rational::num() const {
  if (big_) return big_->get_num();
  return mpz_class(static_cast<long>(n_));
}

mpz_class Rational::den() const {
  if (big_) return big_->get_den();
  return mpz_class(static_cast<long>(d_));
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q;
  mpz_set_si(q.get_num_mpz_t(), n_);
  mpz_set_si(q.get_den_mpz_t(), d_);
  return q;
}

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(n_) / static_cast<double>(d_);
}

std::string Rational::str() const {
  if (big_) return big_->get_str();
  if (d_ == 1) return std::to_string(n_);
  return std::to_string(n_) + "/" + std::to_string(d_);
}

std::size_t Rational::num_bits() const {
  if (big_) return bitlen(big_->get_num());
  return bitlen_u64(detail::uabs(n_));
}

std::size_t Rational::den_bits() const {
  if (big_) return bitlen(big_->get_den());
  return bitlen_u64(static_cast<std::uint64_t>(d_));
}

mpz_class Rational::floor() const {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
  return r;
}

mpz_class Rational::ceil() const {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
  return r;
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  if (!big_) {
    Rational r;
    r.n_ = n_ < 0 ? -d_ : d_;
    r.d_ = n_ < 0 ? -n_ : n_;
    return r;
  }
  mpq_class q(big_->get_den(), big_->get_num());
  q.canonicalize();
  return from_big(std::move(q));
}

long Rational::floor_log2() const {
  if (sign() <= 0) throw std::domain_error("floor_log2 of non-positive value");
  long e = static_cast<long>(num_bits()) - static_cast<long>(den_bits());
  // 2^e <= x  <=>  num * 2^-e >= den (shifting whichever side keeps integers).
  auto at_least = [&](long ex) {
    if (!big_ && ex > -62 && ex < 62) {
      unsigned __int128 n = detail::uabs(n_);
      unsigned __int128 d = static_cast<std::uint64_t>(d_);
      return ex >= 0 ? n >= (d << ex) : (n << (-ex)) >= d;
    }
    mpz_class n = num();
    mpz_class d = den();
    if (ex >= 0)
      d <<= static_cast<unsigned long>(ex);
    else
      n <<= static_cast<unsigned long>(-ex);
    return n >= d;
  };
  return at_least(e) ? e : e - 1;
}

Rational Rational::floor_to(const Rational& g) const {
  if (g.sign() <= 0) throw std::domain_error("floor_to needs a positive grid");
  Rational q = *this / g;
  return Rational(q.floor()) * g;
}

bool Rational::is_multiple_of_pow2(long k) const {
  if (is_zero()) return true;
  if (!big_) {
    std::uint64_t d = static_cast<std::uint64_t>(d_);
    if ((d & (d - 1)) != 0) return false;
    return static_cast<long>(bitlen_u64(d)) - 1 <= k;
  }
  const mpz_class& d = big_->get_den();
  if (mpz_popcount(d.get_mpz_t()) != 1) return false;
  return static_cast<long>(bitlen(d)) - 1 <= k;
}

std::size_t Rational::hash() const {
  if (!big_) {
    std::size_t h = std::hash<std::int64_t>()(n_);
    return h ^ (std::hash<std::int64_t>()(d_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
  return std::hash<std::string>()(big_->get_str(16));
}

Rational pow(const Rational& base, unsigned long exp) {
  Rational result(1);
  Rational b = base;
  while (exp > 0) {
    if (exp & 1UL) result *= b;
    exp >>= 1;
    if (exp) b *= b;
  }
  return result;
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace dlr
