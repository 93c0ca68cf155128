#ifndef COMMCI_FIELD_HPP
#define COMMCI_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace commci {

/// The field of rational numbers, backed by GMP rationals kept in lowest terms.
class RationalField {
 public:
  using value_type = mpq_class;

  value_type zero() const { return value_type(0); }
  value_type one() const { return value_type(1); }
  value_type from_int(long v) const { return value_type(v); }
  value_type from_rational(const mpq_class& q) const {
    mpq_class c = q;
    c.canonicalize();
    return c;
  }

  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool is_one(const value_type& a) const { return a == 1; }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const {
    if (is_zero(a)) throw std::domain_error("inverse of zero");
    return 1 / a;
  }
  value_type div(const value_type& a, const value_type& b) const { return mul(a, inv(b)); }

  bool is_negative(const value_type& a) const { return sgn(a) < 0; }
  /// Absolute value rendered as "a" or "a/b".
  std::string magnitude_string(const value_type& a) const {
    mpq_class m = abs(a);
    return m.get_str();
  }

  unsigned long characteristic() const { return 0; }
  std::string name() const { return "q"; }

  bool operator==(const RationalField&) const { return true; }
};

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// GF(p) for a prime p < 2^31. Elements are canonical residues in [0, p).
class PrimeField {
 public:
  using value_type = std::uint32_t;

  explicit PrimeField(std::uint32_t p = 32003) : p_(p) {
    if (p >= (1u << 31) || !is_prime(p))
      throw std::invalid_argument("PrimeField: modulus must be a prime below 2^31, got " +
                                  std::to_string(p));
  }

  std::uint32_t modulus() const { return p_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long v) const {
    long r = v % static_cast<long>(p_);
    return static_cast<value_type>(r < 0 ? r + p_ : r);
  }
  value_type from_mpz(const mpz_class& z) const {
    mpz_class r = z % p_;
    if (r < 0) r += p_;
    return static_cast<value_type>(r.get_ui());
  }
  /// Throws std::domain_error when p divides the denominator.
  value_type from_rational(const mpq_class& q) const {
    value_type den = from_mpz(q.get_den());
    if (den == 0)
      throw std::domain_error("denominator " + q.get_den().get_str() + " vanishes mod " +
                              std::to_string(p_));
    return mul(from_mpz(q.get_num()), inv(den));
  }

  bool is_zero(value_type a) const { return a == 0; }
  bool is_one(value_type a) const { return a == 1; }

  value_type add(value_type a, value_type b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>(static_cast<std::uint64_t>(a) * b % p_);
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type inv(value_type a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    // extended Euclid on signed 64-bit
    std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += p_;
    return static_cast<value_type>(t);
  }
  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }

  // Printing uses the symmetric representative so that -1 prints as "-1".
  bool is_negative(value_type a) const { return a > p_ / 2; }
  std::string magnitude_string(value_type a) const {
    return std::to_string(is_negative(a) ? p_ - a : a);
  }

  unsigned long characteristic() const { return p_; }
  std::string name() const { return "gf:" + std::to_string(p_); }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  std::uint32_t p_;
};

inline constexpr std::uint32_t kDefaultPrime = 32003;

}  // namespace commci

#endif
