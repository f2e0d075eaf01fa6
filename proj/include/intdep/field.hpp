#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace intdep {

/// Coefficient field: the rationals, or GF(p) for an odd prime p.
///
/// Elements of either field are carried as `mpq_class`. In prime-field mode
/// every value is kept as an integer representative in [0, p).
class Field {
 public:
  enum class Kind { rationals, prime };

  Field() = default;

  static Field rationals() { return Field{}; }

  static Field prime(std::int64_t p) {
    if (p <= 2) throw std::invalid_argument("prime field modulus must exceed 2, got " + std::to_string(p));
    for (std::int64_t q = 2; q * q <= p; ++q) {
      if (p % q == 0) throw std::invalid_argument(std::to_string(p) + " is not prime");
    }
    Field f;
    f.kind_ = Kind::prime;
    f.modulus_ = p;
    return f;
  }

  Kind kind() const { return kind_; }
  bool is_rationals() const { return kind_ == Kind::rationals; }
  std::int64_t modulus() const { return modulus_; }

  void normalize(mpq_class& x) const {
    if (kind_ == Kind::rationals) return;
    mpz_class num = x.get_num();
    mpz_class den = x.get_den();
    const mpz_class p(static_cast<long>(modulus_));
    num %= p;
    if (num < 0) num += p;
    if (den != 1) {
      den %= p;
      if (den < 0) den += p;
      if (den == 0) throw std::domain_error("denominator vanishes modulo p");
      mpz_class inv;
      mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
      num = (num * inv) % p;
    }
    x = mpq_class(num);
  }

  mpq_class from_integer(const mpz_class& n) const {
    mpq_class x(n);
    normalize(x);
    return x;
  }

  mpq_class add(const mpq_class& a, const mpq_class& b) const {
    mpq_class r = a + b;
    normalize(r);
    return r;
  }
  mpq_class sub(const mpq_class& a, const mpq_class& b) const {
    mpq_class r = a - b;
    normalize(r);
    return r;
  }
  mpq_class mul(const mpq_class& a, const mpq_class& b) const {
    mpq_class r = a * b;
    normalize(r);
    return r;
  }
  mpq_class neg(const mpq_class& a) const {
    mpq_class r = -a;
    normalize(r);
    return r;
  }
  mpq_class inv(const mpq_class& a) const {
    if (sgn(a) == 0) throw std::domain_error("division by zero");
    if (kind_ == Kind::rationals) return 1 / a;
    mpz_class r;
    const mpz_class p(static_cast<long>(modulus_));
    mpz_invert(r.get_mpz_t(), a.get_num().get_mpz_t(), p.get_mpz_t());
    return mpq_class(r);
  }
  mpq_class div(const mpq_class& a, const mpq_class& b) const { return mul(a, inv(b)); }

  std::string to_string() const { return is_rationals() ? "Q" : "GF " + std::to_string(modulus_); }

  friend bool operator==(const Field& a, const Field& b) {
    return a.kind_ == b.kind_ && a.modulus_ == b.modulus_;
  }

 private:
  Kind kind_ = Kind::rationals;
  std::int64_t modulus_ = 0;
};

}  // namespace intdep
