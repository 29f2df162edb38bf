#ifndef TANAKA_RATIONAL_HPP
#define TANAKA_RATIONAL_HPP

#include <gmpxx.h>
#include <ostream>
#include <string>

#include "tanaka/errors.hpp"

namespace tanaka {

/// Exact rational number backed by GMP.
/// Always stored canonically: positive denominator, gcd(|num|, den) = 1.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}
  Rational(int n) : v_(n) {}
  explicit Rational(const mpz_class& n) : v_(n) {}

  Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
    if (den == 0) throw InputError("rational with zero denominator");
    v_.canonicalize();
  }
  Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  bool is_integer() const { return v_.get_den() == 1; }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
  Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
  Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
  Rational operator/(const Rational& o) const {
    if (o.is_zero()) throw InputError("rational division by zero");
    return Rational(mpq_class(v_ / o.v_));
  }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

  bool operator==(const Rational& o) const { return v_ == o.v_; }
  bool operator!=(const Rational& o) const { return v_ != o.v_; }
  bool operator<(const Rational& o) const { return v_ < o.v_; }
  bool operator<=(const Rational& o) const { return v_ <= o.v_; }
  bool operator>(const Rational& o) const { return v_ > o.v_; }
  bool operator>=(const Rational& o) const { return v_ >= o.v_; }

  Rational abs() const { return sign() < 0 ? -*this : *this; }

  /// "n" for integers, "n/d" otherwise; re-parses in the model DSL.
  std::string str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

private:
  explicit Rational(mpq_class v) : v_(std::move(v)) {}

  mpq_class v_; // kept canonical
};

inline Rational pow(Rational base, unsigned e) {
  Rational r(1);
  while (e > 0) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1u;
  }
  return r;
}

} // namespace tanaka

#endif
