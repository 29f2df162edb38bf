#ifndef TANAKA_QUADEXT_HPP
#define TANAKA_QUADEXT_HPP

#include <string>

#include "tanaka/errors.hpp"
#include "tanaka/rational.hpp"

namespace tanaka {

/// Element a + b*sqrt(d) of a real quadratic extension of Q; d > 1 squarefree.
/// Pure rationals carry d = 0 and mix freely with any extension.
class QuadExt {
public:
  QuadExt() : a_(0), b_(0), d_(0) {}
  QuadExt(int v) : a_(v), b_(0), d_(0) {}
  QuadExt(Rational v) : a_(std::move(v)), b_(0), d_(0) {}
  QuadExt(Rational a, Rational b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    if (b_.is_zero()) d_ = 0;
    if (!b_.is_zero() && d_ <= 1) throw InputError("QuadExt: need d > 1 when b != 0");
  }

  const Rational& rational_part() const { return a_; }
  const Rational& radical_part() const { return b_; }
  long radicand() const { return d_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_rational() const { return b_.is_zero(); }

  QuadExt operator-() const { return QuadExt(-a_, -b_, d_); }
  QuadExt operator+(const QuadExt& o) const {
    const long d = join(o);
    return QuadExt(a_ + o.a_, b_ + o.b_, d);
  }
  QuadExt operator-(const QuadExt& o) const { return *this + (-o); }
  QuadExt operator*(const QuadExt& o) const {
    const long d = join(o);
    return QuadExt(a_ * o.a_ + b_ * o.b_ * Rational(d), a_ * o.b_ + b_ * o.a_, d);
  }
  QuadExt operator/(const QuadExt& o) const {
    if (o.is_zero()) throw InputError("QuadExt division by zero");
    const long d = join(o);
    // multiply by the conjugate; the norm a^2 - d b^2 is nonzero for d squarefree
    const Rational norm = o.a_ * o.a_ - o.b_ * o.b_ * Rational(d);
    const QuadExt conj(o.a_, -o.b_, d);
    QuadExt num = *this * conj;
    return QuadExt(num.a_ / norm, num.b_ / norm, d);
  }

  bool operator==(const QuadExt& o) const { return a_ == o.a_ && b_ == o.b_; }
  bool operator!=(const QuadExt& o) const { return !(*this == o); }

  std::string str() const {
    if (b_.is_zero()) return a_.str();
    std::string s;
    if (!a_.is_zero()) s = a_.str() + (b_.sign() > 0 ? "+" : "");
    if (b_ == Rational(1)) {
    } else if (b_ == Rational(-1)) {
      s += "-";
    } else {
      s += b_.str() + "*";
    }
    return s + "sqrt(" + std::to_string(d_) + ")";
  }

private:
  long join(const QuadExt& o) const {
    if (d_ == 0) return o.d_;
    if (o.d_ == 0 || o.d_ == d_) return d_;
    throw InputError("QuadExt: mixing different radicands");
  }

  Rational a_, b_;
  long d_;
};

} // namespace tanaka

#endif
