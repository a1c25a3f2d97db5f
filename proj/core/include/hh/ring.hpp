#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace hh {

// Exact scalars. All arithmetic in the engine goes through mpq_class;
// over Fp entries are kept reduced to [0, p).
using Scalar = mpq_class;
using Int = mpz_class;

enum class RingKind { Integers, Rationals, PrimeField };

struct RingMismatch : std::runtime_error {
  RingMismatch() : std::runtime_error("coefficient rings differ") {}
};

class Ring {
public:
  static Ring Z() { return Ring(RingKind::Integers, 0); }
  static Ring Q() { return Ring(RingKind::Rationals, 0); }
  static Ring Fp(long p);

  RingKind kind() const { return kind_; }
  long p() const { return p_; }
  bool is_field() const { return kind_ != RingKind::Integers; }

  // Canonical form of a scalar in this ring.  For Fp the result is the
  // integer representative in [0, p).
  Scalar reduce(const Scalar& x) const;

  Scalar add(const Scalar& a, const Scalar& b) const { return reduce(a + b); }
  Scalar sub(const Scalar& a, const Scalar& b) const { return reduce(a - b); }
  Scalar mul(const Scalar& a, const Scalar& b) const { return reduce(a * b); }
  Scalar neg(const Scalar& a) const { return reduce(-a); }
  // Multiplicative inverse; throws over Z unless a is a unit.
  Scalar inv(const Scalar& a) const;

  bool is_zero(const Scalar& a) const { return reduce(a) == 0; }

  bool operator==(const Ring& o) const {
    return kind_ == o.kind_ && p_ == o.p_;
  }
  bool operator!=(const Ring& o) const { return !(*this == o); }

  std::string describe() const;

private:
  Ring(RingKind k, long p) : kind_(k), p_(p) {}
  RingKind kind_;
  long p_;
};

// Inverse of a mod p (p prime, a not divisible by p).
Int mod_inverse(const Int& a, const Int& p);

}  // namespace hh
