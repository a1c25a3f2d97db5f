#include "hh/ring.hpp"

namespace hh {

static bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Ring Ring::Fp(long p) {
  if (!is_prime(p)) throw std::invalid_argument("Fp requires a prime p");
  return Ring(RingKind::PrimeField, p);
}

Int mod_inverse(const Int& a, const Int& p) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0)
    throw std::domain_error("not invertible mod p");
  return r;
}

Scalar Ring::reduce(const Scalar& x) const {
  if (kind_ != RingKind::PrimeField) return x;
  Int num = x.get_num(), den = x.get_den();
  Int p(p_);
  Int n = num % p;
  if (n < 0) n += p;
  if (den != 1) {
    Int d = den % p;
    if (d < 0) d += p;
    n = (n * mod_inverse(d, p)) % p;
  }
  return Scalar(n);
}

Scalar Ring::inv(const Scalar& a) const {
  Scalar r = reduce(a);
  if (r == 0) throw std::domain_error("division by zero");
  switch (kind_) {
    case RingKind::Integers:
      if (r != 1 && r != -1) throw std::domain_error("not a unit in Z");
      return r;
    case RingKind::Rationals:
      return 1 / r;
    case RingKind::PrimeField:
      return Scalar(mod_inverse(r.get_num(), Int(p_)));
  }
  throw std::logic_error("unreachable");
}

std::string Ring::describe() const {
  switch (kind_) {
    case RingKind::Integers: return "Z";
    case RingKind::Rationals: return "Q";
    case RingKind::PrimeField: return "F" + std::to_string(p_);
  }
  return "?";
}

}  // namespace hh
