#pragma once

#include <functional>
#include <map>

#include "hh/ring.hpp"

namespace hh {

// Formal linear combination of basis keys with exact coefficients.
template <class K>
class LinComb {
public:
  std::map<K, Scalar> terms;

  LinComb() = default;
  explicit LinComb(const K& k, Scalar c = Scalar(1)) {
    if (c != 0) terms.emplace(k, std::move(c));
  }

  bool empty() const { return terms.empty(); }

  void add(const K& k, const Scalar& c, const Ring& ring) {
    if (c == 0) return;
    auto [it, fresh] = terms.try_emplace(k, 0);
    it->second = ring.reduce(it->second + c);
    if (it->second == 0) terms.erase(it);
  }

  void axpy(const Scalar& c, const LinComb& other, const Ring& ring) {
    if (c == 0) return;
    for (const auto& [k, v] : other.terms) add(k, c * v, ring);
  }

  LinComb scaled(const Scalar& c, const Ring& ring) const {
    LinComb r;
    r.axpy(c, *this, ring);
    return r;
  }

  bool operator==(const LinComb& o) const { return terms == o.terms; }
};

// Apply a basis-wise linear map to a combination.
template <class K, class K2, class F>
LinComb<K2> lc_apply(const F& f, const LinComb<K>& x, const Ring& ring) {
  LinComb<K2> out;
  for (const auto& [k, c] : x.terms) out.axpy(c, f(k), ring);
  return out;
}

}  // namespace hh
