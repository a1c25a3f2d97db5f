#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hh/matrix.hpp"

namespace hh {

// Product of (-1)^{|a||b|} over recorded transpositions.
int koszul_sign(std::span<const std::pair<int, int>> moved_degrees);
inline int koszul_sign(std::initializer_list<std::pair<int, int>> l) {
  return koszul_sign(std::span<const std::pair<int, int>>(l.begin(), l.end()));
}

// Sign of permuting graded symbols with degrees `degs` into the order
// given by `perm` (perm[i] = source index of the i-th target symbol).
int graded_permutation_sign(std::span<const int> perm,
                            std::span<const int> degs);

struct GradedBasisModule {
  std::vector<std::vector<std::string>> basis;  // basis[d]: names in degree d
  int max_degree = 0;

  GradedBasisModule() = default;
  GradedBasisModule(std::vector<std::vector<std::string>> b, int maxdeg);

  int dim(int d) const {
    return (d >= 0 && d < (int)basis.size()) ? (int)basis[d].size() : 0;
  }
};

struct NegativeDegree : std::runtime_error {
  NegativeDegree() : std::runtime_error("suspension would produce degree < 0") {}
};

GradedBasisModule suspend(const GradedBasisModule& V, int shift);

class TruncatedComplex {
public:
  Ring ring = Ring::Z();
  int direction = -1;  // -1 homological, +1 cohomological
  int valid_through = 0;
  GradedBasisModule module;
  // diff[n]: matrix of d : C_n -> C_{n+direction}
  std::vector<ExactMatrix> diff;

  TruncatedComplex() = default;
  // Checks d*d = 0 on all composable degrees within the truncation.
  TruncatedComplex(Ring ring, int direction, int valid_through,
                   GradedBasisModule module, std::vector<ExactMatrix> diff);

  int dim(int d) const { return module.dim(d); }
  const ExactMatrix& d(int n) const;
};

struct GradedMap {
  int degree = 0;
  // blocks[n]: matrix of f : C_n -> D_{n+degree}
  std::vector<ExactMatrix> blocks;
};

TruncatedComplex tensor_complex(const TruncatedComplex& C,
                                const TruncatedComplex& D);

// The paper-signed dual: direction flips, (d^v)_n = (-1)^n d_{n-dir}^T.
TruncatedComplex dual_complex(const TruncatedComplex& C);

// Chain-map check f d = d f (degree-0 maps), up to truncation.
bool is_chain_map(const GradedMap& f, const TruncatedComplex& C,
                  const TruncatedComplex& D, int through_degree);

}  // namespace hh
