#pragma once

#include <functional>
#include <map>
#include <set>
#include <vector>

#include "hh/ring.hpp"

namespace hh {

struct ExactMatrix {
  int rows = 0, cols = 0;
  std::vector<Scalar> a;  // row-major

  ExactMatrix() = default;
  ExactMatrix(int r, int c) : rows(r), cols(c), a((size_t)r * c, Scalar(0)) {}

  Scalar& at(int i, int j) { return a[(size_t)i * cols + j]; }
  const Scalar& at(int i, int j) const { return a[(size_t)i * cols + j]; }

  static ExactMatrix identity(int n);
  bool is_zero() const;
  bool operator==(const ExactMatrix& o) const = default;
};

ExactMatrix mat_mul(const ExactMatrix& A, const ExactMatrix& B);
ExactMatrix mat_add(const ExactMatrix& A, const ExactMatrix& B);
ExactMatrix mat_scale(const Scalar& c, const ExactMatrix& A);
ExactMatrix transpose(const ExactMatrix& A);

// U*M*V = D with U, V invertible (unimodular over Z); D diagonal with
// d1 | d2 | ... over Z, all-ones diagonal over a field.
struct Diagonalization {
  ExactMatrix U, V, Uinv, Vinv, D;
  int rank = 0;
  std::vector<Int> invariant_factors;  // over Z: the nonzero d_i, positive
};

Diagonalization diagonalize(const ExactMatrix& M, const Ring& ring);

// Spec operation: Smith normal form over the integers.
Diagonalization smith_normal_form(const ExactMatrix& M);

int rank_of(const ExactMatrix& M, const Ring& ring);

// Solve A x = b exactly; returns empty if inconsistent. Over Z the
// solution is required to be integral (returns empty otherwise).
bool solve(const ExactMatrix& A, const std::vector<Scalar>& b,
           std::vector<Scalar>& x, const Ring& ring);

struct CompositionNotZero : std::runtime_error {
  CompositionNotZero()
      : std::runtime_error("d_out * d_in != 0: upstream differential bug") {}
};

struct HomologySummary {
  int degree = 0;
  int free_rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1, divisibility order
  std::vector<std::vector<Scalar>> representative_cycles;

  bool same_module(const HomologySummary& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
};

// ker(d_out) / im(d_in) as a module summary (dense path).
HomologySummary homology_slice(const ExactMatrix& d_in,
                               const ExactMatrix& d_out, const Ring& ring);

// Homology with explicit generators and the classification map used by
// the ring-table builders.
struct HomologyDecomposition {
  Ring ring = Ring::Z();
  int free_rank = 0;
  std::vector<Int> orders;  // per generator: 0 = free, else the order (>1)
  std::vector<std::vector<Scalar>> generators;  // cycles in chain coords

  // Coefficients of the class of `cycle` on `generators`; torsion
  // coefficients are reduced mod the order. Throws if not a cycle.
  std::vector<Scalar> classify(const std::vector<Scalar>& cycle) const;

  HomologySummary summary(int degree) const;

  // internals
  int kernel_rank = 0, image_rank = 0;
  std::vector<int> kernel_cols;  // columns of V1 spanning ker d_out
  ExactMatrix V1inv, U2;
  std::vector<Int> inv_factors;  // of the image-in-kernel matrix
};

HomologyDecomposition homology_decomposition(const ExactMatrix& d_in,
                                             const ExactMatrix& d_out,
                                             const Ring& ring);

// ---- sparse path, for the large bar-type complexes ----

struct SparseMat {
  int rows = 0, cols = 0;
  std::vector<std::map<int, Int>> col;  // col[j]: row -> value

  SparseMat() = default;
  SparseMat(int r, int c) : rows(r), cols(c), col(c) {}
  void set(int i, int j, Int v) {
    if (v == 0) col[j].erase(i); else col[j][i] = std::move(v);
  }
};

// rank and invariant factors over Z; over a field just the rank.
std::pair<int, std::vector<Int>> sparse_invariants(const SparseMat& M,
                                                   const Ring& ring);

HomologySummary homology_slice_sparse(const SparseMat& d_in,
                                      const SparseMat& d_out,
                                      const Ring& ring);

}  // namespace hh
