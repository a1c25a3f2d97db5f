#include "hh/matrix.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

namespace hh {

ExactMatrix ExactMatrix::identity(int n) {
  ExactMatrix I(n, n);
  for (int i = 0; i < n; ++i) I.at(i, i) = 1;
  return I;
}

bool ExactMatrix::is_zero() const {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

ExactMatrix mat_mul(const ExactMatrix& A, const ExactMatrix& B) {
  assert(A.cols == B.rows);
  ExactMatrix C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      const Scalar& v = A.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < B.cols; ++j)
        if (B.at(k, j) != 0) C.at(i, j) += v * B.at(k, j);
    }
  return C;
}

ExactMatrix mat_add(const ExactMatrix& A, const ExactMatrix& B) {
  assert(A.rows == B.rows && A.cols == B.cols);
  ExactMatrix C(A.rows, A.cols);
  for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = A.a[i] + B.a[i];
  return C;
}

ExactMatrix mat_scale(const Scalar& c, const ExactMatrix& A) {
  ExactMatrix C(A.rows, A.cols);
  for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = c * A.a[i];
  return C;
}

ExactMatrix transpose(const ExactMatrix& A) {
  ExactMatrix T(A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
  return T;
}

namespace {

// Elementary-operation bookkeeping for U*M*V = D.
struct Transforms {
  ExactMatrix D, U, Uinv, V, Vinv;

  explicit Transforms(const ExactMatrix& M)
      : D(M),
        U(ExactMatrix::identity(M.rows)),
        Uinv(ExactMatrix::identity(M.rows)),
        V(ExactMatrix::identity(M.cols)),
        Vinv(ExactMatrix::identity(M.cols)) {}

  void row_swap(int i, int j) {
    if (i == j) return;
    for (int k = 0; k < D.cols; ++k) std::swap(D.at(i, k), D.at(j, k));
    for (int k = 0; k < U.cols; ++k) std::swap(U.at(i, k), U.at(j, k));
    for (int k = 0; k < Uinv.rows; ++k) std::swap(Uinv.at(k, i), Uinv.at(k, j));
  }
  // R_i += c * R_j
  void row_addmul(int i, int j, const Scalar& c) {
    for (int k = 0; k < D.cols; ++k) D.at(i, k) += c * D.at(j, k);
    for (int k = 0; k < U.cols; ++k) U.at(i, k) += c * U.at(j, k);
    for (int k = 0; k < Uinv.rows; ++k) Uinv.at(k, j) -= c * Uinv.at(k, i);
  }
  void row_scale(int i, const Scalar& c) {
    for (int k = 0; k < D.cols; ++k) D.at(i, k) *= c;
    for (int k = 0; k < U.cols; ++k) U.at(i, k) *= c;
    Scalar ci = 1 / c;
    for (int k = 0; k < Uinv.rows; ++k) Uinv.at(k, i) *= ci;
  }
  void col_swap(int i, int j) {
    if (i == j) return;
    for (int k = 0; k < D.rows; ++k) std::swap(D.at(k, i), D.at(k, j));
    for (int k = 0; k < V.rows; ++k) std::swap(V.at(k, i), V.at(k, j));
    for (int k = 0; k < Vinv.cols; ++k) std::swap(Vinv.at(i, k), Vinv.at(j, k));
  }
  // C_j += c * C_i
  void col_addmul(int j, int i, const Scalar& c) {
    for (int k = 0; k < D.rows; ++k) D.at(k, j) += c * D.at(k, i);
    for (int k = 0; k < V.rows; ++k) V.at(k, j) += c * V.at(k, i);
    for (int k = 0; k < Vinv.cols; ++k) Vinv.at(i, k) -= c * Vinv.at(j, k);
  }
  void col_scale(int j, const Scalar& c) {
    for (int k = 0; k < D.rows; ++k) D.at(k, j) *= c;
    for (int k = 0; k < V.rows; ++k) V.at(k, j) *= c;
    Scalar ci = 1 / c;
    for (int k = 0; k < Vinv.cols; ++k) Vinv.at(j, k) *= ci;
  }
};

Int as_int(const Scalar& x) {
  if (x.get_den() != 1)
    throw std::invalid_argument("integer matrix expected");
  return x.get_num();
}

// Quotient minimizing |a - q*b|, b > 0.
Int round_div(const Int& a, const Int& b) {
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (2 * r > b) ++q;
  return q;
}

void snf_integers(Transforms& t, Diagonalization& out) {
  ExactMatrix& D = t.D;
  int n = std::min(D.rows, D.cols);
  int k = 0;
  for (; k < n; ++k) {
    // minimal-absolute-value pivot, row-major scan
    int pi = -1, pj = -1;
    Int best;
    for (int i = k; i < D.rows; ++i)
      for (int j = k; j < D.cols; ++j) {
        if (D.at(i, j) == 0) continue;
        Int v = abs(as_int(D.at(i, j)));
        if (pi < 0 || v < best) { best = v; pi = i; pj = j; }
      }
    if (pi < 0) break;
    t.row_swap(k, pi);
    t.col_swap(k, pj);
    if (D.at(k, k) < 0) t.row_scale(k, Scalar(-1));
    for (;;) {
      bool clean = true;
      Int p = as_int(D.at(k, k));
      for (int i = k + 1; i < D.rows; ++i) {
        if (D.at(i, k) == 0) continue;
        Int q = round_div(as_int(D.at(i, k)), p);
        if (q != 0) t.row_addmul(i, k, Scalar(-q));
        if (D.at(i, k) != 0) {  // remainder became the smaller pivot
          t.row_swap(k, i);
          if (D.at(k, k) < 0) t.row_scale(k, Scalar(-1));
          p = as_int(D.at(k, k));
          clean = false;
        }
      }
      for (int j = k + 1; j < D.cols; ++j) {
        if (D.at(k, j) == 0) continue;
        Int q = round_div(as_int(D.at(k, j)), p);
        if (q != 0) t.col_addmul(j, k, Scalar(-q));
        if (D.at(k, j) != 0) {
          t.col_swap(k, j);
          if (D.at(k, k) < 0) t.col_scale(k, Scalar(-1));
          p = as_int(D.at(k, k));
          clean = false;
        }
      }
      if (!clean) continue;
      // divisibility sweep
      bool fixed = true;
      for (int i = k + 1; i < D.rows && fixed; ++i)
        for (int j = k + 1; j < D.cols && fixed; ++j)
          if (as_int(D.at(i, j)) % p != 0) {
            t.row_addmul(k, i, Scalar(1));
            fixed = false;
          }
      if (fixed) break;
    }
    out.invariant_factors.push_back(as_int(D.at(k, k)));
  }
  out.rank = k;
}

void snf_field(Transforms& t, Diagonalization& out, const Ring& ring) {
  ExactMatrix& D = t.D;
  auto red = [&](Scalar& x) { x = ring.reduce(x); };
  for (auto& x : D.a) red(x);
  int n = std::min(D.rows, D.cols);
  int k = 0;
  for (; k < n; ++k) {
    int pi = -1, pj = -1;
    for (int i = k; i < D.rows && pi < 0; ++i)
      for (int j = k; j < D.cols; ++j)
        if (ring.reduce(D.at(i, j)) != 0) { pi = i; pj = j; break; }
    if (pi < 0) break;
    t.row_swap(k, pi);
    t.col_swap(k, pj);
    t.row_scale(k, ring.inv(D.at(k, k)));
    for (int i = k + 1; i < D.rows; ++i)
      if (ring.reduce(D.at(i, k)) != 0) t.row_addmul(i, k, -D.at(i, k));
    for (int j = k + 1; j < D.cols; ++j)
      if (ring.reduce(D.at(k, j)) != 0) t.col_addmul(j, k, -D.at(k, j));
    for (auto& x : D.a) red(x);
    out.invariant_factors.push_back(1);
  }
  out.rank = k;
  for (auto& x : t.U.a) red(x);
  for (auto& x : t.Uinv.a) red(x);
  for (auto& x : t.V.a) red(x);
  for (auto& x : t.Vinv.a) red(x);
}

}  // namespace

Diagonalization diagonalize(const ExactMatrix& M, const Ring& ring) {
  Transforms t(M);
  Diagonalization out;
  if (ring.is_field())
    snf_field(t, out, ring);
  else
    snf_integers(t, out);
  out.U = std::move(t.U);
  out.Uinv = std::move(t.Uinv);
  out.V = std::move(t.V);
  out.Vinv = std::move(t.Vinv);
  out.D = std::move(t.D);
  return out;
}

Diagonalization smith_normal_form(const ExactMatrix& M) {
  return diagonalize(M, Ring::Z());
}

int rank_of(const ExactMatrix& M, const Ring& ring) {
  return diagonalize(M, ring.is_field() ? ring : Ring::Q()).rank;
}

bool solve(const ExactMatrix& A, const std::vector<Scalar>& b,
           std::vector<Scalar>& x, const Ring& ring) {
  assert((int)b.size() == A.rows);
  Diagonalization d = diagonalize(A, ring);
  // A x = b  <=>  D y = U b, x = V y
  std::vector<Scalar> ub(A.rows, 0);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.rows; ++j)
      if (d.U.at(i, j) != 0 && b[j] != 0) ub[i] += d.U.at(i, j) * b[j];
  std::vector<Scalar> y(A.cols, 0);
  for (int i = 0; i < A.rows; ++i) {
    Scalar r = ring.reduce(ub[i]);
    if (i < d.rank) {
      Scalar q = r / d.D.at(i, i);
      if (ring.kind() == RingKind::Integers && q.get_den() != 1) return false;
      y[i] = ring.reduce(q);
    } else if (r != 0) {
      return false;
    }
  }
  x.assign(A.cols, 0);
  for (int i = 0; i < A.cols; ++i) {
    for (int j = 0; j < A.cols; ++j)
      if (d.V.at(i, j) != 0 && y[j] != 0) x[i] += d.V.at(i, j) * y[j];
    x[i] = ring.reduce(x[i]);
  }
  return true;
}

HomologyDecomposition homology_decomposition(const ExactMatrix& d_in,
                                             const ExactMatrix& d_out,
                                             const Ring& ring) {
  const int dim = d_out.cols;
  assert(d_in.rows == dim);
  if (!mat_mul(d_out, d_in).is_zero()) throw CompositionNotZero();

  HomologyDecomposition h;
  h.ring = ring;

  Diagonalization dk = diagonalize(d_out, ring);
  h.kernel_rank = dim - dk.rank;
  h.V1inv = dk.Vinv;
  for (int j = dk.rank; j < dim; ++j) h.kernel_cols.push_back(j);

  // image of d_in written in kernel coordinates
  ExactMatrix M(h.kernel_rank, d_in.cols);
  {
    ExactMatrix coords = mat_mul(dk.Vinv, d_in);
    for (int r = 0; r < dk.rank; ++r)
      for (int j = 0; j < d_in.cols; ++j)
        if (ring.reduce(coords.at(r, j)) != 0)
          throw CompositionNotZero();  // image not inside the kernel
    for (int r = 0; r < h.kernel_rank; ++r)
      for (int j = 0; j < d_in.cols; ++j)
        M.at(r, j) = coords.at(dk.rank + r, j);
  }
  Diagonalization dm = diagonalize(M, ring);
  h.image_rank = dm.rank;
  h.U2 = dm.U;
  h.inv_factors = dm.invariant_factors;
  h.free_rank = h.kernel_rank - dm.rank;

  // adapted kernel basis: columns of V1[:, rank..] * U2inv
  ExactMatrix K(dim, h.kernel_rank);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < h.kernel_rank; ++j)
      K.at(i, j) = dk.V.at(i, dk.rank + j);
  ExactMatrix Kp = mat_mul(K, dm.Uinv);
  for (int g = 0; g < h.kernel_rank; ++g) {
    Int order = 0;
    if (g < dm.rank) {
      order = dm.invariant_factors[g];
      if (order == 1) continue;  // boundary: no homology generator
    }
    std::vector<Scalar> v(dim);
    for (int i = 0; i < dim; ++i) v[i] = ring.reduce(Kp.at(i, g));
    h.orders.push_back(order);
    h.generators.push_back(std::move(v));
  }
  // torsion generators first (by construction), then free
  return h;
}

std::vector<Scalar> HomologyDecomposition::classify(
    const std::vector<Scalar>& cycle) const {
  const int dim = V1inv.cols;
  assert((int)cycle.size() == dim);
  std::vector<Scalar> y(V1inv.rows, 0);
  for (int i = 0; i < V1inv.rows; ++i) {
    for (int j = 0; j < dim; ++j)
      if (V1inv.at(i, j) != 0 && cycle[j] != 0)
        y[i] += V1inv.at(i, j) * cycle[j];
    y[i] = ring.reduce(y[i]);
  }
  int krank = kernel_rank;
  int offset = (int)y.size() - krank;
  for (int i = 0; i < offset; ++i)
    if (y[i] != 0) throw std::invalid_argument("classify: not a cycle");
  std::vector<Scalar> z(krank, 0);
  for (int i = 0; i < krank; ++i) {
    for (int j = 0; j < krank; ++j)
      if (U2.at(i, j) != 0 && y[offset + j] != 0)
        z[i] += U2.at(i, j) * y[offset + j];
    z[i] = ring.reduce(z[i]);
  }
  std::vector<Scalar> out;
  for (int g = 0; g < krank; ++g) {
    if (g < image_rank) {
      Int order = inv_factors[g];
      if (order == 1) continue;
      if (z[g].get_den() != 1)
        throw std::invalid_argument("expected integral coefficient");
      Int r = z[g].get_num() % order;
      if (r < 0) r += order;
      out.push_back(Scalar(r));
    } else {
      out.push_back(z[g]);
    }
  }
  return out;
}

HomologySummary HomologyDecomposition::summary(int degree) const {
  HomologySummary s;
  s.degree = degree;
  s.free_rank = free_rank;
  for (const auto& d : inv_factors)
    if (d > 1) s.torsion.push_back(d);
  s.representative_cycles = generators;
  return s;
}

HomologySummary homology_slice(const ExactMatrix& d_in,
                               const ExactMatrix& d_out, const Ring& ring) {
  return homology_decomposition(d_in, d_out, ring).summary(0);
}

// ---------------- sparse ----------------

namespace {

struct SparseWork {
  int rows, cols;
  std::vector<std::map<int, Int>> col;   // active values
  std::vector<std::set<int>> rowcols;    // row -> set of cols with nonzero
  std::vector<char> row_done, col_done;

  explicit SparseWork(const SparseMat& M)
      : rows(M.rows), cols(M.cols), col(M.col), rowcols(M.rows),
        row_done(M.rows, 0), col_done(M.cols, 0) {
    for (int j = 0; j < cols; ++j)
      for (auto& [i, v] : col[j]) rowcols[i].insert(j);
  }

  void set(int i, int j, const Int& v) {
    if (v == 0) {
      col[j].erase(i);
      rowcols[i].erase(j);
    } else {
      col[j][i] = v;
      rowcols[i].insert(j);
    }
  }
  const Int* get(int i, int j) const {
    auto it = col[j].find(i);
    return it == col[j].end() ? nullptr : &it->second;
  }
  // C_j += c * C_p
  void col_addmul(int j, int p, const Int& c) {
    for (auto& [i, v] : col[p]) {
      auto it = col[j].find(i);
      Int nv = (it == col[j].end() ? Int(0) : it->second) + c * v;
      set(i, j, nv);
    }
  }
  // R_i += c * R_p   (iterate over cols containing row p)
  void row_addmul(int i, int p, const Int& c) {
    std::vector<int> cs(rowcols[p].begin(), rowcols[p].end());
    for (int j : cs) {
      const Int* pv = get(p, j);
      if (!pv) continue;
      auto it = col[j].find(i);
      Int nv = (it == col[j].end() ? Int(0) : it->second) + c * (*pv);
      set(i, j, nv);
    }
  }
};

// invariant-factor fixup for a diagonal list
std::vector<Int> fix_divisibility(std::vector<Int> d) {
  for (auto& x : d) x = abs(x);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 1 < d.size(); ++i)
      for (size_t j = i + 1; j < d.size(); ++j) {
        if (d[j] % d[i] == 0) continue;
        Int g = gcd(d[i], d[j]);
        Int l = d[i] / g * d[j];
        d[i] = g;
        d[j] = l;
        changed = true;
      }
  }
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

std::pair<int, std::vector<Int>> sparse_invariants(const SparseMat& M,
                                                   const Ring& ring) {
  if (ring.kind() == RingKind::PrimeField) {
    // elimination mod p; torsion is empty over a field
    Int p(ring.p());
    SparseWork w(M);
    for (int j = 0; j < w.cols; ++j) {
      std::vector<int> kill;
      for (auto& [i, v] : w.col[j]) {
        Int r = v % p;
        if (r < 0) r += p;
        v = r;
        if (v == 0) kill.push_back(i);
      }
      for (int i : kill) w.set(i, j, 0);
    }
    int rank = 0;
    for (;;) {
      // pick pivot with minimal fill
      long best = std::numeric_limits<long>::max();
      int pi = -1, pj = -1;
      for (int j = 0; j < w.cols; ++j) {
        if (w.col_done[j] || w.col[j].empty()) continue;
        for (auto& [i, v] : w.col[j]) {
          long score =
              (long)(w.rowcols[i].size() - 1) * (long)(w.col[j].size() - 1);
          if (score < best) { best = score; pi = i; pj = j; }
        }
      }
      if (pi < 0) break;
      Int piv = *w.get(pi, pj);
      Int pinv = mod_inverse(piv, p);
      std::vector<int> js(w.rowcols[pi].begin(), w.rowcols[pi].end());
      for (int j : js) {
        if (j == pj) continue;
        Int c = (p - (*w.get(pi, j) * pinv) % p) % p;
        w.col_addmul(j, pj, c);
        for (auto& [i, v] : w.col[j]) v %= p;
        std::vector<int> kill;
        for (auto& [i, v] : w.col[j]) {
          v %= p; if (v < 0) v += p;
          if (v == 0) kill.push_back(i);
        }
        for (int i : kill) w.set(i, j, 0);
      }
      // clear the pivot column
      std::vector<int> is;
      for (auto& [i, v] : w.col[pj]) is.push_back(i);
      for (int i : is) w.set(i, pj, 0);
      w.row_done[pi] = 1;
      w.col_done[pj] = 1;
      ++rank;
    }
    return {rank, {}};
  }

  // integer path (also the rank path for Q after clearing denominators)
  SparseWork w(M);
  std::vector<Int> diag;
  for (;;) {
    // prefer a unit pivot with minimal fill, else global min |value|
    long best_fill = std::numeric_limits<long>::max();
    int pi = -1, pj = -1;
    Int best_val;
    bool have_unit = false;
    for (int j = 0; j < w.cols; ++j) {
      if (w.col_done[j]) continue;
      for (auto& [i, v] : w.col[j]) {
        Int av = abs(v);
        long fill =
            (long)(w.rowcols[i].size() - 1) * (long)(w.col[j].size() - 1);
        if (av == 1) {
          if (!have_unit || fill < best_fill) {
            have_unit = true; best_fill = fill; pi = i; pj = j; best_val = av;
          }
        } else if (!have_unit) {
          if (pi < 0 || av < best_val ||
              (av == best_val && fill < best_fill)) {
            best_fill = fill; pi = i; pj = j; best_val = av;
          }
        }
      }
    }
    if (pi < 0) break;
    Int piv = *w.get(pi, pj);
    if (abs(piv) == 1) {
      // clear row with column ops (exact), then drop the column
      std::vector<int> js(w.rowcols[pi].begin(), w.rowcols[pi].end());
      for (int j : js) {
        if (j == pj) continue;
        Int c = -(*w.get(pi, j)) / piv;
        w.col_addmul(j, pj, c);
      }
      std::vector<int> is;
      for (auto& [i, v] : w.col[pj]) is.push_back(i);
      // clearing the column only changes column pj once the row is clear
      for (int i : is) w.set(i, pj, 0);
      w.row_done[pi] = 1;
      w.col_done[pj] = 1;
      diag.push_back(1);
      continue;
    }
    // reduce row and column entries mod the pivot
    bool reduced_all = true;
    {
      if (piv < 0) { /* sign handled via abs in diag */ }
      std::vector<int> js(w.rowcols[pi].begin(), w.rowcols[pi].end());
      for (int j : js) {
        if (j == pj) continue;
        Int q = round_div(*w.get(pi, j), abs(piv));
        if (piv < 0) q = -q;
        if (q != 0) w.col_addmul(j, pj, -q);
        if (w.get(pi, j)) reduced_all = false;
      }
      std::vector<int> is;
      for (auto& [i, v] : w.col[pj]) if (i != pi) is.push_back(i);
      for (int i : is) {
        const Int* pv = w.get(i, pj);
        if (!pv) continue;
        Int q = round_div(*pv, abs(piv));
        if (piv < 0) q = -q;
        if (q != 0) w.row_addmul(i, pi, -q);
        if (w.get(i, pj)) reduced_all = false;
      }
    }
    if (reduced_all) {
      w.row_done[pi] = 1;
      w.col_done[pj] = 1;
      diag.push_back(abs(piv));
      std::vector<int> js(w.rowcols[pi].begin(), w.rowcols[pi].end());
      for (int j : js) w.set(pi, j, 0);
    }
    // otherwise: a smaller entry appeared; next round picks it up
  }
  int rank = (int)diag.size();
  std::vector<Int> inv = fix_divisibility(std::move(diag));
  return {rank, inv};
}

HomologySummary homology_slice_sparse(const SparseMat& d_in,
                                      const SparseMat& d_out,
                                      const Ring& ring) {
  const int dim = d_out.cols;
  if (d_in.rows != dim)
    throw std::invalid_argument("dimension mismatch in homology slice");
  // composition check
  for (int j = 0; j < d_in.cols; ++j) {
    std::map<int, Int> acc;
    for (auto& [i, v] : d_in.col[j])
      for (auto& [r, w] : d_out.col[i]) {
        acc[r] += v * w;
      }
    for (auto& [r, s] : acc) {
      Scalar val(s);
      if (!ring.is_zero(val)) throw CompositionNotZero();
    }
  }
  auto [rin, tin] = sparse_invariants(d_in, ring);
  auto [rout, tout] = sparse_invariants(d_out, ring);
  HomologySummary s;
  s.free_rank = dim - rin - rout;
  if (!ring.is_field())
    for (auto& d : tin)
      if (d > 1) s.torsion.push_back(d);
  return s;
}

}  // namespace hh
