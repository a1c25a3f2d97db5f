#include "hh/graded.hpp"

#include <set>

namespace hh {

int koszul_sign(std::span<const std::pair<int, int>> moved_degrees) {
  int s = 1;
  for (auto& [a, b] : moved_degrees)
    if ((a & 1) && (b & 1)) s = -s;
  return s;
}

int graded_permutation_sign(std::span<const int> perm,
                            std::span<const int> degs) {
  // bubble the permutation into place, accumulating Koszul transposition signs
  std::vector<int> p(perm.begin(), perm.end());
  int s = 1;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[j] < p[i]) {
        if ((degs[p[i]] & 1) && (degs[p[j]] & 1)) s = -s;
        std::swap(p[i], p[j]);
        j = i;  // restart inner scan
      }
  // simple O(n^2) selection variant to keep it correct
  return s;
}

GradedBasisModule::GradedBasisModule(std::vector<std::vector<std::string>> b,
                                     int maxdeg)
    : basis(std::move(b)), max_degree(maxdeg) {
  for (auto& names : basis) {
    std::set<std::string> seen;
    for (auto& n : names)
      if (!seen.insert(n).second)
        throw std::invalid_argument("duplicate basis name in a degree: " + n);
  }
}

GradedBasisModule suspend(const GradedBasisModule& V, int shift) {
  if (shift != 1 && shift != -1)
    throw std::invalid_argument("shift must be +1 or -1");
  if (shift == -1 && V.dim(0) > 0) throw NegativeDegree();
  GradedBasisModule W;
  W.max_degree = V.max_degree + shift;
  W.basis.resize(W.max_degree + 1);
  const char* prefix = shift == 1 ? "s" : "s^-1";
  for (int d = 0; d <= V.max_degree; ++d) {
    if (d + shift < 0 || d + shift > W.max_degree) continue;
    for (auto& n : V.basis.size() > (size_t)d ? V.basis[d]
                                              : std::vector<std::string>{}) {
      // undo a matching suspension instead of stacking prefixes
      std::string nn;
      if (shift == -1 && n.rfind("s", 0) == 0 && n.rfind("s^-1", 0) != 0)
        nn = n.substr(1);
      else if (shift == 1 && n.rfind("s^-1", 0) == 0)
        nn = n.substr(4);
      else
        nn = std::string(prefix) + n;
      W.basis[d + shift].push_back(nn);
    }
  }
  return W;
}

TruncatedComplex::TruncatedComplex(Ring r, int dir, int vt,
                                   GradedBasisModule m,
                                   std::vector<ExactMatrix> df)
    : ring(r), direction(dir), valid_through(vt), module(std::move(m)),
      diff(std::move(df)) {
  if (dir != 1 && dir != -1)
    throw std::invalid_argument("direction must be +1 or -1");
  diff.resize(std::max<size_t>(diff.size(), valid_through + 1));
  for (int n = 0; n <= valid_through; ++n) {
    ExactMatrix& M = diff[n];
    int tgt = n + direction;
    int td = tgt >= 0 ? module.dim(tgt) : 0;
    if (M.rows == 0 && M.cols == 0) M = ExactMatrix(td, module.dim(n));
    if (M.cols != module.dim(n) || M.rows != td)
      throw std::invalid_argument("differential block has wrong shape");
  }
  // d*d = 0 wherever both blocks are inside the truncation
  for (int n = 0; n <= valid_through; ++n) {
    int m2 = n + direction;
    if (m2 < 0 || m2 > valid_through) continue;
    ExactMatrix P = mat_mul(diff[m2], diff[n]);
    for (auto& x : P.a)
      if (!ring.is_zero(x))
        throw CompositionNotZero();
  }
}

const ExactMatrix& TruncatedComplex::d(int n) const {
  static const ExactMatrix empty;
  if (n < 0 || n >= (int)diff.size()) return empty;
  return diff[n];
}

TruncatedComplex tensor_complex(const TruncatedComplex& C,
                                const TruncatedComplex& D) {
  if (C.ring != D.ring) throw RingMismatch();
  if (C.direction != D.direction)
    throw std::invalid_argument("tensor_complex: directions differ");
  int vt = std::min(C.valid_through, D.valid_through);
  GradedBasisModule M;
  M.max_degree = vt;
  M.basis.resize(vt + 1);
  // index bookkeeping: in degree n, blocks (p, q = n - p) in increasing p
  auto offset = [&](int n, int p) {
    int off = 0;
    for (int pp = 0; pp < p; ++pp) off += C.dim(pp) * D.dim(n - pp);
    return off;
  };
  for (int n = 0; n <= vt; ++n)
    for (int p = 0; p <= n; ++p)
      for (int i = 0; i < C.dim(p); ++i)
        for (int j = 0; j < D.dim(n - p); ++j)
          M.basis[n].push_back(C.module.basis[p][i] + "⊗" +
                               D.module.basis[n - p][j]);
  std::vector<ExactMatrix> diff(vt + 1);
  for (int n = 0; n <= vt; ++n) {
    int tn = n + C.direction;
    int tdim = 0;
    if (tn >= 0 && tn <= vt) tdim = (int)M.basis[tn].size();
    ExactMatrix B(tdim, (int)M.basis[n].size());
    if (tdim > 0) {
      for (int p = 0; p <= n; ++p) {
        int q = n - p;
        for (int i = 0; i < C.dim(p); ++i)
          for (int j = 0; j < D.dim(q); ++j) {
            int src = offset(n, p) + i * D.dim(q) + j;
            // dx (x) y
            int tp = p + C.direction;
            if (tp >= 0 && tp <= tn) {
              const ExactMatrix& dC = C.d(p);
              for (int r = 0; r < dC.rows; ++r)
                if (dC.at(r, i) != 0)
                  B.at(offset(tn, tp) + r * D.dim(q) + j, src) += dC.at(r, i);
            }
            // (-1)^{|x|} x (x) dy
            int tq = q + D.direction;
            if (tq >= 0 && p <= tn) {
              const ExactMatrix& dD = D.d(q);
              Scalar sgn((p & 1) ? -1 : 1);
              for (int r = 0; r < dD.rows; ++r)
                if (dD.at(r, j) != 0)
                  B.at(offset(tn, p) + i * dD.rows + r, src) +=
                      sgn * dD.at(r, j);
            }
          }
      }
    }
    for (auto& x : B.a) x = C.ring.reduce(x);
    diff[n] = std::move(B);
  }
  return TruncatedComplex(C.ring, C.direction, vt, std::move(M),
                          std::move(diff));
}

TruncatedComplex dual_complex(const TruncatedComplex& C) {
  int vt = C.valid_through;
  GradedBasisModule M;
  M.max_degree = vt;
  M.basis.resize(vt + 1);
  for (int n = 0; n <= vt; ++n)
    for (auto& nm : (n < (int)C.module.basis.size() ? C.module.basis[n]
                                                    : std::vector<std::string>{}))
      M.basis[n].push_back(nm + "^");
  std::vector<ExactMatrix> diff(vt + 1);
  int dir = -C.direction;
  for (int n = 0; n <= vt; ++n) {
    int src_of_T = n - dir;  // d_{n-dir}: C_{n-dir} -> C_n in the original
    int tgt = n + dir;
    if (tgt < 0 || tgt > vt || src_of_T < 0 || src_of_T > vt) {
      diff[n] = ExactMatrix(tgt >= 0 && tgt <= vt ? M.dim(tgt) : 0, M.dim(n));
      continue;
    }
    ExactMatrix T = transpose(C.d(src_of_T));
    Scalar sgn((n & 1) ? -1 : 1);
    diff[n] = mat_scale(sgn, T);
    for (auto& x : diff[n].a) x = C.ring.reduce(x);
  }
  return TruncatedComplex(C.ring, dir, vt, std::move(M), std::move(diff));
}

bool is_chain_map(const GradedMap& f, const TruncatedComplex& C,
                  const TruncatedComplex& D, int through_degree) {
  if (f.degree != 0) return false;
  for (int n = 0; n <= through_degree; ++n) {
    int tn = n + C.direction;
    if (tn < 0 || tn > through_degree) continue;
    if (n >= (int)f.blocks.size() || tn >= (int)f.blocks.size()) continue;
    ExactMatrix lhs = mat_mul(f.blocks[tn], C.d(n));
    ExactMatrix rhs = mat_mul(D.d(n), f.blocks[n]);
    for (size_t i = 0; i < lhs.a.size(); ++i)
      if (!C.ring.is_zero(lhs.a[i] - rhs.a[i])) return false;
  }
  return true;
}

}  // namespace hh
