#include "stemrank/zlattice.hpp"

#include <algorithm>
#include <cstdlib>

namespace stemrank {

IntMat IntMat::identity(int n) {
  IntMat I(n, n);
  for (int i = 0; i < n; ++i) I.at(i, i) = 1;
  return I;
}

IntMat IntMat::from_rows(const std::vector<std::vector<Int>>& rows) {
  if (rows.empty()) return IntMat(0, 0);
  IntMat M(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < M.rows; ++i) {
    if (static_cast<int>(rows[i].size()) != M.cols)
      throw SpecError("ragged matrix rows");
    for (int j = 0; j < M.cols; ++j) M.at(i, j) = rows[i][j];
  }
  return M;
}

std::vector<Int> IntMat::row(int r) const {
  std::vector<Int> out(cols);
  for (int j = 0; j < cols; ++j) out[j] = at(r, j);
  return out;
}

namespace {

void negate_row(IntMat& M, int r) {
  for (int j = 0; j < M.cols; ++j) M.at(r, j) = -M.at(r, j);
}

void swap_rows(IntMat& M, int r1, int r2) {
  for (int j = 0; j < M.cols; ++j) std::swap(M.at(r1, j), M.at(r2, j));
}

// row(dst) -= q * row(src)
void submul_row(IntMat& M, int dst, int src, const Int& q) {
  if (q == 0) return;
  for (int j = 0; j < M.cols; ++j) M.at(dst, j) -= q * M.at(src, j);
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Core HNF elimination; U (if non-null) accumulates the row operations.
void hnf_in_place(IntMat& H, IntMat* U) {
  int r = 0;
  for (int col = 0; col < H.cols && r < H.rows; ++col) {
    // Euclid down the column until a single nonzero entry remains at row r.
    for (;;) {
      int best = -1;
      for (int i = r; i < H.rows; ++i) {
        if (H.at(i, col) == 0) continue;
        if (best < 0 || mpz_cmpabs(H.at(i, col).get_mpz_t(), H.at(best, col).get_mpz_t()) < 0)
          best = i;
      }
      if (best < 0) break;
      if (best != r) {
        swap_rows(H, r, best);
        if (U) swap_rows(*U, r, best);
      }
      bool more = false;
      for (int i = r + 1; i < H.rows; ++i) {
        if (H.at(i, col) == 0) continue;
        Int q = H.at(i, col) / H.at(r, col);  // truncated: |remainder| < |pivot|
        submul_row(H, i, r, q);
        if (U) submul_row(*U, i, r, q);
        if (H.at(i, col) != 0) more = true;
      }
      if (!more) break;
    }
    if (H.at(r, col) == 0) continue;
    if (H.at(r, col) < 0) {
      negate_row(H, r);
      if (U) negate_row(*U, r);
    }
    // Reduce entries above the pivot into [0, pivot).
    for (int i = 0; i < r; ++i) {
      Int q = floor_div(H.at(i, col), H.at(r, col));
      submul_row(H, i, r, q);
      if (U) submul_row(*U, i, r, q);
    }
    ++r;
  }
}

}  // namespace

IntMat hnf_with_transform(const IntMat& M, IntMat& U) {
  IntMat H = M;
  U = IntMat::identity(M.rows);
  hnf_in_place(H, &U);
  return H;
}

Lattice hnf(const IntMat& M) {
  IntMat H = M;
  hnf_in_place(H, nullptr);
  int rank = 0;
  for (int i = 0; i < H.rows; ++i) {
    bool zero = true;
    for (int j = 0; j < H.cols; ++j)
      if (H.at(i, j) != 0) {
        zero = false;
        break;
      }
    if (!zero) ++rank;
  }
  Lattice L;
  L.ambient = M.cols;
  L.basis = IntMat(rank, M.cols);
  int k = 0;
  for (int i = 0; i < H.rows; ++i) {
    bool zero = true;
    for (int j = 0; j < H.cols; ++j)
      if (H.at(i, j) != 0) {
        zero = false;
        break;
      }
    if (zero) continue;
    for (int j = 0; j < H.cols; ++j) L.basis.at(k, j) = H.at(i, j);
    ++k;
  }
  return L;
}

Lattice left_kernel(const IntMat& M) {
  IntMat U;
  IntMat H = hnf_with_transform(M, U);
  std::vector<std::vector<Int>> rows;
  for (int i = 0; i < H.rows; ++i) {
    bool zero = true;
    for (int j = 0; j < H.cols; ++j)
      if (H.at(i, j) != 0) {
        zero = false;
        break;
      }
    if (zero) rows.push_back(U.row(i));
  }
  IntMat K = IntMat::from_rows(rows);
  if (K.rows == 0) K = IntMat(0, M.rows);
  Lattice L = hnf(K);
  L.ambient = M.rows;
  L.basis.cols = M.rows;
  if (L.basis.rows == 0) L.basis = IntMat(0, M.rows);
  return L;
}

Lattice int_kernel(const std::vector<Int>& v) {
  bool all_zero = true;
  for (const Int& z : v)
    if (z != 0) {
      all_zero = false;
      break;
    }
  if (all_zero) throw SpecError("int_kernel of the zero vector");
  IntMat M(static_cast<int>(v.size()), 1);
  for (size_t i = 0; i < v.size(); ++i) M.at(static_cast<int>(i), 0) = v[i];
  return left_kernel(M);
}

Lattice mod2_sublattice(const Lattice& L, const std::vector<std::vector<uint8_t>>& C,
                        int* f2_rank) {
  const int k = L.rank();
  const int r = L.ambient;
  for (const auto& row : C)
    if (static_cast<int>(row.size()) != r)
      throw SpecError("mod-2 constraint width does not match ambient rank");

  // Constraint system on L-coordinates: D[t][i] = C_t . (basis row i) mod 2.
  std::vector<std::vector<uint8_t>> D;
  D.reserve(C.size());
  for (const auto& c : C) {
    std::vector<uint8_t> row(k, 0);
    for (int i = 0; i < k; ++i) {
      unsigned acc = 0;
      for (int j = 0; j < r; ++j)
        if (c[j] & 1) acc ^= static_cast<unsigned>(mpz_odd_p(L.basis.at(i, j).get_mpz_t()));
      row[i] = static_cast<uint8_t>(acc & 1);
    }
    D.push_back(std::move(row));
  }

  // Gaussian elimination over F2; collect the kernel basis.
  int rank = 0;
  std::vector<int> pivot_of_col(k, -1);
  for (int col = 0; col < k; ++col) {
    int piv = -1;
    for (int i = rank; i < static_cast<int>(D.size()); ++i)
      if (D[i][col]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(D[piv], D[rank]);
    for (int i = 0; i < static_cast<int>(D.size()); ++i) {
      if (i == rank || !D[i][col]) continue;
      for (int j = 0; j < k; ++j) D[i][j] ^= D[rank][j];
    }
    pivot_of_col[col] = rank;
    ++rank;
  }
  if (f2_rank) *f2_rank = rank;

  std::vector<std::vector<Int>> rows;
  // Kernel vectors: one per free column.
  for (int col = 0; col < k; ++col) {
    if (pivot_of_col[col] >= 0) continue;
    std::vector<uint8_t> u(k, 0);
    u[col] = 1;
    for (int c2 = 0; c2 < k; ++c2) {
      int p = pivot_of_col[c2];
      if (p >= 0 && D[p][col]) u[c2] = 1;
    }
    std::vector<Int> x(r, Int(0));
    for (int i = 0; i < k; ++i)
      if (u[i])
        for (int j = 0; j < r; ++j) x[j] += L.basis.at(i, j);
    rows.push_back(std::move(x));
  }
  // Doubled basis rows: 2*L always satisfies the constraints.
  for (int i = 0; i < k; ++i) {
    std::vector<Int> x(r, Int(0));
    for (int j = 0; j < r; ++j) x[j] = 2 * L.basis.at(i, j);
    rows.push_back(std::move(x));
  }
  IntMat M = IntMat::from_rows(rows);
  if (M.rows == 0) M = IntMat(0, r);
  M.cols = r;
  Lattice out = hnf(M);
  out.ambient = r;
  return out;
}

Lattice intersect(const Lattice& L1, const Lattice& L2) {
  if (L1.ambient != L2.ambient) throw SpecError("intersect: ambient rank mismatch");
  const int r = L1.ambient;
  if (L1.rank() == 0 || L2.rank() == 0) {
    Lattice empty;
    empty.ambient = r;
    empty.basis = IntMat(0, r);
    return empty;
  }
  const int k1 = L1.rank(), k2 = L2.rank();
  IntMat M(k1 + k2, r);
  for (int i = 0; i < k1; ++i)
    for (int j = 0; j < r; ++j) M.at(i, j) = L1.basis.at(i, j);
  for (int i = 0; i < k2; ++i)
    for (int j = 0; j < r; ++j) M.at(k1 + i, j) = -L2.basis.at(i, j);
  Lattice K = left_kernel(M);  // rows (u | w) with u*B1 = w*B2
  std::vector<std::vector<Int>> rows;
  for (int i = 0; i < K.rank(); ++i) {
    std::vector<Int> x(r, Int(0));
    for (int s = 0; s < k1; ++s)
      for (int j = 0; j < r; ++j) x[j] += K.basis.at(i, s) * L1.basis.at(s, j);
    rows.push_back(std::move(x));
  }
  IntMat B = IntMat::from_rows(rows);
  if (B.rows == 0) B = IntMat(0, r);
  B.cols = r;
  Lattice out = hnf(B);
  out.ambient = r;
  return out;
}

std::optional<std::vector<Int>> coordinates(const Lattice& L, const std::vector<Int>& x) {
  if (static_cast<int>(x.size()) != L.ambient) throw SpecError("member: rank mismatch");
  std::vector<Int> y = x;
  std::vector<Int> coords(L.rank(), Int(0));
  for (int i = 0; i < L.rank(); ++i) {
    int p = -1;
    for (int j = 0; j < L.ambient; ++j)
      if (L.basis.at(i, j) != 0) {
        p = j;
        break;
      }
    if (p < 0) continue;
    Int q = y[p] / L.basis.at(i, p);
    if (q * L.basis.at(i, p) != y[p]) return std::nullopt;
    for (int j = 0; j < L.ambient; ++j) y[j] -= q * L.basis.at(i, j);
    coords[i] = q;
  }
  for (const Int& z : y)
    if (z != 0) return std::nullopt;
  return coords;
}

bool member(const Lattice& L, const std::vector<Int>& x) {
  return coordinates(L, x).has_value();
}

bool contains(const Lattice& outer, const Lattice& inner) {
  if (outer.ambient != inner.ambient) throw SpecError("contains: ambient rank mismatch");
  for (int i = 0; i < inner.rank(); ++i)
    if (!member(outer, inner.basis.row(i))) return false;
  return true;
}

Int determinant(const IntMat& M) {
  if (M.rows != M.cols) throw SpecError("determinant of non-square matrix");
  const int n = M.rows;
  if (n == 0) return Int(1);
  IntMat A = M;
  Int prev(1);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (A.at(k, k) == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (A.at(i, k) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return Int(0);
      swap_rows(A, k, piv);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Int num = A.at(i, j) * A.at(k, k) - A.at(i, k) * A.at(k, j);
        Int q = num / prev;
        if (q * prev != num) throw InternalError("Bareiss division not exact");
        A.at(i, j) = q;
      }
      A.at(i, k) = 0;
    }
    prev = A.at(k, k);
  }
  return sign > 0 ? A.at(n - 1, n - 1) : -A.at(n - 1, n - 1);
}

std::optional<Int> lattice_index(const Lattice& outer, const Lattice& inner) {
  if (outer.ambient != inner.ambient || outer.rank() != inner.rank()) return std::nullopt;
  const int k = inner.rank();
  IntMat T(k, k);
  for (int i = 0; i < k; ++i) {
    auto c = coordinates(outer, inner.basis.row(i));
    if (!c) return std::nullopt;
    for (int j = 0; j < k; ++j) T.at(i, j) = (*c)[j];
  }
  Int d = determinant(T);
  if (d < 0) d = -d;
  if (d == 0) return std::nullopt;
  return d;
}

}  // namespace stemrank
