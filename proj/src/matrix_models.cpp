#include "stemrank/matrix_models.hpp"

#include <algorithm>

namespace stemrank {

CycMat CycMat::identity(int n) {
  CycMat I(n, n);
  for (int i = 0; i < n; ++i) I.at(i, i) = CycNum::from_int(1);
  return I;
}

CycMat CycMat::operator*(const CycMat& o) const {
  if (cols != o.rows) throw InternalError("CycMat shape mismatch in product");
  CycMat out(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      if (at(i, k).is_zero()) continue;
      for (int j = 0; j < o.cols; ++j) out.at(i, j) += at(i, k) * o.at(k, j);
    }
  return out;
}

CycMat CycMat::operator+(const CycMat& o) const {
  if (rows != o.rows || cols != o.cols) throw InternalError("CycMat shape mismatch in sum");
  CycMat out(rows, cols);
  for (size_t i = 0; i < a.size(); ++i) out.a[i] = a[i] + o.a[i];
  return out;
}

CycMat CycMat::scaled(const CycNum& s) const {
  CycMat out(rows, cols);
  for (size_t i = 0; i < a.size(); ++i) out.a[i] = a[i] * s;
  return out;
}

CycNum CycMat::trace() const {
  CycNum t;
  for (int i = 0; i < rows && i < cols; ++i) t += at(i, i);
  return t;
}

CycNum det(const CycMat& M) {
  if (M.rows != M.cols) throw InternalError("determinant of non-square CycMat");
  CycMat A = M;
  const int n = A.rows;
  CycNum d = CycNum::from_int(1);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (!A.at(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return CycNum::from_int(0);
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(A.at(piv, j), A.at(col, j));
      d = -d;
    }
    d = d * A.at(col, col);
    CycNum inv = A.at(col, col).inverse();
    for (int i = col + 1; i < n; ++i) {
      if (A.at(i, col).is_zero()) continue;
      CycNum f = A.at(i, col) * inv;
      for (int j = col; j < n; ++j) A.at(i, j) -= f * A.at(col, j);
    }
  }
  return d;
}

CycMat column_space(const CycMat& M) {
  // Row-reduce the transpose; the nonzero rows give a basis of the column space.
  CycMat T(M.cols, M.rows);
  for (int i = 0; i < M.rows; ++i)
    for (int j = 0; j < M.cols; ++j) T.at(j, i) = M.at(i, j);
  int rank = 0;
  for (int col = 0; col < T.cols && rank < T.rows; ++col) {
    int piv = -1;
    for (int i = rank; i < T.rows; ++i)
      if (!T.at(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != rank)
      for (int j = 0; j < T.cols; ++j) std::swap(T.at(piv, j), T.at(rank, j));
    CycNum inv = T.at(rank, col).inverse();
    for (int j = 0; j < T.cols; ++j) T.at(rank, j) = T.at(rank, j) * inv;
    for (int i = 0; i < T.rows; ++i) {
      if (i == rank || T.at(i, col).is_zero()) continue;
      CycNum f = T.at(i, col);
      for (int j = 0; j < T.cols; ++j) T.at(i, j) -= f * T.at(rank, j);
    }
    ++rank;
  }
  CycMat B(M.rows, rank);
  for (int k = 0; k < rank; ++k)
    for (int i = 0; i < M.rows; ++i) B.at(i, k) = T.at(k, i);
  return B;
}

CycMat solve_in_span(const CycMat& B, const CycMat& Y) {
  if (B.rows != Y.rows) throw InternalError("solve_in_span: row mismatch");
  const int d = B.rows, m = B.cols, w = Y.cols;
  CycMat aug(d, m + w);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < m; ++j) aug.at(i, j) = B.at(i, j);
    for (int j = 0; j < w; ++j) aug.at(i, m + j) = Y.at(i, j);
  }
  std::vector<int> pivot_row(m, -1);
  int rank = 0;
  for (int col = 0; col < m; ++col) {
    int piv = -1;
    for (int i = rank; i < d; ++i)
      if (!aug.at(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) throw InternalError("solve_in_span: basis not independent");
    if (piv != rank)
      for (int j = 0; j < m + w; ++j) std::swap(aug.at(piv, j), aug.at(rank, j));
    CycNum inv = aug.at(rank, col).inverse();
    for (int j = 0; j < m + w; ++j) aug.at(rank, j) = aug.at(rank, j) * inv;
    for (int i = 0; i < d; ++i) {
      if (i == rank || aug.at(i, col).is_zero()) continue;
      CycNum f = aug.at(i, col);
      for (int j = 0; j < m + w; ++j) aug.at(i, j) -= f * aug.at(rank, j);
    }
    pivot_row[col] = rank;
    ++rank;
  }
  for (int i = rank; i < d; ++i)
    for (int j = 0; j < w; ++j)
      if (!aug.at(i, m + j).is_zero())
        throw InternalError("solve_in_span: target not in span");
  CycMat X(m, w);
  for (int j = 0; j < m; ++j)
    for (int c = 0; c < w; ++c) X.at(j, c) = aug.at(pivot_row[j], m + c);
  return X;
}

namespace {

CycMat rotation(int n, int t) {
  // [[cos, -sin], [sin, cos]] at angle 2*pi*t/n, entries in Q(zeta_lcm(n,4)).
  CycNum zp = CycNum::zeta(n, t), zm = CycNum::zeta(n, -t);
  CycNum half = CycNum::from_rational(Rat(1, 2));
  CycNum c = (zp + zm) * half;
  CycNum i4 = CycNum::zeta(4, 1);
  CycNum s = (zp - zm) * half * (-i4);  // (zp - zm) / (2i)
  CycMat R(2, 2);
  R.at(0, 0) = c;
  R.at(0, 1) = -s;
  R.at(1, 0) = s;
  R.at(1, 1) = c;
  return R;
}

CycMat one_by_one(int v) {
  CycMat M(1, 1);
  M.at(0, 0) = CycNum::from_int(v);
  return M;
}

CycMat reflection2() {
  CycMat M = CycMat::identity(2);
  M.at(1, 1) = CycNum::from_int(-1);
  return M;
}

CycMat quaternion_left_mult(char unit) {
  // Left multiplication on H with basis (1, i, j, k).
  static const int I[4][4] = {{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}};
  static const int J[4][4] = {{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}};
  CycMat M(4, 4);
  const int(*src)[4] = unit == 'i' ? I : J;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) M.at(r, c) = CycNum::from_int(src[r][c]);
  return M;
}

// Extend generator matrices to the whole group along the Cayley graph and
// verify the result is a homomorphism.
std::vector<CycMat> extend_model(const FiniteGroup& G, const std::vector<int>& gens,
                                 const std::vector<CycMat>& gen_mats, int dim) {
  std::vector<CycMat> rho(G.n);
  std::vector<bool> known(G.n, false);
  rho[0] = CycMat::identity(dim);
  known[0] = true;
  std::vector<int> frontier{0};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int x : frontier)
      for (size_t gi = 0; gi < gens.size(); ++gi) {
        int y = G.mult(x, gens[gi]);
        if (known[y]) continue;
        rho[y] = rho[x] * gen_mats[gi];
        known[y] = true;
        next.push_back(y);
      }
    frontier = std::move(next);
  }
  for (int x = 0; x < G.n; ++x)
    if (!known[x]) throw InternalError("matrix model: generators do not generate");
  const int pair_cap = 16;
  for (int x = 0; x < G.n; ++x)
    for (int y = 0; y < G.n; ++y) {
      if (G.n > pair_cap && (x + y) % 3 != 0) continue;  // sample on larger groups
      CycMat prod = rho[x] * rho[y];
      const CycMat& expect = rho[G.mult(x, y)];
      for (size_t t = 0; t < prod.a.size(); ++t)
        if (prod.a[t] != expect.a[t])
          throw InternalError("matrix model is not a homomorphism");
    }
  return rho;
}

struct Candidate {
  int dim;
  std::vector<CycMat> gen_mats;
};

std::optional<std::vector<Candidate>> catalog_candidates(const GroupSpec& spec) {
  if (spec.kind != GroupSpec::Kind::Catalog) return std::nullopt;
  std::vector<Candidate> out;
  switch (spec.catalog) {
    case CatalogKind::Cyclic: {
      int m = spec.param;
      if (m == 1) {
        out.push_back({1, {}});
        return out;
      }
      out.push_back({1, {one_by_one(1)}});
      if (m % 2 == 0) out.push_back({1, {one_by_one(-1)}});
      for (int t = 1; 2 * t < m; ++t) out.push_back({2, {rotation(m, t)}});
      return out;
    }
    case CatalogKind::Klein4: {
      for (int u = 0; u < 2; ++u)
        for (int v = 0; v < 2; ++v)
          out.push_back({1, {one_by_one(u ? -1 : 1), one_by_one(v ? -1 : 1)}});
      return out;
    }
    case CatalogKind::Dihedral: {
      int m = spec.param;
      if (m == 1) {
        out.push_back({1, {one_by_one(1)}});
        out.push_back({1, {one_by_one(-1)}});
        return out;
      }
      out.push_back({1, {one_by_one(1), one_by_one(1)}});
      out.push_back({1, {one_by_one(1), one_by_one(-1)}});
      if (m % 2 == 0) {
        out.push_back({1, {one_by_one(-1), one_by_one(1)}});
        out.push_back({1, {one_by_one(-1), one_by_one(-1)}});
      }
      for (int t = 1; 2 * t < m; ++t) out.push_back({2, {rotation(m, t), reflection2()}});
      return out;
    }
    case CatalogKind::Dicyclic: {
      if (spec.param != 2) return std::nullopt;
      out.push_back({1, {one_by_one(1), one_by_one(1)}});
      out.push_back({1, {one_by_one(1), one_by_one(-1)}});
      out.push_back({1, {one_by_one(-1), one_by_one(1)}});
      out.push_back({1, {one_by_one(-1), one_by_one(-1)}});
      out.push_back({4, {quaternion_left_mult('i'), quaternion_left_mult('j')}});
      return out;
    }
    case CatalogKind::Symmetric: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<IrrepModel>> catalog_matrix_models(
    const FiniteGroup& G, const ClassInfo& classes, const GroupSpec& spec,
    const std::vector<RealIrrep>& irreps) {
  auto cands = catalog_candidates(spec);
  if (!cands) return std::nullopt;
  if (cands->size() != irreps.size())
    throw InternalError("matrix model count differs from real irrep count");
  std::vector<IrrepModel> out(irreps.size());
  std::vector<bool> claimed(irreps.size(), false);
  for (const Candidate& cand : *cands) {
    std::vector<CycMat> rho = extend_model(G, G.generators, cand.gen_mats, cand.dim);
    // Match to the unique real irrep with the same character.
    int match = -1;
    for (size_t i = 0; i < irreps.size(); ++i) {
      if (claimed[i] || irreps[i].degree != cand.dim) continue;
      bool equal = true;
      for (int c = 0; c < classes.count() && equal; ++c)
        if (rho[classes.classes[c].rep].trace() != irreps[i].values[c]) equal = false;
      if (equal) {
        match = static_cast<int>(i);
        break;
      }
    }
    if (match < 0) throw InternalError("matrix model matches no real irrep");
    claimed[match] = true;
    out[match].irrep_index = match;
    out[match].dim = cand.dim;
    out[match].rho = std::move(rho);
  }
  return out;
}

CycMat model_fixed_space(const FiniteGroup& G, const IrrepModel& model,
                         const SubgroupClass& H) {
  CycMat P(model.dim, model.dim);
  for (int h : H.rep) P = P + model.rho[h];
  P = P.scaled(CycNum::from_rational(Rat(1, H.order())));
  (void)G;
  return column_space(P);
}

int model_fixed_dim(const FiniteGroup& G, const IrrepModel& model, const SubgroupClass& H) {
  return model_fixed_space(G, model, H).cols;
}

std::vector<int> model_weyl_dets(const FiniteGroup& G, const IrrepModel& model,
                                 const SubgroupClass& H, const WeylGroup& weyl,
                                 const std::vector<int>& weyl_elements) {
  CycMat B = model_fixed_space(G, model, H);
  std::vector<int> out;
  for (int w : weyl_elements) {
    if (B.cols == 0) {
      out.push_back(1);  // determinant on the zero space
      continue;
    }
    int rep = weyl.section[w];
    CycMat Y = model.rho[rep] * B;
    CycMat A = solve_in_span(B, Y);
    CycNum d = det(A);
    auto q = d.as_rational();
    if (!q || (*q != 1 && *q != -1))
      throw InternalError("induced Weyl determinant is not a sign");
    out.push_back(*q == 1 ? 1 : -1);
  }
  return out;
}

}  // namespace stemrank
