#include "stemrank/character.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <numeric>

namespace stemrank {

namespace {

// ---------------------------------------------------------------- F_p bits

struct Fp {
  uint64_t p;
  uint64_t add(uint64_t a, uint64_t b) const { return (a + b) % p; }
  uint64_t sub(uint64_t a, uint64_t b) const { return (a + p - b % p) % p; }
  uint64_t mul(uint64_t a, uint64_t b) const { return (a % p) * (b % p) % p; }
  uint64_t pow(uint64_t a, uint64_t e) const {
    uint64_t r = 1;
    a %= p;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  uint64_t inv(uint64_t a) const {
    if (a % p == 0) throw InternalError("F_p inverse of zero");
    return pow(a, p - 2);
  }
};

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Smallest prime p with p = 1 (mod e) and p > 2*sqrt(|G|).
long dixon_prime(int order, int exponent) {
  double bound = 2.0 * std::sqrt(static_cast<double>(order));
  for (long p = exponent + 1;; p += exponent) {
    if (p > (1L << 30))
      throw CapError("no suitable Dixon prime below bound for exponent " +
                     std::to_string(exponent));
    if (static_cast<double>(p) > bound && is_prime(p)) return p;
  }
}

uint64_t smallest_primitive_root(const Fp& F) {
  uint64_t n = F.p - 1;
  std::vector<uint64_t> primes;
  uint64_t m = n;
  for (uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      primes.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) primes.push_back(m);
  for (uint64_t w = 2; w < F.p; ++w) {
    bool ok = true;
    for (uint64_t q : primes)
      if (F.pow(w, n / q) == 1) {
        ok = false;
        break;
      }
    if (ok) return w;
  }
  throw InternalError("no primitive root found");
}

using FpVec = std::vector<uint64_t>;
using FpMat = std::vector<FpVec>;  // row-major

FpVec matvec(const Fp& F, const FpMat& M, const FpVec& v) {
  FpVec out(M.size(), 0);
  for (size_t i = 0; i < M.size(); ++i) {
    uint64_t acc = 0;
    for (size_t j = 0; j < v.size(); ++j) acc = F.add(acc, F.mul(M[i][j], v[j]));
    out[i] = acc;
  }
  return out;
}

// Kernel basis of M (rows x cols) over F_p.
std::vector<FpVec> fp_kernel(const Fp& F, FpMat M, int cols) {
  int rank = 0;
  std::vector<int> pivot_of_col(cols, -1);
  for (int col = 0; col < cols; ++col) {
    int piv = -1;
    for (int i = rank; i < static_cast<int>(M.size()); ++i)
      if (M[i][col] % F.p != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(M[piv], M[rank]);
    uint64_t s = F.inv(M[rank][col]);
    for (int j = 0; j < cols; ++j) M[rank][j] = F.mul(M[rank][j], s);
    for (int i = 0; i < static_cast<int>(M.size()); ++i) {
      if (i == rank || M[i][col] == 0) continue;
      uint64_t f = M[i][col];
      for (int j = 0; j < cols; ++j) M[i][j] = F.sub(M[i][j], F.mul(f, M[rank][j]));
    }
    pivot_of_col[col] = rank;
    ++rank;
  }
  std::vector<FpVec> basis;
  for (int col = 0; col < cols; ++col) {
    if (pivot_of_col[col] >= 0) continue;
    FpVec v(cols, 0);
    v[col] = 1;
    for (int c = 0; c < cols; ++c) {
      int piv = pivot_of_col[c];
      if (piv >= 0) v[c] = F.sub(0, M[piv][col]);  // x_c = -M[piv][col]
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// Characteristic polynomial via Hessenberg reduction, coefficients low-first.
FpVec char_poly(const Fp& F, FpMat H) {
  const int d = static_cast<int>(H.size());
  for (int j = 0; j + 2 < d; ++j) {
    int piv = -1;
    for (int i = j + 1; i < d; ++i)
      if (H[i][j] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != j + 1) {
      std::swap(H[piv], H[j + 1]);
      for (int i = 0; i < d; ++i) std::swap(H[i][piv], H[i][j + 1]);
    }
    uint64_t s = F.inv(H[j + 1][j]);
    for (int i = j + 2; i < d; ++i) {
      if (H[i][j] == 0) continue;
      uint64_t f = F.mul(H[i][j], s);
      for (int c = 0; c < d; ++c) H[i][c] = F.sub(H[i][c], F.mul(f, H[j + 1][c]));
      for (int r = 0; r < d; ++r) H[r][j + 1] = F.add(H[r][j + 1], F.mul(f, H[r][i]));
    }
  }
  // p_m(x) = (x - H[m-1][m-1]) p_{m-1}(x)
  //          - sum_i H[m-1-i][m-1] (prod subdiagonals) p_{m-1-i}(x)
  std::vector<FpVec> polys(d + 1);
  polys[0] = {1};
  for (int m = 1; m <= d; ++m) {
    FpVec pm(m + 1, 0);
    const FpVec& prev = polys[m - 1];
    for (int t = 0; t < m; ++t) {
      pm[t + 1] = F.add(pm[t + 1], prev[t]);
      pm[t] = F.sub(pm[t], F.mul(H[m - 1][m - 1], prev[t]));
    }
    uint64_t run = 1;
    for (int i = 1; i < m; ++i) {
      run = F.mul(run, H[m - i][m - i - 1]);
      if (run == 0) break;
      uint64_t coef = F.mul(H[m - 1 - i][m - 1], run);
      if (coef == 0) continue;
      const FpVec& lower = polys[m - 1 - i];
      for (size_t t = 0; t < lower.size(); ++t) pm[t] = F.sub(pm[t], F.mul(coef, lower[t]));
    }
    polys[m] = std::move(pm);
  }
  return polys[d];
}

uint64_t poly_eval(const Fp& F, const FpVec& poly, uint64_t x) {
  uint64_t acc = 0;
  for (int i = static_cast<int>(poly.size()) - 1; i >= 0; --i)
    acc = F.add(F.mul(acc, x), poly[i]);
  return acc;
}

// Split a subspace (rows = basis vectors in F_p^k) into the eigenspaces of M
// restricted to it.  Ordered by eigenvalue, so deterministic.
std::vector<FpMat> split_subspace(const Fp& F, const FpMat& basis, const FpMat& M) {
  const int d = static_cast<int>(basis.size());
  const int k = static_cast<int>(basis[0].size());
  // Solve for the restricted action A: M b_j = sum_i A[j][i] b_i.
  FpMat aug(k, FpVec(2 * d, 0));
  for (int j = 0; j < d; ++j) {
    for (int r = 0; r < k; ++r) aug[r][j] = basis[j][r];
    FpVec mb = matvec(F, M, basis[j]);
    for (int r = 0; r < k; ++r) aug[r][d + j] = mb[r];
  }
  // Row-reduce on the first d columns.
  int rank = 0;
  std::vector<int> pivot_row_of(d, -1);
  for (int col = 0; col < d; ++col) {
    int piv = -1;
    for (int i = rank; i < k; ++i)
      if (aug[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw InternalError("Dixon: dependent subspace basis");
    std::swap(aug[piv], aug[rank]);
    uint64_t s = F.inv(aug[rank][col]);
    for (int j = 0; j < 2 * d; ++j) aug[rank][j] = F.mul(aug[rank][j], s);
    for (int i = 0; i < k; ++i) {
      if (i == rank || aug[i][col] == 0) continue;
      uint64_t f = aug[i][col];
      for (int j = 0; j < 2 * d; ++j) aug[i][j] = F.sub(aug[i][j], F.mul(f, aug[rank][j]));
    }
    pivot_row_of[col] = rank;
    ++rank;
  }
  for (int i = rank; i < k; ++i)
    for (int j = d; j < 2 * d; ++j)
      if (aug[i][j] != 0) throw InternalError("Dixon: subspace not stable under class sum");
  FpMat A(d, FpVec(d, 0));
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) A[j][i] = aug[pivot_row_of[i]][d + j];

  FpVec poly = char_poly(F, A);
  std::vector<FpMat> pieces;
  for (uint64_t lam = 0; lam < F.p; ++lam) {
    if (poly_eval(F, poly, lam) != 0) continue;
    FpMat shifted = A;
    for (int i = 0; i < d; ++i) shifted[i][i] = F.sub(shifted[i][i], lam);
    // Transpose: kernel vectors u with A^T-style orientation.  We want
    // coefficient vectors c with sum_j c_j (A row action) ... work with the
    // matrix acting on coordinate columns: (A^T - lam)^T = A - lam acting on
    // coefficient vectors c via c' = c A.  Kernel of (A - lam I) as acting on
    // the left: solve c (A - lam I) = 0, i.e. kernel of transpose.
    FpMat tr(d, FpVec(d, 0));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) tr[i][j] = shifted[j][i];
    std::vector<FpVec> ker = fp_kernel(F, tr, d);
    if (ker.empty()) continue;
    FpMat piece;
    for (const FpVec& c : ker) {
      FpVec v(k, 0);
      for (int j = 0; j < d; ++j)
        for (int r = 0; r < k; ++r) v[r] = F.add(v[r], F.mul(c[j], basis[j][r]));
      piece.push_back(std::move(v));
    }
    pieces.push_back(std::move(piece));
  }
  int total = 0;
  for (const auto& piece : pieces) total += static_cast<int>(piece.size());
  if (total != d) throw InternalError("Dixon: eigenspace split lost dimensions");
  return pieces;
}

int class_power(const FiniteGroup& G, const ClassInfo& classes, int cls, long k) {
  return classes.class_of[G.power(classes.classes[cls].rep, k)];
}

// ------------------------------------------------------------- catalog path

struct CatalogEvaluator {
  int count = 0;
  std::vector<std::function<CycNum(int)>> chars;  // per character: element -> value
};

std::optional<CatalogEvaluator> build_evaluator(const GroupSpec& spec);

std::optional<CatalogEvaluator> cyclic_evaluator(int m) {
  CatalogEvaluator ev;
  ev.count = m;
  for (int t = 0; t < m; ++t)
    ev.chars.push_back([m, t](int s) { return CycNum::zeta(m, static_cast<long>(t) * s); });
  return ev;
}

std::optional<CatalogEvaluator> klein4_evaluator() {
  CatalogEvaluator ev;
  ev.count = 4;
  for (int u = 0; u < 2; ++u)
    for (int v = 0; v < 2; ++v)
      ev.chars.push_back([u, v](int e) {
        int x = e & 1, y = (e >> 1) & 1;
        return CycNum::from_int((u * x + v * y) % 2 == 0 ? 1 : -1);
      });
  return ev;
}

std::optional<CatalogEvaluator> dihedral_evaluator(int m) {
  CatalogEvaluator ev;
  auto split = [m](int e) { return std::pair<int, int>{e % m, e / m}; };
  // linear characters
  ev.chars.push_back([](int) { return CycNum::from_int(1); });
  ev.chars.push_back([split](int e) { return CycNum::from_int(split(e).second ? -1 : 1); });
  if (m % 2 == 0) {
    ev.chars.push_back([split](int e) {
      auto [s, t] = split(e);
      return CycNum::from_int(s % 2 == 0 ? 1 : -1);
    });
    ev.chars.push_back([split](int e) {
      auto [s, t] = split(e);
      return CycNum::from_int((s + t) % 2 == 0 ? 1 : -1);
    });
  }
  for (int u = 1; 2 * u < m; ++u)
    ev.chars.push_back([split, m, u](int e) {
      auto [s, t] = split(e);
      if (t) return CycNum::from_int(0);
      return CycNum::zeta(m, static_cast<long>(u) * s) +
             CycNum::zeta(m, -static_cast<long>(u) * s);
    });
  ev.count = static_cast<int>(ev.chars.size());
  return ev;
}

std::optional<CatalogEvaluator> dicyclic_evaluator(int m) {
  CatalogEvaluator ev;
  const int twom = 2 * m;
  auto split = [twom](int e) { return std::pair<int, int>{e % twom, e / twom}; };
  if (m % 2 == 0) {
    for (int ca = 0; ca < 2; ++ca)
      for (int cb = 0; cb < 2; ++cb)
        ev.chars.push_back([split, ca, cb](int e) {
          auto [s, t] = split(e);
          return CycNum::from_int((ca * s + cb * t) % 2 == 0 ? 1 : -1);
        });
  } else {
    for (int u = 0; u < 4; ++u)
      ev.chars.push_back([split, u](int e) {
        auto [s, t] = split(e);
        // chi(a) = (-1)^u, chi(b) = i^u
        long k = (static_cast<long>(u) * 2 * s + static_cast<long>(u) * t) % 4;
        return CycNum::zeta(4, k);
      });
  }
  for (int u = 1; u < m; ++u)
    ev.chars.push_back([split, twom, u](int e) {
      auto [s, t] = split(e);
      if (t) return CycNum::from_int(0);
      return CycNum::zeta(twom, static_cast<long>(u) * s) +
             CycNum::zeta(twom, -static_cast<long>(u) * s);
    });
  ev.count = static_cast<int>(ev.chars.size());
  return ev;
}

std::vector<int> perm_cycle_type(const std::vector<int>& p) {
  std::vector<bool> seen(p.size(), false);
  std::vector<int> type;
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      ++len;
      j = static_cast<size_t>(p[j]);
    }
    type.push_back(len);
  }
  std::sort(type.begin(), type.end());
  return type;
}

std::optional<CatalogEvaluator> symmetric_evaluator(int m) {
  if (m > 4) return std::nullopt;
  std::vector<std::vector<int>> perms;
  std::vector<int> p(m);
  for (int i = 0; i < m; ++i) p[i] = i;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  auto type_of = std::make_shared<std::vector<std::vector<int>>>();
  for (const auto& q : perms) type_of->push_back(perm_cycle_type(q));

  // rows: characters, keyed by cycle type
  std::vector<std::map<std::vector<int>, int>> rows;
  if (m == 1) {
    rows.push_back({{{1}, 1}});
  } else if (m == 2) {
    rows.push_back({{{1, 1}, 1}, {{2}, 1}});
    rows.push_back({{{1, 1}, 1}, {{2}, -1}});
  } else if (m == 3) {
    rows.push_back({{{1, 1, 1}, 1}, {{1, 2}, 1}, {{3}, 1}});
    rows.push_back({{{1, 1, 1}, 1}, {{1, 2}, -1}, {{3}, 1}});
    rows.push_back({{{1, 1, 1}, 2}, {{1, 2}, 0}, {{3}, -1}});
  } else {
    rows.push_back({{{1, 1, 1, 1}, 1}, {{1, 1, 2}, 1}, {{2, 2}, 1}, {{1, 3}, 1}, {{4}, 1}});
    rows.push_back({{{1, 1, 1, 1}, 1}, {{1, 1, 2}, -1}, {{2, 2}, 1}, {{1, 3}, 1}, {{4}, -1}});
    rows.push_back({{{1, 1, 1, 1}, 2}, {{1, 1, 2}, 0}, {{2, 2}, 2}, {{1, 3}, -1}, {{4}, 0}});
    rows.push_back({{{1, 1, 1, 1}, 3}, {{1, 1, 2}, 1}, {{2, 2}, -1}, {{1, 3}, 0}, {{4}, -1}});
    rows.push_back({{{1, 1, 1, 1}, 3}, {{1, 1, 2}, -1}, {{2, 2}, -1}, {{1, 3}, 0}, {{4}, 1}});
  }
  CatalogEvaluator ev;
  for (const auto& row : rows)
    ev.chars.push_back(
        [type_of, row](int e) { return CycNum::from_int(row.at((*type_of)[e])); });
  ev.count = static_cast<int>(ev.chars.size());
  return ev;
}

std::optional<CatalogEvaluator> product_evaluator(const GroupSpec& spec) {
  std::vector<CatalogEvaluator> parts;
  std::vector<int> orders;
  for (const auto& f : spec.factors) {
    auto sub = build_evaluator(f);
    if (!sub) return std::nullopt;
    parts.push_back(std::move(*sub));
    orders.push_back(static_cast<int>(build_group(f).n));
  }
  CatalogEvaluator ev;
  auto parts_ptr = std::make_shared<std::vector<CatalogEvaluator>>(std::move(parts));
  // Character index: mixed radix over factor counts, leftmost most significant.
  std::vector<int> idx(parts_ptr->size(), 0);
  for (;;) {
    auto indices = idx;
    auto orders_copy = orders;
    ev.chars.push_back([parts_ptr, indices, orders_copy](int e) {
      CycNum out = CycNum::from_int(1);
      for (int i = static_cast<int>(indices.size()) - 1; i >= 0; --i) {
        int d = e % orders_copy[i];
        e /= orders_copy[i];
        out = out * (*parts_ptr)[i].chars[indices[i]](d);
      }
      return out;
    });
    int pos = static_cast<int>(idx.size()) - 1;
    while (pos >= 0) {
      if (++idx[pos] < (*parts_ptr)[pos].count) break;
      idx[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  ev.count = static_cast<int>(ev.chars.size());
  return ev;
}

std::optional<CatalogEvaluator> build_evaluator(const GroupSpec& spec) {
  switch (spec.kind) {
    case GroupSpec::Kind::Catalog:
      switch (spec.catalog) {
        case CatalogKind::Cyclic: return cyclic_evaluator(spec.param);
        case CatalogKind::Klein4: return klein4_evaluator();
        case CatalogKind::Dihedral: return dihedral_evaluator(spec.param);
        case CatalogKind::Dicyclic: return dicyclic_evaluator(spec.param);
        case CatalogKind::Symmetric: return symmetric_evaluator(spec.param);
      }
      return std::nullopt;
    case GroupSpec::Kind::Product: return product_evaluator(spec);
    case GroupSpec::Kind::Permutation: return std::nullopt;
  }
  return std::nullopt;
}

void sort_table(const ClassInfo& classes, CharacterTable& T) {
  // Compare everything at one common conductor; reduced coordinates are only
  // comparable within a fixed conductor.
  int m = 1;
  for (const auto& row : T.values)
    for (const auto& v : row) m = CycNum::common_conductor(m, v.conductor());
  std::vector<std::vector<std::vector<Rat>>> key(T.count());
  for (int i = 0; i < T.count(); ++i)
    for (int c = 0; c < classes.count(); ++c)
      key[i].push_back(T.values[i][c].promoted(m).coeffs());
  std::vector<int> order(T.count());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (T.degrees[a] != T.degrees[b]) return T.degrees[a] < T.degrees[b];
    return key[a] < key[b];
  });
  CharacterTable out = T;
  for (int i = 0; i < T.count(); ++i) {
    out.degrees[i] = T.degrees[order[i]];
    out.values[i] = T.values[order[i]];
  }
  T = std::move(out);
}

}  // namespace

CycNum char_inner(const FiniteGroup& G, const ClassInfo& classes,
                  const std::vector<CycNum>& a, const std::vector<CycNum>& b) {
  CycNum acc;
  for (int c = 0; c < classes.count(); ++c)
    acc += CycNum::from_int(classes.classes[c].size()) * a[c] * b[c].conj();
  return acc * CycNum::from_rational(Rat(1, G.n));
}

void verify_character_table(const FiniteGroup& G, const ClassInfo& classes,
                            const CharacterTable& T) {
  const int k = classes.count();
  if (T.count() != k) throw InternalError("character count differs from class count");
  Int sum_sq = 0;
  for (int i = 0; i < T.count(); ++i) {
    auto deg = T.values[i][0].as_rational();
    if (!deg || !is_integer(*deg) || to_int(*deg) != T.degrees[i] || T.degrees[i] <= 0)
      throw InternalError("character degree mismatch at identity");
    sum_sq += Int(T.degrees[i]) * Int(T.degrees[i]);
  }
  if (sum_sq != G.n) throw InternalError("sum of squared degrees is not |G|");
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      CycNum ip = char_inner(G, classes, T.values[i], T.values[j]);
      if (ip != CycNum::from_int(i == j ? 1 : 0))
        throw InternalError("row orthogonality fails for characters " + std::to_string(i) +
                            "," + std::to_string(j));
    }
  // Column orthogonality: sum_i chi_i(c) conj(chi_i(c')) = delta |G|/|C|.
  for (int c = 0; c < k; ++c)
    for (int c2 = c; c2 < k; ++c2) {
      CycNum acc;
      for (int i = 0; i < k; ++i) acc += T.values[i][c] * T.values[i][c2].conj();
      CycNum expect = c == c2 ? CycNum::from_rational(Rat(G.n, classes.classes[c].size()))
                              : CycNum::from_int(0);
      if (acc != expect) throw InternalError("column orthogonality fails");
    }
}

std::optional<CharacterTable> catalog_character_table(const FiniteGroup& G,
                                                      const ClassInfo& classes,
                                                      const GroupSpec& spec) {
  auto ev = build_evaluator(spec);
  if (!ev) return std::nullopt;
  if (ev->count != classes.count())
    throw InternalError("catalog table has wrong number of characters");
  CharacterTable T;
  T.source = CharacterTable::Source::Catalog;
  for (int i = 0; i < ev->count; ++i) {
    std::vector<CycNum> row;
    for (int c = 0; c < classes.count(); ++c) row.push_back(ev->chars[i](classes.classes[c].rep));
    auto deg = row[0].as_rational();
    if (!deg || !is_integer(*deg)) throw InternalError("catalog degree not integral");
    T.degrees.push_back(static_cast<int>(to_long(to_int(*deg))));
    T.values.push_back(std::move(row));
  }
  sort_table(classes, T);
  verify_character_table(G, classes, T);
  return T;
}

CharacterTable dixon_character_table(const FiniteGroup& G, const ClassInfo& classes) {
  const int k = classes.count();
  const long p = dixon_prime(G.n, G.exponent);
  Fp F{static_cast<uint64_t>(p)};

  // Class-sum matrices: M_i[j][l] = #{(x,y) in C_i x C_j : xy = rep_l}.
  std::vector<FpMat> M(k, FpMat(k, FpVec(k, 0)));
  for (int i = 0; i < k; ++i)
    for (int x : classes.classes[i].members) {
      int xi = G.inv(x);
      for (int l = 0; l < k; ++l) {
        int y = G.mult(xi, classes.classes[l].rep);
        int j = classes.class_of[y];
        M[i][j][l] = F.add(M[i][j][l], 1);
      }
    }

  // Simultaneous eigenlines: mixing matrices first, then individual sums.
  std::vector<FpMat> subspaces;
  {
    FpMat full;
    for (int i = 0; i < k; ++i) {
      FpVec e(k, 0);
      e[i] = 1;
      full.push_back(std::move(e));
    }
    subspaces.push_back(std::move(full));
  }
  auto all_lines = [&]() {
    for (const auto& S : subspaces)
      if (S.size() > 1) return false;
    return true;
  };
  for (int attempt = 0; attempt < 4 + k - 1 && !all_lines(); ++attempt) {
    FpMat T;
    if (attempt < 4) {
      // Deterministic mixing vector (1, t, t^2, ...), t = attempt + 2.
      uint64_t t = static_cast<uint64_t>(attempt) + 2;
      T.assign(k, FpVec(k, 0));
      uint64_t coef = 1;
      for (int i = 1; i < k; ++i) {
        coef = F.mul(coef, t);
        for (int r = 0; r < k; ++r)
          for (int c = 0; c < k; ++c) T[r][c] = F.add(T[r][c], F.mul(coef, M[i][r][c]));
      }
    } else {
      T = M[attempt - 4 + 1];
    }
    std::vector<FpMat> next;
    for (const auto& S : subspaces) {
      if (S.size() == 1) {
        next.push_back(S);
        continue;
      }
      for (auto& piece : split_subspace(F, S, T)) next.push_back(std::move(piece));
    }
    subspaces = std::move(next);
  }
  if (!all_lines()) throw InternalError("Dixon: could not separate eigenlines");

  // Each line gives omega_i = |C_i| chi(g_i) / chi(1) after normalizing the
  // identity-class coordinate to 1.
  std::vector<FpVec> omegas;
  for (const auto& S : subspaces) {
    const FpVec& v = S[0];
    if (v[0] == 0) throw InternalError("Dixon: eigenvector vanishes at identity class");
    uint64_t s = F.inv(v[0]);
    FpVec w(k);
    for (int i = 0; i < k; ++i) w[i] = F.mul(v[i], s);
    // Verify it is a common eigenvector of every class-sum matrix.
    for (int i = 1; i < k; ++i) {
      FpVec mv = matvec(F, M[i], w);
      uint64_t lam = mv[0];  // since w[0] = 1
      for (int j = 0; j < k; ++j)
        if (mv[j] != F.mul(lam, w[j]))
          throw InternalError("Dixon: split produced a non-eigenvector");
    }
    omegas.push_back(std::move(w));
  }

  // Degrees from the second orthogonality at the identity column.
  std::vector<int> inv_class(k);
  for (int i = 0; i < k; ++i) inv_class[i] = classes.class_of[G.inv(classes.classes[i].rep)];
  uint64_t w = smallest_primitive_root(F);
  uint64_t z = F.pow(w, (F.p - 1) / static_cast<uint64_t>(G.exponent));

  CharacterTable T;
  T.source = CharacterTable::Source::Dixon;
  for (const FpVec& om : omegas) {
    uint64_t s = 0;
    for (int i = 0; i < k; ++i)
      s = F.add(s, F.mul(F.mul(om[i], om[inv_class[i]]),
                         F.inv(static_cast<uint64_t>(classes.classes[i].size()))));
    uint64_t d2 = F.mul(static_cast<uint64_t>(G.n % p), F.inv(s));
    int degree = -1;
    for (long d = 1; 2 * d < p; ++d)
      if (F.mul(static_cast<uint64_t>(d), static_cast<uint64_t>(d)) == d2) {
        degree = static_cast<int>(d);
        break;
      }
    if (degree < 0) throw InternalError("Dixon: no degree matches d^2 mod p");

    // chi(g_j) mod p, then zeta-interpolation per class.
    FpVec x(k);
    for (int j = 0; j < k; ++j)
      x[j] = F.mul(F.mul(static_cast<uint64_t>(degree), om[j]),
                   F.inv(static_cast<uint64_t>(classes.classes[j].size())));
    std::vector<CycNum> row(k);
    for (int j = 0; j < k; ++j) {
      int m = G.element_order[classes.classes[j].rep];
      uint64_t zm = F.pow(z, static_cast<uint64_t>(G.exponent / m));
      uint64_t minv = F.inv(static_cast<uint64_t>(m));
      CycNum val;
      long total = 0;
      for (int t = 0; t < m; ++t) {
        uint64_t acc = 0;
        for (int s2 = 0; s2 < m; ++s2) {
          uint64_t zpow = F.pow(zm, static_cast<uint64_t>((static_cast<long>(m) - t) * s2 % m));
          acc = F.add(acc, F.mul(x[class_power(G, classes, j, s2)], zpow));
        }
        uint64_t mu = F.mul(acc, minv);
        if (mu > static_cast<uint64_t>(degree))
          throw InternalError("Dixon: eigenvalue multiplicity exceeds degree");
        total += static_cast<long>(mu);
        if (mu != 0)
          val += CycNum::from_int(static_cast<long>(mu)) * CycNum::zeta(m, t);
      }
      if (total != degree) throw InternalError("Dixon: multiplicities do not sum to degree");
      row[j] = std::move(val);
    }
    T.degrees.push_back(degree);
    T.values.push_back(std::move(row));
  }
  sort_table(classes, T);
  verify_character_table(G, classes, T);
  return T;
}

CharacterTable character_table(const FiniteGroup& G, const ClassInfo& classes,
                               const GroupSpec* spec) {
  if (spec) {
    auto cat = catalog_character_table(G, classes, *spec);
    if (cat) return *cat;
  }
  return dixon_character_table(G, classes);
}

int fs_indicator(const FiniteGroup& G, const ClassInfo& classes, const CharacterTable& T,
                 int chi) {
  CycNum acc;
  for (int c = 0; c < classes.count(); ++c)
    acc += CycNum::from_int(classes.classes[c].size()) *
           T.values[chi][class_power(G, classes, c, 2)];
  acc = acc * CycNum::from_rational(Rat(1, G.n));
  auto q = acc.as_rational();
  if (!q || !is_integer(*q)) throw InternalError("Frobenius-Schur indicator not integral");
  Int v = to_int(*q);
  if (v < -1 || v > 1) throw InternalError("Frobenius-Schur indicator out of range");
  return static_cast<int>(v.get_si());
}

int sign_of_real(const CycNum& x) {
  if (x.is_zero()) return 0;
  if (auto q = x.as_rational()) return sgn(*q);
  if (!x.is_real()) throw InternalError("sign of a non-real cyclotomic value");
  const int n = x.conductor();
  long double acc = 0.0L, scale = 0.0L;
  const long double tau = 6.283185307179586476925286766559L;
  for (int i = 0; i < n; ++i) {
    const Rat& c = x.coeffs()[i];
    if (c == 0) continue;
    long double cd = static_cast<long double>(c.get_d());
    acc += cd * cosl(tau * i / n);
    scale += fabsl(cd);
  }
  if (fabsl(acc) <= scale * 1e-14L * n)
    throw InternalError("cannot determine sign of real cyclotomic value");
  return acc > 0 ? 1 : -1;
}

int compare_real(const CycNum& a, const CycNum& b) { return sign_of_real(a - b); }

std::vector<RealIrrep> real_irreps(const FiniteGroup& G, const ClassInfo& classes,
                                   const CharacterTable& T, const GroupSpec* spec) {
  const int k = classes.count();
  std::vector<RealIrrep> list;
  std::vector<bool> used(T.count(), false);
  for (int i = 0; i < T.count(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    int ind = fs_indicator(G, classes, T, i);
    RealIrrep S;
    S.fs = ind;
    S.constituents = {i};
    if (ind == 1) {
      S.values = T.values[i];
      S.degree = T.degrees[i];
    } else if (ind == -1) {
      S.values.resize(k);
      for (int c = 0; c < k; ++c) S.values[c] = T.values[i][c] + T.values[i][c];
      S.degree = 2 * T.degrees[i];
    } else {
      int partner = -1;
      for (int j = 0; j < T.count(); ++j) {
        if (used[j]) continue;
        bool conj_match = true;
        for (int c = 0; c < k; ++c)
          if (T.values[j][c] != T.values[i][c].conj()) {
            conj_match = false;
            break;
          }
        if (conj_match) {
          partner = j;
          break;
        }
      }
      if (partner < 0) throw InternalError("complex character has no conjugate partner");
      used[partner] = true;
      S.constituents.push_back(partner);
      S.values.resize(k);
      for (int c = 0; c < k; ++c) S.values[c] = T.values[i][c] + T.values[partner][c];
      S.degree = 2 * T.degrees[i];
    }
    for (int c = 0; c < k; ++c)
      if (S.values[c] != S.values[c].conj())
        throw InternalError("real irrep character not conjugation-fixed");
    list.push_back(std::move(S));
  }

  // Trivial first, then degree, then descending value on classes ordered by
  // representative element index.
  std::vector<int> by_rep(k);
  std::iota(by_rep.begin(), by_rep.end(), 0);
  std::sort(by_rep.begin(), by_rep.end(), [&](int a, int b) {
    return classes.classes[a].rep < classes.classes[b].rep;
  });
  auto is_trivial = [&](const RealIrrep& S) {
    if (S.degree != 1) return false;
    for (int c = 0; c < k; ++c)
      if (S.values[c] != CycNum::from_int(1)) return false;
    return true;
  };
  std::sort(list.begin(), list.end(), [&](const RealIrrep& a, const RealIrrep& b) {
    bool ta = is_trivial(a), tb = is_trivial(b);
    if (ta != tb) return ta;
    if (a.degree != b.degree) return a.degree < b.degree;
    for (int c : by_rep) {
      if (a.values[c] == b.values[c]) continue;
      return compare_real(a.values[c], b.values[c]) > 0;
    }
    return false;
  });
  if (list.empty() || !is_trivial(list[0]))
    throw InternalError("trivial representation missing from real irrep list");

  // Paper names for the catalog groups, positional names otherwise.
  const int r = static_cast<int>(list.size());
  std::vector<std::string> names;
  if (spec && spec->kind == GroupSpec::Kind::Catalog) {
    switch (spec->catalog) {
      case CatalogKind::Cyclic: {
        names.push_back("1");
        if (spec->param % 2 == 0) names.push_back("sigma");
        for (int t = 1; static_cast<int>(names.size()) < r; ++t)
          names.push_back("phi_" + std::to_string(t));
        break;
      }
      case CatalogKind::Klein4: names = {"1", "sigma_i", "sigma_j", "sigma_k"}; break;
      case CatalogKind::Dihedral:
        if (spec->param % 2 == 1) {
          names.push_back("1");
          names.push_back("sigma");
          for (int t = 1; static_cast<int>(names.size()) < r; ++t)
            names.push_back("phi_" + std::to_string(t));
        }
        break;
      case CatalogKind::Dicyclic:
        if (spec->param == 2) names = {"1", "sigma_i", "sigma_j", "sigma_k", "h"};
        break;
      case CatalogKind::Symmetric:
        if (spec->param == 3) names = {"1", "sigma", "V"};
        break;
    }
  }
  if (static_cast<int>(names.size()) != r) {
    names.clear();
    names.push_back("1");
    for (int i = 1; i < r; ++i) names.push_back("S" + std::to_string(i + 1));
  }
  for (int i = 0; i < r; ++i) {
    list[i].index = i;
    list[i].name = names[i];
  }
  return list;
}

}  // namespace stemrank
