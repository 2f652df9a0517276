#include "stemrank/fixed_orient.hpp"

#include <algorithm>
#include <set>

namespace stemrank {

VirtualRep VirtualRep::operator+(const VirtualRep& o) const {
  if (a.size() != o.a.size()) throw SpecError("virtual representation rank mismatch");
  VirtualRep out;
  out.a.resize(a.size());
  for (size_t i = 0; i < a.size(); ++i) out.a[i] = a[i] + o.a[i];
  return out;
}

VirtualRep VirtualRep::operator-() const {
  VirtualRep out;
  out.a.resize(a.size());
  for (size_t i = 0; i < a.size(); ++i) out.a[i] = -a[i];
  return out;
}

VirtualRep VirtualRep::scaled(long k) const {
  VirtualRep out;
  out.a.resize(a.size());
  for (size_t i = 0; i < a.size(); ++i) out.a[i] = a[i] * k;
  return out;
}

Int VirtualRep::virtual_dimension(const std::vector<RealIrrep>& irreps) const {
  Int dim = 0;
  for (size_t i = 0; i < a.size(); ++i) dim += a[i] * irreps[i].degree;
  return dim;
}

namespace {

long rational_integer(const CycNum& v, const char* what) {
  auto q = v.as_rational();
  if (!q || !is_integer(*q)) throw InternalError(std::string(what) + " is not an integer");
  return to_long(to_int(*q));
}

}  // namespace

long fixed_dim(const FiniteGroup& G, const ClassInfo& classes, const RealIrrep& S,
               const SubgroupClass& H) {
  CycNum acc;
  for (int h : H.rep) acc += S.values[classes.class_of[h]];
  acc = acc * CycNum::from_rational(Rat(1, H.order()));
  long dim = rational_integer(acc, "fixed-point dimension");
  if (dim < 0 || dim > S.degree) throw InternalError("fixed-point dimension out of range");
  (void)G;
  return dim;
}

DimensionVector dimension_vector(const FiniteGroup& G, const ClassInfo& classes,
                                 const std::vector<RealIrrep>& irreps,
                                 const SubgroupClass& H) {
  DimensionVector dv;
  dv.class_id = H.id;
  for (const RealIrrep& S : irreps) dv.d.push_back(Int(fixed_dim(G, classes, S, H)));
  if (dv.d.empty() || dv.d[0] != 1)
    throw InternalError("trivial representation must have fixed dimension 1");
  return dv;
}

std::vector<CycNum> weyl_fixed_character(const FiniteGroup& G, const ClassInfo& classes,
                                         const RealIrrep& S, const SubgroupClass& H,
                                         const WeylGroup& weyl) {
  const int w = weyl.W.n;
  std::vector<CycNum> psi(w);
  for (int x = 0; x < w; ++x) {
    CycNum acc;
    int rep = weyl.section[x];
    for (int h : H.rep) acc += S.values[classes.class_of[G.mult(rep, h)]];
    psi[x] = acc * CycNum::from_rational(Rat(1, H.order()));
    // Spot-check independence of the coset representative.
    int checks = 0;
    for (int h0 : H.rep) {
      if (++checks > 3) break;
      int alt = G.mult(rep, h0);
      CycNum acc2;
      for (int h : H.rep) acc2 += S.values[classes.class_of[G.mult(alt, h)]];
      acc2 = acc2 * CycNum::from_rational(Rat(1, H.order()));
      if (acc2 != psi[x])
        throw InternalError("Weyl fixed character depends on the coset representative");
    }
  }
  if (psi[0] != CycNum::from_int(fixed_dim(G, classes, S, H)))
    throw InternalError("Weyl fixed character has wrong value at the identity");
  return psi;
}

std::vector<int> det_character_eig(const FiniteGroup& W, const std::vector<CycNum>& psi) {
  std::vector<int> out(W.n, 1);
  for (int x = 0; x < W.n; ++x) {
    int m = W.element_order[x];
    if (m % 2 == 1) continue;  // odd order: eigenvalues pair off, det +1
    CycNum acc;
    int y = 0;
    for (int k = 0; k < m; ++k) {
      CycNum term = psi[y];
      if (k % 2 == 1) term = -term;
      acc += term;
      y = W.mult(y, x);
    }
    acc = acc * CycNum::from_rational(Rat(1, m));
    long mu = rational_integer(acc, "multiplicity of eigenvalue -1");
    if (mu < 0) throw InternalError("negative eigenvalue multiplicity; not a real character");
    out[x] = mu % 2 == 0 ? 1 : -1;
  }
  return out;
}

std::vector<int> det_character_ext(const FiniteGroup& W, const std::vector<CycNum>& psi) {
  long deg = rational_integer(psi[0], "character degree");
  if (deg < 0) throw InternalError("negative character degree");
  std::vector<int> out(W.n, 1);
  for (int x = 0; x < W.n; ++x) {
    // Lambda^k psi(x) = (1/k) sum_{j=1..k} (-1)^{j-1} psi(x^j) Lambda^{k-j} psi(x)
    std::vector<CycNum> lam(static_cast<size_t>(deg) + 1);
    lam[0] = CycNum::from_int(1);
    for (long k = 1; k <= deg; ++k) {
      CycNum acc;
      for (long j = 1; j <= k; ++j) {
        int yj = W.power(x, j);
        CycNum term = psi[yj] * lam[static_cast<size_t>(k - j)];
        if (j % 2 == 0) term = -term;
        acc += term;
      }
      lam[static_cast<size_t>(k)] = acc * CycNum::from_rational(Rat(1, k));
    }
    long det = rational_integer(lam[static_cast<size_t>(deg)], "top exterior power");
    if (det != 1 && det != -1)
      throw InternalError("top exterior power is not a sign; not a real character");
    out[x] = static_cast<int>(det);
  }
  // Multiplicativity of the resulting sign character.
  for (int u = 0; u < W.n; ++u)
    for (int v = 0; v < W.n; ++v)
      if (out[W.mult(u, v)] != out[u] * out[v])
        throw InternalError("determinant character is not multiplicative");
  return out;
}

std::vector<int> det_character(const FiniteGroup& W, const std::vector<CycNum>& psi) {
  std::vector<int> eig = det_character_eig(W, psi);
  std::vector<int> ext = det_character_ext(W, psi);
  if (eig != ext)
    throw InternalError("determinant character routes disagree");
  return eig;
}

std::vector<int> minimal_generating_sequence(const FiniteGroup& W) {
  std::vector<int> gens;
  std::vector<int> generated = subgroup_closure(W, {});
  while (static_cast<int>(generated.size()) < W.n) {
    std::set<int> have(generated.begin(), generated.end());
    int pick = -1;
    for (int x = 0; x < W.n; ++x)
      if (!have.count(x)) {
        pick = x;
        break;
      }
    gens.push_back(pick);
    generated = subgroup_closure(W, gens);
  }
  return gens;
}

OrientationData orientation_data(const FiniteGroup& G, const ClassInfo& classes,
                                 const std::vector<RealIrrep>& irreps,
                                 const SubgroupClass& H, const WeylGroup& weyl) {
  OrientationData od;
  od.class_id = H.id;
  od.weyl_order = weyl.W.n;
  od.generators = minimal_generating_sequence(weyl.W);
  const int r = static_cast<int>(irreps.size());
  od.bits.assign(r, std::vector<uint8_t>(od.generators.size(), 0));
  for (int i = 0; i < r; ++i) {
    std::vector<CycNum> psi = weyl_fixed_character(G, classes, irreps[i], H, weyl);
    std::vector<int> det = det_character(weyl.W, psi);
    if (weyl.W.n % 2 == 1)
      for (int x = 0; x < weyl.W.n; ++x)
        if (det[x] != 1) throw InternalError("odd Weyl group with nontrivial sign character");
    for (size_t g = 0; g < od.generators.size(); ++g)
      od.bits[i][g] = det[od.generators[g]] == -1 ? 1 : 0;
  }
  if (r > 0)
    for (uint8_t b : od.bits[0])
      if (b) throw InternalError("trivial representation with nontrivial orientation");

  // F2 rank of the generator-sign matrix (columns = irreps).
  std::vector<std::vector<uint8_t>> rows(od.generators.size(), std::vector<uint8_t>(r, 0));
  for (int i = 0; i < r; ++i)
    for (size_t g = 0; g < od.generators.size(); ++g) rows[g][i] = od.bits[i][g];
  int rank = 0;
  for (int col = 0; col < r; ++col) {
    int piv = -1;
    for (int i = rank; i < static_cast<int>(rows.size()); ++i)
      if (rows[i][col]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[piv], rows[rank]);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == rank || !rows[i][col]) continue;
      for (int j = 0; j < r; ++j) rows[i][j] ^= rows[rank][j];
    }
    ++rank;
  }
  od.e2_rank = rank;
  return od;
}

std::vector<int> orientation_signs(const VirtualRep& alpha, const OrientationData& od) {
  if (alpha.r() != static_cast<int>(od.bits.size()))
    throw SpecError("virtual representation rank does not match orientation data");
  std::vector<int> out(od.generators.size(), 1);
  for (size_t g = 0; g < od.generators.size(); ++g) {
    unsigned parity = 0;
    for (int i = 0; i < alpha.r(); ++i)
      if (od.bits[i][g] && mpz_odd_p(alpha.a[i].get_mpz_t())) parity ^= 1;
    out[g] = parity ? -1 : 1;
  }
  return out;
}

bool is_oriented(const VirtualRep& alpha, const OrientationData& od) {
  for (int s : orientation_signs(alpha, od))
    if (s != 1) return false;
  return true;
}

std::vector<std::vector<uint8_t>> orientation_constraints(const OrientationData& od, int r) {
  std::vector<std::vector<uint8_t>> C(od.generators.size(), std::vector<uint8_t>(r, 0));
  for (int i = 0; i < static_cast<int>(od.bits.size()); ++i)
    for (size_t g = 0; g < od.generators.size(); ++g) C[g][i] = od.bits[i][g];
  return C;
}

}  // namespace stemrank
