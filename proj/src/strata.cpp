#include "stemrank/strata.hpp"

#include <algorithm>
#include <map>

#include "stemrank/matrix_models.hpp"

namespace stemrank {

namespace {

constexpr int kMaxStrata = 1 << 15;

Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
  Int acc = 0;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

std::vector<std::vector<Int>> basis_rows(const Lattice& L) {
  std::vector<std::vector<Int>> rows;
  for (int i = 0; i < L.rank(); ++i) rows.push_back(L.basis.row(i));
  return rows;
}

bool lattice_before(const Lattice& a, const Lattice& b) {
  if (a.rank() != b.rank()) return a.rank() < b.rank();
  return a.basis.a < b.basis.a;
}

}  // namespace

int Analysis::class_by_name(const std::string& name) const {
  for (const auto& s : subs)
    if (s.name == name) return s.id;
  throw SpecError("unknown subgroup class: " + name);
}

int Analysis::irrep_by_name(const std::string& name) const {
  for (const auto& S : irreps)
    if (S.name == name) return S.index;
  throw SpecError("unknown irreducible representation: " + name);
}

Analysis analyze_with_table(const GroupSpec& spec, CharacterTable table, int order_cap) {
  Analysis an;
  an.spec = spec;
  an.G = build_group(spec, order_cap);
  an.classes = conjugacy_classes(an.G);
  verify_character_table(an.G, an.classes, table);
  an.table = std::move(table);
  an.subs = subgroup_classes(an.G);
  for (const auto& sub : an.subs) an.weyls.push_back(weyl_group(an.G, sub));
  an.irreps = real_irreps(an.G, an.classes, an.table, &an.spec);
  const int r = an.r();
  for (size_t s = 0; s < an.subs.size(); ++s) {
    SubgroupAnalysis sa;
    sa.class_id = static_cast<int>(s);
    sa.d = dimension_vector(an.G, an.classes, an.irreps, an.subs[s]);
    sa.orient = orientation_data(an.G, an.classes, an.irreps, an.subs[s], an.weyls[s]);
    sa.N = int_kernel(sa.d.d);
    if (sa.N.rank() != r - 1) throw InternalError("null lattice has unexpected rank");
    int f2rank = 0;
    sa.N_plus = mod2_sublattice(sa.N, orientation_constraints(sa.orient, r), &f2rank);
    sa.plus_index = Int(1) << f2rank;
    auto idx = lattice_index(sa.N, sa.N_plus);
    if (!idx || *idx != sa.plus_index)
      throw InternalError("oriented sublattice index mismatch");
    if (an.weyls[s].W.n % 2 == 1 && sa.N_plus != sa.N)
      throw InternalError("odd Weyl group but N+ is a proper sublattice");
    an.sub_analyses.push_back(std::move(sa));
  }
  return an;
}

Analysis analyze(const GroupSpec& spec, int order_cap) {
  FiniteGroup G = build_group(spec, order_cap);
  ClassInfo classes = conjugacy_classes(G);
  CharacterTable table = character_table(G, classes, &spec);
  return analyze_with_table(spec, std::move(table), order_cap);
}

RankResult rank_at(const Analysis& an, const VirtualRep& alpha) {
  if (alpha.r() != an.r()) throw SpecError("alpha has wrong number of coordinates");
  RankResult res;
  res.alpha = alpha;
  std::vector<int> by_membership;
  for (const auto& sa : an.sub_analyses) {
    bool null = dot(alpha.a, sa.d.d) == 0;
    bool oriented = is_oriented(alpha, sa.orient);
    if (null && oriented) res.witnesses.push_back(sa.class_id);
    if (member(sa.N_plus, alpha.a)) by_membership.push_back(sa.class_id);
  }
  if (by_membership != res.witnesses)
    throw InternalError("rank witnesses differ between predicate and membership paths");
  res.rank = static_cast<int>(res.witnesses.size());
  return res;
}

StratumReport strata_report(const Analysis& an) {
  std::vector<Lattice> pool;
  auto push_unique = [&](const Lattice& L) {
    for (const auto& have : pool)
      if (have == L) return false;
    pool.push_back(L);
    if (static_cast<int>(pool.size()) > kMaxStrata)
      throw CapError("strata closure exceeded " + std::to_string(kMaxStrata) + " lattices");
    return true;
  };
  for (const auto& sa : an.sub_analyses) push_unique(sa.N_plus);
  // Deterministic worklist closure under pairwise intersection.
  for (size_t i = 0; i < pool.size(); ++i)
    for (size_t j = 0; j < i; ++j) push_unique(intersect(pool[i], pool[j]));
  StratumReport report;
  for (const auto& L : pool) {
    Stratum st;
    st.L = L;
    for (const auto& sa : an.sub_analyses) {
      bool inside = true;
      for (const auto& row : basis_rows(L))
        if (!member(sa.N_plus, row)) {
          inside = false;
          break;
        }
      if (inside) st.classes.push_back(sa.class_id);
    }
    st.generic_rank = static_cast<int>(st.classes.size());
    report.strata.push_back(std::move(st));
  }
  std::sort(report.strata.begin(), report.strata.end(), [](const Stratum& a, const Stratum& b) {
    if (a.generic_rank != b.generic_rank) return a.generic_rank > b.generic_rank;
    return lattice_before(a.L, b.L);
  });
  return report;
}

MackeyCoefficients MackeyCoefficients::burnside(const Analysis& an) {
  MackeyCoefficients M;
  for (const auto& sa : an.sub_analyses) {
    MackeySignChar trivial;
    trivial.signs.assign(sa.orient.generators.size(), 1);
    trivial.multiplicity = 1;
    M.per_class.push_back({trivial});
  }
  return M;
}

MackeyCoefficients MackeyCoefficients::zero(const Analysis& an) {
  MackeyCoefficients M;
  M.per_class.resize(an.sub_analyses.size());
  return M;
}

void validate_mackey(const Analysis& an, const MackeyCoefficients& M) {
  if (M.per_class.size() != an.sub_analyses.size())
    throw SpecError("Mackey coefficients must list every subgroup class");
  for (size_t s = 0; s < M.per_class.size(); ++s) {
    const auto& od = an.sub_analyses[s].orient;
    const FiniteGroup& W = an.weyls[s].W;
    for (const auto& entry : M.per_class[s]) {
      if (entry.signs.size() != od.generators.size())
        throw SpecError("sign character has wrong number of generator values");
      if (entry.multiplicity < 0) throw SpecError("negative Mackey multiplicity");
      for (int v : entry.signs)
        if (v != 1 && v != -1) throw SpecError("sign character values must be +1 or -1");
      // The generator assignment must extend to a homomorphism W -> mu_2:
      // propagate along the Cayley graph and watch for conflicts.
      std::vector<int> value(W.n, 0);
      value[0] = 1;
      std::vector<int> frontier{0};
      while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier)
          for (size_t gi = 0; gi < od.generators.size(); ++gi) {
            int y = W.mult(x, od.generators[gi]);
            int v = value[x] * entry.signs[gi];
            if (value[y] == 0) {
              value[y] = v;
              next.push_back(y);
            } else if (value[y] != v) {
              throw SpecError("sign assignment does not extend to a character of W");
            }
          }
        frontier = std::move(next);
      }
      for (int x = 0; x < W.n; ++x)
        for (int y = 0; y < W.n; ++y)
          if (value[W.mult(x, y)] != value[x] * value[y])
            throw SpecError("sign assignment does not extend to a character of W");
    }
  }
}

Int mackey_rank(const Analysis& an, const VirtualRep& alpha, const MackeyCoefficients& M) {
  validate_mackey(an, M);
  if (alpha.r() != an.r()) throw SpecError("alpha has wrong number of coordinates");
  Int total = 0;
  for (size_t s = 0; s < an.sub_analyses.size(); ++s) {
    const auto& sa = an.sub_analyses[s];
    if (dot(alpha.a, sa.d.d) != 0) continue;
    std::vector<int> want = orientation_signs(alpha, sa.orient);
    for (const auto& entry : M.per_class[s])
      if (entry.signs == want) total += entry.multiplicity;
  }
  return total;
}

VerificationReport verify_claims(const Analysis& an, const std::vector<Claim>& claims) {
  VerificationReport report;
  report.all_confirmed = true;
  const int r = an.r();
  for (const Claim& claim : claims) {
    ClaimResult res;
    res.label = claim.label;
    if (claim.classes.empty()) throw SpecError("claim lists no subgroup classes");
    for (const auto& name : claim.classes) res.class_ids.push_back(an.class_by_name(name));

    bool first = true;
    for (int cid : res.class_ids) {
      const Lattice& Np = an.sub_analyses[cid].N_plus;
      res.computed = first ? Np : intersect(res.computed, Np);
      first = false;
    }

    res.generators_ok = true;
    for (const auto& gen : claim.generators) {
      if (static_cast<int>(gen.size()) != r)
        throw SpecError("claim generator has wrong number of coordinates");
      ClaimResult::GeneratorCheck check;
      check.vec = gen;
      VirtualRep alpha(gen);
      check.member = true;
      for (int cid : res.class_ids) {
        const auto& sa = an.sub_analyses[cid];
        ClaimResult::GeneratorCheck::PerClass pc;
        pc.class_id = cid;
        pc.null = dot(gen, sa.d.d) == 0;
        pc.oriented = is_oriented(alpha, sa.orient);
        if (member(sa.N_plus, gen) != (pc.null && pc.oriented))
          throw InternalError("membership and Thm A conditions disagree");
        if (!(pc.null && pc.oriented)) check.member = false;
        check.per_class.push_back(pc);
      }
      if (!check.member) res.generators_ok = false;
      res.generators.push_back(std::move(check));
    }

    IntMat claimed(static_cast<int>(claim.generators.size()), r);
    for (size_t i = 0; i < claim.generators.size(); ++i)
      for (int j = 0; j < r; ++j) claimed.at(static_cast<int>(i), j) = claim.generators[i][j];
    if (claimed.rows == 0) claimed = IntMat(0, r);
    res.claimed_span = hnf(claimed);
    res.claimed_span.ambient = r;

    res.span_equal = res.claimed_span == res.computed;
    if (res.span_equal) {
      res.relation = "equal";
    } else {
      bool claimed_in = contains(res.computed, res.claimed_span);
      bool computed_in = contains(res.claimed_span, res.computed);
      if (claimed_in && res.claimed_span.rank() == res.computed.rank()) {
        auto idx = lattice_index(res.computed, res.claimed_span);
        res.relation = "claimed span is an index-" + (idx ? idx->get_str() : "?") +
                       " sublattice of the computed lattice";
      } else if (claimed_in) {
        res.relation = "claimed span is a rank-" + std::to_string(res.claimed_span.rank()) +
                       " sublattice of the rank-" + std::to_string(res.computed.rank()) +
                       " computed lattice";
      } else if (computed_in && res.claimed_span.rank() == res.computed.rank()) {
        auto idx = lattice_index(res.claimed_span, res.computed);
        res.relation = "computed lattice is an index-" + (idx ? idx->get_str() : "?") +
                       " sublattice of the claimed span";
      } else if (computed_in) {
        res.relation = "computed lattice is a proper sublattice of the claimed span";
      } else {
        res.relation = "claimed span and computed lattice are incomparable";
      }
    }
    res.confirmed = res.generators_ok && res.span_equal;
    if (!res.confirmed) report.all_confirmed = false;
    report.claims.push_back(std::move(res));
  }
  return report;
}

OracleCheck oracle_cross_check(const Analysis& an) {
  OracleCheck out;
  auto models = catalog_matrix_models(an.G, an.classes, an.spec, an.irreps);
  if (!models) return out;
  out.available = true;
  for (size_t s = 0; s < an.subs.size(); ++s) {
    const auto& sa = an.sub_analyses[s];
    for (int i = 0; i < an.r(); ++i) {
      int oracle_dim = model_fixed_dim(an.G, (*models)[i], an.subs[s]);
      ++out.compared_dims;
      if (Int(oracle_dim) != sa.d.d[i])
        out.mismatches.push_back("dim S_" + std::to_string(i + 1) + "^" + an.subs[s].name +
                                 ": character " + sa.d.d[i].get_str() + " vs matrix " +
                                 std::to_string(oracle_dim));
      std::vector<int> dets =
          model_weyl_dets(an.G, (*models)[i], an.subs[s], an.weyls[s], sa.orient.generators);
      for (size_t g = 0; g < dets.size(); ++g) {
        ++out.compared_dets;
        int char_sign = sa.orient.bits[i][g] ? -1 : 1;
        if (dets[g] != char_sign)
          out.mismatches.push_back(
              "det o_" + an.subs[s].name + "(" + an.irreps[i].name + ") at generator " +
              std::to_string(g) + ": character " + std::to_string(char_sign) + " vs matrix " +
              std::to_string(dets[g]));
      }
    }
  }
  return out;
}

}  // namespace stemrank
