#pragma once

#include <string>
#include <vector>

#include "stemrank/character.hpp"
#include "stemrank/fixed_orient.hpp"
#include "stemrank/group.hpp"
#include "stemrank/zlattice.hpp"

namespace stemrank {

struct SubgroupAnalysis {
  int class_id = 0;
  DimensionVector d;
  OrientationData orient;
  Lattice N;        // {x : x . d_H = 0}
  Lattice N_plus;   // oriented sublattice of N
  Int plus_index;   // [N : N+], a power of 2
};

// Everything derived from one group, immutable once built.
struct Analysis {
  GroupSpec spec;
  FiniteGroup G;
  ClassInfo classes;
  std::vector<SubgroupClass> subs;
  std::vector<WeylGroup> weyls;
  CharacterTable table;
  std::vector<RealIrrep> irreps;
  std::vector<SubgroupAnalysis> sub_analyses;

  int r() const { return static_cast<int>(irreps.size()); }
  int class_by_name(const std::string& name) const;
  int irrep_by_name(const std::string& name) const;
};

Analysis analyze(const GroupSpec& spec, int order_cap = configured_order_cap());

// Rebuild the derived lattice/orientation layer from a table already known
// (cache path); the table is re-verified first.
Analysis analyze_with_table(const GroupSpec& spec, CharacterTable table, int order_cap);

struct RankResult {
  VirtualRep alpha;
  int rank = 0;
  std::vector<int> witnesses;  // contributing class ids, ascending
};

// r_alpha: witnesses are the classes with alpha . d_H = 0 and o_H(alpha)
// trivial.  Recomputed through N_H+ membership and asserted equal.
RankResult rank_at(const Analysis& an, const VirtualRep& alpha);

struct Stratum {
  Lattice L;
  std::vector<int> classes;  // maximal set of classes whose N+ contains L
  int generic_rank = 0;      // = classes.size()
};

struct StratumReport {
  std::vector<Stratum> strata;
};

// Closure of {N_H+} under pairwise intersection, each lattice annotated with
// its maximal containing-class set.  Ordered by (generic rank desc, basis lex).
StratumReport strata_report(const Analysis& an);

struct MackeySignChar {
  std::vector<int> signs;  // per W-generator of the class, each +1/-1
  Int multiplicity;
};

// M^{eH} described through its sign-character multiplicities, per class.
struct MackeyCoefficients {
  std::vector<std::vector<MackeySignChar>> per_class;

  static MackeyCoefficients burnside(const Analysis& an);
  static MackeyCoefficients zero(const Analysis& an);
};

// Throws SpecError if a sign vector does not extend to a character of W.
void validate_mackey(const Analysis& an, const MackeyCoefficients& M);

// rk [S^alpha, HM]^G (x) Q = sum over classes with alpha^H = 0 of the
// multiplicity of o_H(alpha) in M^{eH}.
Int mackey_rank(const Analysis& an, const VirtualRep& alpha, const MackeyCoefficients& M);

struct Claim {
  std::string label;
  std::vector<std::string> classes;
  std::vector<std::vector<Int>> generators;
};

struct ClaimResult {
  std::string label;
  std::vector<int> class_ids;
  Lattice computed;
  Lattice claimed_span;
  struct GeneratorCheck {
    std::vector<Int> vec;
    bool member = false;
    struct PerClass {
      int class_id;
      bool null;
      bool oriented;
    };
    std::vector<PerClass> per_class;
  };
  std::vector<GeneratorCheck> generators;
  bool generators_ok = false;
  bool span_equal = false;
  std::string relation;
  bool confirmed = false;
};

struct VerificationReport {
  std::vector<ClaimResult> claims;
  bool all_confirmed = false;
};

// Compares each claimed lattice against the computed intersection of N_H+.
// Disagreement is data, not an error.
VerificationReport verify_claims(const Analysis& an, const std::vector<Claim>& claims);

struct OracleCheck {
  bool available = false;
  int compared_dims = 0;
  int compared_dets = 0;
  std::vector<std::string> mismatches;
};

// Explicit-matrix recomputation of every fixed-point dimension and every
// generator determinant, compared against the character-theoretic path.
OracleCheck oracle_cross_check(const Analysis& an);

}  // namespace stemrank
