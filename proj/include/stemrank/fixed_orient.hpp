#pragma once

#include <vector>

#include "stemrank/character.hpp"
#include "stemrank/group.hpp"

namespace stemrank {

// alpha = sum a[i] * S_i over the ordered real irreps.
struct VirtualRep {
  std::vector<Int> a;

  VirtualRep() = default;
  explicit VirtualRep(std::vector<Int> coeffs) : a(std::move(coeffs)) {}
  int r() const { return static_cast<int>(a.size()); }
  VirtualRep operator+(const VirtualRep& o) const;
  VirtualRep operator-() const;
  VirtualRep scaled(long k) const;
  Int virtual_dimension(const std::vector<RealIrrep>& irreps) const;
};

struct DimensionVector {
  int class_id = 0;
  std::vector<Int> d;  // d[i] = dim S_i^H
};

// dim S^H = (1/|H|) sum over h in H of chi_S(h); always a nonnegative integer.
long fixed_dim(const FiniteGroup& G, const ClassInfo& classes, const RealIrrep& S,
               const SubgroupClass& H);

DimensionVector dimension_vector(const FiniteGroup& G, const ClassInfo& classes,
                                 const std::vector<RealIrrep>& irreps,
                                 const SubgroupClass& H);

// Character of the W-action on S^H: psi(w) = (1/|H|) sum_h chi_S(n_w h),
// indexed by W element.  Checked independent of the coset representative.
std::vector<CycNum> weyl_fixed_character(const FiniteGroup& G, const ClassInfo& classes,
                                         const RealIrrep& S, const SubgroupClass& H,
                                         const WeylGroup& weyl);

// Determinant character of a real W-character psi, per W element.
// Primary route: multiplicity of eigenvalue -1 on each cyclic subgroup.
std::vector<int> det_character_eig(const FiniteGroup& W, const std::vector<CycNum>& psi);
// Cross-check route: top exterior power by the Newton-style recursion.
std::vector<int> det_character_ext(const FiniteGroup& W, const std::vector<CycNum>& psi);
// Both routes, asserted equal.
std::vector<int> det_character(const FiniteGroup& W, const std::vector<CycNum>& psi);

// Greedy-minimal generating sequence of W in element order.
std::vector<int> minimal_generating_sequence(const FiniteGroup& W);

struct OrientationData {
  int class_id = 0;
  int weyl_order = 1;
  std::vector<int> generators;              // W element indices
  std::vector<std::vector<uint8_t>> bits;   // [irrep][generator], 1 = sign -1
  int e2_rank = 0;                          // F2 rank of the sign matrix
};

OrientationData orientation_data(const FiniteGroup& G, const ClassInfo& classes,
                                 const std::vector<RealIrrep>& irreps,
                                 const SubgroupClass& H, const WeylGroup& weyl);

// Signs of o_H(alpha) on the stored generators (+1/-1 each).
std::vector<int> orientation_signs(const VirtualRep& alpha, const OrientationData& od);

// True iff o_H(alpha) is the trivial character of W.
bool is_oriented(const VirtualRep& alpha, const OrientationData& od);

// The mod-2 constraint matrix of H on ambient RO(G) coordinates (rows =
// generators), as consumed by mod2_sublattice.
std::vector<std::vector<uint8_t>> orientation_constraints(const OrientationData& od, int r);

}  // namespace stemrank
