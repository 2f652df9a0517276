#pragma once

#include <optional>
#include <vector>

#include "stemrank/character.hpp"
#include "stemrank/cyclotomic.hpp"
#include "stemrank/fixed_orient.hpp"
#include "stemrank/group.hpp"

namespace stemrank {

struct CycMat {
  int rows = 0;
  int cols = 0;
  std::vector<CycNum> a;

  CycMat() = default;
  CycMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  CycNum& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const CycNum& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
  static CycMat identity(int n);
  CycMat operator*(const CycMat& o) const;
  CycMat operator+(const CycMat& o) const;
  CycMat scaled(const CycNum& s) const;
  CycNum trace() const;
};

CycNum det(const CycMat& M);

// Basis of the column space (columns of the result), exact elimination.
CycMat column_space(const CycMat& M);

// Solve B * X = Y for X (B must have full column rank and Y must be in the
// column span).
CycMat solve_in_span(const CycMat& B, const CycMat& Y);

// One explicit matrix realization per group element, aligned with a real
// irrep:  rho[g] is the matrix of g.
struct IrrepModel {
  int irrep_index = 0;
  int dim = 0;
  std::vector<CycMat> rho;
};

// Exact orthogonal/monomial models for the catalog groups (cyclic, dihedral,
// Klein four, Q8).  Verified to be homomorphisms with the right characters;
// nullopt when the catalog has no model for the spec.
std::optional<std::vector<IrrepModel>> catalog_matrix_models(
    const FiniteGroup& G, const ClassInfo& classes, const GroupSpec& spec,
    const std::vector<RealIrrep>& irreps);

// Image of the averaging projector (1/|H|) sum_h rho(h); columns form a basis
// of the fixed subspace.
CycMat model_fixed_space(const FiniteGroup& G, const IrrepModel& model, const SubgroupClass& H);

int model_fixed_dim(const FiniteGroup& G, const IrrepModel& model, const SubgroupClass& H);

// Determinant of the induced action of each listed W element (via its coset
// representative) on the fixed subspace; each value is +1 or -1.
std::vector<int> model_weyl_dets(const FiniteGroup& G, const IrrepModel& model,
                                 const SubgroupClass& H, const WeylGroup& weyl,
                                 const std::vector<int>& weyl_elements);

}  // namespace stemrank
