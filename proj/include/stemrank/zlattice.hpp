#pragma once

#include <optional>
#include <vector>

#include "stemrank/numeric.hpp"

namespace stemrank {

struct IntMat {
  int rows = 0;
  int cols = 0;
  std::vector<Int> a;

  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Int(0)) {}

  Int& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const Int& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  static IntMat identity(int n);
  static IntMat from_rows(const std::vector<std::vector<Int>>& rows);
  std::vector<Int> row(int r) const;

  bool operator==(const IntMat& o) const = default;
};

// Sublattice of Z^ambient.  The basis rows are always in row-style Hermite
// normal form (positive pivots, entries above each pivot reduced into
// [0, pivot)), which makes the representation canonical: equal lattices have
// entry-identical bases.
struct Lattice {
  int ambient = 0;
  IntMat basis;  // rank x ambient, HNF

  int rank() const { return basis.rows; }
  bool operator==(const Lattice& o) const = default;
};

// Canonical HNF basis of the row span of M; zero rows dropped.
Lattice hnf(const IntMat& M);

// HNF with transform: returns H (same row count as M, zero rows kept at the
// bottom) and sets U to a unimodular matrix with U*M = H.
IntMat hnf_with_transform(const IntMat& M, IntMat& U);

// {x in Z^{M.rows} : x * M = 0}, canonicalized.
Lattice left_kernel(const IntMat& M);

// {x in Z^r : x . v = 0} for nonzero v, rank r-1.
Lattice int_kernel(const std::vector<Int>& v);

// {x in L : C * (x mod 2) = 0} where C is an F2 matrix on ambient coordinates
// (rows of constraints, entries 0/1).  If f2_rank is non-null it receives the
// rank of the constraint system restricted to L, so the index of the result
// in L is 2^f2_rank.
Lattice mod2_sublattice(const Lattice& L, const std::vector<std::vector<uint8_t>>& C,
                        int* f2_rank = nullptr);

Lattice intersect(const Lattice& L1, const Lattice& L2);

bool member(const Lattice& L, const std::vector<Int>& x);

// Every row of inner lies in outer.
bool contains(const Lattice& outer, const Lattice& inner);

// Determinant via fraction-free (Bareiss) elimination.
Int determinant(const IntMat& M);

// [outer : inner] when inner is a finite-index sublattice of outer (same
// rank, contained); nullopt otherwise.
std::optional<Int> lattice_index(const Lattice& outer, const Lattice& inner);

// Integer coordinates of x in the HNF basis of L, if x is a member.
std::optional<std::vector<Int>> coordinates(const Lattice& L, const std::vector<Int>& x);

}  // namespace stemrank
