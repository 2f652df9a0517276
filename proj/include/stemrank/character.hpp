#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stemrank/cyclotomic.hpp"
#include "stemrank/group.hpp"

namespace stemrank {

struct CharacterTable {
  enum class Source { Catalog, Dixon, Imported };
  Source source = Source::Catalog;
  std::vector<int> degrees;
  std::vector<std::vector<CycNum>> values;  // [character][class]
  int count() const { return static_cast<int>(degrees.size()); }
};

// Closed-form tables for Cn, Dih, Dic, Klein4, Sym(n<=4) and products of
// those; nullopt when the spec has no closed form.
std::optional<CharacterTable> catalog_character_table(const FiniteGroup& G,
                                                      const ClassInfo& classes,
                                                      const GroupSpec& spec);

// Generic exact table: simultaneous eigenvectors of the class-sum matrices
// over F_p (p = least prime with p = 1 mod exponent and p > 2*sqrt(|G|)),
// lifted to cyclotomic values through the discrete log of a fixed primitive
// root.  Fully deterministic.
CharacterTable dixon_character_table(const FiniteGroup& G, const ClassInfo& classes);

// Catalog when available, Dixon otherwise.
CharacterTable character_table(const FiniteGroup& G, const ClassInfo& classes,
                               const GroupSpec* spec);

// Exact row orthogonality, column count, degree consistency; throws
// InternalError with a description on failure.
void verify_character_table(const FiniteGroup& G, const ClassInfo& classes,
                            const CharacterTable& T);

// (1/|G|) sum over g of chi(g^2), always in {-1, 0, +1}.
int fs_indicator(const FiniteGroup& G, const ClassInfo& classes, const CharacterTable& T,
                 int chi);

struct RealIrrep {
  int index = 0;  // 0-based position; position 0 is the trivial representation
  std::string name;
  std::vector<CycNum> values;  // real character, per class
  int degree = 0;
  int fs = 1;  // +1 real, 0 complex pair, -1 quaternionic
  std::vector<int> constituents;  // complex characters realified into this
};

// The simple real representations, a Z-basis of RO(G).  Trivial first, then
// by degree, then by descending character value on classes ordered by
// representative element.
std::vector<RealIrrep> real_irreps(const FiniteGroup& G, const ClassInfo& classes,
                                   const CharacterTable& T, const GroupSpec* spec);

// Exact sign of a real cyclotomic value; refuses (InternalError) rather than
// guess when the numeric separation is inconclusive.
int sign_of_real(const CycNum& x);
int compare_real(const CycNum& a, const CycNum& b);

// <chi_i, chi_j> = (1/|G|) sum_c |C| chi_i(c) conj(chi_j(c))
CycNum char_inner(const FiniteGroup& G, const ClassInfo& classes,
                  const std::vector<CycNum>& a, const std::vector<CycNum>& b);

}  // namespace stemrank
