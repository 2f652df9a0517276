#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "stemrank/numeric.hpp"

namespace stemrank {

inline constexpr int kDefaultOrderCap = 512;

// Honors STEMRANK_MAX_ORDER when set, else the default.
int configured_order_cap();

enum class CatalogKind { Cyclic, Dihedral, Dicyclic, Klein4, Symmetric };

struct GroupSpec {
  enum class Kind { Catalog, Permutation, Product };
  Kind kind = Kind::Catalog;

  // Catalog
  CatalogKind catalog = CatalogKind::Cyclic;
  int param = 1;  // Cn(n), Dih(n) order 2n, Dic(n) order 4n, Sym(n)

  // Permutation: generators in one-line notation on {0..m-1}
  std::vector<std::vector<int>> perm_generators;

  // Product factors
  std::vector<GroupSpec> factors;

  // Canonical JSON text (also the display/cache identity of the spec).
  std::string canonical_json() const;
  std::string display_name() const;
};

// Accepts a catalog token (C12, D6, Dic3, Q8, K4, S4, products joined by 'x'),
// inline JSON, or a path to a JSON spec file.
GroupSpec parse_group_spec(const std::string& text);
GroupSpec group_spec_from_json_text(const std::string& json_text);

// Finite group on indices 0..n-1 with element 0 the identity and a full
// multiplication table.  Immutable after construction.
struct FiniteGroup {
  int n = 1;
  std::vector<uint16_t> table;   // n*n, table[a*n+b] = a*b
  std::vector<uint16_t> inverse;
  std::vector<int> element_order;
  int exponent = 1;
  std::vector<std::string> element_names;
  std::string name;
  std::vector<int> generators;  // a generating set (construction order)

  int mult(int a, int b) const { return table[static_cast<size_t>(a) * n + b]; }
  int inv(int a) const { return inverse[a]; }
  int order() const { return n; }
  int power(int a, long k) const;
  const std::string& element_name(int a) const { return element_names[a]; }
};

FiniteGroup build_group(const GroupSpec& spec, int order_cap = configured_order_cap());

struct ElementClass {
  int rep = 0;
  std::vector<int> members;
  // power_class[k] = class of rep^k, 0 <= k <= exponent
  std::vector<int> power_class;
  int size() const { return static_cast<int>(members.size()); }
};

struct ClassInfo {
  std::vector<ElementClass> classes;
  std::vector<int> class_of;  // element index -> class index
  int count() const { return static_cast<int>(classes.size()); }
};

// Identity class first, then by (element order, minimal member index).
ClassInfo conjugacy_classes(const FiniteGroup& G);

struct SubgroupClass {
  int id = 0;
  std::string name;
  std::vector<int> rep;                       // sorted element indices
  std::vector<std::vector<int>> conjugates;   // sorted canonical sets, lex order
  std::vector<int> normalizer;                // N_G(rep), sorted
  int order() const { return static_cast<int>(rep.size()); }
};

// Every subgroup in exactly one class; ids ordered by (order, lex canonical
// representative).  Enumeration: cyclic seeds, then saturation by <H, g>.
std::vector<SubgroupClass> subgroup_classes(const FiniteGroup& G);

struct WeylGroup {
  FiniteGroup W;
  std::vector<int> section;               // W index -> coset representative in N_G(H)
  std::unordered_map<int, int> projection; // normalizer element -> W index

  int project(int g) const;
};

// W = N_G(H)/H for the class representative H; W's identity is the coset H.
WeylGroup weyl_group(const FiniteGroup& G, const SubgroupClass& K);

// Closure of `seed` under multiplication and inverses, sorted.
std::vector<int> subgroup_closure(const FiniteGroup& G, std::vector<int> seed);

// Structure label for a subgroup given by its sorted element set ("C4", "K4",
// "D6", "Q8", ...).  Used for display names.
std::string subgroup_structure_label(const FiniteGroup& G, const std::vector<int>& elems);

}  // namespace stemrank
