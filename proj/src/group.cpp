#include "stemrank/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

namespace stemrank {

namespace {

using nlohmann::json;

constexpr int kHardOrderCap = 4096;        // uint16 table indices, bounded memory
constexpr int kMaxSubgroupCount = 32768;   // saturation blow-up guard

long checked_order(const GroupSpec& spec) {
  switch (spec.kind) {
    case GroupSpec::Kind::Catalog:
      switch (spec.catalog) {
        case CatalogKind::Cyclic: return spec.param;
        case CatalogKind::Dihedral: return 2L * spec.param;
        case CatalogKind::Dicyclic: return 4L * spec.param;
        case CatalogKind::Klein4: return 4;
        case CatalogKind::Symmetric: {
          long f = 1;
          for (int i = 2; i <= spec.param; ++i) {
            f *= i;
            if (f > kHardOrderCap) return f;
          }
          return f;
        }
      }
      return 0;
    case GroupSpec::Kind::Product: {
      long p = 1;
      for (const auto& f : spec.factors) {
        p *= checked_order(f);
        if (p > kHardOrderCap) return p;
      }
      return p;
    }
    case GroupSpec::Kind::Permutation:
      return -1;  // only known after closure
  }
  return 0;
}

std::string catalog_token(const GroupSpec& spec) {
  switch (spec.catalog) {
    case CatalogKind::Cyclic: return "C" + std::to_string(spec.param);
    case CatalogKind::Dihedral: return "D" + std::to_string(2 * spec.param);
    case CatalogKind::Dicyclic:
      return spec.param == 2 ? "Q8" : "Dic" + std::to_string(spec.param);
    case CatalogKind::Klein4: return "K4";
    case CatalogKind::Symmetric: return "S" + std::to_string(spec.param);
  }
  return "?";
}

json spec_to_json(const GroupSpec& spec) {
  switch (spec.kind) {
    case GroupSpec::Kind::Catalog: return json{{"catalog", catalog_token(spec)}};
    case GroupSpec::Kind::Permutation: return json{{"perm_generators", spec.perm_generators}};
    case GroupSpec::Kind::Product: {
      json arr = json::array();
      for (const auto& f : spec.factors) arr.push_back(spec_to_json(f));
      return json{{"product", arr}};
    }
  }
  return json();
}

bool parse_catalog_token(const std::string& tok, GroupSpec& out) {
  auto num_after = [&](size_t prefix_len, int& value) {
    if (tok.size() <= prefix_len) return false;
    for (size_t i = prefix_len; i < tok.size(); ++i)
      if (!isdigit(static_cast<unsigned char>(tok[i]))) return false;
    value = std::stoi(tok.substr(prefix_len));
    return true;
  };
  int v = 0;
  out.kind = GroupSpec::Kind::Catalog;
  if (tok == "K4" || tok == "Klein4") {
    out.catalog = CatalogKind::Klein4;
    return true;
  }
  if (tok == "Q8") {
    out.catalog = CatalogKind::Dicyclic;
    out.param = 2;
    return true;
  }
  if (tok.rfind("Dic", 0) == 0 && num_after(3, v) && v >= 1) {
    out.catalog = CatalogKind::Dicyclic;
    out.param = v;
    return true;
  }
  if (tok.rfind("Dih", 0) == 0 && num_after(3, v) && v >= 1) {
    out.catalog = CatalogKind::Dihedral;
    out.param = v;
    return true;
  }
  if (tok.rfind("Sym", 0) == 0 && num_after(3, v) && v >= 1) {
    out.catalog = CatalogKind::Symmetric;
    out.param = v;
    return true;
  }
  if (tok.size() >= 2 && tok[0] == 'C' && num_after(1, v) && v >= 1) {
    out.catalog = CatalogKind::Cyclic;
    out.param = v;
    return true;
  }
  if (tok.size() >= 2 && tok[0] == 'D' && num_after(1, v)) {
    if (v < 2 || v % 2 != 0) throw SpecError("dihedral token D<n> needs even order n >= 2");
    out.catalog = CatalogKind::Dihedral;
    out.param = v / 2;
    return true;
  }
  if (tok.size() >= 2 && tok[0] == 'S' && num_after(1, v) && v >= 1) {
    out.catalog = CatalogKind::Symmetric;
    out.param = v;
    return true;
  }
  return false;
}

GroupSpec spec_from_json(const json& j) {
  GroupSpec spec;
  if (j.is_object() && j.contains("catalog")) {
    std::string tok = j.at("catalog").get<std::string>();
    if (!parse_catalog_token(tok, spec)) throw SpecError("unknown catalog name: " + tok);
    return spec;
  }
  if (j.is_object() && j.contains("perm_generators")) {
    spec.kind = GroupSpec::Kind::Permutation;
    spec.perm_generators = j.at("perm_generators").get<std::vector<std::vector<int>>>();
    if (spec.perm_generators.empty()) throw SpecError("perm_generators must be nonempty");
    size_t m = spec.perm_generators[0].size();
    for (const auto& g : spec.perm_generators) {
      if (g.size() != m) throw SpecError("generators act on different sets");
      std::vector<bool> seen(m, false);
      for (int x : g) {
        if (x < 0 || static_cast<size_t>(x) >= m || seen[x])
          throw SpecError("generator is not a permutation");
        seen[x] = true;
      }
    }
    return spec;
  }
  if (j.is_object() && j.contains("product")) {
    spec.kind = GroupSpec::Kind::Product;
    for (const auto& sub : j.at("product")) spec.factors.push_back(spec_from_json(sub));
    if (spec.factors.size() < 2) throw SpecError("product needs at least two factors");
    return spec;
  }
  throw SpecError("group spec must contain catalog, perm_generators, or product");
}

std::vector<int> lookup_generator_indices(const FiniteGroup& G,
                                          const std::vector<std::vector<int>>& perms,
                                          const std::vector<std::vector<int>>& elems) {
  std::map<std::vector<int>, int> index;
  for (size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
  std::vector<int> out;
  for (const auto& p : perms) out.push_back(index.at(p));
  (void)G;
  return out;
}

std::string cycle_name(const std::vector<int>& p) {
  std::vector<bool> seen(p.size(), false);
  std::string out;
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    out += "(";
    size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out += " ";
      out += std::to_string(j);
      first = false;
      j = static_cast<size_t>(p[j]);
    }
    out += ")";
  }
  return out.empty() ? "e" : out;
}

void finalize(FiniteGroup& G) {
  const int n = G.n;
  // Identity and inverse rows exact; rows and columns must be bijections.
  for (int a = 0; a < n; ++a) {
    if (G.mult(0, a) != a || G.mult(a, 0) != a)
      throw InternalError("element 0 is not an identity");
    std::vector<bool> row(n, false), col(n, false);
    for (int b = 0; b < n; ++b) {
      int ab = G.mult(a, b), ba = G.mult(b, a);
      if (ab < 0 || ab >= n || ba < 0 || ba >= n || row[ab] || col[ba])
        throw InternalError("multiplication table is not a latin square");
      row[ab] = col[ba] = true;
    }
  }
  G.inverse.assign(n, 0);
  for (int a = 0; a < n; ++a) {
    int found = -1;
    for (int b = 0; b < n; ++b)
      if (G.mult(a, b) == 0) {
        found = b;
        break;
      }
    if (found < 0 || G.mult(found, a) != 0) throw InternalError("missing inverse");
    G.inverse[a] = static_cast<uint16_t>(found);
  }
  G.element_order.assign(n, 1);
  long exp = 1;
  for (int a = 0; a < n; ++a) {
    int k = 1, x = a;
    while (x != 0) {
      x = G.mult(x, a);
      ++k;
    }
    G.element_order[a] = k;
    exp = lcm_long(exp, k);
  }
  G.exponent = static_cast<int>(exp);
  // Associativity spot-check (constructions are structural; this catches typos).
  std::mt19937 rng(12345);
  int trials = std::min(4096, n * n);
  for (int t = 0; t < trials; ++t) {
    int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n),
        c = static_cast<int>(rng() % n);
    if (G.mult(G.mult(a, b), c) != G.mult(a, G.mult(b, c)))
      throw InternalError("multiplication table is not associative");
  }
  if (G.element_names.empty()) {
    G.element_names.resize(n);
    for (int a = 0; a < n; ++a) G.element_names[a] = "x" + std::to_string(a);
  }
}

FiniteGroup build_cyclic(int m) {
  FiniteGroup G;
  G.n = m;
  G.table.resize(static_cast<size_t>(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) G.table[static_cast<size_t>(a) * m + b] = (a + b) % m;
  G.element_names.resize(m);
  for (int a = 0; a < m; ++a)
    G.element_names[a] = a == 0 ? "e" : (a == 1 ? "g" : "g^" + std::to_string(a));
  if (m > 1) G.generators = {1};
  return G;
}

FiniteGroup build_klein4() {
  FiniteGroup G;
  G.n = 4;
  G.table.resize(16);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) G.table[static_cast<size_t>(a) * 4 + b] = a ^ b;
  G.element_names = {"e", "i", "j", "k"};
  G.generators = {1, 2};
  return G;
}

// Dih(m): elements a^s b^t, index s + m*t, with b a^s = a^{-s} b.
FiniteGroup build_dihedral(int m) {
  FiniteGroup G;
  const int n = 2 * m;
  G.n = n;
  G.table.resize(static_cast<size_t>(n) * n);
  auto idx = [m](int s, int t) { return ((s % m) + m) % m + m * t; };
  for (int s1 = 0; s1 < m; ++s1)
    for (int t1 = 0; t1 < 2; ++t1)
      for (int s2 = 0; s2 < m; ++s2)
        for (int t2 = 0; t2 < 2; ++t2) {
          int s = t1 == 0 ? s1 + s2 : s1 - s2;
          G.table[static_cast<size_t>(idx(s1, t1)) * n + idx(s2, t2)] =
              static_cast<uint16_t>(idx(s, t1 ^ t2));
        }
  G.element_names.resize(n);
  for (int s = 0; s < m; ++s)
    for (int t = 0; t < 2; ++t) {
      std::string nm;
      if (t == 0)
        nm = s == 0 ? "e" : (s == 1 ? "a" : "a^" + std::to_string(s));
      else
        nm = s == 0 ? "b" : (s == 1 ? "ab" : "a^" + std::to_string(s) + "b");
      G.element_names[idx(s, t)] = nm;
    }
  G.generators = m > 1 ? std::vector<int>{1, m} : std::vector<int>{m};
  return G;
}

// Dic(m): a^s b^t, s mod 2m, index s + 2m*t; b^2 = a^m, b a^s = a^{-s} b.
FiniteGroup build_dicyclic(int m) {
  FiniteGroup G;
  const int twom = 2 * m;
  const int n = 4 * m;
  G.n = n;
  G.table.resize(static_cast<size_t>(n) * n);
  auto idx = [twom](int s, int t) { return ((s % twom) + twom) % twom + twom * t; };
  for (int s1 = 0; s1 < twom; ++s1)
    for (int t1 = 0; t1 < 2; ++t1)
      for (int s2 = 0; s2 < twom; ++s2)
        for (int t2 = 0; t2 < 2; ++t2) {
          int s = t1 == 0 ? s1 + s2 : s1 - s2;
          int t = t1 ^ t2;
          if (t1 == 1 && t2 == 1) s += m;  // b^2 = a^m
          G.table[static_cast<size_t>(idx(s1, t1)) * n + idx(s2, t2)] =
              static_cast<uint16_t>(idx(s, t));
        }
  G.element_names.resize(n);
  if (m == 2) {
    G.element_names = {"e", "i", "-1", "-i", "j", "k", "-j", "-k"};
  } else {
    for (int s = 0; s < twom; ++s)
      for (int t = 0; t < 2; ++t) {
        std::string nm;
        if (t == 0)
          nm = s == 0 ? "e" : (s == 1 ? "a" : "a^" + std::to_string(s));
        else
          nm = s == 0 ? "b" : (s == 1 ? "ab" : "a^" + std::to_string(s) + "b");
        G.element_names[idx(s, t)] = nm;
      }
  }
  G.generators = {1, twom};
  return G;
}

FiniteGroup build_from_permutations(const std::vector<std::vector<int>>& gens, int cap,
                                    std::vector<std::vector<int>>* elems_out) {
  const size_t m = gens[0].size();
  std::vector<int> id(m);
  for (size_t i = 0; i < m; ++i) id[i] = static_cast<int>(i);
  std::vector<std::vector<int>> elems{id};
  std::map<std::vector<int>, int> index{{id, 0}};
  for (size_t head = 0; head < elems.size(); ++head) {
    for (const auto& g : gens) {
      std::vector<int> prod(m);
      for (size_t x = 0; x < m; ++x) prod[x] = elems[head][static_cast<size_t>(g[x])];
      if (index.emplace(prod, static_cast<int>(elems.size())).second) {
        elems.push_back(prod);
        if (static_cast<int>(elems.size()) > cap)
          throw CapError("permutation group order exceeds cap " + std::to_string(cap));
      }
    }
  }
  FiniteGroup G;
  G.n = static_cast<int>(elems.size());
  G.table.resize(static_cast<size_t>(G.n) * G.n);
  for (int a = 0; a < G.n; ++a)
    for (int b = 0; b < G.n; ++b) {
      std::vector<int> prod(m);
      for (size_t x = 0; x < m; ++x) prod[x] = elems[a][static_cast<size_t>(elems[b][x])];
      G.table[static_cast<size_t>(a) * G.n + b] = static_cast<uint16_t>(index.at(prod));
    }
  G.element_names.resize(G.n);
  for (int a = 0; a < G.n; ++a) G.element_names[a] = cycle_name(elems[a]);
  G.generators = lookup_generator_indices(G, gens, elems);
  if (elems_out) *elems_out = elems;
  return G;
}

FiniteGroup build_symmetric(int m) {
  std::vector<std::vector<int>> gens;
  std::vector<int> transp(m), cyc(m);
  for (int i = 0; i < m; ++i) transp[i] = cyc[i] = i;
  if (m >= 2) {
    std::swap(transp[0], transp[1]);
    for (int i = 0; i < m; ++i) cyc[i] = (i + 1) % m;
    gens = {transp, cyc};
  }
  // Elements in lexicographic one-line order; identity is lex-smallest.
  std::vector<std::vector<int>> perms;
  std::vector<int> p(m);
  for (int i = 0; i < m; ++i) p[i] = i;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, int> index;
  for (size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);
  FiniteGroup S;
  S.n = static_cast<int>(perms.size());
  S.table.resize(static_cast<size_t>(S.n) * S.n);
  for (int a = 0; a < S.n; ++a)
    for (int b = 0; b < S.n; ++b) {
      std::vector<int> prod(m);
      for (int x = 0; x < m; ++x) prod[x] = perms[a][static_cast<size_t>(perms[b][x])];
      S.table[static_cast<size_t>(a) * S.n + b] = static_cast<uint16_t>(index.at(prod));
    }
  S.element_names.resize(S.n);
  for (int a = 0; a < S.n; ++a) S.element_names[a] = cycle_name(perms[a]);
  S.generators = m >= 2 ? lookup_generator_indices(S, gens, perms) : std::vector<int>{};
  return S;
}

FiniteGroup build_product(const std::vector<FiniteGroup>& parts) {
  FiniteGroup G;
  long n = 1;
  for (const auto& p : parts) n *= p.n;
  G.n = static_cast<int>(n);
  G.table.resize(static_cast<size_t>(G.n) * G.n);
  // Mixed-radix index, leftmost factor most significant.
  auto decode = [&](int x) {
    std::vector<int> digits(parts.size());
    for (int i = static_cast<int>(parts.size()) - 1; i >= 0; --i) {
      digits[i] = x % parts[i].n;
      x /= parts[i].n;
    }
    return digits;
  };
  auto encode = [&](const std::vector<int>& digits) {
    int x = 0;
    for (size_t i = 0; i < parts.size(); ++i) x = x * parts[i].n + digits[i];
    return x;
  };
  for (int a = 0; a < G.n; ++a) {
    auto da = decode(a);
    for (int b = 0; b < G.n; ++b) {
      auto db = decode(b);
      std::vector<int> dc(parts.size());
      for (size_t i = 0; i < parts.size(); ++i) dc[i] = parts[i].mult(da[i], db[i]);
      G.table[static_cast<size_t>(a) * G.n + b] = static_cast<uint16_t>(encode(dc));
    }
  }
  G.element_names.resize(G.n);
  for (int a = 0; a < G.n; ++a) {
    auto d = decode(a);
    std::string nm = "(";
    for (size_t i = 0; i < parts.size(); ++i) {
      if (i) nm += ",";
      nm += parts[i].element_name(d[i]);
    }
    nm += ")";
    G.element_names[a] = nm;
  }
  for (size_t i = 0; i < parts.size(); ++i)
    for (int g : parts[i].generators) {
      std::vector<int> digits(parts.size(), 0);
      digits[i] = g;
      G.generators.push_back(encode(digits));
    }
  return G;
}

}  // namespace

int configured_order_cap() {
  if (const char* env = std::getenv("STEMRANK_MAX_ORDER")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return static_cast<int>(std::min<long>(v, kHardOrderCap));
  }
  return kDefaultOrderCap;
}

std::string GroupSpec::canonical_json() const { return spec_to_json(*this).dump(); }

std::string GroupSpec::display_name() const {
  switch (kind) {
    case Kind::Catalog: return catalog_token(*this);
    case Kind::Permutation: return "perm-group";
    case Kind::Product: {
      std::string out;
      for (size_t i = 0; i < factors.size(); ++i) {
        if (i) out += "x";
        out += factors[i].display_name();
      }
      return out;
    }
  }
  return "?";
}

GroupSpec group_spec_from_json_text(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw SpecError(std::string("invalid group spec JSON: ") + e.what());
  }
  return spec_from_json(j);
}

GroupSpec parse_group_spec(const std::string& text) {
  if (!text.empty() && text[0] == '{') return group_spec_from_json_text(text);
  // Product tokens: factors joined by 'x', e.g. C2xQ8.
  if (text.find('x') != std::string::npos) {
    GroupSpec spec;
    spec.kind = GroupSpec::Kind::Product;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, 'x')) {
      GroupSpec f;
      if (!parse_catalog_token(tok, f))
        throw SpecError("unknown catalog name in product: " + tok);
      spec.factors.push_back(f);
    }
    if (spec.factors.size() < 2) throw SpecError("product token needs two factors");
    return spec;
  }
  GroupSpec spec;
  if (parse_catalog_token(text, spec)) return spec;
  std::error_code ec;
  if (std::filesystem::exists(text, ec)) {
    std::ifstream in(text);
    if (!in) throw SpecError("cannot read group spec file: " + text);
    std::stringstream buf;
    buf << in.rdbuf();
    return group_spec_from_json_text(buf.str());
  }
  throw SpecError("unknown group: " + text);
}

int FiniteGroup::power(int a, long k) const {
  int ord = element_order[a];
  long r = k % ord;
  if (r < 0) r += ord;
  int out = 0;
  for (long i = 0; i < r; ++i) out = mult(out, a);
  return out;
}

FiniteGroup build_group(const GroupSpec& spec, int order_cap) {
  int cap = std::min(order_cap, kHardOrderCap);
  long ord = checked_order(spec);
  if (ord > cap)
    throw CapError("group order " + std::to_string(ord) + " exceeds cap " + std::to_string(cap));
  FiniteGroup G;
  switch (spec.kind) {
    case GroupSpec::Kind::Catalog:
      switch (spec.catalog) {
        case CatalogKind::Cyclic: G = build_cyclic(spec.param); break;
        case CatalogKind::Dihedral: G = build_dihedral(spec.param); break;
        case CatalogKind::Dicyclic: G = build_dicyclic(spec.param); break;
        case CatalogKind::Klein4: G = build_klein4(); break;
        case CatalogKind::Symmetric: G = build_symmetric(spec.param); break;
      }
      G.name = catalog_token(spec);
      break;
    case GroupSpec::Kind::Permutation:
      G = build_from_permutations(spec.perm_generators, cap, nullptr);
      G.name = "G" + std::to_string(G.n);
      break;
    case GroupSpec::Kind::Product: {
      std::vector<FiniteGroup> parts;
      for (const auto& f : spec.factors) parts.push_back(build_group(f, cap));
      G = build_product(parts);
      G.name = spec.display_name();
      break;
    }
  }
  finalize(G);
  return G;
}

ClassInfo conjugacy_classes(const FiniteGroup& G) {
  const int n = G.n;
  ClassInfo info;
  info.class_of.assign(n, -1);
  std::vector<std::vector<int>> raw;
  for (int x = 0; x < n; ++x) {
    if (info.class_of[x] >= 0) continue;
    std::set<int> orbit;
    for (int g = 0; g < n; ++g) orbit.insert(G.mult(G.mult(g, x), G.inv(g)));
    std::vector<int> members(orbit.begin(), orbit.end());
    int tag = static_cast<int>(raw.size());
    for (int m : members) info.class_of[m] = tag;
    raw.push_back(std::move(members));
  }
  // Deterministic order: element order, then minimal member.
  std::vector<int> perm(raw.size());
  for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  std::sort(perm.begin(), perm.end(), [&](int a, int b) {
    int oa = G.element_order[raw[a][0]], ob = G.element_order[raw[b][0]];
    if (oa != ob) return oa < ob;
    return raw[a][0] < raw[b][0];
  });
  std::vector<int> new_tag(raw.size());
  for (size_t i = 0; i < perm.size(); ++i) new_tag[static_cast<size_t>(perm[i])] = static_cast<int>(i);
  for (int x = 0; x < n; ++x) info.class_of[x] = new_tag[info.class_of[x]];
  info.classes.resize(raw.size());
  for (size_t i = 0; i < perm.size(); ++i) {
    ElementClass& c = info.classes[i];
    c.members = raw[static_cast<size_t>(perm[i])];
    c.rep = c.members[0];
    c.power_class.resize(G.exponent + 1);
    int x = 0;
    for (int k = 0; k <= G.exponent; ++k) {
      c.power_class[k] = info.class_of[x];
      x = G.mult(x, c.rep);
    }
  }
  return info;
}

std::vector<int> subgroup_closure(const FiniteGroup& G, std::vector<int> seed) {
  std::set<int> elems{0};
  for (int s : seed) elems.insert(s);
  std::deque<int> work(elems.begin(), elems.end());
  while (!work.empty()) {
    int a = work.front();
    work.pop_front();
    std::vector<int> snapshot(elems.begin(), elems.end());
    for (int b : snapshot) {
      for (int c : {G.mult(a, b), G.mult(b, a)}) {
        if (elems.insert(c).second) work.push_back(c);
      }
    }
    if (elems.insert(G.inv(a)).second) work.push_back(G.inv(a));
  }
  return std::vector<int>(elems.begin(), elems.end());
}

std::string subgroup_structure_label(const FiniteGroup& G, const std::vector<int>& elems) {
  const int h = static_cast<int>(elems.size());
  if (h == 1) return "e";
  std::set<int> inH(elems.begin(), elems.end());
  bool cyclic = false;
  for (int x : elems)
    if (G.element_order[x] == h) {
      cyclic = true;
      break;
    }
  if (cyclic) return "C" + std::to_string(h);
  bool abelian = true;
  for (int a : elems) {
    for (int b : elems)
      if (G.mult(a, b) != G.mult(b, a)) {
        abelian = false;
        break;
      }
    if (!abelian) break;
  }
  if (h == 4) return "K4";
  // Dihedral: cyclic index-2 subgroup inverted by an outside involution.
  if (h % 2 == 0 && h >= 6) {
    for (int c : elems) {
      if (G.element_order[c] != h / 2) continue;
      for (int t : elems) {
        if (G.element_order[t] != 2) continue;
        bool in_c = false;
        int x = 0;
        for (int k = 0; k < h / 2; ++k) {
          if (x == t) in_c = true;
          x = G.mult(x, c);
        }
        if (in_c) continue;
        if (G.mult(G.mult(t, c), G.inv(t)) == G.inv(c)) return "D" + std::to_string(h);
      }
    }
  }
  // Dicyclic: c of order h/2, t outside with t^2 = c^{h/4}, t c t^{-1} = c^{-1}.
  if (h % 4 == 0 && h >= 8) {
    for (int c : elems) {
      if (G.element_order[c] != h / 2) continue;
      for (int t : elems) {
        bool in_c = false;
        int x = 0;
        for (int k = 0; k < h / 2; ++k) {
          if (x == t) in_c = true;
          x = G.mult(x, c);
        }
        if (in_c) continue;
        if (G.mult(t, t) == G.power(c, h / 4) &&
            G.mult(G.mult(t, c), G.inv(t)) == G.inv(c))
          return h == 8 ? "Q8" : "Dic" + std::to_string(h / 4);
      }
    }
  }
  if (abelian) {
    // Elementary abelian p-groups get an exact label.
    int p = G.element_order[elems[0] == 0 ? elems[1] : elems[0]];
    bool elementary = true;
    for (int x : elems)
      if (x != 0 && G.element_order[x] != p) {
        elementary = false;
        break;
      }
    if (elementary) {
      int k = 0, q = h;
      while (q > 1) {
        q /= p;
        ++k;
      }
      return "C" + std::to_string(p) + "^" + std::to_string(k);
    }
    return "Ab" + std::to_string(h);
  }
  return "G" + std::to_string(h);
}

std::vector<SubgroupClass> subgroup_classes(const FiniteGroup& G) {
  const int n = G.n;
  std::set<std::vector<int>> found;
  std::deque<std::vector<int>> work;
  // Seed with all cyclic subgroups.
  for (int x = 0; x < n; ++x) {
    std::vector<int> cyc;
    int y = 0;
    do {
      cyc.push_back(y);
      y = G.mult(y, x);
    } while (y != 0);
    std::sort(cyc.begin(), cyc.end());
    if (found.insert(cyc).second) work.push_back(cyc);
  }
  // Saturate: close <H, g> for every found H and g outside H.
  while (!work.empty()) {
    std::vector<int> H = work.front();
    work.pop_front();
    if (static_cast<int>(H.size()) == n) continue;
    std::set<int> inH(H.begin(), H.end());
    for (int g = 0; g < n; ++g) {
      if (inH.count(g)) continue;
      std::vector<int> seed = H;
      seed.push_back(g);
      std::vector<int> S = subgroup_closure(G, std::move(seed));
      if (found.insert(S).second) {
        if (static_cast<int>(found.size()) > kMaxSubgroupCount)
          throw CapError("subgroup enumeration exceeded " + std::to_string(kMaxSubgroupCount));
        work.push_back(std::move(S));
      }
    }
  }

  // Group into conjugation orbits.
  std::set<std::vector<int>> remaining = found;
  std::vector<SubgroupClass> classes;
  while (!remaining.empty()) {
    std::vector<int> H = *remaining.begin();
    std::set<std::vector<int>> orbit;
    for (int g = 0; g < n; ++g) {
      std::vector<int> K;
      K.reserve(H.size());
      for (int x : H) K.push_back(G.mult(G.mult(g, x), G.inv(g)));
      std::sort(K.begin(), K.end());
      orbit.insert(std::move(K));
    }
    SubgroupClass cls;
    cls.rep = *orbit.begin();  // lex-minimal canonical set
    cls.conjugates.assign(orbit.begin(), orbit.end());
    for (const auto& K : orbit) remaining.erase(K);
    classes.push_back(std::move(cls));
  }
  std::sort(classes.begin(), classes.end(), [](const SubgroupClass& a, const SubgroupClass& b) {
    if (a.rep.size() != b.rep.size()) return a.rep.size() < b.rep.size();
    return a.rep < b.rep;
  });
  for (size_t i = 0; i < classes.size(); ++i) {
    SubgroupClass& cls = classes[i];
    cls.id = static_cast<int>(i);
    std::set<int> inH(cls.rep.begin(), cls.rep.end());
    for (int g = 0; g < n; ++g) {
      bool normalizes = true;
      for (int x : cls.rep)
        if (!inH.count(G.mult(G.mult(g, x), G.inv(g)))) {
          normalizes = false;
          break;
        }
      if (normalizes) cls.normalizer.push_back(g);
    }
    if (static_cast<int>(cls.conjugates.size()) * static_cast<int>(cls.normalizer.size()) != n)
      throw InternalError("orbit-stabilizer mismatch in subgroup classes");
  }

  // Display names: structure label, whole group by name, cyclic duplicates by
  // minimal generator.
  std::map<std::string, int> label_count;
  std::vector<std::string> labels(classes.size());
  for (size_t i = 0; i < classes.size(); ++i) {
    const auto& cls = classes[i];
    labels[i] = cls.order() == n ? G.name : subgroup_structure_label(G, cls.rep);
    ++label_count[labels[i]];
  }
  for (size_t i = 0; i < classes.size(); ++i) {
    SubgroupClass& cls = classes[i];
    if (label_count[labels[i]] == 1 || cls.order() == n) {
      cls.name = labels[i];
      continue;
    }
    int gen = -1;
    for (int x : cls.rep)
      if (G.element_order[x] == cls.order()) {
        gen = x;
        break;
      }
    if (gen >= 0)
      cls.name = "<" + G.element_name(gen) + ">";
    else
      cls.name = labels[i] + "_" + std::to_string(cls.id);
  }
  return classes;
}

int WeylGroup::project(int g) const {
  auto it = projection.find(g);
  if (it == projection.end()) throw SpecError("element does not normalize the subgroup");
  return it->second;
}

WeylGroup weyl_group(const FiniteGroup& G, const SubgroupClass& K) {
  const std::vector<int>& N = K.normalizer;
  std::set<int> inH(K.rep.begin(), K.rep.end());
  // Cosets keyed by minimal element; identity coset (H itself) sorts first.
  std::map<int, std::vector<int>> cosets;
  std::unordered_map<int, int> coset_min;
  for (int g : N) {
    if (coset_min.count(g)) continue;
    std::vector<int> coset;
    for (int h : K.rep) coset.push_back(G.mult(g, h));
    std::sort(coset.begin(), coset.end());
    for (int x : coset) coset_min[x] = coset[0];
    cosets[coset[0]] = coset;
  }
  WeylGroup wg;
  std::unordered_map<int, int> index_of_min;
  for (const auto& [mn, coset] : cosets) {
    index_of_min[mn] = static_cast<int>(wg.section.size());
    wg.section.push_back(mn);
  }
  for (int g : N) wg.projection[g] = index_of_min.at(coset_min.at(g));
  const int w = static_cast<int>(wg.section.size());
  wg.W.n = w;
  wg.W.table.resize(static_cast<size_t>(w) * w);
  for (int a = 0; a < w; ++a)
    for (int b = 0; b < w; ++b)
      wg.W.table[static_cast<size_t>(a) * w + b] = static_cast<uint16_t>(
          wg.projection.at(G.mult(wg.section[a], wg.section[b])));
  wg.W.element_names.resize(w);
  for (int a = 0; a < w; ++a) wg.W.element_names[a] = G.element_name(wg.section[a]) + "H";
  wg.W.name = "W(" + K.name + ")";
  finalize(wg.W);
  if (w * K.order() != static_cast<int>(N.size()))
    throw InternalError("Weyl group order mismatch");
  return wg;
}

}  // namespace stemrank
