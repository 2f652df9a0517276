#include "stemrank/report.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace stemrank {

namespace {

using nlohmann::json;

json int_to_json(const Int& v) {
  if (v.fits_slong_p()) {
    long x = v.get_si();
    if (x <= (1L << 53) && x >= -(1L << 53)) return json(x);
  }
  return json(v.get_str());
}

Int int_from_json(const json& j) {
  if (j.is_number_integer()) return Int(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return Int(j.get<std::string>());
  throw SpecError("expected an integer (number or decimal string)");
}

json rat_to_json(const Rat& q) { return json::array({int_to_json(q.get_num()), int_to_json(q.get_den())}); }

Rat rat_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw SpecError("rational must be a [num, den] pair");
  Rat q(int_from_json(j[0]), int_from_json(j[1]));
  if (q.get_den() == 0) throw SpecError("rational with zero denominator");
  q.canonicalize();
  return q;
}

std::vector<Int> intvec_from_json(const json& j) {
  std::vector<Int> out;
  for (const auto& e : j) out.push_back(int_from_json(e));
  return out;
}

json intvec_to_json(const std::vector<Int>& v) {
  json out = json::array();
  for (const Int& x : v) out.push_back(int_to_json(x));
  return out;
}

std::string witness_ids(const std::vector<int>& ids) {
  std::string out;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ";";
    out += std::to_string(ids[i]);
  }
  return out;
}

std::string witness_names(const Analysis& an, const std::vector<int>& ids) {
  std::string out = "[";
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ", ";
    out += an.subs[ids[i]].name;
  }
  return out + "]";
}

std::string lattice_brief(const Lattice& L) {
  if (L.rank() == 0) return "{0}";
  std::string out;
  for (int i = 0; i < L.rank(); ++i) {
    if (i) out += " ";
    out += "(";
    for (int j = 0; j < L.ambient; ++j) {
      if (j) out += ",";
      out += L.basis.at(i, j).get_str();
    }
    out += ")";
  }
  return out;
}

std::string vec_brief(const std::vector<Int>& v) {
  std::string out = "(";
  for (size_t j = 0; j < v.size(); ++j) {
    if (j) out += ",";
    out += v[j].get_str();
  }
  return out + ")";
}

}  // namespace

json cyc_to_json(const CycNum& v) {
  json coeffs = json::array();
  for (const Rat& c : v.coeffs()) coeffs.push_back(rat_to_json(c));
  return json{{"n", v.conductor()}, {"coeffs", coeffs}};
}

CycNum cyc_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("coeffs"))
    throw SpecError("cyclotomic value must be {n, coeffs}");
  int n = j.at("n").get<int>();
  if (n < 1 || n > kMaxConductor) throw SpecError("cyclotomic order out of range");
  const json& coeffs = j.at("coeffs");
  if (static_cast<int>(coeffs.size()) != n)
    throw SpecError("cyclotomic value needs exactly n coefficients");
  CycNum out;
  for (int i = 0; i < n; ++i) {
    Rat c = rat_from_json(coeffs[i]);
    if (c != 0)
      out += CycNum::from_rational(c, n) * CycNum::zeta(n, i);
  }
  return out.promoted(CycNum::common_conductor(out.conductor(), n));
}

json lattice_to_json(const Lattice& L) {
  json basis = json::array();
  for (int i = 0; i < L.rank(); ++i) basis.push_back(intvec_to_json(L.basis.row(i)));
  return json{{"ambient", L.ambient}, {"basis", basis}};
}

Lattice lattice_from_json(const json& j) {
  if (!j.is_object() || !j.contains("ambient") || !j.contains("basis"))
    throw SpecError("lattice must be {ambient, basis}");
  int ambient = j.at("ambient").get<int>();
  std::vector<std::vector<Int>> rows;
  for (const auto& row : j.at("basis")) {
    auto v = intvec_from_json(row);
    if (static_cast<int>(v.size()) != ambient)
      throw SpecError("lattice basis row has wrong length");
    rows.push_back(std::move(v));
  }
  IntMat M = IntMat::from_rows(rows);
  if (M.rows == 0) M = IntMat(0, ambient);
  Lattice L = hnf(M);
  L.ambient = ambient;
  // Serialized bases are always in HNF: re-normalizing must not change them.
  if (M.rows != L.rank() || !(M == L.basis))
    throw SpecError("lattice basis is not in Hermite normal form");
  return L;
}

// ------------------------------------------------------------------ analyze

namespace {

json orientation_to_json(const Analysis& an, const SubgroupAnalysis& sa) {
  const WeylGroup& weyl = an.weyls[sa.class_id];
  json gens = json::array();
  for (int g : sa.orient.generators) gens.push_back(weyl.W.element_name(g));
  json signs = json::object();
  for (int i = 0; i < an.r(); ++i) {
    json row = json::array();
    for (size_t g = 0; g < sa.orient.generators.size(); ++g)
      row.push_back(sa.orient.bits[i][g] ? -1 : 1);
    signs[an.irreps[i].name] = row;
  }
  return json{{"class_id", sa.class_id},
              {"weyl_order", sa.orient.weyl_order},
              {"e2_rank", sa.orient.e2_rank},
              {"generators", gens},
              {"signs", signs}};
}

json subgroup_analysis_to_json(const Analysis& an, const SubgroupAnalysis& sa) {
  const SubgroupClass& sub = an.subs[sa.class_id];
  return json{{"id", sub.id},
              {"name", sub.name},
              {"order", sub.order()},
              {"n_conjugates", static_cast<int>(sub.conjugates.size())},
              {"weyl_order", sa.orient.weyl_order},
              {"d", intvec_to_json(sa.d.d)},
              {"N", lattice_to_json(sa.N)},
              {"N_plus", lattice_to_json(sa.N_plus)},
              {"plus_index", int_to_json(sa.plus_index)},
              {"orientation", orientation_to_json(an, sa)}};
}

}  // namespace

json analysis_to_json(const Analysis& an) {
  json element_classes = json::array();
  for (const auto& c : an.classes.classes)
    element_classes.push_back(json{{"rep", an.G.element_name(c.rep)},
                                   {"size", c.size()},
                                   {"order", an.G.element_order[c.rep]}});
  json irreps = json::array();
  for (const auto& S : an.irreps) {
    json character = json::array();
    for (const auto& v : S.values) character.push_back(cyc_to_json(v));
    irreps.push_back(json{{"i", S.index + 1},
                          {"name", S.name},
                          {"degree", S.degree},
                          {"fs", S.fs},
                          {"character", character}});
  }
  json subs = json::array();
  for (const auto& sa : an.sub_analyses) subs.push_back(subgroup_analysis_to_json(an, sa));
  return json{{"group", json::parse(an.spec.canonical_json())},
              {"group_hash", group_hash(an.spec)},
              {"name", an.G.name},
              {"order", an.G.n},
              {"exponent", an.G.exponent},
              {"version", kToolVersion},
              {"element_classes", element_classes},
              {"real_irreps", irreps},
              {"subgroup_classes", subs}};
}

json analysis_json_roundtrip(const json& j) {
  json out;
  GroupSpec spec = group_spec_from_json_text(j.at("group").dump());
  out["group"] = json::parse(spec.canonical_json());
  out["group_hash"] = j.at("group_hash").get<std::string>();
  out["name"] = j.at("name").get<std::string>();
  out["order"] = j.at("order").get<int>();
  out["exponent"] = j.at("exponent").get<int>();
  out["version"] = j.at("version").get<std::string>();
  json ecs = json::array();
  for (const auto& c : j.at("element_classes"))
    ecs.push_back(json{{"rep", c.at("rep").get<std::string>()},
                       {"size", c.at("size").get<int>()},
                       {"order", c.at("order").get<int>()}});
  out["element_classes"] = ecs;
  json irreps = json::array();
  for (const auto& S : j.at("real_irreps")) {
    json character = json::array();
    for (const auto& v : S.at("character")) character.push_back(cyc_to_json(cyc_from_json(v)));
    irreps.push_back(json{{"i", S.at("i").get<int>()},
                          {"name", S.at("name").get<std::string>()},
                          {"degree", S.at("degree").get<int>()},
                          {"fs", S.at("fs").get<int>()},
                          {"character", character}});
  }
  out["real_irreps"] = irreps;
  json subs = json::array();
  for (const auto& s : j.at("subgroup_classes")) {
    const json& o = s.at("orientation");
    json signs = json::object();
    for (auto it = o.at("signs").begin(); it != o.at("signs").end(); ++it) {
      json row = json::array();
      for (const auto& v : it.value()) row.push_back(v.get<int>());
      signs[it.key()] = row;
    }
    json orient = json{{"class_id", o.at("class_id").get<int>()},
                       {"weyl_order", o.at("weyl_order").get<int>()},
                       {"e2_rank", o.at("e2_rank").get<int>()},
                       {"generators", o.at("generators")},
                       {"signs", signs}};
    subs.push_back(json{{"id", s.at("id").get<int>()},
                        {"name", s.at("name").get<std::string>()},
                        {"order", s.at("order").get<int>()},
                        {"n_conjugates", s.at("n_conjugates").get<int>()},
                        {"weyl_order", s.at("weyl_order").get<int>()},
                        {"d", intvec_to_json(intvec_from_json(s.at("d")))},
                        {"N", lattice_to_json(lattice_from_json(s.at("N")))},
                        {"N_plus", lattice_to_json(lattice_from_json(s.at("N_plus")))},
                        {"plus_index", int_to_json(int_from_json(s.at("plus_index")))},
                        {"orientation", orient}});
  }
  out["subgroup_classes"] = subs;
  return out;
}

std::string analysis_to_text(const Analysis& an) {
  std::ostringstream os;
  os << "group " << an.G.name << "  order " << an.G.n << "  exponent " << an.G.exponent
     << "  element classes " << an.classes.count() << "\n";
  os << "real irreps (basis of RO(" << an.G.name << ")):\n";
  for (const auto& S : an.irreps) {
    os << "  " << S.index + 1 << ". " << S.name << "  degree " << S.degree << "  type "
       << (S.fs == 1 ? "real" : S.fs == 0 ? "complex-pair" : "quaternionic") << "\n";
  }
  os << "subgroup classes:\n";
  for (const auto& sa : an.sub_analyses) {
    const auto& sub = an.subs[sa.class_id];
    os << "  [" << sub.id << "] " << sub.name << "  |H|=" << sub.order() << "  conjugates "
       << sub.conjugates.size() << "  |W|=" << sa.orient.weyl_order << "\n";
    os << "      d_H = " << vec_brief(sa.d.d) << "\n";
    os << "      N_H      = " << lattice_brief(sa.N) << "\n";
    os << "      N_H^+    = " << lattice_brief(sa.N_plus) << "   [N:N+] = " << sa.plus_index
       << "   e2_rank " << sa.orient.e2_rank << "\n";
  }
  return os.str();
}

std::string analysis_to_tex(const Analysis& an) {
  std::ostringstream os;
  os << "% analysis of " << an.G.name << "\n";
  os << "\\begin{tabular}{l" << std::string(an.classes.count(), 'r') << "}\n";
  os << "\\toprule\n";
  for (int c = 0; c < an.classes.count(); ++c)
    os << " & $" << an.G.element_name(an.classes.classes[c].rep) << "$";
  os << " \\\\\n\\midrule\n";
  for (const auto& S : an.irreps) {
    os << "$" << S.name << "$";
    for (const auto& v : S.values) os << " & $" << v.str() << "$";
    os << " \\\\\n";
  }
  os << "\\bottomrule\n\\end{tabular}\n\n";
  os << "\\begin{tabular}{lllll}\n\\toprule\n";
  os << "$(H)$ & $|H|$ & $|W|$ & $d_H$ & $[N_H : N_H^+]$ \\\\\n\\midrule\n";
  for (const auto& sa : an.sub_analyses) {
    const auto& sub = an.subs[sa.class_id];
    os << "$" << sub.name << "$ & " << sub.order() << " & " << sa.orient.weyl_order << " & $"
       << vec_brief(sa.d.d) << "$ & " << sa.plus_index << " \\\\\n";
  }
  os << "\\bottomrule\n\\end{tabular}\n";
  return os.str();
}

// ------------------------------------------------------------------- strata

json strata_to_json(const Analysis& an, const StratumReport& report) {
  json strata = json::array();
  for (const auto& st : report.strata) {
    json cls = json::array();
    for (int c : st.classes) cls.push_back(c);
    strata.push_back(json{{"basis", lattice_to_json(st.L)},
                          {"classes", cls},
                          {"generic_rank", st.generic_rank}});
  }
  json classes = json::array();
  for (const auto& sa : an.sub_analyses) classes.push_back(subgroup_analysis_to_json(an, sa));
  return json{{"group", json::parse(an.spec.canonical_json())},
              {"classes", classes},
              {"strata", strata}};
}

std::string strata_to_text(const Analysis& an, const StratumReport& report) {
  std::ostringstream os;
  os << "strata of " << an.G.name << " (" << report.strata.size()
     << " distinct intersection lattices)\n";
  for (const auto& st : report.strata) {
    os << "  generic rank " << st.generic_rank << "  classes " << witness_names(an, st.classes)
       << "  basis " << lattice_brief(st.L) << "\n";
  }
  return os.str();
}

// ------------------------------------------------------------------- tables

json table_to_json(const GroupSpec& spec, const FiniteGroup& G, const ClassInfo& classes,
                   const CharacterTable& T) {
  json cls = json::array();
  for (const auto& c : classes.classes)
    cls.push_back(json{{"rep", G.element_name(c.rep)},
                       {"size", c.size()},
                       {"order", G.element_order[c.rep]}});
  json chars = json::array();
  for (const auto& row : T.values) {
    json r = json::array();
    for (const auto& v : row) r.push_back(cyc_to_json(v));
    chars.push_back(r);
  }
  const char* source = T.source == CharacterTable::Source::Catalog  ? "catalog"
                       : T.source == CharacterTable::Source::Dixon ? "dixon"
                                                                   : "imported";
  return json{{"group_hash", group_hash(spec)},
              {"group", json::parse(spec.canonical_json())},
              {"order", G.n},
              {"source", source},
              {"classes", cls},
              {"degrees", T.degrees},
              {"chars", chars}};
}

CharacterTable table_from_json(const json& j) {
  if (!j.is_object() || !j.contains("classes") || !j.contains("chars"))
    throw SpecError("character table JSON needs classes and chars");
  std::vector<int> sizes;
  long order = 0;
  for (const auto& c : j.at("classes")) {
    int s = c.at("size").get<int>();
    if (s <= 0) throw SpecError("class size must be positive");
    sizes.push_back(s);
    order += s;
  }
  const int k = static_cast<int>(sizes.size());
  if (k == 0) throw SpecError("character table with no classes");
  if (sizes[0] != 1) throw SpecError("first class must be the identity class");
  CharacterTable T;
  T.source = CharacterTable::Source::Imported;
  for (const auto& row : j.at("chars")) {
    if (static_cast<int>(row.size()) != k)
      throw SpecError("character row length differs from class count");
    std::vector<CycNum> vals;
    for (const auto& v : row) vals.push_back(cyc_from_json(v));
    auto deg = vals[0].as_rational();
    if (!deg || !is_integer(*deg) || *deg <= 0)
      throw SpecError("character degree at the identity is not a positive integer");
    T.degrees.push_back(static_cast<int>(to_long(to_int(*deg))));
    T.values.push_back(std::move(vals));
  }
  if (T.count() != k) throw SpecError("character count differs from class count");
  // Re-verify orthogonality from the serialized data; trust nothing.
  Int sum_sq = 0;
  for (int d : T.degrees) sum_sq += Int(d) * Int(d);
  if (sum_sq != order) throw SpecError("sum of squared degrees does not equal the order");
  for (int i = 0; i < k; ++i)
    for (int jj = i; jj < k; ++jj) {
      CycNum acc;
      for (int c = 0; c < k; ++c)
        acc += CycNum::from_int(sizes[c]) * T.values[i][c] * T.values[jj][c].conj();
      acc = acc * CycNum::from_rational(Rat(1, order));
      if (acc != CycNum::from_int(i == jj ? 1 : 0))
        throw SpecError("imported table fails row orthogonality");
    }
  for (int c = 0; c < k; ++c)
    for (int c2 = c; c2 < k; ++c2) {
      CycNum acc;
      for (int i = 0; i < k; ++i) acc += T.values[i][c] * T.values[i][c2].conj();
      CycNum expect =
          c == c2 ? CycNum::from_rational(Rat(order, sizes[c])) : CycNum::from_int(0);
      if (acc != expect) throw SpecError("imported table fails column orthogonality");
    }
  return T;
}

// ------------------------------------------------------------------- claims

std::vector<Claim> claims_from_json(const json& j) {
  if (!j.is_object() || !j.contains("claims")) throw SpecError("claims file needs a claims array");
  std::vector<Claim> out;
  for (const auto& c : j.at("claims")) {
    Claim claim;
    claim.label = c.at("label").get<std::string>();
    for (const auto& name : c.at("classes")) claim.classes.push_back(name.get<std::string>());
    for (const auto& gen : c.at("generators")) claim.generators.push_back(intvec_from_json(gen));
    out.push_back(std::move(claim));
  }
  return out;
}

MackeyCoefficients mackey_from_json(const Analysis& an, const json& j) {
  if (j.is_object() && j.value("burnside", false)) return MackeyCoefficients::burnside(an);
  MackeyCoefficients M = MackeyCoefficients::zero(an);
  if (!j.is_object() || !j.contains("coefficients"))
    throw SpecError("Mackey coefficients need a coefficients object or burnside:true");
  for (auto it = j.at("coefficients").begin(); it != j.at("coefficients").end(); ++it) {
    int cid = an.class_by_name(it.key());
    for (const auto& entry : it.value()) {
      MackeySignChar msc;
      for (const auto& s : entry.at("signs")) msc.signs.push_back(s.get<int>());
      msc.multiplicity = int_from_json(entry.at("multiplicity"));
      M.per_class[cid].push_back(std::move(msc));
    }
  }
  validate_mackey(an, M);
  return M;
}

// -------------------------------------------------------------- verify text

json verification_to_json(const Analysis& an, const VerificationReport& rep,
                          const OracleCheck& oracle) {
  json claims = json::array();
  for (const auto& c : rep.claims) {
    json gens = json::array();
    for (const auto& g : c.generators) {
      json per = json::array();
      for (const auto& pc : g.per_class)
        per.push_back(json{{"class", an.subs[pc.class_id].name},
                           {"null", pc.null},
                           {"oriented", pc.oriented}});
      gens.push_back(json{{"vector", intvec_to_json(g.vec)},
                          {"member", g.member},
                          {"conditions", per}});
    }
    claims.push_back(json{{"label", c.label},
                          {"confirmed", c.confirmed},
                          {"generators_ok", c.generators_ok},
                          {"span_equal", c.span_equal},
                          {"relation", c.relation},
                          {"computed", lattice_to_json(c.computed)},
                          {"claimed_span", lattice_to_json(c.claimed_span)},
                          {"generators", gens}});
  }
  json o = json{{"available", oracle.available},
                {"compared_dims", oracle.compared_dims},
                {"compared_dets", oracle.compared_dets},
                {"mismatches", oracle.mismatches}};
  return json{{"group", an.G.name},
              {"all_confirmed", rep.all_confirmed},
              {"claims", claims},
              {"oracle", o}};
}

std::string verification_to_text(const Analysis& an, const VerificationReport& rep,
                                 const OracleCheck& oracle) {
  std::ostringstream os;
  os << "verification report for " << an.G.name << " (" << rep.claims.size() << " claims)\n";
  int confirmed = 0;
  for (const auto& c : rep.claims) {
    if (c.confirmed) {
      ++confirmed;
      os << "  [CONFIRMED] " << c.label << "\n";
      continue;
    }
    os << "  [DISAGREES] " << c.label << "\n";
    os << "      relation: " << c.relation << "\n";
    os << "      computed: " << lattice_brief(c.computed) << "\n";
    os << "      claimed:  " << lattice_brief(c.claimed_span) << "\n";
    for (const auto& g : c.generators) {
      if (g.member) continue;
      os << "      generator " << vec_brief(g.vec) << " fails:";
      for (const auto& pc : g.per_class) {
        if (pc.null && pc.oriented) continue;
        os << " at " << an.subs[pc.class_id].name << " (";
        if (!pc.null) os << "alpha^H != 0";
        if (!pc.null && !pc.oriented) os << ", ";
        if (!pc.oriented) os << "not oriented";
        os << ")";
      }
      os << "\n";
    }
  }
  if (oracle.available) {
    os << "matrix oracle: " << oracle.compared_dims << " fixed dimensions and "
       << oracle.compared_dets << " determinants recomputed, " << oracle.mismatches.size()
       << " disagreements with the character-theoretic path\n";
    for (const auto& m : oracle.mismatches) os << "  oracle mismatch: " << m << "\n";
  } else {
    os << "matrix oracle: no catalog matrix model for this group\n";
  }
  os << "summary: " << confirmed << "/" << rep.claims.size() << " claims confirmed\n";
  return os.str();
}

std::string rank_to_text(const Analysis& an, const RankResult& res) {
  std::ostringstream os;
  os << "r = " << res.rank << "; witnesses: " << witness_names(an, res.witnesses) << "\n";
  return os.str();
}

// ------------------------------------------------------------------- slices

std::string render_slice_tsv(const Analysis& an, const SliceSpec& spec) {
  if (spec.axis_i == spec.axis_j) throw SpecError("slice axes must differ");
  if (spec.axis_i < 0 || spec.axis_i >= an.r() || spec.axis_j < 0 || spec.axis_j >= an.r())
    throw SpecError("slice axis out of range");
  std::ostringstream os;
  os << "i\tj\trank\twitnesses\n";
  if (spec.lo > spec.hi) return os.str();
  VirtualRep alpha;
  alpha.a = spec.fixed;
  alpha.a.resize(static_cast<size_t>(an.r()), Int(0));
  for (long x = spec.lo; x <= spec.hi; ++x)
    for (long y = spec.lo; y <= spec.hi; ++y) {
      alpha.a[spec.axis_i] = x;
      alpha.a[spec.axis_j] = y;
      RankResult res = rank_at(an, alpha);
      os << x << "\t" << y << "\t" << res.rank << "\t" << witness_ids(res.witnesses) << "\n";
    }
  return os.str();
}

std::string render_slice_svg(const Analysis& an, const SliceSpec& spec) {
  if (spec.axis_i == spec.axis_j) throw SpecError("slice axes must differ");
  if (spec.axis_i < 0 || spec.axis_i >= an.r() || spec.axis_j < 0 || spec.axis_j >= an.r())
    throw SpecError("slice axis out of range");
  static const char* palette[] = {"#000000", "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f", "#17becf"};
  const int n_colors = 10;
  const long span = spec.hi >= spec.lo ? spec.hi - spec.lo : 0;
  const int margin = 48, cell = 26, radius = 6;
  const int plot = static_cast<int>(span) * cell;
  const int legend_w = 220;
  const int width = 2 * margin + plot + legend_w;
  const int height = 2 * margin + plot;

  struct Dot {
    long x, y;
    int color;
  };
  std::vector<Dot> dots;
  std::map<std::vector<int>, int> color_of;  // witness set -> palette index
  std::vector<std::vector<int>> legend;      // in color order

  if (spec.hi >= spec.lo) {
    VirtualRep alpha;
    alpha.a = spec.fixed;
    alpha.a.resize(static_cast<size_t>(an.r()), Int(0));
    // First pass: collect witness sets, assign colors in sorted order.
    std::set<std::vector<int>> seen;
    for (long x = spec.lo; x <= spec.hi; ++x)
      for (long y = spec.lo; y <= spec.hi; ++y) {
        alpha.a[spec.axis_i] = x;
        alpha.a[spec.axis_j] = y;
        RankResult res = rank_at(an, alpha);
        if (res.rank > 0) seen.insert(res.witnesses);
      }
    for (const auto& w : seen) {
      int idx = static_cast<int>(legend.size());
      color_of[w] = idx % n_colors;
      legend.push_back(w);
    }
    for (long x = spec.lo; x <= spec.hi; ++x)
      for (long y = spec.lo; y <= spec.hi; ++y) {
        alpha.a[spec.axis_i] = x;
        alpha.a[spec.axis_j] = y;
        RankResult res = rank_at(an, alpha);
        if (res.rank > 0) dots.push_back({x, y, color_of.at(res.witnesses)});
      }
  }

  auto px = [&](long x) { return margin + static_cast<int>(x - spec.lo) * cell; };
  auto py = [&](long y) { return margin + static_cast<int>(spec.hi - y) * cell; };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
     << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  os << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"#ffffff\"/>\n";
  os << "<title>" << an.G.name << " slice (" << an.irreps[spec.axis_i].name << ", "
     << an.irreps[spec.axis_j].name << ")</title>\n";
  if (spec.hi >= spec.lo) {
    // axes through 0 when visible, else along the box edge
    long ax = spec.lo <= 0 && 0 <= spec.hi ? 0 : spec.lo;
    os << "<line x1=\"" << px(spec.lo) << "\" y1=\"" << py(ax) << "\" x2=\"" << px(spec.hi)
       << "\" y2=\"" << py(ax) << "\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
    os << "<line x1=\"" << px(ax) << "\" y1=\"" << py(spec.lo) << "\" x2=\"" << px(ax)
       << "\" y2=\"" << py(spec.hi) << "\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
    os << "<text x=\"" << px(spec.hi) + 10 << "\" y=\"" << py(ax) + 4
       << "\" font-size=\"13\">" << an.irreps[spec.axis_i].name << "</text>\n";
    os << "<text x=\"" << px(ax) - 4 << "\" y=\"" << py(spec.hi) - 8
       << "\" font-size=\"13\">" << an.irreps[spec.axis_j].name << "</text>\n";
  }
  for (const Dot& d : dots)
    os << "<circle cx=\"" << px(d.x) << "\" cy=\"" << py(d.y) << "\" r=\"" << radius
       << "\" fill=\"" << palette[d.color] << "\"/>\n";
  int ly = margin;
  int lx = 2 * margin + plot;
  for (size_t i = 0; i < legend.size(); ++i) {
    os << "<circle cx=\"" << lx << "\" cy=\"" << ly << "\" r=\"" << radius << "\" fill=\""
       << palette[i % n_colors] << "\"/>\n";
    os << "<text x=\"" << lx + 14 << "\" y=\"" << ly + 4 << "\" font-size=\"12\">"
       << witness_names(an, legend[i]) << "</text>\n";
    ly += 22;
  }
  os << "</svg>\n";
  return os.str();
}

// -------------------------------------------------------------------- cache

std::string group_hash(const GroupSpec& spec) { return hex64(fnv1a64(spec.canonical_json())); }

CacheConfig cache_config(bool disable) {
  CacheConfig cfg;
  cfg.enabled = !disable;
  if (const char* dir = std::getenv("STEMRANK_CACHE_DIR")) {
    cfg.dir = dir;
  } else if (const char* xdg = std::getenv("XDG_CACHE_HOME")) {
    cfg.dir = std::string(xdg) + "/stemrank";
  } else if (const char* home = std::getenv("HOME")) {
    cfg.dir = std::string(home) + "/.cache/stemrank";
  } else {
    cfg.enabled = false;
  }
  return cfg;
}

namespace {

json orientation_to_cache(const OrientationData& od) {
  json bits = json::array();
  for (const auto& row : od.bits) {
    json r = json::array();
    for (uint8_t b : row) r.push_back(static_cast<int>(b));
    bits.push_back(r);
  }
  return json{{"class_id", od.class_id},
              {"weyl_order", od.weyl_order},
              {"generators", od.generators},
              {"bits", bits},
              {"e2_rank", od.e2_rank}};
}

OrientationData orientation_from_cache(const json& j) {
  OrientationData od;
  od.class_id = j.at("class_id").get<int>();
  od.weyl_order = j.at("weyl_order").get<int>();
  od.generators = j.at("generators").get<std::vector<int>>();
  for (const auto& row : j.at("bits")) {
    std::vector<uint8_t> r;
    for (const auto& b : row) r.push_back(static_cast<uint8_t>(b.get<int>()));
    od.bits.push_back(std::move(r));
  }
  od.e2_rank = j.at("e2_rank").get<int>();
  return od;
}

std::string cache_key(const GroupSpec& spec) {
  return hex64(fnv1a64(std::string(kToolVersion) + "|" + spec.canonical_json()));
}

Analysis assemble_from_cache(const GroupSpec& spec, const json& j, int order_cap) {
  if (j.at("version").get<std::string>() != kToolVersion)
    throw SpecError("cache entry from another tool version");
  if (j.at("spec").dump() != json::parse(spec.canonical_json()).dump())
    throw SpecError("cache entry for another group");
  Analysis an;
  an.spec = spec;
  an.G = build_group(spec, order_cap);
  an.classes = conjugacy_classes(an.G);
  an.table = table_from_json(j.at("table"));
  an.table.source = j.at("table").at("source").get<std::string>() == "catalog"
                        ? CharacterTable::Source::Catalog
                        : CharacterTable::Source::Dixon;
  verify_character_table(an.G, an.classes, an.table);
  an.subs = subgroup_classes(an.G);
  for (const auto& sub : an.subs) an.weyls.push_back(weyl_group(an.G, sub));
  an.irreps = real_irreps(an.G, an.classes, an.table, &an.spec);
  const int r = an.r();
  for (const auto& sj : j.at("sub_analyses")) {
    SubgroupAnalysis sa;
    sa.class_id = sj.at("class_id").get<int>();
    sa.d.class_id = sa.class_id;
    sa.d.d = intvec_from_json(sj.at("d"));
    sa.orient = orientation_from_cache(sj.at("orientation"));
    sa.N = lattice_from_json(sj.at("N"));
    sa.N_plus = lattice_from_json(sj.at("N_plus"));
    sa.plus_index = int_from_json(sj.at("plus_index"));
    if (static_cast<int>(sa.d.d.size()) != r || sa.N.ambient != r || sa.N_plus.ambient != r ||
        sa.N.rank() != r - 1 || static_cast<int>(sa.orient.bits.size()) != r)
      throw SpecError("cache entry has inconsistent shapes");
    auto idx = lattice_index(sa.N, sa.N_plus);
    if (!idx || *idx != sa.plus_index) throw SpecError("cache entry has a broken index");
    an.sub_analyses.push_back(std::move(sa));
  }
  if (an.sub_analyses.size() != an.subs.size())
    throw SpecError("cache entry misses subgroup classes");
  return an;
}

json analysis_to_cache(const Analysis& an) {
  json sas = json::array();
  for (const auto& sa : an.sub_analyses)
    sas.push_back(json{{"class_id", sa.class_id},
                       {"d", intvec_to_json(sa.d.d)},
                       {"orientation", orientation_to_cache(sa.orient)},
                       {"N", lattice_to_json(sa.N)},
                       {"N_plus", lattice_to_json(sa.N_plus)},
                       {"plus_index", int_to_json(sa.plus_index)}});
  return json{{"version", kToolVersion},
              {"spec", json::parse(an.spec.canonical_json())},
              {"table", table_to_json(an.spec, an.G, an.classes, an.table)},
              {"sub_analyses", sas}};
}

}  // namespace

Analysis analyze_cached(const GroupSpec& spec, const CacheConfig& cache, int order_cap) {
  if (!cache.enabled) return analyze(spec, order_cap);
  namespace fs = std::filesystem;
  fs::path path = fs::path(cache.dir) / (cache_key(spec) + ".json");
  std::error_code ec;
  if (fs::exists(path, ec)) {
    try {
      std::ifstream in(path);
      json j = json::parse(in);
      return assemble_from_cache(spec, j, order_cap);
    } catch (const CapError&) {
      throw;
    } catch (const std::exception&) {
      // corrupt or stale entry: fall through and recompute
    }
  }
  Analysis an = analyze(spec, order_cap);
  fs::create_directories(cache.dir, ec);
  if (!ec) {
    fs::path tmp = path;
    tmp += ".tmp";
    std::ofstream out(tmp);
    if (out) {
      out << analysis_to_cache(an).dump();
      out.close();
      fs::rename(tmp, path, ec);
      if (ec) fs::remove(tmp, ec);
    }
  }
  return an;
}

// ------------------------------------------------------------------ parsing

VirtualRep parse_alpha(const Analysis& an, const std::string& text) {
  VirtualRep alpha;
  alpha.a.assign(static_cast<size_t>(an.r()), Int(0));
  if (text.empty()) throw SpecError("empty alpha");
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) parts.push_back(tok);
  bool named = text.find('=') != std::string::npos;
  if (named) {
    for (const auto& part : parts) {
      auto eq = part.find('=');
      if (eq == std::string::npos) throw SpecError("mixed named and positional coordinates");
      std::string name = part.substr(0, eq);
      alpha.a[an.irrep_by_name(name)] = Int(part.substr(eq + 1));
    }
  } else {
    if (static_cast<int>(parts.size()) != an.r())
      throw SpecError("alpha needs exactly " + std::to_string(an.r()) + " coordinates");
    for (size_t i = 0; i < parts.size(); ++i) {
      try {
        alpha.a[i] = Int(parts[i]);
      } catch (const std::invalid_argument&) {
        throw SpecError("bad integer in alpha: " + parts[i]);
      }
    }
  }
  return alpha;
}

}  // namespace stemrank
