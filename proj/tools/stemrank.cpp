// stemrank: exact ranks of RO(G)-graded rational stable stems.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "stemrank/report.hpp"

namespace {

using namespace stemrank;
using nlohmann::json;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot read file: " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw SpecError("invalid JSON in " + path + ": " + e.what());
  }
}

// "lo..hi"
std::pair<long, long> parse_range(const std::string& text) {
  auto pos = text.find("..");
  if (pos == std::string::npos) throw SpecError("range must look like lo..hi");
  try {
    long lo = std::stol(text.substr(0, pos));
    long hi = std::stol(text.substr(pos + 2));
    if (lo > hi) throw SpecError("empty range: " + text);
    return {lo, hi};
  } catch (const std::invalid_argument&) {
    throw SpecError("bad range: " + text);
  } catch (const std::out_of_range&) {
    throw SpecError("range endpoint out of range: " + text);
  }
}

int axis_index(const Analysis& an, const std::string& token) {
  // 1-based index or irrep name.
  bool numeric = !token.empty();
  for (char c : token)
    if (!isdigit(static_cast<unsigned char>(c))) numeric = false;
  if (numeric) {
    int i = std::stoi(token);
    if (i < 1 || i > an.r()) throw SpecError("irrep index out of range: " + token);
    return i - 1;
  }
  return an.irrep_by_name(token);
}

struct Options {
  bool no_cache = false;
  std::string group;
  std::string format = "text";
  std::string strata_format = "json";
  std::string alpha;
  std::string axes;
  std::vector<std::string> fixes;
  std::string range = "-10..10";
  std::string out = "tsv";
  std::string coeff_file;
  std::string claims_file;
  std::string table_file;
};

Analysis load_analysis(const Options& opt) {
  GroupSpec spec = parse_group_spec(opt.group);
  return analyze_cached(spec, cache_config(opt.no_cache));
}

int run_groups_list() {
  std::cout << "catalog groups:\n"
            << "  C<n>      cyclic of order n              (C2, C3, C12, ...)\n"
            << "  D<2n>     dihedral of order 2n           (D6, D10, D12, ...)\n"
            << "  Dic<n>    dicyclic of order 4n           (Dic2 = Q8, Dic3, ...)\n"
            << "  Q8        quaternion group of order 8\n"
            << "  K4        Klein four group\n"
            << "  S<n>      symmetric group on n letters   (S3, S4, ...)\n"
            << "  AxB       direct products                (C2xQ8, S3xC2, ...)\n"
            << "groups may also be given as JSON: {\"catalog\": \"Q8\"},\n"
            << "  {\"perm_generators\": [[1,0,3,2],[2,3,0,1]]}, {\"product\": [spec, ...]},\n"
            << "  or as a path to a JSON spec file.\n";
  return 0;
}

int run_analyze(const Options& opt) {
  Analysis an = load_analysis(opt);
  if (opt.format == "json")
    std::cout << analysis_to_json(an).dump(2) << "\n";
  else if (opt.format == "tex")
    std::cout << analysis_to_tex(an);
  else
    std::cout << analysis_to_text(an);
  return 0;
}

int run_rank(const Options& opt) {
  Analysis an = load_analysis(opt);
  RankResult res = rank_at(an, parse_alpha(an, opt.alpha));
  std::cout << rank_to_text(an, res);
  return 0;
}

int run_strata(const Options& opt) {
  Analysis an = load_analysis(opt);
  StratumReport rep = strata_report(an);
  if (opt.strata_format == "text")
    std::cout << strata_to_text(an, rep);
  else
    std::cout << strata_to_json(an, rep).dump(2) << "\n";
  return 0;
}

int run_slice(const Options& opt) {
  Analysis an = load_analysis(opt);
  SliceSpec spec;
  auto comma = opt.axes.find(',');
  if (opt.axes.empty() || comma == std::string::npos)
    throw SpecError("--axes needs two irreps, e.g. --axes 1,sigma");
  spec.axis_i = axis_index(an, opt.axes.substr(0, comma));
  spec.axis_j = axis_index(an, opt.axes.substr(comma + 1));
  std::tie(spec.lo, spec.hi) = parse_range(opt.range);
  spec.fixed.assign(static_cast<size_t>(an.r()), Int(0));
  for (const auto& fix : opt.fixes) {
    auto eq = fix.find('=');
    if (eq == std::string::npos) throw SpecError("--fix needs name=value");
    int idx = axis_index(an, fix.substr(0, eq));
    if (idx == spec.axis_i || idx == spec.axis_j)
      throw SpecError("--fix coordinate collides with an axis");
    spec.fixed[idx] = Int(fix.substr(eq + 1));
  }
  if (opt.out == "svg")
    std::cout << render_slice_svg(an, spec);
  else if (opt.out == "tsv")
    std::cout << render_slice_tsv(an, spec);
  else
    throw SpecError("--out must be tsv or svg");
  return 0;
}

int run_mackey(const Options& opt) {
  Analysis an = load_analysis(opt);
  MackeyCoefficients M = opt.coeff_file == "burnside"
                             ? MackeyCoefficients::burnside(an)
                             : mackey_from_json(an, read_json_file(opt.coeff_file));
  Int rank = mackey_rank(an, parse_alpha(an, opt.alpha), M);
  std::cout << "rank = " << rank.get_str() << "\n";
  return 0;
}

int run_verify(const Options& opt) {
  Analysis an = load_analysis(opt);
  json j = read_json_file(opt.claims_file);
  if (j.contains("group") && j.at("group").is_string() &&
      j.at("group").get<std::string>() != an.G.name)
    std::cerr << "warning: claims file is labeled for group " << j.at("group").get<std::string>()
              << "\n";
  VerificationReport rep = verify_claims(an, claims_from_json(j));
  OracleCheck oracle = oracle_cross_check(an);
  if (opt.format == "json")
    std::cout << verification_to_json(an, rep, oracle).dump(2) << "\n";
  else
    std::cout << verification_to_text(an, rep, oracle);
  if (!oracle.mismatches.empty()) return 4;
  return rep.all_confirmed ? 0 : 4;
}

int run_import_table(const Options& opt) {
  json j = read_json_file(opt.table_file);
  CharacterTable T = table_from_json(j);
  std::cout << "table ok: " << T.count() << " characters, degrees";
  for (int d : T.degrees) std::cout << " " << d;
  std::cout << "\n";
  if (j.contains("group")) {
    GroupSpec spec = group_spec_from_json_text(j.at("group").dump());
    FiniteGroup G = build_group(spec);
    ClassInfo classes = conjugacy_classes(G);
    verify_character_table(G, classes, T);
    if (j.contains("group_hash") && j.at("group_hash").get<std::string>() != group_hash(spec))
      throw SpecError("group_hash does not match the group spec");
    std::cout << "verified against group " << G.name << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact ranks of RO(G)-graded rational stable homotopy groups of spheres"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--no-cache", opt.no_cache, "disable the result cache");

  CLI::App* groups = app.add_subcommand("groups", "catalog information");
  groups->add_subcommand("list", "list catalog group names");

  CLI::App* analyze_cmd = app.add_subcommand("analyze", "full per-subgroup analysis");
  analyze_cmd->add_option("group", opt.group)->required();
  analyze_cmd->add_option("--format", opt.format)
      ->check(CLI::IsMember({"text", "json", "tex"}));

  CLI::App* rank_cmd = app.add_subcommand("rank", "rank of pi_alpha(S^0) rationally");
  rank_cmd->add_option("group", opt.group)->required();
  rank_cmd->add_option("--alpha", opt.alpha, "coordinates a1,a2,... or name=value pairs")
      ->required();

  CLI::App* strata_cmd = app.add_subcommand("strata", "intersection strata of the N_H^+");
  strata_cmd->add_option("group", opt.group)->required();
  strata_cmd->add_option("--format", opt.strata_format)
      ->check(CLI::IsMember({"text", "json"}));

  CLI::App* slice_cmd = app.add_subcommand("slice", "2-D slice of ranks (figure data)");
  slice_cmd->add_option("group", opt.group)->required();
  slice_cmd->add_option("--axes", opt.axes, "two irreps, by 1-based index or name")->required();
  slice_cmd->add_option("--fix", opt.fixes, "fix another coordinate, name=value");
  slice_cmd->add_option("--range", opt.range, "inclusive box, lo..hi (default -10..10)");
  slice_cmd->add_option("--out", opt.out)->check(CLI::IsMember({"tsv", "svg"}));

  CLI::App* mackey_cmd = app.add_subcommand("mackey-rank", "rank with Mackey coefficients");
  mackey_cmd->add_option("group", opt.group)->required();
  mackey_cmd->add_option("--alpha", opt.alpha)->required();
  mackey_cmd->add_option("--coeff", opt.coeff_file, "coefficients JSON file, or 'burnside'")
      ->required();

  CLI::App* verify_cmd = app.add_subcommand("verify", "check claimed lattices and generators");
  verify_cmd->add_option("group", opt.group)->required();
  verify_cmd->add_option("--claims", opt.claims_file)->required();
  verify_cmd->add_option("--format", opt.format)->check(CLI::IsMember({"text", "json"}));

  CLI::App* import_cmd = app.add_subcommand("import-table", "validate a character table JSON");
  import_cmd->add_option("file", opt.table_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (groups->parsed()) return run_groups_list();
    if (analyze_cmd->parsed()) return run_analyze(opt);
    if (rank_cmd->parsed()) return run_rank(opt);
    if (strata_cmd->parsed()) return run_strata(opt);
    if (slice_cmd->parsed()) return run_slice(opt);
    if (mackey_cmd->parsed()) return run_mackey(opt);
    if (verify_cmd->parsed()) return run_verify(opt);
    if (import_cmd->parsed()) return run_import_table(opt);
  } catch (const CapError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 3;
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
