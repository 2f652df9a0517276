#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "stemrank/strata.hpp"

namespace stemrank {

inline constexpr const char* kToolVersion = "0.1.0";

// ----------------------------------------------------------------- slices

struct SliceSpec {
  int axis_i = 0;  // 0-based irrep indices, axis_i != axis_j
  int axis_j = 1;
  std::vector<Int> fixed;  // full-length coordinate vector; axis entries ignored
  long lo = -10;
  long hi = 10;
};

// Rows "i<TAB>j<TAB>rank<TAB>witnesses" over the inclusive box, witnesses
// ';'-joined class ids.  Byte-deterministic.
std::string render_slice_tsv(const Analysis& an, const SliceSpec& spec);

// Dot-per-nonzero-rank scatter, colored by witness set, with a legend.
std::string render_slice_svg(const Analysis& an, const SliceSpec& spec);

// ----------------------------------------------------------------- emitters

nlohmann::json cyc_to_json(const CycNum& v);
CycNum cyc_from_json(const nlohmann::json& j);
nlohmann::json lattice_to_json(const Lattice& L);
Lattice lattice_from_json(const nlohmann::json& j);

nlohmann::json analysis_to_json(const Analysis& an);
std::string analysis_to_text(const Analysis& an);
std::string analysis_to_tex(const Analysis& an);

// Parses an analyze-JSON document into typed values and re-serializes it;
// the result must be byte-identical for a well-formed document.
nlohmann::json analysis_json_roundtrip(const nlohmann::json& j);

nlohmann::json strata_to_json(const Analysis& an, const StratumReport& report);
std::string strata_to_text(const Analysis& an, const StratumReport& report);

nlohmann::json table_to_json(const GroupSpec& spec, const FiniteGroup& G,
                             const ClassInfo& classes, const CharacterTable& T);
// Standalone validation: degrees, row and column orthogonality from the
// serialized sizes alone.  Throws SpecError on malformed or inconsistent data.
CharacterTable table_from_json(const nlohmann::json& j);

std::vector<Claim> claims_from_json(const nlohmann::json& j);
MackeyCoefficients mackey_from_json(const Analysis& an, const nlohmann::json& j);

nlohmann::json verification_to_json(const Analysis& an, const VerificationReport& rep,
                                    const OracleCheck& oracle);
std::string verification_to_text(const Analysis& an, const VerificationReport& rep,
                                 const OracleCheck& oracle);

std::string rank_to_text(const Analysis& an, const RankResult& res);

// ----------------------------------------------------------------- cache

std::string group_hash(const GroupSpec& spec);

struct CacheConfig {
  bool enabled = true;
  std::string dir;
};

CacheConfig cache_config(bool disable);

// Cached analyze: content-addressed by (spec, tool version).  Hits are
// re-validated (table orthogonality) before reuse; corrupt entries are
// recomputed.  Byte-identical to the uncached path.
Analysis analyze_cached(const GroupSpec& spec, const CacheConfig& cache,
                        int order_cap = configured_order_cap());

// ----------------------------------------------------------------- parsing

VirtualRep parse_alpha(const Analysis& an, const std::string& text);

}  // namespace stemrank
