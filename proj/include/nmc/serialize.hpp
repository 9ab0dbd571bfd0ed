#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "nmc/attacks.hpp"
#include "nmc/coding_scheme.hpp"
#include "nmc/gf2x.hpp"
#include "nmc/mc_code.hpp"
#include "nmc/outcome.hpp"
#include "nmc/table_code.hpp"
#include "nmc/tamper.hpp"

namespace nmc {

using ojson = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

std::string u64_to_hex(uint64_t v);
uint64_t hex_to_u64(const std::string& s);

ojson field_spec_to_json(const FieldSpec& f);
FieldSpec field_spec_from_json(const ojson& j);

// Hex-string array, index = power; bit-exact round trip including zeros.
ojson poly_to_json(const Poly& p);
Poly poly_from_json(const ojson& j);

ojson code_params_to_json(const CodeParams& p);
CodeParams code_params_from_json(const ojson& j);

ojson table_code_to_json(const TableCode& code);
TableCode table_code_from_json(const ojson& j);

ojson mc_code_to_json(const MonteCarloCode& code);
MonteCarloCode mc_code_from_json(const ojson& j);

// Versioned envelope accepting either code kind.
struct LoadedCode {
    std::string kind;
    std::shared_ptr<CodingScheme> code;
};
ojson code_to_json(const CodingScheme& code);
LoadedCode code_from_json(const ojson& j);

// include_tables=false replaces large lookup tables by an entry count;
// such specs are for reading reports, not for round-tripping.
ojson tamper_to_json(const TamperSpec& f, bool include_tables = true);
TamperSpec tamper_from_json(const ojson& j);

ojson outcome_dist_to_json(const OutcomeDist& d);
OutcomeDist outcome_dist_from_json(const ojson& j);

ojson swap_result_to_json(const SwapAttackResult& r);
ojson subset_outcome_to_json(const SubsetAttackOutcome& o);
ojson barrier_report_to_json(const BarrierReport& r);

// File helpers; write is atomic (temp file + rename).
ojson read_json_file(const std::string& path);
void write_file_atomic(const std::string& path, const std::string& bytes);

}  // namespace nmc
