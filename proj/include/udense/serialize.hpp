#pragma once

// JSON and CSV views of the library types. JSON objects are emitted with
// sorted keys and fixed field names, so a byte comparison of two dumps is a
// meaningful equality check once the volatile fields (timestamp, runtime)
// are dropped. Mantissas travel as decimal strings: they are unbounded.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "udense/audit_report.hpp"
#include "udense/chaos_audit.hpp"
#include "udense/ctype.hpp"
#include "udense/density.hpp"
#include "udense/furstenberg.hpp"
#include "udense/index_set.hpp"
#include "udense/prop3.hpp"
#include "udense/sparse_thick.hpp"
#include "udense/sparse_vector.hpp"
#include "udense/weight_sequence.hpp"

namespace udense {

inline constexpr int schema_version = 1;

nlohmann::json weight_to_json(const WeightSequence& a);
WeightSequence weight_from_json(const nlohmann::json& j);

nlohmann::json index_set_to_json(const IndexSet& s);
IndexSet index_set_from_json(const nlohmann::json& j);

nlohmann::json sparse_vector_to_json(const SparseVector& x);
SparseVector sparse_vector_from_json(const nlohmann::json& j);

nlohmann::json levels_to_json(const CPlusOneLevels& levels);
CPlusOneLevels levels_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const AuditReport& report);
nlohmann::json profile_to_json(const DensityProfile& profile);
nlohmann::json gap_report_to_json(const GapReport& gaps);
nlohmann::json prop3_input_to_json(const Prop3Input& input);
nlohmann::json sparse_thick_to_json(const SparseThickSet& sts);
nlohmann::json margin_rows_to_json(const std::vector<ChaosMarginRow>& rows);

std::string profile_to_csv(const DensityProfile& profile);
std::string margin_rows_to_csv(const std::vector<ChaosMarginRow>& rows);

// Doubles that JSON cannot carry (infinities, NaN) become null; everything
// else uses the shortest round-trip digits.
nlohmann::json json_number(double value);

} // namespace udense
