#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "ssbsim/experiments.hpp"
#include "ssbsim/tomography.hpp"
#include "ssbsim/verify.hpp"

namespace ssbsim {

using Json = nlohmann::json;

Json to_json(const ExperimentConfig& config);
Json to_json(const TomographyResult& result);
Json to_json(const ComparisonReport& report);
Json to_json(const VerificationReport& report);
Json matrix_to_json(const Mat& m);

/// The simulate result document: config echo, per-outcome counts, the exact
/// ensemble with its purity and target fidelity, kept/discarded statistics,
/// and nullable tomography and comparison sections.
Json result_document(const ExperimentResult& result,
                     const std::optional<ComparisonReport>& comparison);

/// Canonical serialization: object keys sorted, every float rendered with 17
/// significant digits, one trailing newline. Byte-identical for equal values.
std::string canonical_json(const Json& value);

/// CSV with header "setting,outcome,count"; settings in schedule order,
/// outcomes in canonical order, zero-count rows included.
std::string counts_to_csv(const CountsTable& table);

/// Parses the CSV format above. Throws DataError naming the offending line;
/// requires equal per-setting shot totals.
CountsTable counts_from_csv(std::istream& in);

}  // namespace ssbsim
