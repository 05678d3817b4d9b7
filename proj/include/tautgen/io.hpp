#pragma once

// JSON artifacts, all tagged "format": "tautgen/1". Readers throw InputError on
// malformed or mismatched documents.

#include <string>

#include "json.hpp"
#include "tautgen/period_engine.hpp"

namespace tautgen {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFormat = "tautgen/1";

Json to_json(const FanData& fan);
FanData fan_from_json(const Json& j);

Json to_json(const FlagInput& flag);
FlagInput flag_from_json(const Json& j);

Json to_json(const TautSystem& system);
TautSystem system_from_json(const Json& j);

Json to_json(const FormalSeries& s);
FormalSeries formal_series_from_json(const Json& j);

Json to_json(const PeriodSeries& p);
PeriodSeries period_from_json(const Json& j);

Json to_json(const VerificationReport& r, const TautSystem& system);
VerificationReport report_from_json(const Json& j);

Json read_json_file(const std::string& path);
/// Two-space indent, trailing newline.
void write_json_file(const std::string& path, const Json& j);

}  // namespace tautgen
