#pragma once

namespace singseries {

inline constexpr const char* version_string = "0.1.0";

// Version of the CSV/JSON artifact layout, embedded in every output file.
// Bump when a field is added, removed, or changes meaning.
inline constexpr int artifact_schema_version = 1;

}  // namespace singseries
