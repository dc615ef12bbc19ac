#pragma once

namespace amenkit {

inline constexpr char tool_name[]    = "amenkit";
inline constexpr char tool_version[] = "0.1.0";

// Report schema version; bump on any incompatible change to the JSON layout.
inline constexpr int report_schema = 1;

}  // namespace amenkit
