#pragma once

namespace hoferlike {

inline constexpr const char* kToolkitVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

}  // namespace hoferlike
