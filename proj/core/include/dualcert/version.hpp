#pragma once

#include <string_view>

namespace dualcert {

inline constexpr std::string_view kToolVersion = "dualcert 0.1.0";

/// Version of the certificate document layout.
inline constexpr std::string_view kCertificateSchemaVersion = "1.0";

}  // namespace dualcert
