#pragma once

#include "cohomoforge/depth.hpp"

#include <string_view>

namespace cohomoforge {

inline constexpr std::string_view report_schema = "report.v1";
inline constexpr std::string_view certificate_schema = "certificate.v1";

// JSON text with sorted keys; indent < 0 gives the compact form used for hashing.
// Wall-times only appear in the report's "timing" block.
[[nodiscard]] std::string eta_certificate_json(const EtaCertificate& c, int indent = 2);
[[nodiscard]] std::string coboundary_json(const CoboundaryCertificate& c, int indent = 2);
[[nodiscard]] std::string detection_json(const DetectionOutcome& d, int indent = 2);
[[nodiscard]] std::string report_json(const DepthReport& r, int indent = 2, bool with_timing = true);

[[nodiscard]] std::string certificate_hash(const EtaCertificate& c);
[[nodiscard]] std::string certificate_hash(const CoboundaryCertificate& c);
[[nodiscard]] std::string certificate_hash(const DetectionOutcome& d);

[[nodiscard]] std::string describe_subgroup(const Subgroup& s);

} // namespace cohomoforge
