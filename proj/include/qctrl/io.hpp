// io.hpp: JSON system documents and analysis reports.
//
// System document:
//   { "dim": N,
//     "h0": {"re": [[...]], "im": [[...]]},
//     "controls": [ {"re": ..., "im": ...}, ... ],
//     "labels": ["g", "e", ...],                      (optional)
//     "tolerances": {"zero": 1e-10, "degeneracy": 1e-8} }   (optional)
// "im" may be omitted for real matrices.

#pragma once

#include "qctrl/criteria.hpp"
#include "qctrl/system.hpp"

#include <string>
#include <string_view>

namespace qctrl {

// Malformed document. The message carries a line/column or a field path.
class ParseError : public Error {
 public:
  using Error::Error;
};

struct ReportDocument {
  ControllabilityReport report;
  Eigen::Index dim = 0;
  std::string tool_version;
  std::string input_digest;  // "sha256:<hex>" of the analyzed input
};

std::string_view tool_version();

// Missing "tolerances" fields fall back to `defaults`. Throws ParseError for
// structural problems and ValidationError / DimensionError when the decoded
// system violates its invariants.
HamiltonianSystem parse_system(std::string_view text, const Tolerances& defaults = {});
// parse_system without the final validate(), for callers that still adjust
// tolerances.
HamiltonianSystem decode_system(std::string_view text, const Tolerances& defaults = {});
std::string serialize_system(const HamiltonianSystem& system);

std::string serialize_report(const ReportDocument& doc);
ReportDocument parse_report(std::string_view text);

// Plain-text rendering for terminals.
std::string format_report_text(const ReportDocument& doc);

std::string sha256_hex(std::string_view bytes);

}  // namespace qctrl
