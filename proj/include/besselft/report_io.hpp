#pragma once

// Canonical text, JSON and CSV forms of function values and verification reports.

#include <string>
#include <vector>

#include "besselft/identities.hpp"

namespace besselft {

inline constexpr int kReportSchemaVersion = 1;

std::string format_number(double v);  // %.17g
std::string format_complex(cplx v);   // a+bi, both parts %.17g
// Accepts a, bi, a+bi, a-bi, i, -i. ParseError on anything else.
cplx parse_complex(const std::string& text);

// One function evaluation with its inputs echoed.
struct EvalRecord {
  std::string function;
  ParamList inputs;  // order and z, as given
  double arg = 0.0;  // branch of arg z actually used
  EvalResult result;
};

std::string eval_to_text(const EvalRecord& e);
std::string eval_to_json(const EvalRecord& e);
std::string eval_to_csv(const EvalRecord& e);  // header plus one row

std::string report_to_text(const VerificationReport& r);
std::string report_to_json(const VerificationReport& r);
VerificationReport report_from_json(const std::string& json);

std::string sweep_to_text(const SweepSummary& s);
std::string sweep_to_json(const std::string& tag, const SweepSummary& s);
// Header row plus one row per report and a trailing summary row (none for an empty sweep).
std::string sweep_to_csv(const std::string& tag, const SweepSummary& s);

// The diagnostic recorded for a numerical failure, or "".
std::string failure_reason(const VerificationReport& r);

}  // namespace besselft
