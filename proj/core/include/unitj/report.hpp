#pragma once

// Structured output: every CLI invocation emits one self-describing JSON
// document with a schema version. Reals render as decimal strings at a
// fixed digit count (no locale, no platform float formatting), LogValues
// as {level, sign, magnitude}; given the same inputs and seed the bytes
// are identical run to run.

#include <json.hpp>

#include "unitj/bounds.hpp"
#include "unitj/halfplane.hpp"
#include "unitj/hecke.hpp"
#include "unitj/numeric.hpp"

namespace unitj {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;
constexpr size_t kReportDigits = 30;

Json json_real(const Real& x, size_t digits = kReportDigits);
Json json_logvalue(const LogValue& v, size_t digits = kReportDigits);
Json json_matrix(const UnimodularMatrix& g);
Json json_point(const HPoint& p, size_t digits = kReportDigits);
Json json_cluster_report(const ClusterReport& rep, size_t digits = kReportDigits);
Json json_final_bound(const FinalBound& fb, size_t digits = kReportDigits);

// the envelope every command uses
Json make_document(const std::string& command, mpfr_prec_t precision_bits);

}  // namespace unitj
