#ifndef FFABC_REPORT_HPP
#define FFABC_REPORT_HPP

#include <string>

#include "json.hpp"

#include "ffabc/counting.hpp"
#include "ffabc/exceptional.hpp"
#include "ffabc/geometry.hpp"
#include "ffabc/heights.hpp"
#include "ffabc/logderiv.hpp"
#include "ffabc/verifier.hpp"

namespace ffabc {

/* All reports are ordered trees: field order is fixed by the serializers, so
 * a rendered report is byte-stable for equal inputs. */
using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "ffabc-report/1";

// {"schema": ..., "command": ...}; every top-level report starts here.
Json report_envelope(const std::string& command);

Json to_json(const Place& p);
Json to_json(const PlaceSet& s);
Json to_json(const CountingBreakdown& c);
Json to_json(const GcdCount& c);
Json to_json(const DivisorDecomposition& d);
Json to_json(const PolyHeight& h);
Json to_json(const UnitSumReport& r);
Json to_json(const UnitRelation& r);
Json to_json(const LambdaConstraint& c);
Json to_json(const ExceptionalCurve& c);
Json to_json(const ExceptionalSetDescription& d);
Json to_json(const MemberResult& m);
Json to_json(const SpecializationCertificate& c);
Json to_json(const HypothesisReport& r);
Json to_json(const VerificationReport& r);
Json to_json(const RelationScan& r);
Json to_json(const GcdConclusionReport& r);
Json to_json(const RamifiedCoverReport& r);

// dump with two-space indentation and a trailing newline
std::string render_report(const Json& j);

}  // namespace ffabc

#endif
