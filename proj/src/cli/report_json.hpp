#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "evdom/domination.hpp"

namespace evdom::cli {

using Json = nlohmann::ordered_json;

Json to_json(const Vector& v);
Json to_json(const HypothesisReport& h);
/// Keys: kind, spb_a, spb_b, certified_t1, certified_delta, empirical_t1,
/// witness {x, t}, hypotheses. Absent optionals are omitted.
Json to_json(const DominationVerdict& v);
Json to_json(const CertifiedTimeReport& r, const std::vector<VerificationPoint>& checks);
Json to_json(const EmpiricalReport& r);
Json to_json(const OrbitReport& r);

/// Like Json::dump, but floating-point numbers are written with 17
/// significant digits. Non-finite values become null. indent < 0 is compact.
std::string dump17(const Json& j, int indent = 2);

}  // namespace evdom::cli
