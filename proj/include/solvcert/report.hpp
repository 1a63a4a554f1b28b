#pragma once

// JSON report fragments. Keys are emitted in insertion order so a report is a
// pure function of its inputs; the only volatile field is provenance.timestamp.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "solvcert/boundary.hpp"
#include "solvcert/threebus.hpp"

namespace solvcert::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kToolVersion = "0.1.0";

/// Throws std::logic_error for NaN or infinity; reports carry finite numbers only.
Json number(double x);
Json complex(Complex z);
Json complex_vector(const CVector& v);

Json to_json(const NetworkClass& cls);
Json to_json(const TheoremVerdict& v);
Json to_json(const std::vector<TheoremVerdict>& verdicts);
/// Counts and histogram only; candidates go to "witnesses".
Json probe_summary(const ProbeReport& probe);
Json to_json(const FlatEdgeWitness& w);
/// p_max null (with "p_max_unbounded": true) when no witness was found.
Json to_json(const SubsetBounds& b, const Network& net);
/// Metrics only, no point list.
Json to_json(const SliceReport& s);
Json to_json(const threebus::CrossValidation& cv);

Json provenance(std::uint64_t seed, const Tolerances& tol, std::size_t samples, const std::string& command,
                const std::optional<std::string>& timestamp);

/// One of "theorem-certified", "no-violation-found(N samples)", "witness-found".
/// Without a probe and without an applicable theorem the set is "not-probed".
std::string set_conclusion(SolvabilitySet set, const std::vector<TheoremVerdict>& verdicts,
                           const ProbeReport* probe);

std::string utc_timestamp();

}  // namespace solvcert::report
