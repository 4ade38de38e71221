#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "jlab/genericity.hpp"

namespace jlab {

inline constexpr const char* kToolVersion = "1.0.0";

using Json = nlohmann::json;

/// Envelope for every CLI result. Complex numbers are [re, im] arrays.
struct Report {
    std::string tool_version = kToolVersion;
    FoliationParams params;
    RunConfig cfg;
    Json payload;
    std::vector<std::string> warnings;
};

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);
Json point_to_json(const Point& p);
Point point_from_json(const Json& j);
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

void to_json(Json& j, const FoliationParams& p);
void from_json(const Json& j, FoliationParams& p);
void to_json(Json& j, const RunConfig& c);
void from_json(const Json& j, RunConfig& c);
void to_json(Json& j, const Counts& c);
void to_json(Json& j, const SingularPoint& p);
void from_json(const Json& j, SingularPoint& p);
void to_json(Json& j, const DivisorRecord& r);
void to_json(Json& j, const SpectrumReport& r);
void to_json(Json& j, const SubmersionReport& r);
void to_json(Json& j, const DerivativeEntry& e);
void to_json(Json& j, const AlignmentRecord& r);
void to_json(Json& j, const HyperplaneSet& h);
void to_json(Json& j, const DefectResult& r);
void to_json(Json& j, const GenericityStats& s);
void to_json(Json& j, const PushforwardFactor& f);
void to_json(Json& j, const GroupElement& g);
void to_json(Json& j, const Report& r);
void from_json(const Json& j, Report& r);

}  // namespace jlab
