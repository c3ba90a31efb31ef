#pragma once

#include <string>

#include "json.hpp"

#include "fpsets/classify.hpp"
#include "fpsets/fps.hpp"

namespace fpsets {

using Json = nlohmann::ordered_json;

Json to_json(const DecompReport& r);
Json to_json(const KappaResult& r);
Json to_json(const FpsReport& r, int q);
Json to_json(const OracleResult& r);
Json to_json(const CandidateEntry& e, int q);
Json to_json(const ClassificationReport& r);
Json to_json(const VerifyResult& r);

std::string text_report(const FpsReport& r, int q);
std::string text_report(const OracleResult& r);
std::string text_report(const ClassificationReport& r);
std::string text_report(const VerifyResult& r);

}  // namespace fpsets
