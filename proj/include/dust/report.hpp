#pragma once

#include "dust/dimensions.hpp"
#include "json.hpp"

namespace dust {

// Rounds to 12 significant digits for stable serialization.
double round12(double x);

nlohmann::json to_json(const Interval& i);
nlohmann::json to_json(const PoleFamily& f);
nlohmann::json to_json(const TypeCounts& tc);
nlohmann::json to_json(const AnalysisReport& report);

}  // namespace dust
