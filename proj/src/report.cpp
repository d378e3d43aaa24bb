#include "dust/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace dust {

double round12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

nlohmann::json to_json(const Interval& i) { return nlohmann::json::array({round12(i.lo), round12(i.hi)}); }

nlohmann::json to_json(const PoleFamily& f) {
  return {{"sigma", round12(f.sigma())}, {"r", f.r}, {"p", f.p}, {"order", f.order}};
}

nlohmann::json to_json(const TypeCounts& tc) {
  return {{"I1", tc.I1}, {"D1", tc.D1}, {"H1", tc.H1}, {"V1", tc.V1}, {"D2", tc.D2},
          {"H2", tc.H2}, {"V2", tc.V2}, {"D3", tc.D3}, {"spawnH", tc.spawn_h}, {"spawnV", tc.spawn_v}};
}

namespace {

nlohmann::json optional_int(const std::optional<int>& v) { return v ? nlohmann::json(*v) : nlohmann::json(); }

nlohmann::json type_json(const TypeAnalysis& t) {
  nlohmann::json j;
  j["type"] = std::string(to_string(t.type));
  j["present"] = t.present;
  if (t.counts) {
    j["counts"] = to_json(*t.counts);
    j["h"] = t.counts->h;
    j["v"] = t.counts->v;
    j["dH"] = optional_int(t.counts->dH);
    j["dV"] = optional_int(t.counts->dV);
  } else {
    j["counts"] = nullptr;
  }
  if (t.validation) {
    j["validation"] = {{"brute", t.validation->brute}, {"closed", t.validation->closed}, {"ok", t.validation->ok()}};
  }
  if (t.error) j["error"] = {{"kind", std::string(to_string(*t.error))}, {"message", t.error_message}};
  if (t.condition) {
    j["conditionC"] = {{"status", std::string(to_string(t.condition->status))}};
    if (t.condition->status != ConditionStatus::NotPresent) j["conditionC"]["gap"] = to_json(t.condition->gap);
  } else {
    j["conditionC"] = nullptr;
  }
  j["families"] = nlohmann::json::array();
  for (const auto& f : t.families) j["families"].push_back(to_json(f));
  return j;
}

}  // namespace

nlohmann::json to_json(const AnalysisReport& report) {
  nlohmann::json j;
  j["pattern"] = nlohmann::json::parse(to_json(report.pattern));
  j["classification"] = {{"verdict", std::string(to_string(report.classification.verdict))},
                         {"attractorConnected", report.classification.attractor_connected},
                         {"complement", to_string(report.classification.complement)},
                         {"evidence", report.classification.evidence}};
  if (report.completely_dusty) j["classification"]["completelyDusty"] = std::string(to_string(*report.completely_dusty));
  j["alpha"] = report.alpha ? to_json(report.alpha->interval()) : nlohmann::json();
  j["types"] = nlohmann::json::array();
  for (const auto& t : report.types) j["types"].push_back(type_json(t));
  const auto& dims = report.dimensions;
  j["dimensions"] = std::string(to_string(dims.status));
  j["base"] = dims.base.r >= 2 ? to_json(dims.base) : nlohmann::json();
  j["combined"] = nlohmann::json::array();
  j["conditional"] = nlohmann::json::array();
  if (dims.status != DimensionStatus::NotApplicable) {
    for (const auto& f : dims.combined) j["combined"].push_back(to_json(f));
    for (const auto& f : dims.conditional) j["conditional"].push_back(to_json(f));
  }
  j["caveats"] = dims.caveats;
  return j;
}

}  // namespace dust
