#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dust/dimensions.hpp"
#include "json.hpp"

namespace dust {

struct EnumerationConfig {
  int p = 3;
  int m_lo = 2;
  int m_hi = 8;
  bool dedup = false;
};

// Patterns in increasing order of their cell bitmask (bit row*p + col); with dedup only the
// symmetry-canonical member of each orbit is kept.
std::vector<Pattern> enumerate_patterns(const EnumerationConfig& config);

struct SurveyConfig {
  EnumerationConfig enumeration;
  AnalysisConfig analysis;
  int workers = 1;
  bool timing = false;  // wall-clock millis make output run-dependent
};

struct SurveyRecord {
  Pattern pattern;
  int orbit_size = 1;
  std::string verdict;
  std::optional<Interval> alpha;
  std::string sigmas;      // "r:order" joined by ';', conditional families after '|'
  std::string validation;  // "ok", or the failing types and error kinds
  std::optional<double> millis;
  nlohmann::json report;

  friend bool operator==(const SurveyRecord&, const SurveyRecord&) = default;
};

std::string pattern_key(const Pattern& pattern);  // ASCII rows top-first joined by '/'

SurveyRecord survey_record(const Pattern& pattern, const AnalysisConfig& config);
std::vector<SurveyRecord> run_survey(const SurveyConfig& config);

std::string survey_csv(const std::vector<SurveyRecord>& records);
nlohmann::json survey_json(const std::vector<SurveyRecord>& records);
std::vector<SurveyRecord> survey_from_json(const nlohmann::json& doc);

enum class SurveyFormat { Csv, Json };
void write_survey(const std::vector<SurveyRecord>& records, SurveyFormat format, const std::string& path);

}  // namespace dust
