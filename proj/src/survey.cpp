#include "dust/survey.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include "dust/error.hpp"
#include "dust/report.hpp"

namespace dust {

std::vector<Pattern> enumerate_patterns(const EnumerationConfig& config) {
  const int p = config.p;
  if (p < 2 || p > 4) throw Error(ErrorKind::InvalidArgument, "survey supports p in {2, 3, 4}");
  const int cells = p * p;
  if (config.m_lo < 2 || config.m_hi > cells - 1 || config.m_lo > config.m_hi)
    throw Error(ErrorKind::InvalidArgument, "m range must lie within [2, p^2 - 1]");
  std::vector<Pattern> out;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << cells); ++mask) {
    const int m = std::popcount(mask);
    if (m < config.m_lo || m > config.m_hi) continue;
    std::vector<Cell> kept;
    for (int i = 0; i < cells; ++i)
      if (mask >> i & 1u) kept.push_back({i % p, i / p});
    Pattern pattern(p, std::move(kept));
    if (config.dedup && !(symmetry_canonical(pattern) == pattern)) continue;
    out.push_back(std::move(pattern));
  }
  return out;
}

std::string pattern_key(const Pattern& pattern) {
  std::string ascii = to_ascii(pattern);
  if (!ascii.empty() && ascii.back() == '\n') ascii.pop_back();
  for (auto& ch : ascii)
    if (ch == '\n') ch = '/';
  return ascii;
}

SurveyRecord survey_record(const Pattern& pattern, const AnalysisConfig& config) {
  SurveyRecord rec{pattern, orbit_size(pattern), "", std::nullopt, "", "", std::nullopt, nullptr};
  try {
    const auto report = analyze(pattern, config);
    rec.verdict = std::string(to_string(report.classification.verdict));
    if (report.alpha) rec.alpha = report.alpha->interval();
    const auto& dims = report.dimensions;
    if (dims.status != DimensionStatus::NotApplicable) {
      std::string s;
      for (const auto& f : dims.combined) s += (s.empty() ? "" : ";") + std::to_string(f.r) + ":" + std::to_string(f.order);
      if (!dims.conditional.empty()) {
        s += "|";
        bool first = true;
        for (const auto& f : dims.conditional) {
          s += (first ? "" : ";") + std::to_string(f.r) + ":" + std::to_string(f.order);
          first = false;
        }
      }
      rec.sigmas = s;
    }
    std::string failures;
    for (const auto& t : report.types) {
      if (!t.error) continue;
      failures += (failures.empty() ? "" : ";") + std::string(to_string(t.type)) + ":" + std::string(to_string(*t.error));
    }
    rec.validation = failures.empty() ? "ok" : failures;
    rec.report = to_json(report);
  } catch (const std::exception& e) {
    rec.verdict = "Error";
    rec.validation = e.what();
  }
  return rec;
}

std::vector<SurveyRecord> run_survey(const SurveyConfig& config) {
  const auto patterns = enumerate_patterns(config.enumeration);
  std::vector<std::optional<SurveyRecord>> slots(patterns.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < patterns.size(); i = next++) {
      const auto start = std::chrono::steady_clock::now();
      auto rec = survey_record(patterns[i], config.analysis);
      if (config.timing)
        rec.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      slots[i] = std::move(rec);
    }
  };
  const int n = std::max(1, config.workers);
  std::vector<std::thread> threads;
  for (int i = 1; i < n; ++i) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  std::vector<SurveyRecord> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

namespace {

std::string fmt12(double x) {
  std::ostringstream os;
  os.precision(12);
  os << round12(x);
  return os.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

std::string survey_csv(const std::vector<SurveyRecord>& records) {
  std::ostringstream os;
  os << "canonical_pattern,p,m,orbit_size,verdict,alpha_lo,alpha_hi,sigmas,validation,millis\n";
  for (const auto& r : records) {
    os << csv_field(pattern_key(r.pattern)) << ',' << r.pattern.p() << ',' << r.pattern.m() << ',' << r.orbit_size << ','
       << csv_field(r.verdict) << ',' << (r.alpha ? fmt12(r.alpha->lo) : "") << ','
       << (r.alpha ? fmt12(r.alpha->hi) : "") << ',' << csv_field(r.sigmas) << ',' << csv_field(r.validation) << ','
       << (r.millis ? fmt12(*r.millis) : "") << '\n';
  }
  return os.str();
}

nlohmann::json survey_json(const std::vector<SurveyRecord>& records) {
  auto doc = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json j{{"canonical_pattern", pattern_key(r.pattern)},
                     {"p", r.pattern.p()},
                     {"m", r.pattern.m()},
                     {"orbit_size", r.orbit_size},
                     {"verdict", r.verdict},
                     {"sigmas", r.sigmas},
                     {"validation", r.validation},
                     {"report", r.report}};
    j["alpha"] = r.alpha ? to_json(*r.alpha) : nlohmann::json();
    j["millis"] = r.millis ? nlohmann::json(*r.millis) : nlohmann::json();
    doc.push_back(std::move(j));
  }
  return doc;
}

std::vector<SurveyRecord> survey_from_json(const nlohmann::json& doc) {
  std::vector<SurveyRecord> out;
  try {
    for (const auto& j : doc) {
      std::string key = j.at("canonical_pattern").get<std::string>();
      for (auto& ch : key)
        if (ch == '/') ch = '\n';
      SurveyRecord r{parse_pattern(key), j.at("orbit_size").get<int>(), j.at("verdict").get<std::string>(),
                     std::nullopt, j.at("sigmas").get<std::string>(), j.at("validation").get<std::string>(),
                     std::nullopt, j.at("report")};
      if (!j.at("alpha").is_null()) r.alpha = Interval{j["alpha"][0].get<double>(), j["alpha"][1].get<double>()};
      if (!j.at("millis").is_null()) r.millis = j["millis"].get<double>();
      out.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed survey JSON: ") + e.what());
  }
  return out;
}

void write_survey(const std::vector<SurveyRecord>& records, SurveyFormat format, const std::string& path) {
  if (records.empty()) throw Error(ErrorKind::InvalidArgument, "no survey records to write");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  if (format == SurveyFormat::Csv) out << survey_csv(records);
  else out << survey_json(records).dump(1) << '\n';
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

}  // namespace dust
