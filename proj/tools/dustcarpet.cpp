#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dust/counting.hpp"
#include "dust/dimensions.hpp"
#include "dust/error.hpp"
#include "dust/render.hpp"
#include "dust/report.hpp"
#include "dust/survey.hpp"
#include "dust/topology.hpp"
#include "dust/tube.hpp"

namespace {

using namespace dust;

constexpr int kOk = 0, kUsage = 2, kCaveat = 3, kInternal = 4;

int exit_code_for(const Error& e) {
  if (e.kind() == ErrorKind::InternalInconsistency) return kInternal;
  if (e.is_model_violation()) return kCaveat;
  return kUsage;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

// Exit 3 when the answer carries caveats that a batch driver should triage.
int report_code(const AnalysisReport& r) {
  if (r.dimensions.status == DimensionStatus::ModelViolation) return kCaveat;
  if (r.completely_dusty == DustyVerdict::Borderline || !r.dimensions.conditional.empty()) return kCaveat;
  return kOk;
}

std::string family_line(const PoleFamily& f) {
  std::ostringstream os;
  os.precision(12);
  os << "r=" << f.r << " order=" << f.order << " sigma=" << round12(f.sigma()) << " period=" << round12(f.period());
  if (f.source) os << " from " << to_string(*f.source);
  return os.str();
}

// Picks a prefractal level and refinement so the lattice spacing is close to the requested resolution.
Raster raster_for(const Pattern& pattern, double resolution, int level) {
  if (!(resolution > 0.0 && resolution < 1.0)) throw Error(ErrorKind::InvalidArgument, "resolution must be in (0, 1)");
  const int p = pattern.p();
  if (level < 0) {
    level = 0;
    while (ipow(p, level + 1) * resolution <= 1.0 && ipow(p, level + 1) <= 4096) ++level;
  }
  const double per_cell = 1.0 / (resolution * static_cast<double>(ipow(p, level)));
  const int k = std::max(1, static_cast<int>(std::lround(per_cell)));
  return make_raster(build_prefractal(pattern, level), k);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw Error(ErrorKind::Parse, "bad number '" + item + "'");
    out.push_back(x);
  }
  if (out.empty()) throw Error(ErrorKind::Parse, "empty number list");
  return out;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int m = std::stoi(text);
      return {m, m};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, "bad range '" + text + "', expected LO..HI");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dust-type carpet modifications: topology, counting, complex dimensions, tube numerics"};
  app.require_subcommand(1);

  std::string file;
  int depth = 6;
  std::string json_path, svg_path;
  auto* analyze_cmd = app.add_subcommand("analyze", "Full analysis as JSON");
  analyze_cmd->add_option("pattern", file, "Pattern file")->required();
  analyze_cmd->add_option("--depth", depth, "Classification depth")->check(CLI::Range(2, 12));
  analyze_cmd->add_option("--json", json_path, "Write the JSON report here instead of stdout");
  analyze_cmd->add_option("--svg", svg_path, "Also render the pattern with its intersection sites");

  auto* classify_cmd = app.add_subcommand("classify", "Dust Type classification");
  classify_cmd->add_option("pattern", file, "Pattern file")->required();
  classify_cmd->add_option("--depth", depth, "Classification depth")->check(CLI::Range(2, 12));

  std::string type_name;
  int levels = 5;
  auto* count_cmd = app.add_subcommand("count", "Occurrence counts against the closed form");
  count_cmd->add_option("pattern", file, "Pattern file")->required();
  count_cmd->add_option("--type", type_name, "Intersection type")->required();
  count_cmd->add_option("--levels", levels, "Highest level")->check(CLI::Range(1, 8));

  auto* dims_cmd = app.add_subcommand("dimensions", "Complex dimension families");
  dims_cmd->add_option("pattern", file, "Pattern file")->required();

  std::string t_list, csv_path;
  double resolution = 1.0 / 2048;
  int raster_level = -1;
  auto* tube_cmd = app.add_subcommand("tube", "Tube areas from an exact distance transform");
  tube_cmd->add_option("pattern", file, "Pattern file")->required();
  tube_cmd->add_option("--t", t_list, "Comma-separated radii")->required();
  tube_cmd->add_option("--resolution", resolution, "Lattice spacing");
  tube_cmd->add_option("--level", raster_level, "Prefractal level (default: from resolution)");
  tube_cmd->add_option("--csv", csv_path, "Write CSV here instead of stdout");

  std::string s_text;
  double delta = 1.0;
  auto* zeta_cmd = app.add_subcommand("zeta", "Numerical tubular zeta function");
  zeta_cmd->add_option("pattern", file, "Pattern file")->required();
  zeta_cmd->add_option("--s", s_text, "RE,IM")->required();
  zeta_cmd->add_option("--delta", delta, "Truncation radius");
  zeta_cmd->add_option("--resolution", resolution, "Lattice spacing");
  zeta_cmd->add_option("--level", raster_level, "Prefractal level (default: from resolution)");

  int survey_p = 3, workers = 1;
  std::string m_range, out_path, format_name;
  bool dedup = false, timing = false;
  auto* survey_cmd = app.add_subcommand("survey", "Analyze every pattern of a grid size");
  survey_cmd->add_option("--p", survey_p, "Grid size")->required()->check(CLI::Range(2, 4));
  survey_cmd->add_option("--m", m_range, "Kept-cell range LO..HI");
  survey_cmd->add_flag("--dedup", dedup, "One representative per symmetry orbit");
  survey_cmd->add_option("--out", out_path, "Output file")->required();
  survey_cmd->add_option("--format", format_name, "csv or json (default: from extension)");
  survey_cmd->add_option("--workers", workers, "Worker threads")->check(CLI::Range(1, 256));
  survey_cmd->add_option("--depth", depth, "Classification depth")->check(CLI::Range(2, 12));
  survey_cmd->add_flag("--timing", timing, "Record per-pattern wall time (output no longer reproducible)");

  int level = 3;
  std::vector<std::string> highlights;
  double contour = 0.0;
  int canvas = 512;
  auto* render_cmd = app.add_subcommand("render", "SVG of a prefractal");
  render_cmd->add_option("pattern", file, "Pattern file")->required();
  render_cmd->add_option("--level", level, "Construction level")->required()->check(CLI::Range(0, 12));
  render_cmd->add_option("--highlight", highlights, "TYPE:COLOR, repeatable");
  render_cmd->add_option("--contour", contour, "Draw the t-neighbourhood boundary")->check(CLI::NonNegativeNumber);
  render_cmd->add_option("--canvas", canvas, "Canvas size in pixels")->check(CLI::Range(16, 8192));
  render_cmd->add_option("--out", out_path, "Output SVG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*analyze_cmd) {
      const auto pattern = load_pattern(file);
      AnalysisConfig cfg;
      cfg.classify_depth = depth;
      const auto report = analyze(pattern, cfg);
      const auto text = to_json(report).dump(2) + "\n";
      if (json_path.empty()) std::cout << text;
      else write_file(json_path, text);
      if (!svg_path.empty()) {
        int l = 0;
        while (ipow(pattern.p(), l + 1) <= 243) ++l;
        RenderOptions opts;
        const char* colours[] = {"green", "blue", "red", "red", "red", "red", "red", "red", "red"};
        for (const auto& t : report.types)
          if (t.present) opts.highlight.emplace_back(t.type, colours[index_of(t.type)]);
        write_file(svg_path, render_svg(build_prefractal(pattern, l), opts));
      }
      for (const auto& c : report.dimensions.caveats) std::cerr << "caveat: " << c << '\n';
      return report_code(report);
    }
    if (*classify_cmd) {
      const auto c = classify(load_pattern(file), depth);
      std::cout << "verdict: " << to_string(c.verdict) << '\n'
                << "attractor_connected: " << (c.attractor_connected ? "true" : "false") << '\n'
                << "complement: " << to_string(c.complement) << '\n';
      for (const auto& e : c.evidence) std::cout << "evidence: " << e << '\n';
      return kOk;
    }
    if (*count_cmd) {
      const auto pattern = load_pattern(file);
      const auto type = parse_intersection_type(type_name);
      if (!type) throw Error(ErrorKind::Parse, "unknown intersection type '" + type_name + "'");
      const auto tc = extract_parameters(pattern, *type);
      std::cout << "type: " << to_string(*type) << "\nh: " << tc.h << "\nv: " << tc.v << '\n';
      std::cout << "dH: " << (tc.dH ? std::to_string(*tc.dH) : "unresolved") << '\n';
      std::cout << "dV: " << (tc.dV ? std::to_string(*tc.dV) : "unresolved") << '\n';
      const auto rep = validate_model(pattern, *type, levels);
      std::cout << "k,brute,closed_form\n";
      for (std::size_t k = 0; k < rep.brute.size(); ++k)
        std::cout << k + 1 << ',' << rep.brute[k] << ',' << rep.closed[k] << '\n';
      if (!rep.ok()) {
        std::cerr << "closed form disagrees with the brute-force count at level " << *rep.first_mismatch << '\n';
        return kCaveat;
      }
      return kOk;
    }
    if (*dims_cmd) {
      const auto report = analyze(load_pattern(file));
      const auto& d = report.dimensions;
      std::cout << "status: " << to_string(d.status) << '\n';
      std::cout << "base: " << family_line(d.base) << '\n';
      for (const auto& f : d.combined) std::cout << "combined: " << family_line(f) << '\n';
      for (const auto& f : d.conditional) std::cout << "conditional: " << family_line(f) << '\n';
      for (const auto& c : d.caveats) std::cerr << "caveat: " << c << '\n';
      return report_code(report);
    }
    if (*tube_cmd) {
      const auto ts = parse_list(t_list);
      double t_max = 0.0;
      for (double t : ts) {
        if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "radii must be positive");
        t_max = std::max(t_max, t);
      }
      const DistanceHistogram hist(raster_for(load_pattern(file), resolution, raster_level), t_max);
      std::ostringstream os;
      os.precision(12);
      os << "t,area,resolution,error_bound\n";
      for (double t : ts) {
        const auto s = hist.sample(t);
        os << s.t << ',' << round12(s.area) << ',' << round12(s.resolution) << ',' << round12(s.error_bound) << '\n';
      }
      if (csv_path.empty()) std::cout << os.str();
      else write_file(csv_path, os.str());
      return kOk;
    }
    if (*zeta_cmd) {
      const auto parts = parse_list(s_text);
      if (parts.size() != 2) throw Error(ErrorKind::Parse, "--s expects RE,IM");
      ZetaConfig cfg;
      cfg.delta = delta;
      const auto z = zeta_numeric(raster_for(load_pattern(file), resolution, raster_level), {parts[0], parts[1]}, cfg);
      std::cout.precision(12);
      std::cout << "re: " << round12(z.value.real()) << "\nim: " << round12(z.value.imag())
                << "\nerror: " << round12(z.error) << '\n';
      return kOk;
    }
    if (*survey_cmd) {
      SurveyConfig cfg;
      cfg.enumeration.p = survey_p;
      cfg.enumeration.m_lo = 2;
      cfg.enumeration.m_hi = survey_p * survey_p - 1;
      if (!m_range.empty()) std::tie(cfg.enumeration.m_lo, cfg.enumeration.m_hi) = parse_range(m_range);
      cfg.enumeration.dedup = dedup;
      cfg.analysis.classify_depth = depth;
      cfg.workers = workers;
      cfg.timing = timing;
      SurveyFormat format = SurveyFormat::Csv;
      if (format_name == "json" || (format_name.empty() && out_path.ends_with(".json"))) format = SurveyFormat::Json;
      else if (!format_name.empty() && format_name != "csv")
        throw Error(ErrorKind::InvalidArgument, "format must be csv or json");
      const auto records = run_survey(cfg);
      write_survey(records, format, out_path);
      std::size_t errors = 0;
      for (const auto& r : records) errors += r.verdict == "Error";
      std::cerr << records.size() << " records written to " << out_path;
      if (errors) std::cerr << " (" << errors << " with errors)";
      std::cerr << '\n';
      return kOk;
    }
    if (*render_cmd) {
      RenderOptions opts;
      for (const auto& h : highlights) opts.highlight.push_back(parse_highlight(h));
      if (contour > 0.0) opts.contour_t = contour;
      opts.canvas = canvas;
      const auto pattern = load_pattern(file);
      if (ipow(pattern.p(), level) > 1024) throw Error(ErrorKind::BudgetExceeded, "level too deep to render");
      write_file(out_path, render_svg(build_prefractal(pattern, level), opts));
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
