#include "dust/pattern.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

#include "dust/error.hpp"
#include "json.hpp"

namespace dust {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::FullGrid: return "FullGrid";
    case ErrorKind::EmptyGrid: return "EmptyGrid";
    case ErrorKind::GridTooSmall: return "GridTooSmall";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ConnectedAttractor: return "ConnectedAttractor";
    case ErrorKind::NotDustType: return "NotDustType";
    case ErrorKind::NonIntegralMultiplier: return "NonIntegralMultiplier";
    case ErrorKind::NonBinaryCoefficient: return "NonBinaryCoefficient";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::Domain: return "Domain";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

Pattern::Pattern(int p, std::vector<Cell> kept) : p_(p), kept_(std::move(kept)) {
  if (p_ < 2) throw Error(ErrorKind::GridTooSmall, "grid size must be at least 2, got " + std::to_string(p_));
  std::sort(kept_.begin(), kept_.end());
  if (std::adjacent_find(kept_.begin(), kept_.end()) != kept_.end())
    throw Error(ErrorKind::Parse, "duplicate kept cell");
  for (const auto& c : kept_) {
    if (c.col < 0 || c.row < 0 || c.col >= p_ || c.row >= p_)
      throw Error(ErrorKind::Parse, "kept cell out of bounds");
  }
  if (kept_.empty()) throw Error(ErrorKind::EmptyGrid, "no kept cells");
  if (static_cast<int>(kept_.size()) == p_ * p_) throw Error(ErrorKind::FullGrid, "every cell is kept");
  mask_.assign(static_cast<std::size_t>(p_ * p_), 0);
  for (const auto& c : kept_) mask_[c.row * p_ + c.col] = 1;
}

namespace {

Pattern parse_json_pattern(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  if (!doc.is_object() || !doc.contains("p") || !doc.contains("kept") || !doc["p"].is_number_integer() ||
      !doc["kept"].is_array())
    throw Error(ErrorKind::Parse, "expected {\"p\": int, \"kept\": [[col,row],...]}");
  std::vector<Cell> kept;
  for (const auto& item : doc["kept"]) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() || !item[1].is_number_integer())
      throw Error(ErrorKind::Parse, "kept entries must be [col,row] integer pairs");
    kept.push_back({item[0].get<int>(), item[1].get<int>()});
  }
  return Pattern(doc["p"].get<int>(), std::move(kept));
}

Pattern parse_ascii_pattern(std::string_view text) {
  std::vector<std::string> rows;
  std::string line;
  std::istringstream in{std::string(text)};
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    rows.push_back(line);
  }
  while (!rows.empty() && rows.back().empty()) rows.pop_back();
  if (rows.empty()) throw Error(ErrorKind::Parse, "empty pattern document");
  const auto p = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != p) throw Error(ErrorKind::Parse, "ragged rows");
    for (char ch : r)
      if (ch != '#' && ch != '.') throw Error(ErrorKind::Parse, std::string("unexpected character '") + ch + "'");
  }
  if (rows.size() != p) throw Error(ErrorKind::Parse, "grid must be square");
  std::vector<Cell> kept;
  const int n = static_cast<int>(p);
  for (int i = 0; i < n; ++i)
    for (int col = 0; col < n; ++col)
      if (rows[i][col] == '#') kept.push_back({col, n - 1 - i});
  return Pattern(n, std::move(kept));
}

}  // namespace

Pattern parse_pattern(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw Error(ErrorKind::Parse, "empty pattern document");
  if (text[first] == '{') return parse_json_pattern(text);
  return parse_ascii_pattern(text);
}

Pattern load_pattern(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_pattern(ss.str());
}

std::string to_ascii(const Pattern& pattern) {
  std::string out;
  const int p = pattern.p();
  for (int row = p - 1; row >= 0; --row) {
    for (int col = 0; col < p; ++col) out += pattern.contains(col, row) ? '#' : '.';
    out += '\n';
  }
  return out;
}

std::string to_json(const Pattern& pattern) {
  nlohmann::json doc;
  doc["p"] = pattern.p();
  doc["kept"] = nlohmann::json::array();
  for (const auto& c : pattern.kept()) doc["kept"].push_back({c.col, c.row});
  return doc.dump();
}

const std::array<Symmetry, 8>& all_symmetries() {
  static const std::array<Symmetry, 8> table = [] {
    std::array<Symmetry, 8> t{};
    for (int i = 0; i < 8; ++i) t[i] = Symmetry{(i & 4) != 0, (i & 1) != 0, (i & 2) != 0};
    return t;
  }();
  return table;
}

Pattern transform(const Pattern& pattern, Symmetry s) {
  std::vector<Cell> kept;
  kept.reserve(pattern.kept().size());
  for (const auto& c : pattern.kept()) kept.push_back(s.apply(c, pattern.p()));
  return Pattern(pattern.p(), std::move(kept));
}

Pattern symmetry_canonical(const Pattern& pattern) {
  Pattern best = pattern;
  for (const auto& s : all_symmetries()) {
    Pattern image = transform(pattern, s);
    if (image < best) best = std::move(image);
  }
  return best;
}

int orbit_size(const Pattern& pattern) {
  std::vector<Pattern> images;
  for (const auto& s : all_symmetries()) images.push_back(transform(pattern, s));
  std::sort(images.begin(), images.end());
  return static_cast<int>(std::unique(images.begin(), images.end()) - images.begin());
}

CellGrid::CellGrid(std::int64_t side)
    : side_(side), bits_(static_cast<std::size_t>((side * side + 63) / 64), 0) {}

std::int64_t CellGrid::count() const noexcept {
  std::int64_t n = 0;
  for (auto w : bits_) n += std::popcount(w);
  return n;
}

std::vector<Cell> CellGrid::kept_cells() const {
  std::vector<Cell> cells;
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    auto word = bits_[w];
    while (word) {
      const auto bit = static_cast<std::int64_t>(std::countr_zero(word));
      const auto i = static_cast<std::int64_t>(w) * 64 + bit;
      cells.push_back({static_cast<int>(i % side_), static_cast<int>(i / side_)});
      word &= word - 1;
    }
  }
  return cells;
}

std::int64_t ipow(std::int64_t base, int exponent) {
  std::int64_t r = 1;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

namespace {

std::int64_t checked_side(int p, int level, std::int64_t budget) {
  if (level < 0) throw Error(ErrorKind::InvalidArgument, "level must be nonnegative");
  std::int64_t side = 1;
  for (int i = 0; i < level; ++i) {
    side *= p;
    if (side > budget)
      throw Error(ErrorKind::BudgetExceeded,
                  "p^n exceeds the side budget of " + std::to_string(budget) + " cells");
  }
  return side;
}

}  // namespace

Prefractal build_prefractal(const Pattern& pattern, int level, std::int64_t side_budget) {
  const auto side = checked_side(pattern.p(), level, side_budget);
  Prefractal out{pattern, level, CellGrid(side)};
  // Enumerate digit strings over the kept cells, most significant digit first.
  const auto& kept = pattern.kept();
  std::vector<std::size_t> digit(static_cast<std::size_t>(level), 0);
  const std::int64_t p = pattern.p();
  while (true) {
    std::int64_t col = 0, row = 0;
    for (int i = 0; i < level; ++i) {
      col = col * p + kept[digit[i]].col;
      row = row * p + kept[digit[i]].row;
    }
    out.grid.set(col, row);
    int i = level - 1;
    while (i >= 0 && ++digit[i] == kept.size()) digit[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

Prefractal refine(const Prefractal& grid, std::int64_t side_budget) {
  const auto& pattern = grid.pattern;
  const auto side = checked_side(pattern.p(), grid.level + 1, side_budget);
  Prefractal out{pattern, grid.level + 1, CellGrid(side)};
  const std::int64_t p = pattern.p();
  for (const auto& c : grid.grid.kept_cells())
    for (const auto& s : pattern.kept()) out.grid.set(c.col * p + s.col, c.row * p + s.row);
  return out;
}

}  // namespace dust
