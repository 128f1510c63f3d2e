#include "ehlich/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace ehlich {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int type_number(TypeTag t) { return static_cast<int>(t); }

TypeTag type_from_number(int t) {
  switch (t) {
    case 0:
      return TypeTag::pure;
    case 1:
      return TypeTag::type1;
    case 2:
      return TypeTag::type2;
  }
  throw CatalogError("unknown design type " + std::to_string(t));
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CatalogError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, std::string_view content) {
  fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CatalogError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw CatalogError("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string rational_text(const mpq_class& q) { return q.get_str(); }

mpq_class rational_from_text(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw CatalogError("bad rational '" + s + "' in index");
  q.canonicalize();
  return q;
}

auto cell_order(const CellRecord& c) { return std::make_tuple(c.n, c.p, c.s, type_number(c.type)); }

CellRecord summarize(const EhlichSpec& spec, TypeTag type, const std::vector<CatalogEntry>& entries,
                     const std::string& hash, double seconds) {
  const auto grid = efficiency_grid(spec.n, std::max(spec.p, 4));
  CellRecord cell;
  cell.n = spec.n;
  cell.p = spec.p;
  cell.s = spec.s;
  cell.type = type;
  cell.file = cell_file_name(spec.n, spec.p, spec.s, type);
  cell.count = entries.size();
  cell.hash = hash;
  cell.seconds = seconds;
  if (spec.p >= 4) {
    cell.d_optimal = grid.optimal_d.at(spec.p).count(spec.s) != 0;
    cell.a_optimal = grid.optimal_a.at(spec.p).count(spec.s) != 0;
  }
  for (const auto& e : entries) {
    if (!cell.min_c2 || e.stats.c2 < *cell.min_c2 || (e.stats.c2 == *cell.min_c2 && e.stats.c3 < *cell.min_c3)) {
      cell.min_c2 = e.stats.c2;
      cell.min_c3 = e.stats.c3;
    }
  }
  return cell;
}

}  // namespace

const CellRecord* CatalogIndex::find(int n, int p, int s, TypeTag type) const {
  for (const auto& c : cells)
    if (c.n == n && c.p == p && c.s == s && c.type == type) return &c;
  return nullptr;
}

std::vector<CatalogEntry> make_entries(const std::vector<Design>& designs, const EhlichSpec& spec, TypeTag type) {
  bool d_opt = false;
  bool a_opt = false;
  if (spec.p >= 4) {
    const auto grid = efficiency_grid(spec.n, spec.p);
    d_opt = grid.optimal_d.at(spec.p).count(spec.s) != 0;
    a_opt = grid.optimal_a.at(spec.p).count(spec.s) != 0;
  }
  std::vector<CatalogEntry> out;
  out.reserve(designs.size());
  for (const auto& d : designs) {
    CatalogEntry e;
    e.spec = spec;
    e.type = type;
    e.design = d;
    e.design.type = type;
    e.key = canonicalize(d);
    e.stats = alias_stats(d);
    e.d_optimal = d_opt;
    e.a_optimal = a_opt;
    out.push_back(std::move(e));
  }
  return out;
}

std::string cell_file_name(int n, int p, int s, TypeTag type) {
  return "N" + std::to_string(n) + "/p" + std::to_string(p) + "_s" + std::to_string(s) + "_t" +
         std::to_string(type_number(type)) + ".designs";
}

std::string format_designs(const EhlichSpec& spec, TypeTag type, const std::vector<CatalogEntry>& entries) {
  std::string out = std::to_string(spec.n) + " " + std::to_string(spec.p) + " " + std::to_string(spec.s) + " " +
                    std::to_string(type_number(type)) + " " + std::to_string(entries.size()) + "\n";
  for (const auto& e : entries) {
    if (e.design.n != spec.n || e.design.p() != spec.p)
      throw CatalogError("entry dimensions differ from the cell header");
    out += "\n";
    for (int i = 0; i < spec.n; ++i) {
      for (int j = 0; j < spec.p; ++j) out += e.design.at(i, j) > 0 ? '+' : '-';
      out += '\n';
    }
  }
  return out;
}

std::vector<CatalogEntry> parse_designs(std::string_view content, const std::string& origin) {
  std::vector<std::string> lines;
  {
    std::size_t start = 0;
    while (start < content.size()) {
      const auto end = content.find('\n', start);
      const auto stop = end == std::string_view::npos ? content.size() : end;
      lines.emplace_back(content.substr(start, stop - start));
      start = stop + 1;
    }
  }
  if (lines.empty()) throw CatalogError(origin + ": empty file");
  int n = 0, p = 0, s = 0, t = 0;
  long count = 0;
  {
    std::istringstream header(lines[0]);
    if (!(header >> n >> p >> s >> t >> count) || count < 0)
      throw CatalogError(origin + ": malformed header '" + lines[0] + "'");
  }
  EhlichSpec spec;
  try {
    spec = make_spec(n, p, s);
  } catch (const InvalidSpecError& e) {
    throw CatalogError(origin + ": " + e.what());
  }
  const TypeTag type = type_from_number(t);

  std::vector<CatalogEntry> out;
  std::size_t line = 1;
  const auto line_label = [&](std::size_t l) { return origin + ":" + std::to_string(l + 1); };
  for (long d = 0; d < count; ++d) {
    if (line >= lines.size() || !lines[line].empty())
      throw CatalogError(line_label(line) + ": expected a blank line before design " + std::to_string(d + 1));
    ++line;
    std::vector<std::vector<int>> rows;
    for (int i = 0; i < n; ++i, ++line) {
      if (line >= lines.size()) throw CatalogError(origin + ": truncated design " + std::to_string(d + 1));
      const auto& text = lines[line];
      if (static_cast<int>(text.size()) != p)
        throw CatalogError(line_label(line) + ": row has " + std::to_string(text.size()) + " cells, expected " +
                           std::to_string(p));
      std::vector<int> row;
      for (std::size_t j = 0; j < text.size(); ++j) {
        if (text[j] == '+')
          row.push_back(1);
        else if (text[j] == '-')
          row.push_back(-1);
        else
          throw CatalogError(line_label(line) + ": invalid character '" + std::string(1, text[j]) + "' in column " +
                             std::to_string(j));
      }
      rows.push_back(std::move(row));
    }
    Design design;
    try {
      design = design_from_rows(rows);
    } catch (const std::invalid_argument& e) {
      throw CatalogError(origin + ": design " + std::to_string(d + 1) + ": " + e.what());
    }
    const auto form = check_ehlich_form(design);
    if (const auto* bad = std::get_if<FormMismatch>(&form)) {
      throw CatalogError(origin + ": design " + std::to_string(d + 1) + ": Gram mismatch at row " +
                         std::to_string(bad->row) + ", column " + std::to_string(bad->col) + " (value " +
                         std::to_string(bad->value) + "): " + bad->message);
    }
    const auto& ok = std::get<EhlichForm>(form);
    if (!(ok.spec == spec) || ok.type != type)
      throw CatalogError(origin + ": design " + std::to_string(d + 1) + " has Gram form K(" +
                         std::to_string(ok.spec.n) + "," + std::to_string(ok.spec.p) + "," + std::to_string(ok.spec.s) +
                         ") " + to_string(ok.type) + ", header announces K(" + std::to_string(n) + "," +
                         std::to_string(p) + "," + std::to_string(s) + ") " + to_string(type));
    design.type = type;
    CatalogEntry e;
    e.spec = spec;
    e.type = type;
    e.design = std::move(design);
    out.push_back(std::move(e));
  }
  while (line < lines.size()) {
    if (!lines[line].empty()) throw CatalogError(line_label(line) + ": trailing content after the last design");
    ++line;
  }

  std::vector<Design> designs;
  for (const auto& e : out) designs.push_back(e.design);
  auto annotated = make_entries(designs, spec, type);
  return annotated;
}

std::string content_hash(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CatalogIndex read_index(const fs::path& root) {
  CatalogIndex index;
  const fs::path path = root / "index.json";
  if (!fs::exists(path)) return index;
  json j;
  try {
    j = json::parse(read_file(path));
    index.engine_version = j.at("engine_version").get<std::string>();
    index.key_format_version = j.at("key_format_version").get<int>();
    if (index.key_format_version != kKeyFormatVersion)
      throw CatalogError("index.json uses key format " + std::to_string(index.key_format_version));
    for (const auto& c : j.at("cells")) {
      CellRecord cell;
      cell.n = c.at("N").get<int>();
      cell.p = c.at("p").get<int>();
      cell.s = c.at("s").get<int>();
      cell.type = type_from_number(c.at("type").get<int>());
      cell.file = c.at("file").get<std::string>();
      cell.count = c.at("count").get<std::size_t>();
      if (!c.at("min_c2").is_null()) cell.min_c2 = rational_from_text(c.at("min_c2").get<std::string>());
      if (!c.at("min_c3").is_null()) cell.min_c3 = rational_from_text(c.at("min_c3").get<std::string>());
      cell.d_optimal = c.at("d_optimal").get<bool>();
      cell.a_optimal = c.at("a_optimal").get<bool>();
      cell.hash = c.at("hash").get<std::string>();
      cell.seconds = c.at("seconds").get<double>();
      index.cells.push_back(std::move(cell));
    }
  } catch (const json::exception& e) {
    throw CatalogError("malformed index.json: " + std::string(e.what()));
  }
  return index;
}

void write_index(const fs::path& root, const CatalogIndex& index) {
  json j;
  j["engine_version"] = index.engine_version;
  j["key_format_version"] = index.key_format_version;
  j["cells"] = json::array();
  auto cells = index.cells;
  std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) { return cell_order(a) < cell_order(b); });
  for (const auto& c : cells) {
    json r;
    r["N"] = c.n;
    r["p"] = c.p;
    r["s"] = c.s;
    r["type"] = type_number(c.type);
    r["file"] = c.file;
    r["count"] = c.count;
    r["min_c2"] = c.min_c2 ? json(rational_text(*c.min_c2)) : json(nullptr);
    r["min_c2_rounded"] = c.min_c2 ? json(display_c(*c.min_c2)) : json(nullptr);
    r["min_c3"] = c.min_c3 ? json(rational_text(*c.min_c3)) : json(nullptr);
    r["d_optimal"] = c.d_optimal;
    r["a_optimal"] = c.a_optimal;
    r["hash"] = c.hash;
    r["seconds"] = c.seconds;
    j["cells"].push_back(std::move(r));
  }
  write_file(root / "index.json", j.dump(2) + "\n");
}

void write_cell(const fs::path& root, const EhlichSpec& spec, TypeTag type, const std::vector<CatalogEntry>& entries,
                double seconds) {
  const std::string content = format_designs(spec, type, entries);
  const std::string rel = cell_file_name(spec.n, spec.p, spec.s, type);
  write_file(root / rel, content);

  auto index = read_index(root);
  index.engine_version = kEngineVersion;
  auto cell = summarize(spec, type, entries, content_hash(content), seconds);
  auto it = std::find_if(index.cells.begin(), index.cells.end(),
                         [&](const CellRecord& c) { return cell_order(c) == cell_order(cell); });
  if (it != index.cells.end())
    *it = std::move(cell);
  else
    index.cells.push_back(std::move(cell));
  write_index(root, index);
}

void write_catalog(const fs::path& root, const std::vector<CatalogEntry>& entries) {
  std::map<std::tuple<int, int, int, int>, std::vector<CatalogEntry>> cells;
  for (const auto& e : entries) cells[{e.spec.n, e.spec.p, e.spec.s, type_number(e.type)}].push_back(e);
  const auto index = read_index(root);
  for (const auto& [k, group] : cells) {
    const auto& first = group.front();
    const auto* existing = index.find(first.spec.n, first.spec.p, first.spec.s, first.type);
    write_cell(root, first.spec, first.type, group, existing ? existing->seconds : 0.0);
  }
}

std::vector<CatalogEntry> read_cell(const fs::path& root, const CellRecord& cell) {
  const std::string content = read_file(root / cell.file);
  if (!cell.hash.empty() && content_hash(content) != cell.hash)
    throw CatalogError(cell.file + ": checksum mismatch (index " + cell.hash + ", file " + content_hash(content) + ")");
  auto entries = parse_designs(content, cell.file);
  if (entries.size() != cell.count)
    throw CatalogError(cell.file + ": holds " + std::to_string(entries.size()) + " designs, index says " +
                       std::to_string(cell.count));
  if (!entries.empty() &&
      (entries.front().spec.p != cell.p || entries.front().spec.s != cell.s || entries.front().type != cell.type))
    throw CatalogError(cell.file + ": header disagrees with index");
  return entries;
}

std::vector<CatalogEntry> read_catalog(const fs::path& root) {
  std::vector<CatalogEntry> out;
  for (const auto& cell : read_index(root).cells) {
    auto part = read_cell(root, cell);
    std::move(part.begin(), part.end(), std::back_inserter(out));
  }
  return out;
}

std::vector<std::string> verify_catalog(const fs::path& root) {
  std::vector<std::string> problems;
  CatalogIndex index;
  try {
    index = read_index(root);
  } catch (const std::exception& e) {
    return {e.what()};
  }
  if (!fs::exists(root / "index.json")) problems.push_back("no index.json under " + root.string());
  for (const auto& cell : index.cells) {
    try {
      const auto entries = read_cell(root, cell);
      std::set<CanonicalKey> keys;
      for (std::size_t i = 0; i < entries.size(); ++i)
        if (!keys.insert(entries[i].key).second)
          problems.push_back(cell.file + ": design " + std::to_string(i + 1) + " is isomorphic to an earlier one");
      const auto fresh = summarize(entries.empty() ? make_spec(cell.n, cell.p, cell.s) : entries.front().spec,
                                   cell.type, entries, cell.hash, cell.seconds);
      if (fresh.min_c2 != cell.min_c2 || fresh.min_c3 != cell.min_c3)
        problems.push_back(cell.file + ": stored minimum C2/C3 differs from recomputed values");
      if (fresh.d_optimal != cell.d_optimal || fresh.a_optimal != cell.a_optimal)
        problems.push_back(cell.file + ": optimality flags differ from the efficiency grid");
    } catch (const std::exception& e) {
      problems.push_back(e.what());
    }
  }
  return problems;
}

Grids emit_grids(const CatalogIndex& index, int n) {
  struct Merged {
    bool attempted = false;
    std::size_t count = 0;
    double seconds = 0.0;
    std::optional<mpq_class> min_c2;
  };
  std::map<std::pair<int, int>, Merged> merged;
  for (const auto& c : index.cells) {
    if (c.n != n) continue;
    auto& m = merged[{c.p, c.s}];
    m.attempted = true;
    m.count += c.count;
    m.seconds += c.seconds;
    if (c.min_c2 && (!m.min_c2 || *c.min_c2 < *m.min_c2)) m.min_c2 = c.min_c2;
  }

  Grids g;
  std::string header = "s";
  for (int p = 4; p <= n; ++p) header += "," + std::to_string(p);
  header += "\n";
  g.counts = g.seconds = g.min_c2 = header;
  for (int s = n; s >= 3; --s) {
    std::string rc = std::to_string(s), rt = rc, rm = rc;
    for (int p = 4; p <= n; ++p) {
      rc += ",";
      rt += ",";
      rm += ",";
      auto it = merged.find({p, s});
      if (s > p || it == merged.end() || !it->second.attempted) continue;
      const auto& m = it->second;
      rc += std::to_string(m.count);
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.2f", m.seconds);
      rt += buf;
      rm += m.min_c2 ? display_c(*m.min_c2) : "-";
    }
    g.counts += rc + "\n";
    g.seconds += rt + "\n";
    g.min_c2 += rm + "\n";
  }
  return g;
}

std::string percent(double fraction) {
  const double scaled = std::floor(fraction * 10000.0 + 0.5);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", scaled / 100.0);
  return buf;
}

std::string efficiency_csv(const EfficiencyGrid& grid) {
  std::string out = "p,s,det,traceInv,dEff,aEff,isDOpt,isAOpt\n";
  for (const auto& [ps, cell] : grid.cells) {
    out += std::to_string(cell.p) + "," + std::to_string(cell.s) + "," + cell.det.get_str() + "," +
           cell.trace_inv.get_str() + "," + percent(cell.d_eff) + "," + percent(cell.a_eff) + "," +
           (cell.d_optimal ? "1" : "0") + "," + (cell.a_optimal ? "1" : "0") + "\n";
  }
  return out;
}

}  // namespace ehlich
