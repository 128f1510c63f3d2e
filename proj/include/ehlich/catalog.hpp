#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ehlich/aberration.hpp"
#include "ehlich/canon.hpp"
#include "ehlich/design.hpp"
#include "ehlich/ehlich_core.hpp"

namespace ehlich {

inline constexpr const char* kEngineVersion = "1.0.0";

class CatalogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CatalogEntry {
  EhlichSpec spec;
  TypeTag type = TypeTag::pure;
  CanonicalKey key;
  Design design;
  AliasStats stats;
  bool d_optimal = false;  // s is in the D-optimal set for (N, p)
  bool a_optimal = false;

  bool operator==(const CatalogEntry&) const = default;
};

/// Annotates enumerated designs with keys, alias statistics and the
/// optimality flags of their (N, p, s) cell.
std::vector<CatalogEntry> make_entries(const std::vector<Design>& designs, const EhlichSpec& spec, TypeTag type);

/// One record of index.json.
struct CellRecord {
  int n = 0;
  int p = 0;
  int s = 0;
  TypeTag type = TypeTag::pure;
  std::string file;  // relative to the catalog root
  std::size_t count = 0;
  std::optional<mpq_class> min_c2;
  std::optional<mpq_class> min_c3;  // C3 of the min-C2 head
  bool d_optimal = false;
  bool a_optimal = false;
  std::string hash;  // FNV-1a 64 of the .designs file
  double seconds = 0.0;
};

struct CatalogIndex {
  std::string engine_version = kEngineVersion;
  int key_format_version = kKeyFormatVersion;
  std::vector<CellRecord> cells;

  const CellRecord* find(int n, int p, int s, TypeTag type) const;
};

/// "N<n>/p<p>_s<s>_t<t>.designs" with t = 0 (pure), 1 or 2.
std::string cell_file_name(int n, int p, int s, TypeTag type);

/// Header "N p s type count", then for every design a blank line and N rows
/// of p characters from {+,-}, intercept first.
std::string format_designs(const EhlichSpec& spec, TypeTag type, const std::vector<CatalogEntry>& entries);

/// Parses and validates a .designs file; every design must have the Gram
/// matrix announced by the header.
std::vector<CatalogEntry> parse_designs(std::string_view content, const std::string& origin = "designs");

std::string content_hash(std::string_view bytes);

/// Writes one cell (possibly empty) and updates index.json.
void write_cell(const std::filesystem::path& root, const EhlichSpec& spec, TypeTag type,
                const std::vector<CatalogEntry>& entries, double seconds = 0.0);

/// Writes every cell present in `entries`, grouped by (N, p, s, type).
void write_catalog(const std::filesystem::path& root, const std::vector<CatalogEntry>& entries);

CatalogIndex read_index(const std::filesystem::path& root);
void write_index(const std::filesystem::path& root, const CatalogIndex& index);

std::vector<CatalogEntry> read_cell(const std::filesystem::path& root, const CellRecord& cell);

/// Every entry of every indexed cell, in index order.
std::vector<CatalogEntry> read_catalog(const std::filesystem::path& root);

/// Reloads every cell, re-checks hashes, counts, Ehlich form, canonical key
/// uniqueness and the stored min-C2. Returns one message per problem.
std::vector<std::string> verify_catalog(const std::filesystem::path& root);

struct Grids {
  std::string counts;
  std::string seconds;
  std::string min_c2;
};

/// Three CSV tables with one row per s (descending from N to 3) and one
/// column per p (4..N). Type1 and type2 cells are merged. Blank means never
/// attempted; an attempted cell without designs shows 0 designs and "-" for
/// C2.
Grids emit_grids(const CatalogIndex& index, int n);

/// CSV: p,s,det,traceInv,dEff,aEff,isDOpt,isAOpt, efficiencies in percent.
std::string efficiency_csv(const EfficiencyGrid& grid);

/// Two-decimal percentage, rounded half up.
std::string percent(double fraction);

}  // namespace ehlich
