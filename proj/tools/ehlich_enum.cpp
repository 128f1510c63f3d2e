#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "ehlich/aberration.hpp"
#include "ehlich/catalog.hpp"
#include "ehlich/columns.hpp"
#include "ehlich/ehlich_core.hpp"
#include "ehlich/enumerate.hpp"

namespace fs = std::filesystem;
using namespace ehlich;

namespace {

std::vector<TypeTag> requested_types(const EhlichSpec& spec, const std::string& type) {
  if (spec.v == 0) return {TypeTag::pure};
  if (type == "1") return {TypeTag::type1};
  if (type == "2") return {TypeTag::type2};
  return {TypeTag::type1, TypeTag::type2};
}

// Enumerates one (p, s) cell, writes it, returns the summed count.
std::size_t run_cell(Enumerator& engine, const fs::path& out, int p, int s, const std::string& type) {
  const auto spec = make_spec(engine.n(), p, s);
  std::size_t total = 0;
  for (auto t : requested_types(spec, type)) {
    const auto start = std::chrono::steady_clock::now();
    const auto designs = engine.enumerate_class(p, s, t);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_cell(out, spec, t, make_entries(designs, spec, t), seconds);
    total += designs.size();
  }
  return total;
}

int characterize(int n, int p, int s, const fs::path& root) {
  const auto spec = make_spec(n, p, s);
  std::vector<CatalogEntry> entries;
  for (auto t : Enumerator::types_for(spec)) {
    auto index = read_index(root);
    const CellRecord* cell = index.find(n, p, s, t);
    if (!cell) {
      Enumerator engine(n);
      write_cell(root, spec, t, make_entries(engine.enumerate_class(p, s, t), spec, t));
      index = read_index(root);
      cell = index.find(n, p, s, t);
    }
    auto part = read_cell(root, *cell);
    std::move(part.begin(), part.end(), std::back_inserter(entries));
  }
  std::cout << "count " << entries.size() << "\n";
  if (entries.empty()) {
    std::cout << "min C2 -\nmin C3 -\nhead -\n";
    return 0;
  }
  const CatalogEntry* head = nullptr;
  std::size_t head_pos = 0;
  std::size_t pos = 0;
  TypeTag last = entries.front().type;
  for (const auto& e : entries) {
    if (e.type != last) {
      pos = 0;
      last = e.type;
    }
    ++pos;
    if (!head || std::tie(e.stats.c2, e.stats.c3, e.key) < std::tie(head->stats.c2, head->stats.c3, head->key)) {
      head = &e;
      head_pos = pos;
    }
  }
  std::cout << "min C2 " << display_c(head->stats.c2) << " (" << head->stats.c2.get_str() << ")\n";
  std::cout << "min C3 " << display_c(head->stats.c3) << " (" << head->stats.c3.get_str() << ")\n";
  std::cout << "head " << (root / cell_file_name(n, p, s, head->type)).string() << " design " << head_pos << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enumerate two-level designs with an Ehlich information matrix"};
  app.require_subcommand(1);

  int n = 15, p = 4, s = 3, p_max = 0;
  std::string type = "both";
  std::string out = "catalog";
  std::string which = "all";
  bool all_s = false, grid = false;

  auto* tables = app.add_subcommand("tables", "D/A efficiency grid as CSV");
  tables->add_option("--n", n, "run size")->required();
  tables->add_option("--pmax", p_max, "largest p")->required();

  auto* candidates = app.add_subcommand("candidates", "candidate set sizes");
  candidates->add_option("--n", n, "run size")->required();

  auto* run = app.add_subcommand("run", "enumerate catalogs");
  run->add_option("--n", n, "run size")->required();
  run->add_option("--p", p, "number of model columns (with --grid: largest p)");
  run->add_option("--s", s, "number of blocks");
  run->add_option("--type", type, "1, 2 or both")->check(CLI::IsMember({"1", "2", "both"}));
  run->add_option("--out", out, "catalog directory")->required();
  run->add_flag("--all-s", all_s, "sweep s = 3..p");
  run->add_flag("--grid", grid, "sweep p = 4..N (or --p) and s = 3..p");

  auto* charz = app.add_subcommand("characterize", "count and minimum aberration of a cell");
  charz->add_option("--n", n, "run size")->required();
  charz->add_option("--p", p, "number of model columns")->required();
  charz->add_option("--s", s, "number of blocks")->required();
  charz->add_option("--catalog", out, "catalog directory, filled on demand");

  auto* grids = app.add_subcommand("grids", "count, time and min C2 grids of a catalog");
  grids->add_option("--n", n, "run size")->required();
  grids->add_option("--catalog", out, "catalog directory");
  grids->add_option("--which", which, "counts, times, c2 or all")
      ->check(CLI::IsMember({"counts", "times", "c2", "all"}));

  auto* verify = app.add_subcommand("verify", "re-check a catalog directory");
  verify->add_option("dir", out, "catalog directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*tables) {
      require_run_size(n);
      if (p_max < 4 || p_max > n) throw InvalidSpecError("--pmax must lie in 4..N");
      std::cout << efficiency_csv(efficiency_grid(n, p_max));
    } else if (*candidates) {
      const auto c = enumerate_candidates(n);
      const auto f = count_formulas(n);
      std::cout << "zeta3 " << c.zeta3_size << "\n"
                << "zeta-1 " << c.zetam1_size << "\n"
                << "zeta3* " << c.zeta3_star.size() << "\n"
                << "zeta-1* " << c.zetam1_star_a.size() + c.zetam1_star_b.size() + c.zetam1_star_s.size() << "\n"
                << "zeta-1*(-1,-1) " << c.zetam1_star_s.size() << "\n"
                << "formula zeta3* " << f.zeta3_star << "\n"
                << "formula zeta-1* " << f.zetam1_star << "\n"
                << "formula zeta-1*(-1,-1) " << f.zetam1_star_s << "\n";
    } else if (*run) {
      Enumerator engine(n);
      if (grid) {
        const int top = run->count("--p") ? p : n;
        for (int pp = 4; pp <= top; ++pp)
          for (int ss = pp; ss >= 3; --ss)
            std::cout << "N=" << n << " p=" << pp << " s=" << ss << " " << run_cell(engine, out, pp, ss, type)
                      << std::endl;
        std::cout << emit_grids(read_index(out), n).counts;
      } else if (all_s) {
        for (int ss = p; ss >= 3; --ss)
          std::cout << "N=" << n << " p=" << p << " s=" << ss << " " << run_cell(engine, out, p, ss, type) << std::endl;
      } else {
        std::cout << run_cell(engine, out, p, s, type) << "\n";
      }
    } else if (*charz) {
      return characterize(n, p, s, out);
    } else if (*grids) {
      const auto g = emit_grids(read_index(out), n);
      if (which == "counts" || which == "all") std::cout << (which == "all" ? "# designs\n" : "") << g.counts;
      if (which == "times" || which == "all") std::cout << (which == "all" ? "# seconds\n" : "") << g.seconds;
      if (which == "c2" || which == "all") std::cout << (which == "all" ? "# min C2\n" : "") << g.min_c2;
    } else if (*verify) {
      const auto problems = verify_catalog(out);
      for (const auto& msg : problems) std::cerr << msg << "\n";
      if (!problems.empty()) return 2;
      std::cout << "ok " << read_index(out).cells.size() << " cells\n";
    }
  } catch (const CatalogError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
