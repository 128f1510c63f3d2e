// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Reference values are transcribed into reference_values.hpp.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "ehlich/aberration.hpp"
#include "ehlich/catalog.hpp"
#include "ehlich/columns.hpp"
#include "ehlich/enumerate.hpp"
#include "ehlich/exact_linalg.hpp"
#include "oracles.hpp"
#include "reference_values.hpp"

using namespace ehlich;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void fail(const std::string& what) {
    if (!pass)
      note << "; ";
    else
      note.str("");
    pass = false;
    note << what;
  }
};

using Cell = std::tuple<int, int, int>;  // N, p, s

// Catalogs shared between criteria, per (N, p, s) and type.
std::map<Cell, std::map<TypeTag, std::vector<Design>>> g_catalogs;

std::size_t cell_count(const Cell& c) {
  std::size_t total = 0;
  for (const auto& [t, ds] : g_catalogs.at(c)) total += ds.size();
  return total;
}

void enumerate_cell(Enumerator& engine, int p, int s) {
  auto& slot = g_catalogs[{engine.n(), p, s}];
  for (auto t : Enumerator::types_for(make_spec(engine.n(), p, s))) slot[t] = engine.enumerate_class(p, s, t);
}

int intercept_block(const EhlichSpec& spec, TypeTag t) { return t == TypeTag::type2 ? spec.r + 1 : spec.r; }

void criterion1(Outcome& out) {
  int cells = 0;
  for (int n : {7, 11, 15})
    for (int p = 1; p <= n; ++p)
      for (int s = 1; s <= p; ++s) {
        const auto spec = make_spec(n, p, s);
        const auto k = build_matrix(spec).cast<mpz_class>();
        const auto det = bareiss_determinant(k);
        const auto tr = trace(rational_inverse(k.cast<mpq_class>()));
        ++cells;
        if (det != det_closed_form(spec))
          out.fail("det differs at " + std::to_string(n) + "," + std::to_string(p) + "," + std::to_string(s));
        if (tr != trace_inv_closed_form(spec))
          out.fail("trace differs at " + std::to_string(n) + "," + std::to_string(p) + "," + std::to_string(s));
      }
  if (out.pass) out.note << cells << " cells exact";
}

void criterion2(Outcome& out) {
  const auto grid = efficiency_grid(15, 15);
  int checked = 0;
  for (int row = 0; row < 15; ++row) {
    const int s = 15 - row;
    for (int col = 0; col < 12; ++col) {
      const int p = col + 4;
      for (int panel = 0; panel < 2; ++panel) {
        std::string want = (panel == 0 ? reference::kDEff : reference::kAEff)[row][col];
        if (s > p) {
          if (!want.empty()) out.fail("table has a value where s > p");
          continue;
        }
        const bool marked = !want.empty() && want.back() == '*';
        if (marked) want.pop_back();
        const auto& cell = grid.at(p, s);
        const std::string got = percent(panel == 0 ? cell.d_eff : cell.a_eff);
        const bool optimal = panel == 0 ? cell.d_optimal : cell.a_optimal;
        ++checked;
        const std::string where =
            std::string(panel == 0 ? "D" : "A") + "(p=" + std::to_string(p) + ",s=" + std::to_string(s) + ")";
        if (got != want) out.fail(where + " " + got + " vs " + want);
        if (optimal != marked) out.fail(where + " optimality flag");
      }
    }
  }
  if (grid.optimal_d.at(10) != std::set<int>{9, 10}) out.fail("S_D(10)");
  if (grid.optimal_a.at(8) != std::set<int>{7, 8}) out.fail("S_A(8)");
  if (out.pass) out.note << checked << " cells to 2 decimals, optimal sets match";
}

void criterion3(Outcome& out) {
  if (!(count_formulas(19) == CountFormulas{9030, 28686, 10626})) out.fail("formulas at N=19");
  const auto c19 = enumerate_candidates(19);
  if (c19.zeta3_size != 75582 || c19.zetam1_size != 92378) out.fail("|zeta| at N=19");
  for (int n : {7, 11, 15}) {
    const auto ref = oracle::candidate_counts(n);
    const auto f = count_formulas(n);
    const auto c = enumerate_candidates(n);
    if (f.zeta3_star != ref.zeta3_star || f.zetam1_star != ref.zetam1_star_a + ref.zetam1_star_b + ref.zetam1_star_s ||
        f.zetam1_star_s != ref.zetam1_star_s || c.zeta3_star.size() != ref.zeta3_star ||
        c.zetam1_star().size() != f.zetam1_star || c.zetam1_star_s.size() != ref.zetam1_star_s)
      out.fail("brute force disagrees at N=" + std::to_string(n));
  }
  if (out.pass) out.note << "N=19 (9030, 28686, 10626), 75582, 92378; N=7,11,15 match exhaustive scan";
}

void criterion4(Outcome& out) {
  Enumerator engine(15);
  for (const auto& [p, s, want] : reference::kCounts15) {
    enumerate_cell(engine, p, s);
    const auto got = cell_count({15, p, s});
    if (got != want)
      out.fail("(15," + std::to_string(p) + "," + std::to_string(s) + ")=" + std::to_string(got) + " vs " +
               std::to_string(want));
  }
  if (out.pass) out.note << std::size(reference::kCounts15) << " cells exact, " << engine.threads() << " threads";
}

void criterion5(Outcome& out) {
  Enumerator engine(7);
  enumerate_cell(engine, 7, 5);
  enumerate_cell(engine, 7, 4);
  if (cell_count({7, 7, 5}) != 0) out.fail("K(7,7,5) has designs");
  if (cell_count({7, 7, 4}) == 0) out.fail("K(7,7,4) has none");
  if (out.pass) out.note << "K(7,7,5) empty, K(7,7,4) has " << cell_count({7, 7, 4});
}

void criterion6(Outcome& out) {
  Enumerator engine(7);
  int cells = 0;
  for (int p = 3; p <= 7; ++p)
    for (int s = 3; s <= p; ++s) {
      enumerate_cell(engine, p, s);
      const auto spec = make_spec(7, p, s);
      for (const auto& [t, designs] : g_catalogs.at({7, p, s})) {
        ++cells;
        const auto brute = oracle::orbit_count(oracle::brute_force_designs(7, p, s, intercept_block(spec, t)));
        if (brute != designs.size())
          out.fail("(7," + std::to_string(p) + "," + std::to_string(s) + "," + to_string(t) + ") engine " +
                   std::to_string(designs.size()) + " oracle " + std::to_string(brute));
      }
    }
  if (out.pass) out.note << cells << " (p,s,type) cells equal";
}

void criterion7(Outcome& out) {
  for (const auto& [p, s, want] : reference::kMinC2) {
    std::vector<Design> all;
    for (const auto& [t, ds] : g_catalogs.at({15, p, s})) all.insert(all.end(), ds.begin(), ds.end());
    if (all.empty()) {
      out.fail("no designs for (" + std::to_string(p) + "," + std::to_string(s) + ")");
      continue;
    }
    const auto head = rank_catalog(all).front();
    const auto got = display_c(head.stats.c2);
    if (got != want)
      out.fail("(" + std::to_string(p) + "," + std::to_string(s) + ") " + got + " vs " + want + " exact " +
               head.stats.c2.get_str());
  }
  if (out.pass)
    out.note << std::size(reference::kMinC2) << " cells match (two-stage half-up display; (4,3) exact 6049/34596)";
}

void criterion8(Outcome& out) {
  std::mt19937_64 rng(2024);
  std::size_t designs = 0;
  std::set<CanonicalKey> all_keys;
  for (const auto& [cell, by_type] : g_catalogs) {
    if (std::get<0>(cell) != 7) continue;
    for (const auto& [t, ds] : by_type)
      for (const auto& d : ds) {
        const auto key = canonicalize(d);
        if (!all_keys.insert(key).second) out.fail("two catalog members share a key");
        ++designs;
        for (int k = 0; k < 1000; ++k)
          if (canonicalize(apply_isomorphism(d, random_isomorphism(d.n, d.p() - 1, rng))) != key) {
            out.fail("scramble changed a key");
            break;
          }
      }
  }

  std::map<int, std::set<CanonicalKey>> by_threads;
  for (const char* threads : {"1", "4", "8"}) {
    setenv("EHLICH_THREADS", threads, 1);
    Enumerator n7(7);
    Enumerator n15(15);
    auto& keys = by_threads[std::atoi(threads)];
    for (int p = 3; p <= 7; ++p)
      for (int s = 3; s <= p; ++s)
        for (auto t : Enumerator::types_for(make_spec(7, p, s)))
          for (const auto& d : n7.enumerate_class(p, s, t)) keys.insert(canonicalize(d));
    for (auto t : Enumerator::types_for(make_spec(15, 6, 5)))
      for (const auto& d : n15.enumerate_class(6, 5, t)) keys.insert(canonicalize(d));
    if (n7.threads() != std::atoi(threads)) out.fail("EHLICH_THREADS ignored");
  }
  unsetenv("EHLICH_THREADS");
  if (by_threads[1] != by_threads[4] || by_threads[1] != by_threads[8]) out.fail("catalog depends on thread count");
  if (out.pass)
    out.note << designs << " designs x 1000 scrambles, keys distinct, threads 1/4/8 give " << by_threads[1].size()
             << " identical keys";
}

void criterion9(Outcome& out) {
  const fs::path root = fs::temp_directory_path() / ("ehlich_acceptance_" + std::to_string(std::random_device{}()));
  std::vector<CatalogEntry> written;
  for (const auto& [cell, by_type] : g_catalogs) {
    const auto spec = make_spec(std::get<0>(cell), std::get<1>(cell), std::get<2>(cell));
    for (const auto& [t, ds] : by_type) {
      auto entries = make_entries(ds, spec, t);
      write_cell(root, spec, t, entries);
      written.insert(written.end(), entries.begin(), entries.end());
    }
  }
  const auto index = read_index(root);
  std::vector<CatalogEntry> expected;
  for (const auto& cell : index.cells)
    for (const auto& e : written)
      if (e.spec.n == cell.n && e.spec.p == cell.p && e.spec.s == cell.s && e.type == cell.type) expected.push_back(e);
  if (read_catalog(root) != expected) out.fail("read-back differs");
  if (expected.size() != written.size()) out.fail("index lost cells");
  const auto problems = verify_catalog(root);
  for (const auto& msg : problems) out.fail(msg);
  if (out.pass) out.note << index.cells.size() << " cells, " << written.size() << " designs round-trip, verify clean";
  fs::remove_all(root);
}

}  // namespace

int main() {
  const std::pair<int, std::function<void(Outcome&)>> criteria[] = {
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
      {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9},
  };
  int failed = 0;
  for (const auto& [id, run] : criteria) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      run(out);
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "criterion " << id << ": " << (out.pass ? "PASS" : "FAIL") << " (" << out.note.str() << ") [" << secs
              << " s]" << std::endl;
    if (!out.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
