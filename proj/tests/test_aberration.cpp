#include <doctest.h>

#include <random>

#include "ehlich/aberration.hpp"
#include "ehlich/columns.hpp"
#include "ehlich/enumerate.hpp"
#include "ehlich/exact_linalg.hpp"
#include "oracles.hpp"

using namespace ehlich;

TEST_CASE("initial design, N = 7") {
  const auto st = alias_stats(initial_design(7));
  CHECK(st.c2 == fraction(2, 25));
  CHECK(st.c3 == 0);
  CHECK(st.k == 2);
}

TEST_CASE("degenerate factor counts") {
  const auto one = design_from_rows({{1, 1}, {1, -1}, {1, 1}, {1, -1}});
  const auto st = alias_stats(one);
  CHECK(st.k == 1);
  CHECK(st.c2 == 0);
  CHECK(st.c3 == 0);

  const auto singular = design_from_rows({{1, 1, 1}, {1, -1, -1}, {1, 1, 1}, {1, -1, -1}});
  CHECK_THROWS_AS(alias_stats(singular), SingularMatrixError);
}

TEST_CASE("orthogonal design: alias matrix equals X'X2 / N") {
  // 8-run full factorial in three factors
  std::vector<std::vector<int>> rows;
  for (int i = 0; i < 8; ++i) rows.push_back({1, i & 1 ? 1 : -1, i & 2 ? 1 : -1, i & 4 ? 1 : -1});
  const auto d = design_from_rows(rows);
  const auto a2 = alias_matrix(d, 2);
  REQUIRE(a2.rows() == 4);
  REQUIRE(a2.cols() == 3);
  const int pairs[3][2] = {{1, 2}, {1, 3}, {2, 3}};
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t c = 0; c < 3; ++c) {
      long dot = 0;
      for (const auto& r : rows) dot += r[a] * r[pairs[c][0]] * r[pairs[c][1]];
      CHECK(a2(a, c) == fraction(dot, 8));
    }
  CHECK(alias_stats(d).c2 == 0);

  // half fraction with C = AB: the AB column is fully aliased with C
  std::vector<std::vector<int>> half;
  for (int i = 0; i < 4; ++i) {
    const int x = i & 1 ? 1 : -1, y = i & 2 ? 1 : -1;
    half.push_back({1, x, y, x * y});
  }
  CHECK(alias_stats(design_from_rows(half)).c2 == 3);
}

TEST_CASE("C2 agrees with the textbook formula and is invariant") {
  Enumerator engine(7, 1);
  std::mt19937_64 rng(13);
  for (int p = 4; p <= 7; ++p)
    for (int s = 3; s <= p; ++s)
      for (auto t : Enumerator::types_for(make_spec(7, p, s)))
        for (const auto& d : engine.enumerate_class(p, s, t)) {
          const auto st = alias_stats(d);
          CHECK(st.c2 == oracle::c2(design_rows(d)));
          for (int k = 0; k < 20; ++k)
            CHECK(alias_stats(apply_isomorphism(d, random_isomorphism(7, d.p() - 1, rng))) == st);
        }
}

TEST_CASE("ranking") {
  Enumerator engine(15, 1);
  auto catalog = engine.enumerate_class(4, 3, TypeTag::type1);
  const auto more = engine.enumerate_class(4, 3, TypeTag::type2);
  catalog.insert(catalog.end(), more.begin(), more.end());
  const auto ranked = rank_catalog(catalog);
  REQUIRE(ranked.size() == 8);
  for (std::size_t i = 1; i < ranked.size(); ++i) {
    const auto& a = ranked[i - 1].stats;
    const auto& b = ranked[i].stats;
    CHECK((a.c2 < b.c2 || (a.c2 == b.c2 && (a.c3 < b.c3 || (a.c3 == b.c3 && ranked[i - 1].key < ranked[i].key)))));
  }
  CHECK(ranked.front().stats.c2 == fraction(6049, 34596));

  CHECK(rank_catalog({initial_design(7)}).size() == 1);
  CHECK_THROWS_AS(rank_catalog({initial_design(7), initial_design(11)}), std::invalid_argument);
}

TEST_CASE("display rounding") {
  CHECK(round_half_up(fraction(1, 8), 2) == "0.13");
  CHECK(round_half_up(fraction(1, 16), 2) == "0.06");
  CHECK(round_half_up(fraction(53, 3), 2) == "17.67");
  CHECK(round_half_up(mpq_class(18), 2) == "18.00");
  CHECK(round_half_up(fraction(-1, 8), 2) == "-0.12");
  CHECK(round_half_up(fraction(7, 2), 0) == "4");
  CHECK(display_c(fraction(6049, 34596)) == "0.18");
  CHECK(display_c(fraction(1, 16)) == "0.06");
  CHECK(display_c(fraction(147, 64)) == "2.30");
}
