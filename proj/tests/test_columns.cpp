#include <doctest.h>

#include <algorithm>

#include "ehlich/columns.hpp"
#include "oracles.hpp"

using namespace ehlich;

TEST_CASE("initial design has Gram K(N,3,3)") {
  for (int n : {7, 11, 15, 19, 23}) {
    const auto d = initial_design(n);
    CHECK(d.p() == 3);
    CHECK(d.group_of == std::vector<int>{1, 2, 3});
    const auto g = d.gram();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(g(i, j) == (i == j ? n : -1));
  }
  const auto d7 = initial_design(7);
  // rows (-,-), (-,-), (-,+), (-,+), (+,-), (+,-), (+,+)
  CHECK(d7.at(0, 1) == -1);
  CHECK(d7.at(2, 2) == 1);
  CHECK(d7.at(4, 1) == 1);
  CHECK(d7.at(6, 2) == 1);
  CHECK_THROWS_AS(initial_design(9), InvalidSpecError);
}

TEST_CASE("columns with a fixed number of plus signs") {
  const auto cols = columns_with_plus_count(5, 2);
  CHECK(cols.size() == 10);
  CHECK(std::is_sorted(cols.begin(), cols.end()));
  for (const auto& c : cols) CHECK(c.plus_count() == 2);
  CHECK(columns_with_plus_count(5, 0).size() == 1);
  CHECK(columns_with_plus_count(5, 5).size() == 1);
}

TEST_CASE("count formulas, N = 19") {
  CHECK(count_formulas(19) == CountFormulas{9030, 28686, 10626});
  const auto c = enumerate_candidates(19);
  CHECK(c.zeta3_size == 75582);
  CHECK(c.zetam1_size == 92378);
  CHECK(c.zeta3_star.size() == 9030);
  CHECK(c.zetam1_star().size() == 28686);
  CHECK(c.zetam1_star_s.size() == 10626);
}

TEST_CASE("candidate sets agree with an exhaustive scan") {
  for (int n : {7, 11, 15}) {
    const auto ref = oracle::candidate_counts(n);
    const auto c = enumerate_candidates(n);
    const auto f = count_formulas(n);
    CHECK(c.zeta3_size == ref.zeta3);
    CHECK(c.zetam1_size == ref.zetam1);
    CHECK(c.zeta3_star.size() == ref.zeta3_star);
    CHECK(c.zetam1_star_a.size() == ref.zetam1_star_a);
    CHECK(c.zetam1_star_b.size() == ref.zetam1_star_b);
    CHECK(c.zetam1_star_s.size() == ref.zetam1_star_s);
    CHECK(f.zeta3_star == ref.zeta3_star);
    CHECK(f.zetam1_star == ref.zetam1_star_a + ref.zetam1_star_b + ref.zetam1_star_s);
    CHECK(f.zetam1_star_s == ref.zetam1_star_s);
  }
}

TEST_CASE("N = 7 candidate sets") {
  const auto c = enumerate_candidates(7);
  CHECK(c.zeta3_star.size() == 6);
  CHECK(c.zetam1_star().size() == 21);
  CHECK(c.zetam1_star_s.size() == 9);
  for (const auto& x : c.zeta3_star) {
    CHECK(x.sum() == 3);
    CHECK(inner_product(x, c.col_a) == -1);
    CHECK(inner_product(x, c.col_b) == -1);
  }
  for (const auto& x : c.zetam1_star_a) {
    CHECK(x.sum() == -1);
    CHECK(inner_product(x, c.col_a) == 3);
    CHECK(inner_product(x, c.col_b) == -1);
  }
  const auto all = c.zetam1_star();
  CHECK(std::is_sorted(all.begin(), all.end()));
}

TEST_CASE("binomial") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(19, 9) == 92378);
  CHECK(binomial(4, 5) == 0);
  CHECK(binomial(0, 0) == 1);
}
