#include "ehlich/columns.hpp"

#include <algorithm>
#include <iterator>

namespace ehlich {

Design initial_design(int n) {
  require_run_size(n);
  const int rep = (n + 1) / 4;
  Design d;
  d.n = n;
  SignColumn a{0, n};
  SignColumn b{0, n};
  int row = 0;
  auto place = [&](int count, bool plus_a, bool plus_b) {
    for (int i = 0; i < count; ++i, ++row) {
      if (plus_a) a.bits |= std::uint32_t{1} << row;
      if (plus_b) b.bits |= std::uint32_t{1} << row;
    }
  };
  place(rep, false, false);
  place(rep, false, true);
  place(rep, true, false);
  place((n - 3) / 4, true, true);
  d.columns = {SignColumn::ones(n), a, b};
  d.group_of = {1, 2, 3};
  d.type = TypeTag::pure;
  return d;
}

std::vector<SignColumn> columns_with_plus_count(int n, int plus) {
  std::vector<SignColumn> out;
  if (plus < 0 || plus > n) return out;
  out.reserve(binomial(n, plus));
  if (plus == 0) {
    out.push_back({0, n});
    return out;
  }
  const std::uint64_t limit = std::uint64_t{1} << n;
  std::uint64_t x = (std::uint64_t{1} << plus) - 1;
  while (x < limit) {
    out.push_back({static_cast<std::uint32_t>(x), n});
    // Gosper's hack: next integer with the same popcount.
    const std::uint64_t c = x & (~x + 1);
    const std::uint64_t r = x + c;
    x = (((r ^ x) >> 2) / c) | r;
  }
  return out;
}

std::vector<SignColumn> CandidateSets::zetam1_star() const {
  std::vector<SignColumn> out;
  out.reserve(zetam1_star_a.size() + zetam1_star_b.size() + zetam1_star_s.size());
  out.insert(out.end(), zetam1_star_a.begin(), zetam1_star_a.end());
  out.insert(out.end(), zetam1_star_b.begin(), zetam1_star_b.end());
  out.insert(out.end(), zetam1_star_s.begin(), zetam1_star_s.end());
  std::sort(out.begin(), out.end());
  return out;
}

CandidateSets enumerate_candidates(int n) {
  const Design init = initial_design(n);
  CandidateSets sets;
  sets.n = n;
  sets.col_a = init.columns[1];
  sets.col_b = init.columns[2];

  const auto sum_m1 = columns_with_plus_count(n, (n - 1) / 2);
  const auto sum_3 = columns_with_plus_count(n, (n + 3) / 2);
  sets.zetam1_size = sum_m1.size();
  sets.zeta3_size = sum_3.size();

  for (const auto& c : sum_3)
    if (inner_product(c, sets.col_a) == -1 && inner_product(c, sets.col_b) == -1) sets.zeta3_star.push_back(c);
  for (const auto& c : sum_m1) {
    const int ia = inner_product(c, sets.col_a);
    const int ib = inner_product(c, sets.col_b);
    if (ia == 3 && ib == -1)
      sets.zetam1_star_a.push_back(c);
    else if (ia == -1 && ib == 3)
      sets.zetam1_star_b.push_back(c);
    else if (ia == -1 && ib == -1)
      sets.zetam1_star_s.push_back(c);
  }
  return sets;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

CountFormulas count_formulas(int n) {
  require_run_size(n);
  const int x = (n - 3) / 4;
  CountFormulas f;
  for (int i = 0; i <= x; ++i) {
    const std::uint64_t lead = binomial(x, i) * binomial(x + 1, i + 1);
    const std::uint64_t hi = binomial(x + 1, i + 1);
    const std::uint64_t lo = binomial(x + 1, i);
    f.zeta3_star += lead * lo * lo;
    f.zetam1_star += lead * (hi * hi + 2 * lo * lo);
    f.zetam1_star_s += binomial(x, i) * hi * hi * hi;
  }
  return f;
}

}  // namespace ehlich
