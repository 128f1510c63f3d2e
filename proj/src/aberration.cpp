#include "ehlich/aberration.hpp"

#include <algorithm>
#include <stdexcept>

#include "ehlich/exact_linalg.hpp"

namespace ehlich {

namespace {

// -1 indicator masks of the order-i products of factor columns, in
// lexicographic order of the factor index tuples.
std::vector<std::uint32_t> interaction_minus_masks(const Design& d, int order) {
  const int k = d.factor_count();
  const std::uint32_t full = SignColumn::full_mask(d.n);
  std::vector<std::uint32_t> minus(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j)
    minus[static_cast<std::size_t>(j)] = ~d.columns[static_cast<std::size_t>(j) + 1].bits & full;

  std::vector<std::uint32_t> out;
  std::vector<int> idx(static_cast<std::size_t>(order));
  auto rec = [&](auto&& self, int start, int depth, std::uint32_t acc) -> void {
    if (depth == order) {
      out.push_back(acc);
      return;
    }
    for (int j = start; j < k; ++j) self(self, j + 1, depth + 1, acc ^ minus[static_cast<std::size_t>(j)]);
  };
  if (order >= 1 && order <= k) rec(rec, 0, 0, 0);
  return out;
}

// X_m' X_i as integers.
Matrix<mpq_class> cross_products(const Design& d, const std::vector<std::uint32_t>& minus_masks) {
  const std::uint32_t full = SignColumn::full_mask(d.n);
  Matrix<mpq_class> b(static_cast<std::size_t>(d.p()), minus_masks.size());
  for (int r = 0; r < d.p(); ++r) {
    const std::uint32_t col_minus = ~d.columns[static_cast<std::size_t>(r)].bits & full;
    for (std::size_t c = 0; c < minus_masks.size(); ++c)
      b(static_cast<std::size_t>(r), c) = d.n - 2 * std::popcount(col_minus ^ minus_masks[c]);
  }
  return b;
}

mpq_class c_statistic(const Matrix<mpq_class>& gram_inv, const Design& d, int order) {
  const auto masks = interaction_minus_masks(d, order);
  if (masks.empty()) return 0;
  const auto b = cross_products(d, masks);
  const std::size_t p = gram_inv.rows();

  // Scale the inverse to integers so the product runs in mpz.
  mpz_class den = 1;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), gram_inv(i, j).get_den_mpz_t());
  Matrix<mpz_class> scaled(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) scaled(i, j) = gram_inv(i, j).get_num() * (den / gram_inv(i, j).get_den());

  mpz_class sum_sq = 0;
  mpz_class entry;
  for (std::size_t i = 1; i < p; ++i) {
    for (std::size_t c = 0; c < b.cols(); ++c) {
      entry = 0;
      for (std::size_t j = 0; j < p; ++j) entry += scaled(i, j) * b(j, c).get_num();
      sum_sq += entry * entry;
    }
  }
  mpq_class out(sum_sq, den * den);
  out.canonicalize();
  return out;
}

Matrix<mpq_class> gram_inverse(const Design& d) { return rational_inverse(d.gram().cast<mpq_class>()); }

}  // namespace

Matrix<mpq_class> alias_matrix(const Design& design, int order) {
  const auto masks = interaction_minus_masks(design, order);
  return rational_solve(design.gram().cast<mpq_class>(), cross_products(design, masks));
}

AliasStats alias_stats(const Design& design) {
  AliasStats stats;
  stats.k = design.factor_count();
  const auto inv = gram_inverse(design);
  stats.c2 = stats.k >= 2 ? c_statistic(inv, design, 2) : mpq_class(0);
  stats.c3 = stats.k >= 3 ? c_statistic(inv, design, 3) : mpq_class(0);
  return stats;
}

std::vector<RankedDesign> rank_catalog(const std::vector<Design>& catalog) {
  std::vector<RankedDesign> ranked;
  ranked.reserve(catalog.size());
  for (const auto& d : catalog) {
    if (!catalog.empty() && (d.n != catalog.front().n || d.p() != catalog.front().p()))
      throw std::invalid_argument("rank_catalog: designs differ in N or p");
    ranked.push_back({d, canonicalize(d), alias_stats(d)});
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const RankedDesign& a, const RankedDesign& b) {
    if (a.stats.c2 != b.stats.c2) return a.stats.c2 < b.stats.c2;
    if (a.stats.c3 != b.stats.c3) return a.stats.c3 < b.stats.c3;
    return a.key < b.key;
  });
  return ranked;
}

std::string round_half_up(const mpq_class& q, int decimals) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(decimals));
  mpq_class shifted = q * scale + mpq_class(1, 2);
  mpz_class units;
  mpz_fdiv_q(units.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  const bool negative = units < 0;
  if (negative) units = -units;
  std::string digits = units.get_str();
  if (decimals > 0) {
    if (digits.size() <= static_cast<std::size_t>(decimals))
      digits.insert(0, static_cast<std::size_t>(decimals) + 1 - digits.size(), '0');
    digits.insert(digits.size() - static_cast<std::size_t>(decimals), ".");
  }
  return negative ? "-" + digits : digits;
}

std::string display_c(const mpq_class& q) {
  const mpq_class shifted = q * 1000 + mpq_class(1, 2);
  mpz_class units;
  mpz_fdiv_q(units.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  mpq_class third(units, 1000);
  third.canonicalize();
  return round_half_up(third, 2);
}

}  // namespace ehlich
