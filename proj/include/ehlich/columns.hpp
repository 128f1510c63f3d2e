#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ehlich/design.hpp"

namespace ehlich {

/// Runs ordered as (N+1)/4 copies each of (-1,-1), (-1,1), (1,-1), then
/// (N-3)/4 copies of (1,1). Its Gram matrix is K(N,3,3).
Design initial_design(int n);

/// Every length-n column with exactly `plus` entries equal to +1, in
/// ascending packed-bit order.
std::vector<SignColumn> columns_with_plus_count(int n, int plus);

/// Candidate column universes relative to the initial design's factor
/// columns col_a and col_b. All sequences ascend by packed bits.
struct CandidateSets {
  int n = 0;
  SignColumn col_a;
  SignColumn col_b;
  std::size_t zeta3_size = 0;   // columns summing to 3
  std::size_t zetam1_size = 0;  // columns summing to -1

  std::vector<SignColumn> zeta3_star;     // sum 3, <c,a> = <c,b> = -1
  std::vector<SignColumn> zetam1_star_a;  // sum -1, (<c,a>, <c,b>) = (3, -1)
  std::vector<SignColumn> zetam1_star_b;  // sum -1, (-1, 3)
  std::vector<SignColumn> zetam1_star_s;  // sum -1, (-1, -1)

  /// Union of the three sum -1 sub-cases, ascending.
  std::vector<SignColumn> zetam1_star() const;
};

CandidateSets enumerate_candidates(int n);

struct CountFormulas {
  std::uint64_t zeta3_star = 0;
  std::uint64_t zetam1_star = 0;
  std::uint64_t zetam1_star_s = 0;
  bool operator==(const CountFormulas&) const = default;
};

/// Closed-form sizes of the reduced candidate sets, x = (N-3)/4.
CountFormulas count_formulas(int n);

std::uint64_t binomial(int n, int k);

}  // namespace ehlich
