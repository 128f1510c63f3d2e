#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "ehlich/canon.hpp"
#include "ehlich/design.hpp"

namespace ehlich {

/// G2-aberration summary: C_i = tr(A*_i A*_i') where A_i is the alias matrix
/// of the order-i interactions on the main-effects model and A*_i drops the
/// intercept row.
struct AliasStats {
  mpq_class c2;
  mpq_class c3;
  int k = 0;  // factor count
  bool operator==(const AliasStats&) const = default;
};

/// Exact rational C2 and C3. Throws SingularMatrixError when X'X is singular.
AliasStats alias_stats(const Design& design);

/// Alias matrix (X_m'X_m)^-1 X_m'X_i for interaction order i, exact.
Matrix<mpq_class> alias_matrix(const Design& design, int order);

struct RankedDesign {
  Design design;
  CanonicalKey key;
  AliasStats stats;
};

/// Sorted by (C2, C3) ascending, ties broken by canonical key bytes. The
/// head is the minimally aliased design.
std::vector<RankedDesign> rank_catalog(const std::vector<Design>& catalog);

/// Rounds half up to `decimals` places and formats, e.g. "4.57".
std::string round_half_up(const mpq_class& q, int decimals = 2);

/// Two-decimal display of a C value: half up to three decimals, then half
/// up to two (0.17485 shows as 0.18). Exact values remain authoritative.
std::string display_c(const mpq_class& q);

}  // namespace ehlich
