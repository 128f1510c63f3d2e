#pragma once

// Reference implementations used only by tests. They share no algorithmic
// code with the library: plain int vectors, rational Gauss-Jordan, full
// orbit search.

#include <gmpxx.h>

#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

using IntMatrix = std::vector<std::vector<long>>;
using Rows = std::vector<std::vector<int>>;  // N rows, intercept first

/// Determinant and inverse trace by rational Gauss-Jordan with pivot search.
mpq_class determinant(const IntMatrix& m);
mpq_class inverse_trace(const IntMatrix& m);

/// Gram matrix built entry by entry from the block layout.
IntMatrix ehlich_matrix(int n, int p, int s);

struct CandidateCounts {
  std::uint64_t zeta3 = 0;
  std::uint64_t zetam1 = 0;
  std::uint64_t zeta3_star = 0;
  std::uint64_t zetam1_star_a = 0;
  std::uint64_t zetam1_star_b = 0;
  std::uint64_t zetam1_star_s = 0;
};

/// Scans all 2^N sign vectors against the initial design's two factor
/// columns.
CandidateCounts candidate_counts(int n);

/// All designs (rows sorted, duplicates removed) whose Gram matrix equals
/// K(n,p,s) with the intercept block holding `intercept_block` columns,
/// found by depth-first search over every column with the right sum.
/// Nothing about the first columns is fixed.
std::set<Rows> brute_force_designs(int n, int p, int s, int intercept_block);

/// Minimum row-sorted image over all factor permutations and sign switches.
Rows orbit_minimum(const Rows& rows);

/// Number of isomorphism classes among `designs`.
std::size_t orbit_count(const std::set<Rows>& designs);

/// C2 by the textbook formula A = (X'X)^-1 X'X2 in plain rationals.
mpq_class c2(const Rows& rows);

}  // namespace oracle
