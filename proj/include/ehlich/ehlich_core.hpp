#pragma once

#include <gmpxx.h>

#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ehlich/matrix.hpp"

namespace ehlich {

class InvalidSpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// N must be 3 modulo 4. Bit-packed columns cap N at 31.
bool valid_run_size(int n);
void require_run_size(int n);

/// The tuple (N, p, s) identifying one Ehlich matrix K(N,p,s), together with
/// its block layout: u blocks of size r followed by v blocks of size r+1.
struct EhlichSpec {
  int n = 0;
  int p = 0;
  int s = 0;
  int r = 0;
  int u = 0;
  int v = 0;

  /// u entries r, then v entries r+1.
  std::vector<int> block_sizes() const;
  bool operator==(const EhlichSpec&) const = default;
};

EhlichSpec make_spec(int n, int p, int s);

Matrix<long> build_matrix(const EhlichSpec& spec);

/// Closed form (N-3)^(p-s) (1 - sum r_i/L_i) prod L_i with
/// L_i = N - 3 + 4 r_i. Always integral.
mpz_class det_closed_form(const EhlichSpec& spec);

/// Closed form for tr(K^-1). Throws SingularMatrixError when
/// 1 - sum r_i/L_i vanishes.
mpq_class trace_inv_closed_form(const EhlichSpec& spec);

struct EfficiencyCell {
  int p = 0;
  int s = 0;
  mpz_class det;
  mpq_class trace_inv;
  double d_eff = 0.0;  // (det / max det)^(1/p)
  double a_eff = 0.0;  // min trace / trace
  bool d_optimal = false;
  bool a_optimal = false;
};

struct EfficiencyGrid {
  int n = 0;
  int p_max = 0;
  std::map<std::pair<int, int>, EfficiencyCell> cells;  // keyed by (p, s)
  std::map<int, std::set<int>> optimal_d;
  std::map<int, std::set<int>> optimal_a;

  const EfficiencyCell& at(int p, int s) const;
};

/// Covers p = 4..p_max and s = 1..p. Optimal sets use exact comparisons.
EfficiencyGrid efficiency_grid(int n, int p_max);

}  // namespace ehlich
