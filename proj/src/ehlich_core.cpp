#include "ehlich/ehlich_core.hpp"

#include <cmath>
#include <string>

#include "ehlich/exact_linalg.hpp"

namespace ehlich {

bool valid_run_size(int n) { return n >= 7 && n <= 31 && n % 4 == 3; }

void require_run_size(int n) {
  if (!valid_run_size(n))
    throw InvalidSpecError("run size " + std::to_string(n) + " is not 3 mod 4 in the supported range [7, 31]");
}

std::vector<int> EhlichSpec::block_sizes() const {
  std::vector<int> sizes(static_cast<std::size_t>(u), r);
  sizes.insert(sizes.end(), static_cast<std::size_t>(v), r + 1);
  return sizes;
}

EhlichSpec make_spec(int n, int p, int s) {
  require_run_size(n);
  if (p < 1 || p > n) throw InvalidSpecError("column count p=" + std::to_string(p) + " outside [1, N]");
  if (s < 1 || s > p) throw InvalidSpecError("block count s=" + std::to_string(s) + " outside [1, p]");
  EhlichSpec spec{n, p, s, p / s, 0, 0};
  if (p % s == 0) {
    spec.u = s;
    spec.v = 0;
  } else {
    spec.u = s * (spec.r + 1) - p;
    spec.v = s - spec.u;
  }
  return spec;
}

Matrix<long> build_matrix(const EhlichSpec& spec) {
  std::vector<int> block_of;
  block_of.reserve(static_cast<std::size_t>(spec.p));
  const auto sizes = spec.block_sizes();
  for (std::size_t b = 0; b < sizes.size(); ++b)
    for (int i = 0; i < sizes[b]; ++i) block_of.push_back(static_cast<int>(b));

  const auto p = static_cast<std::size_t>(spec.p);
  Matrix<long> k(p, p);
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < p; ++b) k(a, b) = a == b ? spec.n : (block_of[a] == block_of[b] ? 3 : -1);
  return k;
}

namespace {

// 1 - sum r_i / L_i
mpq_class schur_factor(const EhlichSpec& spec) {
  mpq_class f = 1;
  for (int r : spec.block_sizes()) f -= fraction(r, spec.n - 3 + 4 * r);
  return f;
}

}  // namespace

mpz_class det_closed_form(const EhlichSpec& spec) {
  mpq_class det = schur_factor(spec);
  mpz_class base;
  mpz_ui_pow_ui(base.get_mpz_t(), static_cast<unsigned long>(spec.n - 3), static_cast<unsigned long>(spec.p - spec.s));
  det *= base;
  for (int r : spec.block_sizes()) det *= spec.n - 3 + 4 * r;
  det.canonicalize();
  if (det.get_den() != 1) throw std::logic_error("det_closed_form: non-integral determinant");
  return det.get_num();
}

mpq_class trace_inv_closed_form(const EhlichSpec& spec) {
  const mpq_class f = schur_factor(spec);
  if (f == 0) throw SingularMatrixError("Ehlich matrix is singular");
  mpq_class t = 0;
  mpq_class weighted = 0;
  for (int r : spec.block_sizes()) {
    const long l = spec.n - 3 + 4 * r;
    t += fraction(1, l);
    weighted += fraction(r, l * l);
  }
  t += fraction(spec.p - spec.s, spec.n - 3);
  t += weighted / f;
  t.canonicalize();
  return t;
}

const EfficiencyCell& EfficiencyGrid::at(int p, int s) const {
  auto it = cells.find({p, s});
  if (it == cells.end())
    throw std::out_of_range("efficiency grid has no cell (p=" + std::to_string(p) + ", s=" + std::to_string(s) + ")");
  return it->second;
}

EfficiencyGrid efficiency_grid(int n, int p_max) {
  require_run_size(n);
  if (p_max > n) throw InvalidSpecError("p_max exceeds the run size");
  EfficiencyGrid grid;
  grid.n = n;
  grid.p_max = p_max;
  for (int p = 4; p <= p_max; ++p) {
    mpz_class best_det = 0;
    mpq_class best_trace = -1;
    for (int s = 1; s <= p; ++s) {
      const auto spec = make_spec(n, p, s);
      EfficiencyCell cell;
      cell.p = p;
      cell.s = s;
      cell.det = det_closed_form(spec);
      cell.trace_inv = trace_inv_closed_form(spec);
      if (cell.det > best_det) best_det = cell.det;
      if (best_trace < 0 || cell.trace_inv < best_trace) best_trace = cell.trace_inv;
      grid.cells.emplace(std::make_pair(p, s), std::move(cell));
    }
    for (int s = 1; s <= p; ++s) {
      auto& cell = grid.cells.at({p, s});
      mpq_class det_ratio(cell.det, best_det);
      det_ratio.canonicalize();
      cell.d_eff = std::pow(det_ratio.get_d(), 1.0 / p);
      cell.a_eff = mpq_class(best_trace / cell.trace_inv).get_d();
      cell.d_optimal = cell.det == best_det;
      cell.a_optimal = cell.trace_inv == best_trace;
      if (cell.d_optimal) {
        cell.d_eff = 1.0;
        grid.optimal_d[p].insert(s);
      }
      if (cell.a_optimal) {
        cell.a_eff = 1.0;
        grid.optimal_a[p].insert(s);
      }
    }
  }
  return grid;
}

}  // namespace ehlich
