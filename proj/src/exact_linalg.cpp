#include "ehlich/exact_linalg.hpp"

#include <utility>

namespace ehlich {

mpz_class bareiss_determinant(Matrix<mpz_class> m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("bareiss_determinant: matrix is not square");
  if (n == 0) return 1;
  mpz_class sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = t;
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

Matrix<mpq_class> rational_solve(Matrix<mpq_class> m, Matrix<mpq_class> rhs) {
  const std::size_t n = m.rows();
  if (n != m.cols() || rhs.rows() != n) throw std::invalid_argument("rational_solve: dimension mismatch");
  const std::size_t w = rhs.cols();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && m(pivot, k) == 0) ++pivot;
    if (pivot == n) throw SingularMatrixError("rational_solve: singular matrix");
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(pivot, j));
      for (std::size_t j = 0; j < w; ++j) std::swap(rhs(k, j), rhs(pivot, j));
    }
    const mpq_class inv = 1 / m(k, k);
    for (std::size_t j = k; j < n; ++j) m(k, j) *= inv;
    for (std::size_t j = 0; j < w; ++j) rhs(k, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m(i, k) == 0) continue;
      const mpq_class f = m(i, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
      for (std::size_t j = 0; j < w; ++j) rhs(i, j) -= f * rhs(k, j);
    }
  }
  return rhs;
}

Matrix<mpq_class> rational_inverse(Matrix<mpq_class> m) {
  const std::size_t n = m.rows();
  Matrix<mpq_class> id(n, n, mpq_class(0));
  for (std::size_t i = 0; i < n; ++i) id(i, i) = 1;
  return rational_solve(std::move(m), std::move(id));
}

mpq_class trace(const Matrix<mpq_class>& m) {
  mpq_class t = 0;
  for (std::size_t i = 0; i < m.rows() && i < m.cols(); ++i) t += m(i, i);
  return t;
}

}  // namespace ehlich
