#pragma once

#include <gmpxx.h>

#include <stdexcept>

#include "ehlich/matrix.hpp"

namespace ehlich {

class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact determinant of a square integer matrix by Bareiss fraction-free
/// elimination. Every intermediate value is an integer.
mpz_class bareiss_determinant(Matrix<mpz_class> m);

/// Exact inverse by Gauss-Jordan elimination over the rationals.
/// Throws SingularMatrixError when the matrix is not invertible.
Matrix<mpq_class> rational_inverse(Matrix<mpq_class> m);

/// Solves m * x = rhs exactly. Throws SingularMatrixError.
Matrix<mpq_class> rational_solve(Matrix<mpq_class> m, Matrix<mpq_class> rhs);

mpq_class trace(const Matrix<mpq_class>& m);

/// num/den in lowest terms.
inline mpq_class fraction(long num, long den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace ehlich
