#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ehlich/ehlich_core.hpp"
#include "ehlich/matrix.hpp"

namespace ehlich {

/// A length-n column over {-1,+1}. Bit i holds row i, +1 encoded as 1.
struct SignColumn {
  std::uint32_t bits = 0;
  int length = 0;

  static SignColumn ones(int n) { return {full_mask(n), n}; }
  static constexpr std::uint32_t full_mask(int n) { return n >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1; }

  int at(int row) const { return (bits >> row) & 1U ? 1 : -1; }
  int plus_count() const { return std::popcount(bits); }
  int sum() const { return 2 * plus_count() - length; }
  SignColumn negated() const { return {~bits & full_mask(length), length}; }

  auto operator<=>(const SignColumn&) const = default;
};

inline int inner_product(SignColumn a, SignColumn b) { return a.length - 2 * std::popcount(a.bits ^ b.bits); }

enum class TypeTag { pure = 0, type1 = 1, type2 = 2 };

std::string to_string(TypeTag t);

/// An N-run design: the model matrix X with the intercept as column 0.
/// group_of assigns each column a block label 1..s; the intercept is in
/// block 1.
struct Design {
  int n = 0;
  std::vector<SignColumn> columns;
  std::vector<int> group_of;
  TypeTag type = TypeTag::pure;

  int p() const { return static_cast<int>(columns.size()); }
  int factor_count() const { return p() - 1; }
  int group_count() const;
  std::vector<int> group_sizes() const;  // indexed by label, entry 0 unused

  /// Entry (row, col) as +1/-1.
  int at(int row, int col) const { return columns[static_cast<std::size_t>(col)].at(row); }
  Matrix<long> gram() const;

  bool operator==(const Design&) const = default;
};

/// Builds a design from row-major +1/-1 entries. Column 0 must be all ones.
/// Group labels are recovered from the Gram matrix when it has Ehlich form,
/// otherwise every column gets its own label.
Design design_from_rows(const std::vector<std::vector<int>>& rows);
std::vector<std::vector<int>> design_rows(const Design& d);

/// Successful outcome of check_ehlich_form.
struct EhlichForm {
  EhlichSpec spec;
  TypeTag type = TypeTag::pure;
  std::vector<int> group_of;  // labels in order of first appearance, intercept = 1
};

/// First Gram-matrix cell that breaks the Ehlich pattern.
struct FormMismatch {
  int row = -1;
  int col = -1;
  long value = 0;
  std::string message;
};

std::variant<EhlichForm, FormMismatch> check_ehlich_form(const Design& design);

/// Stage identity during enumeration: N, s and the group sizes (intercept
/// group first, remaining sizes sorted).
struct Signature {
  int n = 0;
  int s = 0;
  int intercept_group_size = 0;
  std::vector<int> other_sizes;

  static Signature of(const Design& d);
  int p() const;
  auto operator<=>(const Signature&) const = default;
};

}  // namespace ehlich
