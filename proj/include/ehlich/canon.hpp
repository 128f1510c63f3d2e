#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <mutex>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ehlich/design.hpp"

namespace ehlich {

inline constexpr std::uint8_t kKeyFormatVersion = 1;

/// Byte string identifying an isomorphism class of designs.
///
/// Layout: version byte, N, p, then the canonical matrix (factor columns
/// only) row-major at one bit per cell, +1 as 1, packed most significant
/// bit first and zero padded to a whole byte.
struct CanonicalKey {
  std::string bytes;

  auto operator<=>(const CanonicalKey&) const = default;
  std::string hex() const;
  static CanonicalKey from_hex(std::string_view hex);
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& k) const noexcept { return std::hash<std::string>{}(k.bytes); }
};

/// Row permutation, factor-column permutation and factor sign switches.
/// Row i of the image is row rows[i] of the source; factor column j of the
/// image is factor column columns[j] of the source, negated when flip[j].
/// The intercept is fixed.
struct Isomorphism {
  std::vector<int> rows;
  std::vector<int> columns;
  std::vector<bool> flip;
};

Design apply_isomorphism(const Design& d, const Isomorphism& iso);
Isomorphism random_isomorphism(int n, int factors, std::mt19937_64& rng);

struct CanonicalForm {
  CanonicalKey key;
  /// Maps the input onto the canonical matrix: apply_isomorphism(d, witness)
  /// has exactly the factor columns encoded in key.
  Isomorphism witness;
};

/// Lexicographically minimal representative under the full group. The
/// ordering compares the matrix column by column (top row most significant,
/// -1 < +1). Columns are first oriented to a -1 majority, which is canonical
/// for odd N; zero-sum columns (even N) are searched in both orientations.
CanonicalForm canonical_form(const Design& d);
CanonicalKey canonicalize(const Design& d);

/// Rebuilds the canonical matrix (intercept first) from a key.
Design decode_key(const CanonicalKey& key);

/// Set of canonical keys plus one stored representative per key, kept in
/// insertion order. test_and_insert is atomic.
class DedupStore {
 public:
  bool test_and_insert(const CanonicalKey& key, const Design& design);
  bool contains(const CanonicalKey& key) const;
  std::size_t size() const;

  std::vector<std::pair<CanonicalKey, Design>> entries() const;

 private:
  mutable std::mutex mutex_;
  std::unordered_map<CanonicalKey, std::size_t, CanonicalKeyHash> index_;
  std::vector<std::pair<CanonicalKey, Design>> entries_;
};

}  // namespace ehlich
