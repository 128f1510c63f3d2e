#include "ehlich/canon.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace ehlich {

namespace {

// Candidate (factor column, orientation) pair during the search.
struct Choice {
  int column = 0;
  bool flip = false;
};

// Branch and bound over column orders. The partition of rows into runs of
// identical prefixes is kept as an ordered list of row masks; the canonical
// value of a column under a partition puts, inside every run, the -1 rows
// first. Values are packed with canonical row 0 as the most significant bit,
// so comparing matrices column by column is comparing integers.
class Search {
 public:
  Search(int n, const std::vector<SignColumn>& factors) : n_(n), k_(static_cast<int>(factors.size())) {
    for (const auto& c : factors) {
      const int sum = c.sum();
      std::array<Oriented, 2> o{};
      int count = 0;
      if (sum <= 0) o[count++] = {c.bits, false};
      if (sum >= 0) o[count++] = {c.negated().bits, true};
      variants_.push_back(o);
      variant_count_.push_back(count);
    }
    best_.assign(static_cast<std::size_t>(k_), 0);
  }

  void run() {
    std::vector<std::uint32_t> groups{SignColumn::full_mask(n_)};
    if (k_ == 0) {
      best_rows_ = rows_of(groups);
      return;
    }
    path_.reserve(static_cast<std::size_t>(k_));
    descend(groups, 0, 0, false);
  }

  const std::vector<std::uint32_t>& best() const { return best_; }
  const std::vector<Choice>& best_path() const { return best_path_; }
  const std::vector<int>& best_rows() const { return best_rows_; }

 private:
  struct Oriented {
    std::uint32_t bits = 0;
    bool flip = false;
  };

  std::uint32_t value(const std::vector<std::uint32_t>& groups, std::uint32_t m) const {
    std::uint32_t v = 0;
    int pos = 0;
    for (std::uint32_t g : groups) {
      const int zeros = std::popcount(g & ~m);
      const int ones = std::popcount(g & m);
      pos += zeros;
      if (ones > 0) v |= ((std::uint32_t{1} << ones) - 1) << (n_ - pos - ones);
      pos += ones;
    }
    return v;
  }

  static std::vector<std::uint32_t> split(const std::vector<std::uint32_t>& groups, std::uint32_t m) {
    std::vector<std::uint32_t> out;
    out.reserve(groups.size() * 2);
    for (std::uint32_t g : groups) {
      if (const std::uint32_t lo = g & ~m) out.push_back(lo);
      if (const std::uint32_t hi = g & m) out.push_back(hi);
    }
    return out;
  }

  std::vector<int> rows_of(const std::vector<std::uint32_t>& groups) const {
    std::vector<int> rows;
    rows.reserve(static_cast<std::size_t>(n_));
    for (std::uint32_t g : groups)
      for (int i = 0; i < n_; ++i)
        if ((g >> i) & 1U) rows.push_back(i);
    return rows;
  }

  // Returns false when the candidate column value at this depth is worse
  // than the incumbent; updates the incumbent when it is better.
  bool admit(int depth, std::uint32_t v, bool& improved) {
    const auto d = static_cast<std::size_t>(depth);
    if (depth >= best_len_) {
      best_[d] = v;
      best_len_ = depth + 1;
      improved = true;
      return true;
    }
    if (v > best_[d]) return false;
    if (v < best_[d]) {
      best_[d] = v;
      best_len_ = depth + 1;
      improved = true;
    }
    return true;
  }

  void record_leaf(const std::vector<std::uint32_t>& groups) {
    best_path_ = path_;
    best_rows_ = rows_of(groups);
  }

  void descend(const std::vector<std::uint32_t>& groups, std::uint32_t used, int depth, bool improved) {
    if (depth == k_) {
      if (improved) record_leaf(groups);
      return;
    }
    if (static_cast<int>(groups.size()) == n_) {
      finish_discrete(groups, used, depth, improved);
      return;
    }

    std::uint32_t min_v = ~std::uint32_t{0};
    ties_scratch_.clear();
    for (int j = 0; j < k_; ++j) {
      if ((used >> j) & 1U) continue;
      for (int o = 0; o < variant_count_[static_cast<std::size_t>(j)]; ++o) {
        const auto& var = variants_[static_cast<std::size_t>(j)][static_cast<std::size_t>(o)];
        const std::uint32_t v = value(groups, var.bits);
        if (v < min_v) {
          min_v = v;
          ties_scratch_.clear();
        }
        if (v == min_v) ties_scratch_.push_back({j, var.flip});
      }
    }
    if (!admit(depth, min_v, improved)) return;

    const std::vector<Choice> ties = ties_scratch_;
    for (const auto& t : ties) {
      // A sibling may have improved the incumbent at this depth.
      if (best_[static_cast<std::size_t>(depth)] < min_v) return;
      const auto& var = variants_[static_cast<std::size_t>(t.column)]
                                 [t.flip == variants_[static_cast<std::size_t>(t.column)][0].flip ? 0 : 1];
      path_.push_back(t);
      descend(split(groups, var.bits), used | (std::uint32_t{1} << t.column), depth + 1, improved);
      path_.pop_back();
      // Only the first completed branch of an improving node carries the
      // flag; later siblings must beat the new incumbent on their own.
      improved = false;
    }
  }

  // Rows are fully distinguished: the remaining columns are placed in
  // ascending order of their (fixed) values.
  void finish_discrete(const std::vector<std::uint32_t>& groups, std::uint32_t used, int depth, bool improved) {
    struct Item {
      std::uint32_t v;
      Choice c;
    };
    std::vector<Item> rest;
    for (int j = 0; j < k_; ++j) {
      if ((used >> j) & 1U) continue;
      Item best_item{~std::uint32_t{0}, {}};
      for (int o = 0; o < variant_count_[static_cast<std::size_t>(j)]; ++o) {
        const auto& var = variants_[static_cast<std::size_t>(j)][static_cast<std::size_t>(o)];
        const std::uint32_t v = value(groups, var.bits);
        if (v < best_item.v) best_item = {v, {j, var.flip}};
      }
      rest.push_back(best_item);
    }
    std::sort(rest.begin(), rest.end(), [](const Item& a, const Item& b) { return a.v < b.v; });
    const std::size_t mark = path_.size();
    bool ok = true;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      if (!admit(depth + static_cast<int>(i), rest[i].v, improved)) {
        ok = false;
        break;
      }
      path_.push_back(rest[i].c);
    }
    if (ok && improved) record_leaf(groups);
    path_.resize(mark);
  }

  int n_;
  int k_;
  std::vector<std::array<Oriented, 2>> variants_;
  std::vector<int> variant_count_;
  std::vector<std::uint32_t> best_;
  int best_len_ = 0;
  std::vector<Choice> path_;
  std::vector<Choice> best_path_;
  std::vector<int> best_rows_;
  std::vector<Choice> ties_scratch_;
};

void put_byte(std::string& s, int x) { s.push_back(static_cast<char>(static_cast<std::uint8_t>(x))); }

}  // namespace

std::string CanonicalKey::hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (char ch : bytes) {
    const auto b = static_cast<std::uint8_t>(ch);
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 15]);
  }
  return out;
}

CanonicalKey CanonicalKey::from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw std::invalid_argument("odd-length key hex");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("bad hex digit in key");
  };
  CanonicalKey key;
  for (std::size_t i = 0; i < hex.size(); i += 2) put_byte(key.bytes, nibble(hex[i]) * 16 + nibble(hex[i + 1]));
  return key;
}

Design apply_isomorphism(const Design& d, const Isomorphism& iso) {
  const int k = d.factor_count();
  if (static_cast<int>(iso.rows.size()) != d.n || static_cast<int>(iso.columns.size()) != k ||
      static_cast<int>(iso.flip.size()) != k)
    throw std::invalid_argument("isomorphism does not match design dimensions");
  Design out;
  out.n = d.n;
  out.type = d.type;
  out.columns.assign(static_cast<std::size_t>(d.p()), SignColumn{0, d.n});
  out.group_of.assign(static_cast<std::size_t>(d.p()), 1);
  out.columns[0] = SignColumn::ones(d.n);
  for (int j = 0; j < k; ++j) {
    const auto src = static_cast<std::size_t>(iso.columns[static_cast<std::size_t>(j)] + 1);
    SignColumn c = d.columns[src];
    if (iso.flip[static_cast<std::size_t>(j)]) c = c.negated();
    SignColumn moved{0, d.n};
    for (int i = 0; i < d.n; ++i)
      if ((c.bits >> iso.rows[static_cast<std::size_t>(i)]) & 1U) moved.bits |= std::uint32_t{1} << i;
    out.columns[static_cast<std::size_t>(j) + 1] = moved;
    out.group_of[static_cast<std::size_t>(j) + 1] = d.group_of.empty() ? j + 2 : d.group_of[src];
  }
  return out;
}

Isomorphism random_isomorphism(int n, int factors, std::mt19937_64& rng) {
  Isomorphism iso;
  iso.rows.resize(static_cast<std::size_t>(n));
  std::iota(iso.rows.begin(), iso.rows.end(), 0);
  std::shuffle(iso.rows.begin(), iso.rows.end(), rng);
  iso.columns.resize(static_cast<std::size_t>(factors));
  std::iota(iso.columns.begin(), iso.columns.end(), 0);
  std::shuffle(iso.columns.begin(), iso.columns.end(), rng);
  std::bernoulli_distribution coin(0.5);
  for (int j = 0; j < factors; ++j) iso.flip.push_back(coin(rng));
  return iso;
}

CanonicalForm canonical_form(const Design& d) {
  if (d.n < 1 || d.n > 31) throw std::invalid_argument("canonical_form: unsupported run size");
  if (d.p() < 1 || d.p() > 255) throw std::invalid_argument("canonical_form: unsupported column count");
  if (d.columns[0] != SignColumn::ones(d.n))
    throw std::invalid_argument("canonical_form: column 0 must be the intercept");
  const std::vector<SignColumn> factors(d.columns.begin() + 1, d.columns.end());
  Search search(d.n, factors);
  search.run();

  CanonicalForm form;
  const int k = d.factor_count();
  form.witness.rows = search.best_rows();
  for (const auto& c : search.best_path()) {
    form.witness.columns.push_back(c.column);
    form.witness.flip.push_back(c.flip);
  }

  auto& bytes = form.key.bytes;
  put_byte(bytes, kKeyFormatVersion);
  put_byte(bytes, d.n);
  put_byte(bytes, d.p());
  const auto& cols = search.best();
  std::uint8_t acc = 0;
  int filled = 0;
  for (int i = 0; i < d.n; ++i) {
    for (int j = 0; j < k; ++j) {
      const std::uint32_t bit = (cols[static_cast<std::size_t>(j)] >> (d.n - 1 - i)) & 1U;
      acc = static_cast<std::uint8_t>((acc << 1) | bit);
      if (++filled == 8) {
        put_byte(bytes, acc);
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) put_byte(bytes, acc << (8 - filled));
  return form;
}

CanonicalKey canonicalize(const Design& d) { return canonical_form(d).key; }

Design decode_key(const CanonicalKey& key) {
  const auto& b = key.bytes;
  if (b.size() < 3) throw std::invalid_argument("canonical key too short");
  if (static_cast<std::uint8_t>(b[0]) != kKeyFormatVersion)
    throw std::invalid_argument("unsupported canonical key version");
  const int n = static_cast<std::uint8_t>(b[1]);
  const int p = static_cast<std::uint8_t>(b[2]);
  const int k = p - 1;
  const std::size_t cells = static_cast<std::size_t>(n) * static_cast<std::size_t>(std::max(k, 0));
  if (n < 1 || p < 1 || b.size() != 3 + (cells + 7) / 8) throw std::invalid_argument("canonical key length mismatch");
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(p), 1));
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j, ++idx) {
      const auto byte = static_cast<std::uint8_t>(b[3 + idx / 8]);
      const bool plus = (byte >> (7 - idx % 8)) & 1U;
      rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j) + 1] = plus ? 1 : -1;
    }
  }
  return design_from_rows(rows);
}

bool DedupStore::test_and_insert(const CanonicalKey& key, const Design& design) {
  std::lock_guard lock(mutex_);
  auto [it, inserted] = index_.try_emplace(key, entries_.size());
  if (!inserted) return false;
  entries_.emplace_back(key, design);
  return true;
}

bool DedupStore::contains(const CanonicalKey& key) const {
  std::lock_guard lock(mutex_);
  return index_.count(key) != 0;
}

std::size_t DedupStore::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

std::vector<std::pair<CanonicalKey, Design>> DedupStore::entries() const {
  std::lock_guard lock(mutex_);
  return entries_;
}

}  // namespace ehlich
