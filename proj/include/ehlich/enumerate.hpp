#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "ehlich/canon.hpp"
#include "ehlich/columns.hpp"
#include "ehlich/design.hpp"

namespace ehlich {

/// One single-column extension: add a column to block `group` during
/// `phase` (phase 1 creates blocks 4..s, phase i fills the i-th column of
/// every block, the last phase handles the v larger blocks).
struct Step {
  int group = 0;
  int phase = 0;
  bool operator==(const Step&) const = default;
};

/// p - 3 steps that grow the initial K(N,3,3) design into K(N,p,s).
/// Within a full phase the order is blocks 2..s, then block 1. When v > 0
/// the last phase extends blocks s-v+1..s (type1) or block 1 followed by
/// blocks s-v+2..s (type2).
std::vector<Step> schedule(const EhlichSpec& spec, TypeTag type);

/// Every child of `parent` obtained by appending one candidate with inner
/// product 3 against all columns of `group` and -1 against all others. A
/// group label not yet present in the parent opens a new singleton block.
/// Output order follows candidate order.
std::vector<Design> extend_one(const Design& parent, int group, std::span<const SignColumn> candidates);

/// Number of worker threads: EHLICH_THREADS when set, else all cores.
int default_thread_count();

struct EnumerationStats {
  std::size_t extensions = 0;  // children produced before dedup
  std::size_t stages_built = 0;
  std::size_t stages_reused = 0;
};

/// Enumerates complete catalogs of non-isomorphic designs with Gram matrix
/// K(N,p,s), s >= 3. Intermediate stages are cached by Signature, so
/// targets sharing a schedule prefix reuse it.
class Enumerator {
 public:
  explicit Enumerator(int n, int threads = default_thread_count());

  int n() const { return n_; }
  int threads() const { return threads_; }
  const CandidateSets& candidates() const { return candidates_; }
  const EnumerationStats& stats() const { return stats_; }

  /// Representatives (construction orientation) of every isomorphism class.
  /// An infeasible class gives an empty catalog.
  std::vector<Design> enumerate_class(int p, int s, TypeTag type);

  /// Applicable type tags for (p, s): {pure} or {type1, type2}.
  static std::vector<TypeTag> types_for(const EhlichSpec& spec);

  /// When set, a step only extends the block it names and stages are not
  /// cached. This misses classes (N = 7, p = 6, s = 4 gives 3 of 4); the
  /// default extends every non-intercept block of the scheduled size.
  void set_literal_labels(bool on) {
    literal_labels_ = on;
    cache_.clear();
  }

 private:
  using Stage = std::shared_ptr<const std::vector<Design>>;

  Stage run_step(const std::vector<Design>& parents, const Step& step);
  std::vector<Design> extend_step(const Design& parent, const Step& step) const;
  std::span<const SignColumn> pool_for(const Design& parent, int group) const;

  int n_;
  int threads_;
  CandidateSets candidates_;
  std::vector<SignColumn> new_group_pool_;
  std::map<Signature, Stage> cache_;
  EnumerationStats stats_;
  bool literal_labels_ = false;
};

}  // namespace ehlich
