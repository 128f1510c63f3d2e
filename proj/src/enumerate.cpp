#include "ehlich/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace ehlich {

std::vector<Step> schedule(const EhlichSpec& spec, TypeTag type) {
  if (spec.s < 3) throw InvalidSpecError("enumeration needs s >= 3");
  if (spec.v == 0 && type != TypeTag::pure) throw InvalidSpecError("p divisible by s admits only pure designs");
  if (spec.v > 0 && type == TypeTag::pure) throw InvalidSpecError("p not divisible by s needs type1 or type2");

  std::vector<Step> steps;
  steps.reserve(static_cast<std::size_t>(spec.p - 3));
  for (int g = 4; g <= spec.s; ++g) steps.push_back({g, 1});
  for (int phase = 2; phase <= spec.r; ++phase) {
    for (int g = 2; g <= spec.s; ++g) steps.push_back({g, phase});
    steps.push_back({1, phase});
  }
  if (type == TypeTag::type1) {
    for (int g = spec.s - spec.v + 1; g <= spec.s; ++g) steps.push_back({g, spec.r + 1});
  } else if (type == TypeTag::type2) {
    steps.push_back({1, spec.r + 1});
    for (int g = spec.s - spec.v + 2; g <= spec.s; ++g) steps.push_back({g, spec.r + 1});
  }
  return steps;
}

std::vector<Design> extend_one(const Design& parent, int group, std::span<const SignColumn> candidates) {
  std::vector<Design> out;
  const auto p = parent.columns.size();
  for (const auto& c : candidates) {
    bool ok = true;
    for (std::size_t j = 0; j < p && ok; ++j)
      ok = inner_product(c, parent.columns[j]) == (parent.group_of[j] == group ? 3 : -1);
    if (!ok) continue;
    Design child = parent;
    child.columns.push_back(c);
    child.group_of.push_back(group);
    out.push_back(std::move(child));
  }
  return out;
}

int default_thread_count() {
  if (const char* env = std::getenv("EHLICH_THREADS")) {
    try {
      const int t = std::stoi(env);
      if (t > 0) return t;
    } catch (const std::exception&) {
    }
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

Enumerator::Enumerator(int n, int threads)
    : n_(n), threads_(std::max(1, threads)), candidates_(enumerate_candidates(n)) {
  new_group_pool_ = candidates_.zetam1_star_s;
}

std::vector<TypeTag> Enumerator::types_for(const EhlichSpec& spec) {
  if (spec.v == 0) return {TypeTag::pure};
  return {TypeTag::type1, TypeTag::type2};
}

std::span<const SignColumn> Enumerator::pool_for(const Design& parent, int group) const {
  if (group == 1) return candidates_.zeta3_star;
  if (group > parent.group_count()) return new_group_pool_;
  if (parent.group_of[1] == group) return candidates_.zetam1_star_a;
  if (parent.group_of[2] == group) return candidates_.zetam1_star_b;
  return candidates_.zetam1_star_s;
}

// A step for a non-intercept block is applied to every non-intercept block
// of the same current size, not only to the scheduled label: a stored
// representative's labels are an accident of construction order, and
// extending one label only would miss completions that another labeling of
// the same class reaches.
std::vector<Design> Enumerator::extend_step(const Design& parent, const Step& step) const {
  const int groups = parent.group_count();
  if (step.group == 1 || step.group > groups || literal_labels_)
    return extend_one(parent, step.group, pool_for(parent, step.group));

  const auto sizes = parent.group_sizes();
  std::vector<Design> out;
  for (int g = 2; g <= groups; ++g) {
    if (sizes[static_cast<std::size_t>(g)] != step.phase - 1) continue;
    auto part = extend_one(parent, g, pool_for(parent, g));
    std::move(part.begin(), part.end(), std::back_inserter(out));
  }
  return out;
}

Enumerator::Stage Enumerator::run_step(const std::vector<Design>& parents, const Step& step) {
  DedupStore store;
  const std::size_t chunk = static_cast<std::size_t>(threads_) * 32;
  std::vector<std::vector<std::pair<CanonicalKey, Design>>> results;
  for (std::size_t begin = 0; begin < parents.size(); begin += chunk) {
    const std::size_t end = std::min(parents.size(), begin + chunk);
    results.assign(end - begin, {});
    std::atomic<std::size_t> next{begin};
    std::atomic<std::size_t> produced{0};
    auto work = [&] {
      for (std::size_t i = next++; i < end; i = next++) {
        auto children = extend_step(parents[i], step);
        produced += children.size();
        auto& slot = results[i - begin];
        slot.reserve(children.size());
        for (auto& child : children) {
          auto key = canonicalize(child);
          slot.emplace_back(std::move(key), std::move(child));
        }
      }
    };
    const int workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(threads_), end - begin));
    if (workers <= 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    }
    stats_.extensions += produced;
    // Merge in parent order so the kept representative is deterministic.
    for (auto& slot : results)
      for (auto& [key, child] : slot) store.test_and_insert(key, child);
  }
  auto stage = std::make_shared<std::vector<Design>>();
  for (auto& [key, design] : store.entries()) stage->push_back(std::move(design));
  return stage;
}

std::vector<Design> Enumerator::enumerate_class(int p, int s, TypeTag type) {
  const auto spec = make_spec(n_, p, s);
  const auto steps = schedule(spec, type);

  Stage stage = std::make_shared<std::vector<Design>>(std::vector<Design>{initial_design(n_)});
  std::vector<int> sizes{0, 1, 1, 1};  // by label; entry 0 unused
  for (const auto& step : steps) {
    if (step.group >= static_cast<int>(sizes.size()))
      sizes.push_back(1);
    else
      ++sizes[static_cast<std::size_t>(step.group)];
    Signature sig;
    sig.n = n_;
    sig.s = static_cast<int>(sizes.size()) - 1;
    sig.intercept_group_size = sizes[1];
    sig.other_sizes.assign(sizes.begin() + 2, sizes.end());
    std::sort(sig.other_sizes.begin(), sig.other_sizes.end());

    // Literal labels depend on the schedule that built a stage, not only on
    // its signature, so those stages are never shared.
    if (!literal_labels_) {
      if (auto it = cache_.find(sig); it != cache_.end()) {
        stage = it->second;
        ++stats_.stages_reused;
        continue;
      }
    }
    stage = run_step(*stage, step);
    if (!literal_labels_) cache_.emplace(std::move(sig), stage);
    ++stats_.stages_built;
  }

  std::vector<Design> out = *stage;
  for (auto& d : out) d.type = type;
  return out;
}

}  // namespace ehlich
