#pragma once

#include <optional>
#include <vector>

#include "convexchar/bigcount.hpp"
#include "convexchar/enumerate.hpp"
#include "convexchar/tree.hpp"

namespace convexchar::oracle {

/// Largest taxon count the brute-force routines accept (Bell(15) ~ 1.4e9).
inline constexpr int kMaxTaxa = 14;

/// Every set partition of `taxa` whose blocks all hold >= min_block taxa,
/// each exactly once, as restricted growth strings in lexicographic order.
/// Branches that can no longer fill their undersized blocks are pruned.
class PartitionCursor {
 public:
  PartitionCursor(std::vector<TaxonId> taxa, int min_block);

  std::optional<Character> next();
  /// Block index of each taxon position for the last partition returned.
  const std::vector<int>& growth_string() const noexcept { return rgs_; }

 private:
  bool advance_from(int position);
  bool extend(int position);
  bool feasible(int position) const;

  std::vector<TaxonId> taxa_;
  int min_block_;
  std::vector<int> rgs_;
  std::vector<int> block_size_;
  int blocks_ = 0;
  bool started_ = false;
  bool done_ = false;
};

/// Throws GuardError above kMaxTaxa, std::invalid_argument when min_block is
/// outside 1..|taxa|.
std::vector<Character> all_partitions(const std::vector<TaxonId>& taxa, int min_block);

/// Convexity straight from the definition: grow each block's spanning
/// subtree by stripping non-member leaves, then test pairwise vertex overlap.
bool naive_is_convex(const Tree& tree, const Character& f);

/// Number of partitions with blocks >= k that are convex on `tree`.
BigCount brute_count(const Tree& tree, int k);

/// The filtered set itself, in restricted-growth-string order.
std::vector<Character> brute_list(const Tree& tree, int k);

}  // namespace convexchar::oracle
