#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "convexchar/tree.hpp"

namespace convexchar {

/// A partition of the taxa into non-empty blocks ("states"). Blocks are kept
/// sorted by their smallest taxon; taxa within a block are sorted. Since
/// taxon ids follow label order this is also smallest-label order.
class Character {
 public:
  Character() = default;
  explicit Character(std::vector<TaxonSet> blocks);

  const std::vector<TaxonSet>& blocks() const noexcept { return blocks_; }
  int num_blocks() const noexcept { return static_cast<int>(blocks_.size()); }
  int num_taxa() const noexcept;
  int min_block_size() const noexcept;
  /// Block index of every taxon 0..n-1 (the restricted growth string).
  std::vector<int> block_of() const;

  auto operator<=>(const Character&) const = default;

 private:
  std::vector<TaxonSet> blocks_;
};

/// Throws std::invalid_argument unless `f` partitions the taxa of `tree`.
void check_partition(const Tree& tree, const Character& f);

/// "a,b,c|d,e". Blocks separated by '|', taxa by ','.
std::string format_character(const Tree& tree, const Character& f);

/// Accepts the canonical form, and the compact "abc|defg" form when every
/// label of the tree is a single character. Throws ParseError.
Character parse_character(const Tree& tree, std::string_view text);

nlohmann::json character_to_json(const Tree& tree, const Character& f);
Character character_from_json(const Tree& tree, const nlohmann::json& j);

/// True iff the minimal spanning subtrees of the blocks are pairwise vertex
/// disjoint. One bottom-up pass; each edge carries at most one open block.
bool is_convex(const Tree& tree, const Character& f);

/// Fitch small parsimony: fewest bichromatic edges over all extensions of
/// the block labelling to internal vertices.
int parsimony_score(const Tree& tree, const Character& f);

/// Per-edge state word of a convex character, in the enumeration's edge
/// order (the edge at taxon 0 first, then both child edges of each internal
/// vertex in preorder). 0 marks an edge no block crosses, j in 1..k marks an
/// edge crossed by a block with min(j, k) taxa below it. The stream below
/// yields characters in strictly increasing order of this word.
std::vector<std::uint16_t> edge_signature(const Tree& tree, const Character& f, int k);

/// Pull-based listing of every g_k character of a tree.
///
/// Backtracks over the same edge states as count_gk, consulting a
/// feasibility table so that every partial choice extends to at least one
/// character. The stream owns a copy of the tree and is single-consumer.
class CharacterStream {
 public:
  CharacterStream(Tree tree, int k);

  std::optional<Character> next();
  /// Edge-state word of the character most recently returned by next().
  const std::vector<std::uint16_t>& signature() const noexcept { return word_; }
  const Tree& tree() const noexcept { return tree_; }
  int k() const noexcept { return k_; }

 private:
  using Combo = std::pair<std::uint16_t, std::uint16_t>;

  const std::vector<Combo>& combos(VertexId v, int state);
  void fill_from(std::size_t position);
  void apply(std::size_t position);
  Character materialize();

  Tree tree_;
  int k_;
  Rooting rooting_;
  std::vector<VertexId> internal_;          // internal vertices in preorder
  std::vector<std::vector<bool>> feasible_;  // [v][state]
  std::vector<std::vector<Combo>> combo_cache_;
  std::vector<bool> combo_ready_;
  std::vector<std::uint16_t> root_choices_;
  std::size_t root_index_ = 0;
  std::vector<std::uint16_t> state_;  // state of the edge above each vertex
  std::vector<std::size_t> choice_;   // combo index per internal position
  std::vector<std::uint16_t> word_;
  bool started_ = false;
  bool done_ = false;
};

/// Materialised listing; only for small trees and tests.
std::vector<Character> list_gk(const Tree& tree, int k);

}  // namespace convexchar
