#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace convexchar {

using TaxonId = int;
using VertexId = int;

/// Sorted, duplicate-free list of taxon ids.
using TaxonSet = std::vector<TaxonId>;

/// Unrooted binary phylogenetic tree.
///
/// Taxa are interned so that taxon ids follow lexicographic label order, and
/// leaf vertex `i` carries taxon `i`. Internal vertices are numbered
/// `n .. 2n-3`. Instances are immutable; every transformation returns a new
/// tree. Two trees on the same label set therefore share taxon ids.
class Tree {
 public:
  /// An empty placeholder; only TreeGraph::build() produces valid trees.
  Tree() = default;

  int num_taxa() const noexcept { return static_cast<int>(labels_.size()); }
  int num_vertices() const noexcept { return static_cast<int>(degree_.size()); }
  int num_edges() const noexcept { return num_vertices() - 1; }

  bool is_leaf(VertexId v) const noexcept { return v < num_taxa(); }
  int degree(VertexId v) const noexcept { return degree_[v]; }
  std::span<const VertexId> neighbors(VertexId v) const noexcept {
    return {adjacency_[v].data(), static_cast<std::size_t>(degree_[v])};
  }

  const std::string& label(TaxonId taxon) const { return labels_.at(taxon); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<TaxonId> find_taxon(std::string_view label) const;
  /// Throws std::invalid_argument for unknown labels.
  TaxonId taxon(std::string_view label) const;
  TaxonSet taxa_of(const std::vector<std::string>& labels) const;
  std::vector<std::string> labels_of(const TaxonSet& taxa) const;
  TaxonSet all_taxa() const;

  /// Edges as (u, v) with u < v, sorted.
  std::vector<std::pair<VertexId, VertexId>> edges() const;

 private:
  friend class TreeGraph;

  std::vector<std::string> labels_;
  std::vector<std::array<VertexId, 3>> adjacency_;
  std::vector<std::uint8_t> degree_;
};

/// Mutable graph used to assemble trees. `build()` validates, suppresses
/// unlabeled degree-2 vertices and interns taxa.
class TreeGraph {
 public:
  TreeGraph() = default;
  static TreeGraph from_tree(const Tree& tree);

  VertexId add_vertex();
  VertexId add_leaf(std::string label);
  void add_edge(VertexId a, VertexId b);
  void remove_edge(VertexId a, VertexId b);
  /// Inserts a new unlabeled vertex on edge a-b and returns it.
  VertexId subdivide(VertexId a, VertexId b);
  void remove_vertex(VertexId v);
  /// Repeatedly removes unlabeled vertices of degree <= 1.
  void prune_unlabeled_leaves();

  int num_vertices() const noexcept { return static_cast<int>(adjacency_.size()); }
  bool alive(VertexId v) const { return alive_.at(v); }
  const std::vector<VertexId>& neighbors(VertexId v) const { return adjacency_.at(v); }
  const std::string& label(VertexId v) const { return labels_.at(v); }

  Tree build() const;

 private:
  void check(VertexId v) const;

  std::vector<std::vector<VertexId>> adjacency_;
  std::vector<std::string> labels_;
  std::vector<bool> alive_;
};

/// The tree hung from one leaf. Children of every internal vertex are ordered
/// by the smallest taxon they contain.
struct Rooting {
  TaxonId root = 0;
  VertexId top = -1;  // the root leaf's only neighbour, -1 when n == 1
  std::vector<VertexId> parent;
  std::vector<std::array<VertexId, 2>> children;
  std::vector<VertexId> preorder;  // excludes the root leaf
  std::vector<int> size;           // taxa below each vertex
  std::vector<TaxonId> min_taxon;  // smallest taxon below each vertex
};

Rooting root_at_leaf(const Tree& tree, TaxonId root = 0);

/// Taxa on the `to` side of edge from-to.
TaxonSet side_taxa(const Tree& tree, VertexId from, VertexId to);

struct Split {
  TaxonSet side_a;
  TaxonSet side_b;
  VertexId a_end = -1;  // endpoint of the edge on the side_a side
  VertexId b_end = -1;
};

struct Tripartition {
  TaxonSet part_a;
  TaxonSet part_b;
  TaxonSet part_c;
  VertexId center = -1;
};

/// One split per edge; side_a always holds taxon 0.
std::vector<Split> splits(const Tree& tree);

/// Locates the edge inducing `side_b` | rest; nullopt if the tree lacks it.
std::optional<Split> find_split(const Tree& tree, const TaxonSet& side_b);

/// Split with k <= |side_b| <= 2(k-1), found by walking away from taxon 0
/// while the far side keeps at least k taxa. Requires k >= 2 and n > k.
Split find_bounded_split(const Tree& tree, int k);

/// Leaf pairs sharing a neighbour. For n == 2 the single pair is returned.
std::vector<std::pair<TaxonId, TaxonId>> cherries(const Tree& tree);

/// One tripartition per internal vertex; parts ordered by smallest taxon.
std::vector<Tripartition> tripartitions(const Tree& tree);

/// T|subset: minimal spanning subtree with degree-2 vertices suppressed.
Tree restrict_to(const Tree& tree, const TaxonSet& subset);
Tree restrict_to(const Tree& tree, const std::vector<std::string>& labels);

/// T \ subset. The subset must leave at least one taxon.
Tree delete_taxa(const Tree& tree, const TaxonSet& subset);

/// Leaf-labelled isomorphism via canonical Newick.
bool same_topology(const Tree& a, const Tree& b);

/// Throws std::invalid_argument unless `taxa` is sorted, unique and in range.
void check_taxon_set(const Tree& tree, const TaxonSet& taxa);

}  // namespace convexchar
