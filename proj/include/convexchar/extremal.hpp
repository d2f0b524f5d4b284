#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "convexchar/tree.hpp"

namespace convexchar {

/// "a".."z" for n <= 26, otherwise "t001", "t002", ... (zero padded so that
/// label order equals index order).
std::vector<std::string> default_labels(int n);

/// Caterpillar with the labels in spine order: labels[0], labels[1] form one
/// cherry and the last two labels the other.
Tree gen_caterpillar(const std::vector<std::string>& labels);
Tree gen_caterpillar(int n);

/// A pendant subtree and where it hangs: the edge (by index into
/// `tree.edges()`) that is subdivided to attach it. Ignored for one taxon.
struct Pendant {
  Tree tree;
  int root_edge = 0;
};

/// Recipe for a fully k-loaded tree: scaffold leaves expand into pendant
/// subtrees of k-1 taxa, except the residue leaf which expands into
/// n mod (k-1) taxa when that is non-zero.
struct FullyLoadedSpec {
  int n = 0;
  int k = 0;
  Tree scaffold;
  int residue_size = 0;                      // 0: no residue
  std::optional<std::string> residue_leaf;  // scaffold label
  std::map<std::string, Pendant> pendants;   // keyed by scaffold label
};

/// Caterpillar scaffold and caterpillar pendants over default_labels(n); the
/// residue sits at the last spine leaf.
FullyLoadedSpec default_fully_loaded_spec(int n, int k);
FullyLoadedSpec default_fully_loaded_spec(int n, int k, const std::vector<std::string>& labels);

/// Random scaffold, random pendant shapes and root edges, a random residue
/// leaf and a random assignment of default_labels(n) to pendants.
FullyLoadedSpec random_fully_loaded_spec(int n, int k, std::uint64_t seed);

/// Throws std::invalid_argument unless the spec is internally consistent.
void check_spec(const FullyLoadedSpec& spec);

Tree gen_fully_loaded(int n, int k);
Tree gen_fully_loaded(const FullyLoadedSpec& spec);

/// Decomposes `tree` into a scaffold and pendants if it is fully k-loaded.
/// The witness names each scaffold leaf after the smallest taxon of its
/// pendant.
std::optional<FullyLoadedSpec> is_fully_loaded(const Tree& tree, int k);

/// Uniform labelled topology by sequential edge attachment from the 3-star.
Tree gen_random(int n, std::uint64_t seed);
Tree gen_random(const std::vector<std::string>& labels, std::uint64_t seed);

/// Calls `visit` once for each of the (2n-5)!! labelled topologies.
void for_each_topology(const std::vector<std::string>& labels, const std::function<void(const Tree&)>& visit);

/// Deletes the C subtree at the tripartition's centre and threads the C
/// taxa, in label order, as a caterpillar along the path joining the A and
/// B subtrees. Requires |A|, |B|, |C| >= 2.
Tree linearize(const Tree& tree, const Tripartition& tp);

/// Replaces the side_b subtree (k <= |B| <= 2(k-1)) by the fully k-loaded
/// tree on B with a single-edge scaffold, attached at the scaffold edge.
Tree replace_with_local_fully_loaded(const Tree& tree, const Split& split, int k);

}  // namespace convexchar
