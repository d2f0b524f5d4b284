#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "convexchar/bigcount.hpp"
#include "convexchar/enumerate.hpp"
#include "convexchar/tree.hpp"

namespace convexchar {

enum class SolveMode { agreement_forest_min_components, quartet_exact_partition, objective_optimize };

struct SolveInstance {
  std::vector<Tree> trees;
  int k = 1;
  SolveMode mode = SolveMode::agreement_forest_min_components;
  std::string objective = "sum_parsimony";
  std::optional<Tree> tree;  // enumeration tree for objective mode; trees[0] if absent
};

struct SolveResult {
  std::optional<Character> character;
  std::optional<BigCount> objective_value;
  BigCount characters_scanned = 0;
  double wall_time_ms = 0;
};

/// Smallest number of blocks over the g_k characters of t1 that are convex
/// on t2 and whose blocks restrict to the same topology in both trees. Ties
/// go to the first such character in stream order.
SolveResult solve_agreement_kforest(const Tree& t1, const Tree& t2, int k);

/// First g_4 character of trees[0] made of 4-taxon blocks that is convex on
/// every tree with matching quartet topologies. Empty result unless n % 4 == 0.
SolveResult solve_quartet_partition(const std::vector<Tree>& trees);

/// Minimises the named objective over the g_k characters of `t`. The only
/// objective is "sum_parsimony": the total parsimony score over `trees`.
SolveResult solve_objective(const Tree& t, const std::vector<Tree>& trees, int k, const std::string& objective);

SolveResult solve(const SolveInstance& instance);

/// Throws ParseError on schema violations.
SolveInstance instance_from_json(const nlohmann::json& j);
/// `tree` supplies the labels for the character text.
nlohmann::json result_to_json(const Tree& tree, const SolveResult& result);

std::string to_string(SolveMode mode);

}  // namespace convexchar
