#include "convexchar/apps.hpp"

#include <chrono>
#include <stdexcept>

#include "convexchar/error.hpp"
#include "convexchar/newick.hpp"

namespace convexchar {

namespace {

using Clock = std::chrono::steady_clock;

void require_same_taxa(const Tree& a, const Tree& b) {
  if (a.labels() != b.labels()) throw Error("trees are not on the same taxon set");
}

bool blocks_agree(const Tree& a, const Tree& b, const Character& f) {
  for (const TaxonSet& block : f.blocks())
    if (write_newick(restrict_to(a, block)) != write_newick(restrict_to(b, block))) return false;
  return true;
}

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void check_k(int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
}

}  // namespace

SolveResult solve_agreement_kforest(const Tree& t1, const Tree& t2, int k) {
  check_k(k);
  require_same_taxa(t1, t2);
  const auto start = Clock::now();
  SolveResult result;
  CharacterStream stream(t1, k);
  while (auto f = stream.next()) {
    ++result.characters_scanned;
    if (result.character && f->num_blocks() >= result.character->num_blocks()) continue;
    if (!is_convex(t2, *f) || !blocks_agree(t1, t2, *f)) continue;
    result.character = std::move(*f);
  }
  if (result.character) result.objective_value = BigCount(result.character->num_blocks());
  result.wall_time_ms = elapsed_ms(start);
  return result;
}

SolveResult solve_quartet_partition(const std::vector<Tree>& trees) {
  if (trees.empty()) throw std::invalid_argument("solve_quartet_partition: no trees");
  for (const Tree& t : trees) require_same_taxa(trees.front(), t);
  const auto start = Clock::now();
  SolveResult result;
  if (trees.front().num_taxa() % 4 == 0) {
    CharacterStream stream(trees.front(), 4);
    while (auto f = stream.next()) {
      ++result.characters_scanned;
      bool ok = true;
      for (const TaxonSet& block : f->blocks()) ok = ok && block.size() == 4;
      for (std::size_t i = 1; ok && i < trees.size(); ++i)
        ok = is_convex(trees[i], *f) && blocks_agree(trees.front(), trees[i], *f);
      if (ok) {
        result.character = std::move(*f);
        break;
      }
    }
  }
  if (result.character) result.objective_value = BigCount(result.character->num_blocks());
  result.wall_time_ms = elapsed_ms(start);
  return result;
}

SolveResult solve_objective(const Tree& t, const std::vector<Tree>& trees, int k, const std::string& objective) {
  if (objective != "sum_parsimony") throw Error("unknown objective '" + objective + "'");
  check_k(k);
  for (const Tree& other : trees) require_same_taxa(t, other);
  const auto start = Clock::now();
  SolveResult result;
  CharacterStream stream(t, k);
  while (auto f = stream.next()) {
    ++result.characters_scanned;
    BigCount score = 0;
    for (const Tree& other : trees) score += parsimony_score(other, *f);
    if (!result.character || score < *result.objective_value ||
        (score == *result.objective_value && *f < *result.character)) {
      result.character = std::move(*f);
      result.objective_value = score;
    }
  }
  result.wall_time_ms = elapsed_ms(start);
  return result;
}

SolveResult solve(const SolveInstance& instance) {
  if (instance.trees.empty()) throw std::invalid_argument("solve: no trees");
  switch (instance.mode) {
    case SolveMode::agreement_forest_min_components:
      if (instance.trees.size() != 2) throw Error("agreement mode takes exactly two trees");
      return solve_agreement_kforest(instance.trees[0], instance.trees[1], instance.k);
    case SolveMode::quartet_exact_partition:
      return solve_quartet_partition(instance.trees);
    case SolveMode::objective_optimize:
      return solve_objective(instance.tree ? *instance.tree : instance.trees[0], instance.trees, instance.k,
                             instance.objective);
  }
  throw std::logic_error("solve: bad mode");
}

std::string to_string(SolveMode mode) {
  switch (mode) {
    case SolveMode::agreement_forest_min_components: return "agreement_forest_min_components";
    case SolveMode::quartet_exact_partition: return "quartet_exact_partition";
    case SolveMode::objective_optimize: return "objective_optimize";
  }
  return "?";
}

SolveInstance instance_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("instance must be a JSON object");
  SolveInstance inst;
  if (!j.contains("trees") || !j["trees"].is_array() || j["trees"].empty())
    throw ParseError("instance.trees must be a non-empty array of Newick strings");
  for (const auto& t : j["trees"]) {
    if (!t.is_string()) throw ParseError("instance.trees entries must be strings");
    inst.trees.push_back(parse_newick(t.get<std::string>()));
  }
  if (!j.contains("mode") || !j["mode"].is_string()) throw ParseError("instance.mode must be a string");
  const std::string mode = j["mode"];
  if (mode == "agreement_forest_min_components") {
    inst.mode = SolveMode::agreement_forest_min_components;
  } else if (mode == "quartet_exact_partition") {
    inst.mode = SolveMode::quartet_exact_partition;
  } else if (mode == "objective_optimize") {
    inst.mode = SolveMode::objective_optimize;
  } else {
    throw ParseError("unknown mode '" + mode + "'");
  }
  if (j.contains("k")) {
    if (!j["k"].is_number_integer()) throw ParseError("instance.k must be an integer");
    inst.k = j["k"];
  } else if (inst.mode == SolveMode::quartet_exact_partition) {
    inst.k = 4;
  } else {
    throw ParseError("instance.k is required for this mode");
  }
  if (j.contains("objective")) {
    if (!j["objective"].is_string()) throw ParseError("instance.objective must be a string");
    inst.objective = j["objective"];
  }
  if (j.contains("tree")) {
    if (!j["tree"].is_string()) throw ParseError("instance.tree must be a Newick string");
    inst.tree = parse_newick(j["tree"].get<std::string>());
  }
  return inst;
}

nlohmann::json result_to_json(const Tree& tree, const SolveResult& result) {
  nlohmann::json j;
  j["character"] = result.character ? nlohmann::json(format_character(tree, *result.character)) : nlohmann::json();
  j["objective_value"] =
      result.objective_value ? nlohmann::json(to_decimal(*result.objective_value)) : nlohmann::json();
  j["characters_scanned"] = to_decimal(result.characters_scanned);
  j["wall_time_ms"] = result.wall_time_ms;
  return j;
}

}  // namespace convexchar
