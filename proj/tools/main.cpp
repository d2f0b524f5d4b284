#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "convexchar/apps.hpp"
#include "convexchar/bench.hpp"
#include "convexchar/charcount.hpp"
#include "convexchar/enumerate.hpp"
#include "convexchar/error.hpp"
#include "convexchar/extremal.hpp"
#include "convexchar/newick.hpp"
#include "convexchar/verify.hpp"

using namespace convexchar;

namespace {

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;
constexpr int kExitTruncated = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<NumberedTree> read_trees(const std::string& path) {
  std::istringstream in(slurp(path));
  auto trees = read_newick_lines(in);
  if (trees.empty()) throw ParseError("no trees in '" + path + "'");
  return trees;
}

int cmd_count(const std::string& path, int k, const std::string& format) {
  for (const auto& [line, tree] : read_trees(path)) {
    const std::string count = to_decimal(count_gk(tree, k));
    if (format == "json") {
      std::cout << nlohmann::json{{"line", line}, {"n", tree.num_taxa()}, {"k", k}, {"count", count}}.dump() << '\n';
    } else {
      std::cout << line << '\t' << tree.num_taxa() << '\t' << k << '\t' << count << '\n';
    }
  }
  return 0;
}

int cmd_list(const std::string& path, int k, long long limit, const std::string& format) {
  const auto trees = read_trees(path);
  const bool tagged = trees.size() > 1;
  long long printed = 0;
  for (const auto& [line, tree] : trees) {
    CharacterStream stream(tree, k);
    while (auto f = stream.next()) {
      if (limit >= 0 && printed == limit) return kExitTruncated;
      if (format == "json") {
        nlohmann::json j{{"character", character_to_json(tree, *f)}};
        if (tagged) j["line"] = line;
        std::cout << j.dump() << '\n';
      } else {
        if (tagged) std::cout << line << '\t';
        std::cout << format_character(tree, *f) << '\n';
      }
      ++printed;
    }
  }
  return 0;
}

int cmd_gen(const std::string& family, int n, int k, std::uint64_t seed) {
  Tree t;
  if (family == "caterpillar") {
    t = gen_caterpillar(n);
  } else if (family == "fully_loaded") {
    if (k < 0) throw UsageError("gen fully_loaded requires --k");
    if (k < 2) throw Error("fully loaded trees need k >= 2");
    if (n < k) throw Error("fully loaded trees need n >= k");
    t = gen_fully_loaded(n, k);
  } else {
    t = gen_random(n, seed);
  }
  std::cout << write_newick(t) << '\n';
  return 0;
}

int cmd_rate(int kmax) {
  std::cout << "k\tmin_rate\tmax_rate\n";
  for (int k = 1; k <= kmax; ++k) {
    const GrowthRate r = growth_rate(k);
    std::cout << k << '\t' << format_rate(r.min_rate) << '\t' << format_rate(r.alpha) << '\n';
  }
  return 0;
}

int cmd_bench(const std::vector<std::string>& families, const std::vector<int>& ks, const std::vector<double>& budgets,
              std::uint64_t seed, const std::string& clock_name, double tick, int n_cap) {
  std::cout << bench_header() << '\n';
  for (const auto& name : families) {
    const Family family = family_from_string(name);
    for (int k : ks)
      for (double budget : budgets) {
        SteadyClock steady;
        SimulatedClock simulated(tick);
        BenchClock& clock = clock_name == "simulated" ? static_cast<BenchClock&>(simulated) : steady;
        std::cout << bench_row(bench_family(family, k, budget, seed, clock, n_cap)) << std::endl;
      }
  }
  return 0;
}

int cmd_verify(const VerifyOptions& options) {
  const auto results = run_verify(options);
  print_report(std::cout, results);
  for (const auto& r : results)
    if (!r.passed) return kExitDomain;
  std::cout << "all checks passed\n";
  return 0;
}

int cmd_solve(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(slurp(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  const SolveInstance instance = instance_from_json(j);
  const SolveResult result = solve(instance);
  std::cout << result_to_json(instance.trees.front(), result).dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Count, list and analyse convex characters on binary phylogenetic trees"};
  app.require_subcommand(1);

  std::string path, format = "tsv", family;
  int k = 1, n = 0, kmax = 6;
  long long limit = -1;
  std::uint64_t seed = 1;

  auto* count = app.add_subcommand("count", "print g_k for every tree in a Newick file (TSV: line, n, k, count)");
  count->add_option("trees", path, "Newick file, one tree per line, or - for stdin")->required();
  count->add_option("-k,--k", k, "minimum block size")->required()->check(CLI::PositiveNumber);
  count->add_option("--format", format)->check(CLI::IsMember({"tsv", "json"}));

  auto* list = app.add_subcommand("list", "list every g_k character; exit 3 when --limit truncates");
  list->add_option("trees", path, "Newick file or -")->required();
  list->add_option("-k,--k", k)->required()->check(CLI::PositiveNumber);
  list->add_option("--limit", limit, "stop after this many characters")->check(CLI::NonNegativeNumber);
  std::string list_format = "text";
  list->add_option("--format", list_format)->check(CLI::IsMember({"text", "json"}));

  auto* gen = app.add_subcommand("gen", "print a canonical Newick tree");
  gen->add_option("family", family)->required()->check(CLI::IsMember({"caterpillar", "fully_loaded", "random"}));
  gen->add_option("n", n)->required()->check(CLI::Range(1, 1 << 20));
  int gen_k = -1;
  gen->add_option("-k,--k", gen_k, "block size (fully_loaded)");
  gen->add_option("--seed", seed);

  auto* rate = app.add_subcommand("rate", "growth rates of the g_k minimum and maximum (TSV)");
  rate->add_option("--kmax", kmax)->check(CLI::Range(1, 64));

  auto* bench = app.add_subcommand("bench", "largest n whose full listing fits a time budget (TSV)");
  std::vector<std::string> families{"caterpillar", "random"};
  std::vector<int> ks{1, 2, 3, 4, 5, 6};
  std::vector<double> budgets{1.0};
  std::string clock_name = "steady";
  double tick = 1e-6;
  int n_cap = 256;
  bench->add_option("--family", families)->delimiter(',')->check(CLI::IsMember({"caterpillar", "random", "fully_loaded"}));
  bench->add_option("--k", ks)->delimiter(',')->check(CLI::PositiveNumber);
  bench->add_option("--budget", budgets, "seconds")->delimiter(',')->check(CLI::PositiveNumber);
  bench->add_option("--seed", seed);
  bench->add_option("--clock", clock_name)->check(CLI::IsMember({"steady", "simulated"}));
  bench->add_option("--tick", tick, "simulated seconds per character")->check(CLI::PositiveNumber);
  bench->add_option("--n-cap", n_cap)->check(CLI::Range(3, 100000));

  auto* verify = app.add_subcommand("verify", "run the property suite against the brute-force oracle");
  VerifyOptions vo;
  verify->add_option("--nmax", vo.nmax)->check(CLI::Range(3, 1000));
  verify->add_option("--kmax", vo.kmax)->check(CLI::Range(1, 64));
  verify->add_option("--samples", vo.samples)->check(CLI::PositiveNumber);
  verify->add_option("--seed", vo.seed);

  auto* solve_cmd = app.add_subcommand("solve", "solve a JSON instance (agreement forest, quartet partition, objective)");
  solve_cmd->add_option("instance", path, "JSON file or -")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*count) return cmd_count(path, k, format);
    if (*list) return cmd_list(path, k, limit, list_format);
    if (*gen) return cmd_gen(family, n, gen_k, seed);
    if (*rate) return cmd_rate(kmax);
    if (*bench) return cmd_bench(families, ks, budgets, seed, clock_name, tick, n_cap);
    if (*verify) return cmd_verify(vo);
    if (*solve_cmd) return cmd_solve(path);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}
