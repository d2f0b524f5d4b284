// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Exit status is non-zero when a criterion fails that is not listed in
// kKnownFailures below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "convexchar/apps.hpp"
#include "convexchar/bench.hpp"
#include "convexchar/charcount.hpp"
#include "convexchar/enumerate.hpp"
#include "convexchar/extremal.hpp"
#include "convexchar/newick.hpp"
#include "convexchar/oracle.hpp"
#include "convexchar/verify.hpp"

using namespace convexchar;

namespace {

// Pinned tolerances and limits.
constexpr double kRateTolerance = 0.0005;     // half a unit in the third decimal
constexpr double kPrintedG3Constant = 0.194225;
constexpr double kPrintedAlpha3 = 1.46557;
constexpr double kSimulatedTick = 1e-6;       // seconds per listed character
const std::vector<double> kBenchBudgets{0.01, 0.1};

// Criteria that fail for reasons recorded with the project notes; they are
// reported as FAIL but do not fail the run.
const std::set<std::string> kKnownFailures{"5d"};

struct Outcome {
  bool passed = true;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  double limit_s;
  std::function<Outcome()> run;
};

const char* kExample = "(((a,b),c),d,((e,f),g));";

std::string cli_path;

std::string run_command(const std::string& cmd) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return out;
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
  pclose(pipe);
  return out;
}

std::set<std::string> texts(const Tree& t, const std::vector<Character>& fs) {
  std::set<std::string> out;
  for (const auto& f : fs) out.insert(format_character(t, f));
  return out;
}

Outcome example_tree() {
  Tree t = parse_newick(kExample);
  Outcome o;
  std::ostringstream d;
  d << "counts";
  for (int k = 1; k <= 4; ++k) d << ' ' << to_decimal(count_gk(t, k));
  o.passed = count_gk(t, 1) == 233 && count_gk(t, 2) == 8 && count_gk(t, 3) == 3 && count_gk(t, 4) == 1;
  const std::set<std::string> k3{"a,b,c,d,e,f,g", "a,b,c|d,e,f,g", "a,b,c,d|e,f,g"};
  const std::set<std::string> k2{"a,b,c,d,e,f,g", "a,b,c|d,e,f,g", "a,b,c,d|e,f,g", "a,b|c,d,e,f,g",
                                 "a,b,c,d,g|e,f", "a,b|c,d,g|e,f", "a,b|c,d|e,f,g", "a,b,c|d,g|e,f"};
  const auto l3 = list_gk(t, 3), l2 = list_gk(t, 2);
  o.passed = o.passed && texts(t, l3) == k3 && l3.size() == 3 && texts(t, l2) == k2 && l2.size() == 8;
  d << "; k=3 listing " << l3.size() << " characters, k=2 listing " << l2.size();
  o.detail = d.str();
  return o;
}

Outcome neutrality() {
  Outcome o;
  long trees = 0;
  for (int n = 3; n <= 8; ++n)
    for_each_topology(default_labels(n), [&](const Tree& t) {
      ++trees;
      if (count_gk(t, 1) != fibonacci(2 * n - 1) || count_gk(t, 2) != fibonacci(n - 1)) {
        if (o.passed) o.detail = "counterexample " + write_newick(t) + "; ";
        o.passed = false;
      }
    });
  o.detail += std::to_string(trees) + " labelled topologies, n = 3..8";
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  long cases = 0;
  for (int n = 5; n <= 9; ++n)
    for (int s = 0; s < 200; ++s) {
      Tree t = gen_random(n, 1000003ULL * n + s);
      for (int k = 1; k <= 4; ++k) {
        ++cases;
        if (count_gk(t, k) != oracle::brute_count(t, k)) {
          if (o.passed) o.detail = "counterexample " + write_newick(t) + " k=" + std::to_string(k) + "; ";
          o.passed = false;
        }
      }
    }
  o.detail += std::to_string(cases) + " (tree, k) pairs";
  return o;
}

Outcome sandwich() {
  Outcome o;
  long cases = 0;
  for (int n : {10, 15, 20})
    for (int k : {3, 4, 5}) {
      const BigCount lo = gk_fully_loaded(n, k), hi = gk_caterpillar(n, k);
      bool attained = count_gk(gen_caterpillar(n), k) == hi && count_gk(gen_fully_loaded(n, k), k) == lo;
      if (!attained) {
        o.passed = false;
        o.detail += "bound not attained at n=" + std::to_string(n) + " k=" + std::to_string(k) + "; ";
      }
      for (int s = 0; s < 1000; ++s) {
        ++cases;
        const BigCount g = count_gk(gen_random(n, 7919ULL * n + 104729ULL * k + s), k);
        if (g < lo || g > hi) o.passed = false;
      }
    }
  o.detail += std::to_string(cases) + " random trees within bounds, both bounds attained";
  return o;
}

Outcome split_recurrence() {
  Outcome o;
  std::mt19937_64 rng(23);
  int applicable = 0, drawn = 0;
  while (applicable < 100) {
    const int k = 2 + static_cast<int>(rng() % 4);
    const int n = k + 2 + static_cast<int>(rng() % 18);
    Tree t = gen_random(n, rng());
    ++drawn;
    bool has = false;
    for (const Split& s : splits(t))
      has = has || static_cast<int>(s.side_a.size()) == k || static_cast<int>(s.side_b.size()) == k;
    if (!has) continue;
    ++applicable;
    if (!decrease_recurrence_check(t, k)) o.passed = false;
  }
  o.detail = "100 applicable of " + std::to_string(drawn) + " sampled trees";
  return o;
}

Outcome caterpillar_recurrence() {
  Outcome o;
  for (int n = 1; n <= 25; ++n)
    for (int k = 1; k <= 6; ++k)
      if (count_gk(gen_caterpillar(n), k) != gk_caterpillar(n, k)) {
        o.passed = false;
        o.detail += "n=" + std::to_string(n) + " k=" + std::to_string(k) + "; ";
      }
  o.detail += "n <= 25, k <= 6";
  return o;
}

Outcome tripartition_identity() {
  Outcome o;
  std::mt19937_64 rng(29);
  int applicable = 0, drawn = 0;
  while (applicable < 100) {
    const int k = 3 + static_cast<int>(rng() % 3);
    const int n = 3 * k + static_cast<int>(rng() % 14);
    Tree t = gen_random(n, rng());
    ++drawn;
    for (const Tripartition& tp : tripartitions(t)) {
      auto abc = loaded_tripartition(tp, k);
      if (!abc) continue;
      ++applicable;
      if (!tripartition_identity_holds(t, k, *abc)) o.passed = false;
      break;
    }
  }
  o.detail = "100 applicable of " + std::to_string(drawn) + " sampled trees";
  return o;
}

Outcome g3_closed_form() {
  Outcome o;
  std::vector<int> printed_bad, derived_bad;
  const long double c = g3_caterpillar_constant();
  for (int n = 3; n <= 30; ++n) {
    const BigCount want = gk_caterpillar(n, 3);
    const auto printed = static_cast<long long>(std::floor(kPrintedG3Constant * std::pow(kPrintedAlpha3, n) + 0.5));
    const auto derived = static_cast<long long>(std::floor(c * std::pow(static_cast<long double>(kPrintedAlpha3), n) + 0.5L));
    if (BigCount(printed) != want) printed_bad.push_back(n);
    if (BigCount(derived) != want) derived_bad.push_back(n);
  }
  o.passed = printed_bad.empty();
  std::ostringstream d;
  d.precision(7);
  if (printed_bad.empty()) {
    d << "printed constant 0.194225 matches for n = 3..30";
  } else {
    d << "printed constant 0.194225 misses n =";
    for (int n : printed_bad) d << ' ' << n;
    d << " (e.g. n=30 gives " << std::floor(kPrintedG3Constant * std::pow(kPrintedAlpha3, 30) + 0.5) << " vs "
      << to_decimal(gk_caterpillar(30, 3)) << ")";
  }
  d << "; constant from the defining cubic, " << static_cast<double>(c) << ", "
    << (derived_bad.empty() ? "matches every n = 3..30" : "also misses");
  o.detail = d.str();
  return o;
}

Outcome rate_table() {
  const double want[6][2] = {{2.618, 2.618}, {1.618, 1.618}, {1.272, 1.466},
                             {1.174, 1.380}, {1.128, 1.325}, {1.101, 1.285}};
  Outcome o;
  std::string table;
  if (!cli_path.empty()) {
    table = run_command("'" + cli_path + "' rate --kmax 6");
  } else {
    table = "k\tmin_rate\tmax_rate\n";
    for (int k = 1; k <= 6; ++k)
      table += std::to_string(k) + '\t' + format_rate(growth_rate(k).min_rate) + '\t' + format_rate(growth_rate(k).alpha) + '\n';
  }
  std::istringstream in(table);
  std::string header;
  std::getline(in, header);
  int matched = 0;
  for (int k = 1; k <= 6; ++k) {
    int row_k = 0;
    std::string lo, hi;
    if (!(in >> row_k >> lo >> hi) || row_k != k) break;
    char expect_lo[16], expect_hi[16];
    std::snprintf(expect_lo, sizeof expect_lo, "%.3f", want[k - 1][0]);
    std::snprintf(expect_hi, sizeof expect_hi, "%.3f", want[k - 1][1]);
    matched += lo == expect_lo && std::abs(std::stod(lo) - want[k - 1][0]) < kRateTolerance;
    matched += hi == expect_hi && std::abs(std::stod(hi) - want[k - 1][1]) < kRateTolerance;
  }
  o.passed = matched == 12;
  o.detail = std::to_string(matched) + "/12 entries match" + (cli_path.empty() ? " (library)" : " (CLI output)");
  return o;
}

Outcome monotonicity() {
  Outcome o;
  std::mt19937_64 rng(31);
  int lin = 0, rep = 0, drawn = 0;
  while (lin < 100 || rep < 100) {
    const int k = 3 + static_cast<int>(rng() % 4);
    const int n = 2 * k + static_cast<int>(rng() % 12);
    Tree t = gen_random(n, rng());
    ++drawn;
    const BigCount g = count_gk(t, k);
    if (lin < 100)
      for (const Tripartition& tp : tripartitions(t)) {
        const int c = static_cast<int>(tp.part_c.size());
        if (tp.part_a.size() < 2 || tp.part_b.size() < 2 || c < 2 || c >= k) continue;
        ++lin;
        if (count_gk(linearize(t, tp), k) < g) o.passed = false;
        break;
      }
    if (rep < 100 && n > k) {
      ++rep;
      if (count_gk(replace_with_local_fully_loaded(t, find_bounded_split(t, k), k), k) > g) o.passed = false;
    }
  }
  o.detail = "100 linearizations and 100 replacements from " + std::to_string(drawn) + " sampled trees";
  return o;
}

Outcome shape_independence() {
  Outcome o;
  int fewest = 1 << 30;
  for (int n = 10; n <= 20; ++n)
    for (int k : {3, 4, 5}) {
      std::set<std::string> shapes;
      const BigCount want = gk_fully_loaded(n, k);
      for (std::uint64_t seed = 0; seed < 12; ++seed) {
        Tree t = gen_fully_loaded(random_fully_loaded_spec(n, k, 1000 * n + 10 * k + seed));
        shapes.insert(write_newick(t));
        if (count_gk(t, k) != want || !is_fully_loaded(t, k)) o.passed = false;
      }
      fewest = std::min<int>(fewest, static_cast<int>(shapes.size()));
    }
  if (fewest < 5) o.passed = false;
  o.detail = "at least " + std::to_string(fewest) + " distinct labelled trees per (n, k), all at the closed form";
  return o;
}

Outcome bench_trend() {
  Outcome o;
  std::ostringstream d;
  for (double budget : kBenchBudgets) {
    int cat[7] = {}, rnd[7] = {};
    for (int k = 1; k <= 6; ++k) {
      SimulatedClock a(kSimulatedTick), b(kSimulatedTick);
      cat[k] = bench_family(Family::caterpillar, k, budget, 1, a).max_n_completed;
      rnd[k] = bench_family(Family::random, k, budget, 1, b).max_n_completed;
      if (k > 1 && (cat[k] < cat[k - 1] || rnd[k] < rnd[k - 1])) o.passed = false;
      if (k >= 3 && rnd[k] < cat[k]) o.passed = false;
    }
    d << "budget " << budget << "s: caterpillar";
    for (int k = 1; k <= 6; ++k) d << ' ' << cat[k];
    d << ", random";
    for (int k = 1; k <= 6; ++k) d << ' ' << rnd[k];
    d << "; ";
  }
  d << "simulated clock, " << kSimulatedTick << " s per character";
  o.detail = d.str();
  return o;
}

Outcome solvers() {
  Outcome o;
  std::vector<std::string> bad;
  for (std::uint64_t s = 0; s < 50; ++s) {
    Tree t = gen_random(6 + static_cast<int>(s % 7), s);
    SolveResult r = solve_agreement_kforest(t, t, 1 + static_cast<int>(s % 4));
    if (!r.character || r.character->num_blocks() != 1) bad.push_back("self agreement");
  }
  Tree fl = gen_fully_loaded(8, 5);
  SolveResult q = solve_quartet_partition({fl, fl});
  if (!q.character || format_character(fl, *q.character) != "a,b,c,d|e,f,g,h") bad.push_back("quartet positive");
  if (solve_quartet_partition({gen_caterpillar(7)}).character) bad.push_back("quartet n=7");

  Tree t1 = gen_caterpillar(6);
  Tree t2 = gen_caterpillar(std::vector<std::string>{"a", "c", "b", "d", "e", "f"});
  SolveResult a = solve_agreement_kforest(t1, t2, 2);
  if (!a.character || format_character(t1, *a.character) != "a,b,c|d,e,f") bad.push_back("swapped caterpillars");

  const std::vector<Tree> trees{t1, t2};
  SolveResult best = solve_objective(t1, trees, 2, "sum_parsimony");
  BigCount brute = -1;
  for (const Character& f : oracle::brute_list(t1, 2)) {
    BigCount score = 0;
    for (const Tree& t : trees) score += parsimony_score(t, f);
    if (brute < 0 || score < brute) brute = score;
  }
  if (!best.objective_value || *best.objective_value != brute || best.characters_scanned != 5)
    bad.push_back("objective minimum");
  o.passed = bad.empty();
  o.detail = bad.empty() ? "50 self-agreements, quartet cases, objective minimum " + to_decimal(brute) + " over 5 characters"
                         : "failed: " + bad.front();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) cli_path = argv[1];
  const std::vector<Criterion> criteria{
      {"1", "seven-taxon example counts and listings", 1, example_tree},
      {"2", "g_1 and g_2 on every topology up to 8 taxa", 120, neutrality},
      {"3", "count_gk equals brute force, n = 5..9, k = 1..4", 300, oracle_equivalence},
      {"4", "fully loaded <= g_k <= caterpillar, n = 10, 15, 20", 300, sandwich},
      {"5a", "split deletion recurrence", 60, split_recurrence},
      {"5b", "caterpillar recurrence", 60, caterpillar_recurrence},
      {"5c", "tripartition product identity", 60, tripartition_identity},
      {"5d", "g_3 caterpillar closed form, n = 3..30", 60, g3_closed_form},
      {"6", "growth rate table", 1, rate_table},
      {"7", "linearization and local replacement monotonicity", 120, monotonicity},
      {"8", "fully loaded count is shape independent", 60, shape_independence},
      {"9", "bench max n non-decreasing in k, random >= caterpillar", 300, bench_trend},
      {"10", "solver sanity", 60, solvers},
  };
  int unexpected = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_s) {
      o.passed = false;
      o.detail += "; over the time limit";
    }
    const bool known = !o.passed && kKnownFailures.count(c.id);
    if (!o.passed && !known) ++unexpected;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs / %.0fs", secs, c.limit_s);
    std::cout << (o.passed ? "PASS" : known ? "FAIL (known)" : "FAIL") << "  [" << c.id << "] " << c.title << "  -- "
              << o.detail << "  [" << timing << "]" << std::endl;
  }
  std::cout << (unexpected ? "unexpected failures: " + std::to_string(unexpected) : std::string("no unexpected failures"))
            << std::endl;
  return unexpected ? 1 : 0;
}
