#include <doctest.h>

#include <numeric>
#include <set>

#include "convexchar/charcount.hpp"
#include "convexchar/error.hpp"
#include "convexchar/extremal.hpp"
#include "convexchar/newick.hpp"
#include "convexchar/oracle.hpp"

using namespace convexchar;

namespace {

TaxonSet iota_set(int n) {
  TaxonSet s(n);
  std::iota(s.begin(), s.end(), 0);
  return s;
}

}  // namespace

TEST_CASE("partition counts") {
  const long bell[] = {1, 2, 5, 15, 52, 203, 877, 4140, 21147};
  const long no_singletons[] = {0, 1, 1, 4, 11, 41, 162, 715, 3425};
  for (int n = 1; n <= 9; ++n) {
    CHECK(static_cast<long>(oracle::all_partitions(iota_set(n), 1).size()) == bell[n - 1]);
    if (n >= 2) CHECK(static_cast<long>(oracle::all_partitions(iota_set(n), 2).size()) == no_singletons[n - 1]);
  }
}

TEST_CASE("partitions are distinct and respect the minimum") {
  auto parts = oracle::all_partitions(iota_set(8), 3);
  std::set<Character> seen(parts.begin(), parts.end());
  CHECK(seen.size() == parts.size());
  for (const auto& f : parts) CHECK(f.min_block_size() >= 3);
}

TEST_CASE("growth strings") {
  oracle::PartitionCursor cursor(iota_set(3), 1);
  std::vector<std::vector<int>> seen;
  while (cursor.next()) seen.push_back(cursor.growth_string());
  CHECK(seen == std::vector<std::vector<int>>{{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {0, 1, 2}});
}

TEST_CASE("seven-taxon example by brute force") {
  Tree t = parse_newick("(((a,b),c),d,((e,f),g));");
  CHECK(oracle::brute_count(t, 1) == 233);
  CHECK(oracle::brute_count(t, 2) == 8);
  CHECK(oracle::brute_list(t, 3).size() == 3);
  CHECK(oracle::brute_list(t, 8).empty());
}

TEST_CASE("naive convexity") {
  Tree t = parse_newick("(((a,b),c),d,((e,f),g));");
  CHECK(oracle::naive_is_convex(t, Character({t.taxa_of({"a", "b"}), t.taxa_of({"c", "d", "e", "f", "g"})})));
  CHECK_FALSE(oracle::naive_is_convex(t, Character({t.taxa_of({"a", "e"}), t.taxa_of({"b", "c", "d", "f", "g"})})));
  CHECK_FALSE(oracle::naive_is_convex(t, Character({t.taxa_of({"a", "d"}), t.taxa_of({"b", "c"}), t.taxa_of({"e", "f", "g"})})));
}

TEST_CASE("topological neutrality by brute force") {
  for (int n = 4; n <= 6; ++n)
    for_each_topology(default_labels(n), [&](const Tree& t) {
      CHECK(oracle::brute_count(t, 1) == g1_closed(n));
      CHECK(oracle::brute_count(t, 2) == g2_closed(n));
    });
}

TEST_CASE("size guard") {
  CHECK_THROWS_AS(oracle::brute_count(gen_caterpillar(15), 2), GuardError);
  CHECK_THROWS_AS(oracle::all_partitions(iota_set(15), 1), GuardError);
  CHECK_THROWS_AS(oracle::all_partitions(iota_set(4), 5), std::invalid_argument);
}
