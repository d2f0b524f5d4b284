#include <doctest.h>

#include <set>

#include "convexchar/charcount.hpp"
#include "convexchar/enumerate.hpp"
#include "convexchar/error.hpp"
#include "convexchar/extremal.hpp"
#include "convexchar/newick.hpp"
#include "convexchar/oracle.hpp"

using namespace convexchar;

namespace {

const char* kExample = "(((a,b),c),d,((e,f),g));";

std::set<std::string> texts(const Tree& t, const std::vector<Character>& fs) {
  std::set<std::string> out;
  for (const auto& f : fs) out.insert(format_character(t, f));
  return out;
}

// Fewest bichromatic edges over every labelling of the internal vertices.
int brute_parsimony(const Tree& t, const Character& f) {
  const auto block = f.block_of();
  const int n = t.num_taxa(), nv = t.num_vertices(), q = f.num_blocks();
  std::vector<int> colour(nv, 0);
  for (int v = 0; v < n; ++v) colour[v] = block[v];
  int best = nv;
  while (true) {
    int cost = 0;
    for (auto [u, v] : t.edges()) cost += colour[u] != colour[v];
    best = std::min(best, cost);
    int v = n;
    while (v < nv && ++colour[v] == q) colour[v++] = 0;
    if (v == nv) break;
  }
  return best;
}

}  // namespace

TEST_CASE("character text round trip") {
  Tree t = parse_newick(kExample);
  Character f = parse_character(t, "abc|defg");
  CHECK(format_character(t, f) == "a,b,c|d,e,f,g");
  CHECK(parse_character(t, "d,e,f,g|a,b,c") == f);
  CHECK(character_from_json(t, character_to_json(t, f)) == f);
  CHECK_THROWS_AS(parse_character(t, "abc|def"), ParseError);
  CHECK_THROWS_AS(parse_character(t, "abc|cdefg"), ParseError);
  CHECK_THROWS_AS(parse_character(t, "abc|defz"), ParseError);
  CHECK(f.num_blocks() == 2);
  CHECK(f.min_block_size() == 3);
  CHECK(f.block_of() == std::vector<int>{0, 0, 0, 1, 1, 1, 1});
}

TEST_CASE("seven-taxon example listings") {
  Tree t = parse_newick(kExample);
  CHECK(texts(t, list_gk(t, 3)) ==
        std::set<std::string>{"a,b,c,d,e,f,g", "a,b,c|d,e,f,g", "a,b,c,d|e,f,g"});
  CHECK(texts(t, list_gk(t, 2)) == std::set<std::string>{"a,b,c,d,e,f,g", "a,b,c|d,e,f,g", "a,b,c,d|e,f,g",
                                                         "a,b|c,d,e,f,g", "a,b,c,d,g|e,f", "a,b|c,d,g|e,f",
                                                         "a,b|c,d|e,f,g", "a,b,c|d,g|e,f"});
  CHECK(texts(t, list_gk(t, 4)) == std::set<std::string>{"a,b,c,d,e,f,g"});
  CHECK(list_gk(t, 1).size() == 233);
  CHECK(list_gk(t, 8).empty());
}

TEST_CASE("listing equals the brute-force listing") {
  for (int n = 1; n <= 9; ++n)
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      Tree t = n >= 3 ? gen_random(n, seed) : gen_caterpillar(n);
      for (int k = 1; k <= 4; ++k) {
        auto fast = list_gk(t, k);
        auto slow = oracle::brute_list(t, k);
        CHECK(std::set<Character>(fast.begin(), fast.end()) == std::set<Character>(slow.begin(), slow.end()));
        CHECK(fast.size() == slow.size());
      }
    }
}

TEST_CASE("stream order follows the edge signature") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Tree t = gen_random(11, seed);
    for (int k = 1; k <= 4; ++k) {
      CharacterStream stream(t, k);
      std::vector<std::uint16_t> previous;
      long listed = 0;
      while (auto f = stream.next()) {
        CHECK(edge_signature(t, *f, k) == stream.signature());
        if (listed++) CHECK(previous < stream.signature());
        previous = stream.signature();
      }
      CHECK(BigCount(listed) == count_gk(t, k));
      CHECK_FALSE(stream.next());
    }
  }
}

TEST_CASE("is_convex agrees with the naive test") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    Tree t = gen_random(8, seed);
    for (const auto& f : oracle::all_partitions(t.all_taxa(), 1))
      CHECK(is_convex(t, f) == oracle::naive_is_convex(t, f));
  }
}

TEST_CASE("Fitch parsimony against exhaustive labelling") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    Tree t = gen_random(7, seed);
    for (const auto& f : oracle::all_partitions(t.all_taxa(), 1)) {
      if (f.num_blocks() > 4) continue;
      const int score = parsimony_score(t, f);
      CHECK(score == brute_parsimony(t, f));
      CHECK((score == f.num_blocks() - 1) == is_convex(t, f));
    }
  }
}

TEST_CASE("invalid characters") {
  Tree t = parse_newick(kExample);
  CHECK_THROWS_AS(is_convex(t, Character({TaxonSet{0, 1}, TaxonSet{2}})), std::invalid_argument);
  CHECK_THROWS_AS(CharacterStream(t, 0), std::invalid_argument);
}

TEST_CASE("long listings stream without materialising") {
  CharacterStream stream(gen_caterpillar(60), 6);
  long listed = 0;
  while (stream.next() && listed < 100000) ++listed;
  CHECK(listed == 100000);
}
