#include <doctest.h>

#include <sstream>

#include "convexchar/bench.hpp"
#include "convexchar/charcount.hpp"
#include "convexchar/error.hpp"
#include "convexchar/extremal.hpp"
#include "convexchar/verify.hpp"

using namespace convexchar;

TEST_CASE("simulated budgets follow the counts") {
  // One microsecond per character: a 0.01 s budget allows 10000 characters.
  SimulatedClock clock(1e-6);
  BenchRecord r = bench_family(Family::caterpillar, 1, 0.01, 1, clock);
  CHECK(r.max_n_completed == 10);  // g_1 = F(19) = 4181, F(21) = 10946
  CHECK(r.characters_listed == 4181);
  SimulatedClock c2(1e-6);
  BenchRecord r3 = bench_family(Family::caterpillar, 3, 0.01, 1, c2);
  CHECK(gk_caterpillar(r3.max_n_completed, 3) <= 10000);
  CHECK(gk_caterpillar(r3.max_n_completed + 1, 3) > 10000);
}

TEST_CASE("bench trends under a simulated clock") {
  for (Family f : {Family::caterpillar, Family::random}) {
    int previous = 0;
    for (int k = 1; k <= 6; ++k) {
      SimulatedClock clock(1e-6);
      BenchRecord r = bench_family(f, k, 0.005, 7, clock);
      CHECK(r.max_n_completed >= previous);
      CHECK(r.max_n_completed >= k);
      previous = r.max_n_completed;
    }
  }
  for (int k = 3; k <= 6; ++k) {
    SimulatedClock a(1e-6), b(1e-6);
    CHECK(bench_family(Family::random, k, 0.005, 7, a).max_n_completed >=
          bench_family(Family::caterpillar, k, 0.005, 7, b).max_n_completed);
  }
}

TEST_CASE("tiny real budgets still finish n = k") {
  for (Family f : {Family::caterpillar, Family::random, Family::fully_loaded}) {
    SteadyClock clock;
    CHECK(bench_family(f, 4, 0.001, 3, clock).max_n_completed >= 4);
  }
}

TEST_CASE("bench input checks") {
  SimulatedClock clock;
  CHECK_THROWS_AS(bench_family(Family::caterpillar, 2, 0, 1, clock), std::invalid_argument);
  CHECK_THROWS_AS(family_tree(Family::fully_loaded, 5, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(family_from_string("star"), std::invalid_argument);
  CHECK(family_from_string("random") == Family::random);
  CHECK(bench_row(BenchRecord{}).find("caterpillar\t1\t") == 0);
}

TEST_CASE("verify passes with small settings and any seed") {
  for (std::uint64_t seed : {1u, 99u}) {
    auto results = run_verify(VerifyOptions{7, 3, 10, seed});
    for (const auto& r : results) {
      INFO(r.name << ": " << r.detail);
      CHECK(r.passed);
      CHECK(r.cases > 0);
    }
    std::ostringstream out;
    print_report(out, results);
    CHECK(out.str().find("FAIL") == std::string::npos);
  }
  CHECK_THROWS_AS(run_verify(VerifyOptions{15, 4, 10, 1}), GuardError);
}

TEST_CASE("doubling lone taxa gives a fully 3-loaded tree") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Tree t = gen_random(11, seed);
    Tree d = double_lone_taxa(t);
    const int pairs = static_cast<int>(cherries(t).size());
    CHECK(d.num_taxa() == 2 * 11 - 2 * pairs);
    CHECK(is_fully_loaded(d, 3));
    CHECK(count_gk(t, 3) <= count_gk(d, 3));
  }
}
