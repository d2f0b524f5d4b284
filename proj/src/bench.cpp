#include "convexchar/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <stdexcept>

#include "convexchar/enumerate.hpp"
#include "convexchar/extremal.hpp"

namespace convexchar {

std::string to_string(Family family) {
  switch (family) {
    case Family::caterpillar: return "caterpillar";
    case Family::random: return "random";
    case Family::fully_loaded: return "fully_loaded";
  }
  return "?";
}

Family family_from_string(const std::string& name) {
  if (name == "caterpillar") return Family::caterpillar;
  if (name == "random") return Family::random;
  if (name == "fully_loaded") return Family::fully_loaded;
  throw std::invalid_argument("unknown family '" + name + "'");
}

Tree family_tree(Family family, int n, int k, std::uint64_t seed) {
  switch (family) {
    case Family::caterpillar: return gen_caterpillar(n);
    case Family::random: return gen_random(n, seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(n));
    case Family::fully_loaded:
      if (k < 2) throw std::invalid_argument("the fully_loaded family needs k >= 2");
      return gen_fully_loaded(n, k);
  }
  throw std::logic_error("family_tree: bad family");
}

double SteadyClock::seconds() const {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

BenchRecord bench_family(Family family, int k, double budget, std::uint64_t seed, BenchClock& clock, int n_cap) {
  if (!(budget > 0)) throw std::invalid_argument("bench: budget must be positive");
  if (k < 1) throw std::invalid_argument("bench: k must be positive");
  BenchRecord record{family, k, budget, 0, 0, seed, 0};
  const int first = std::max(3, k);
  record.max_n_completed = first - 1;
  for (int n = first; n <= n_cap; ++n) {
    CharacterStream stream(family_tree(family, n, k, seed), k);
    const double start = clock.seconds();
    double last = start, gap = 0;
    BigCount listed = 0;
    bool overran = false;
    while (stream.next()) {
      clock.tick();
      const double now = clock.seconds();
      gap = std::max(gap, now - last);
      last = now;
      ++listed;
      if (now - start > budget) {
        overran = true;
        break;
      }
    }
    if (overran) break;
    record.max_n_completed = n;
    record.characters_listed = listed;
    record.max_gap = std::max(record.max_gap, gap);
  }
  return record;
}

std::string bench_header() { return "family\tk\tbudget_s\tmax_n_completed\tcharacters_listed\tseed\tmax_gap_s"; }

std::string bench_row(const BenchRecord& r) {
  char budget[32], gap[32];
  std::snprintf(budget, sizeof budget, "%g", r.budget);
  std::snprintf(gap, sizeof gap, "%.3g", r.max_gap);
  return to_string(r.family) + '\t' + std::to_string(r.k) + '\t' + budget + '\t' + std::to_string(r.max_n_completed) +
         '\t' + to_decimal(r.characters_listed) + '\t' + std::to_string(r.seed) + '\t' + gap;
}

}  // namespace convexchar
