#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "convexchar/bigcount.hpp"
#include "convexchar/tree.hpp"

namespace convexchar {

enum class Family { caterpillar, random, fully_loaded };

std::string to_string(Family family);
/// Throws std::invalid_argument for unknown names.
Family family_from_string(const std::string& name);

/// The n-taxon member of a family. Random trees are seeded from (seed, n)
/// so that every k sees the same tree at a given n.
Tree family_tree(Family family, int n, int k, std::uint64_t seed);

/// Time source for budgeted listings. tick() is called once per character.
class BenchClock {
 public:
  virtual ~BenchClock() = default;
  virtual double seconds() const = 0;
  virtual void tick() {}
};

class SteadyClock final : public BenchClock {
 public:
  double seconds() const override;
};

/// Advances by a fixed amount per character and never otherwise.
class SimulatedClock final : public BenchClock {
 public:
  explicit SimulatedClock(double seconds_per_character = 1e-6) : step_(seconds_per_character) {}
  double seconds() const override { return static_cast<double>(ticks_) * step_; }
  void tick() override { ++ticks_; }

 private:
  double step_;
  std::uint64_t ticks_ = 0;
};

struct BenchRecord {
  Family family = Family::caterpillar;
  int k = 1;
  double budget = 0;  // seconds
  int max_n_completed = 0;
  BigCount characters_listed = 0;  // size of the largest completed listing
  std::uint64_t seed = 0;
  double max_gap = 0;  // longest wait between two characters, seconds
};

/// Lists every g_k character for n = max(3, k), max(3, k) + 1, ... and stops
/// at the first n whose listing overruns the budget, or after n_cap.
BenchRecord bench_family(Family family, int k, double budget, std::uint64_t seed, BenchClock& clock,
                         int n_cap = 256);

std::string bench_header();
std::string bench_row(const BenchRecord& record);

}  // namespace convexchar
