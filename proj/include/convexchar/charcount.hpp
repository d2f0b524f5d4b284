#pragma once

#include <cstdint>

#include "convexchar/bigcount.hpp"
#include "convexchar/tree.hpp"

namespace convexchar {

/// Number of convex characters of `tree` whose blocks all hold >= k taxa.
///
/// One bottom-up pass from taxon 0. Every edge carries a vector over
/// {cut, open-1, ..., open-k}: either no block crosses the edge, or exactly
/// one does and it already holds min(j, k) taxa below. Children combine by
/// convolution capped at k, so the pass costs O(n k^2) big-integer products.
BigCount count_gk(const Tree& tree, int k);

/// count_gk with a process-wide cache keyed by (canonical Newick, k).
/// Safe to call concurrently; concurrent misses may both compute.
BigCount count_gk_cached(const Tree& tree, int k);
void clear_count_cache();

/// Fibonacci numbers with F(0) = 0, F(1) = F(2) = 1.
BigCount fibonacci(int index);

/// g_1 of any n-taxon tree: F(2n - 1).
BigCount g1_closed(int n);
/// g_2 of any n-taxon tree: F(n - 1).
BigCount g2_closed(int n);

/// g_k of the n-taxon caterpillar through g(n) = g(n-1) + g(n-k), seeded by
/// 0 for n < k and 1 for k <= n < 2k. k == 1 falls back to g1_closed.
BigCount gk_caterpillar(int n, int k);

/// g_k of any fully k-loaded tree on n >= k taxa: g2_closed(ceil(n / (k-1))).
BigCount gk_fully_loaded(int n, int k);

struct GrowthRate {
  int k = 1;
  double alpha = 0;     // maximum (caterpillar) growth rate
  double residual = 0;  // |alpha^k - alpha^(k-1) - 1|
  double min_rate = 0;  // minimum (fully loaded) growth rate
};

/// Growth rates of the g_k maximum and minimum. For k >= 2 alpha is the root
/// of x^k - x^(k-1) - 1 in (1, 2], found by bisection; k == 1 reports phi^2
/// for both rates.
GrowthRate growth_rate(int k);

/// Rounds half up to three decimals and formats as "d.ddd".
std::string format_rate(double rate);

/// Constant c such that g_3(Cat_n) = floor(c * alpha_3^n + 1/2): the real
/// root of 31x^3 - 31x^2 + 9x - 1 divided by alpha_3^3.
double g3_caterpillar_constant();

/// The floating-point closed form floor(c * alpha_3^n + 1/2). Long double;
/// trusted while the value stays well inside 2^63.
std::uint64_t g3_caterpillar_closed(int n);

/// Checks g_k(T) = g_k(T \ A) + g_k(T \ {x}) for a side A of size k, with x
/// the smallest taxon of A. When `side` is empty any size-k side is used.
/// Throws std::invalid_argument when the tree has no such split.
bool decrease_recurrence_check(const Tree& tree, int k, const TaxonSet& side = {});

}  // namespace convexchar
