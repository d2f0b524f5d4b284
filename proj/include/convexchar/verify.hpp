#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "convexchar/tree.hpp"

namespace convexchar {

struct VerifyOptions {
  int nmax = 9;  // largest n for brute-force comparisons; at most 14
  int kmax = 4;
  int samples = 200;  // random trees per n
  std::uint64_t seed = 1;
};

struct CheckResult {
  std::string name;
  bool passed = true;
  long cases = 0;
  std::string detail;  // first counterexample
};

/// Runs every property check. Throws GuardError when nmax exceeds the
/// brute-force limit.
std::vector<CheckResult> run_verify(const VerifyOptions& options);
void print_report(std::ostream& out, const std::vector<CheckResult>& results);

/// Assigns the parts of `tp` to A, B, C with |B| = k-1, 1 <= |C| <= k-1 and
/// |A| > 2(k-1), if possible.
std::optional<Tripartition> loaded_tripartition(const Tripartition& tp, int k);

/// g_k(T) = g_k(T|AB) g_k(T|C) + g_k(T|A) g_k(T|BC) + g_k(T|AB) g_k(T|BC).
bool tripartition_identity_holds(const Tree& tree, int k, const Tripartition& abc);

/// Gives every taxon outside a cherry a new sibling, labelled with a '~'
/// suffix, which yields a fully 3-loaded tree on 2n - 2t taxa.
Tree double_lone_taxa(const Tree& tree);

}  // namespace convexchar
