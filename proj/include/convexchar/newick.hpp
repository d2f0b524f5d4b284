#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "convexchar/tree.hpp"

namespace convexchar {

/// Parses one semicolon-terminated Newick expression. Branch lengths,
/// internal node labels and [comments] are discarded; a degree-2 root is
/// suppressed. Throws ParseError on malformed or non-binary input.
Tree parse_newick(std::string_view text);

/// Canonical Newick: rooted on the edge at the smallest taxon, children
/// ordered by their smallest label. Isomorphic trees give identical text.
std::string write_newick(const Tree& tree);

struct NumberedTree {
  int line = 0;  // 1-based line in the input
  Tree tree;
};

/// Reads one tree per non-blank line. Parse errors carry the line number.
std::vector<NumberedTree> read_newick_lines(std::istream& in);

}  // namespace convexchar
