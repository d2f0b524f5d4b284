#include "convexchar/newick.hpp"

#include <cctype>

#include "convexchar/error.hpp"

namespace convexchar {

namespace {

bool is_reserved(char c) {
  switch (c) {
    case '(': case ')': case ',': case ':': case ';': case '[': case ']':
      return true;
    default:
      return std::isspace(static_cast<unsigned char>(c)) != 0;
  }
}

class NewickParser {
 public:
  explicit NewickParser(std::string_view text) : text_(text) {}

  Tree parse() {
    skip();
    if (at_end()) throw ParseError("empty Newick string", pos_);
    VertexId root = subtree(0);
    skip();
    if (at_end() || text_[pos_] != ';') throw ParseError("expected ';'", pos_);
    ++pos_;
    skip();
    if (!at_end()) throw ParseError("trailing characters after ';'", pos_);
    (void)root;
    graph_.prune_unlabeled_leaves();
    return graph_.build();
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }

  void skip() {
    while (!at_end()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '[') {
        auto close = text_.find(']', pos_);
        if (close == std::string_view::npos) throw ParseError("unterminated comment", pos_);
        pos_ = close + 1;
      } else {
        break;
      }
    }
  }

  std::string label() {
    std::size_t start = pos_;
    while (!at_end() && !is_reserved(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  void branch_length() {
    skip();
    if (at_end() || text_[pos_] != ':') return;
    ++pos_;
    skip();
    std::size_t start = pos_;
    while (!at_end() && !is_reserved(text_[pos_])) ++pos_;
    if (start == pos_) throw ParseError("missing branch length after ':'", start);
  }

  VertexId subtree(int depth) {
    if (depth > kMaxDepth) throw ParseError("nesting too deep", pos_);
    skip();
    if (at_end()) throw ParseError("unexpected end of input", pos_);
    VertexId v;
    if (text_[pos_] == '(') {
      ++pos_;
      v = graph_.add_vertex();
      while (true) {
        VertexId child = subtree(depth + 1);
        graph_.add_edge(v, child);
        skip();
        if (at_end()) throw ParseError("unbalanced parentheses", pos_);
        if (text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (text_[pos_] == ')') {
          ++pos_;
          break;
        }
        throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
      }
      skip();
      label();  // internal labels are ignored
    } else {
      std::size_t start = pos_;
      std::string name = label();
      if (name.empty()) {
        if (!at_end() && text_[pos_] == ')') throw ParseError("unbalanced parentheses", pos_);
        throw ParseError("empty label", start);
      }
      v = graph_.add_leaf(std::move(name));
    }
    branch_length();
    return v;
  }

  static constexpr int kMaxDepth = 10000;
  std::string_view text_;
  std::size_t pos_ = 0;
  TreeGraph graph_;
};

void render(const Tree& tree, const Rooting& r, VertexId v, std::string& out) {
  if (tree.is_leaf(v)) {
    out += tree.label(v);
    return;
  }
  // Explicit stack: caterpillars are as deep as they are wide.
  struct Frame {
    VertexId v;
    int next;
  };
  std::vector<Frame> stack{{v, 0}};
  out += '(';
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next == 2) {
      out += ')';
      stack.pop_back();
      continue;
    }
    if (f.next == 1) out += ',';
    VertexId c = r.children[f.v][f.next++];
    if (tree.is_leaf(c)) {
      out += tree.label(c);
    } else {
      out += '(';
      stack.push_back({c, 0});
    }
  }
}

}  // namespace

Tree parse_newick(std::string_view text) { return NewickParser(text).parse(); }

std::string write_newick(const Tree& tree) {
  const int n = tree.num_taxa();
  if (n == 1) return tree.label(0) + ";";
  Rooting r = root_at_leaf(tree, 0);
  std::string out = "(" + tree.label(0) + ",";
  render(tree, r, r.top, out);
  out += ");";
  return out;
}

std::vector<NumberedTree> read_newick_lines(std::istream& in) {
  std::vector<NumberedTree> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back({number, parse_newick(line)});
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace convexchar
