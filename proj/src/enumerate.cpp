#include "convexchar/enumerate.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "convexchar/error.hpp"

namespace convexchar {

// ---------------------------------------------------------------- Character

Character::Character(std::vector<TaxonSet> blocks) : blocks_(std::move(blocks)) {
  for (auto& b : blocks_) {
    if (b.empty()) throw std::invalid_argument("character has an empty block");
    std::sort(b.begin(), b.end());
  }
  std::sort(blocks_.begin(), blocks_.end(),
            [](const TaxonSet& a, const TaxonSet& b) { return a.front() < b.front(); });
}

int Character::num_taxa() const noexcept {
  int n = 0;
  for (const auto& b : blocks_) n += static_cast<int>(b.size());
  return n;
}

int Character::min_block_size() const noexcept {
  int m = 0;
  for (const auto& b : blocks_)
    if (m == 0 || static_cast<int>(b.size()) < m) m = static_cast<int>(b.size());
  return m;
}

std::vector<int> Character::block_of() const {
  std::vector<int> out(num_taxa(), -1);
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    for (TaxonId t : blocks_[i]) {
      if (t < 0 || t >= static_cast<int>(out.size()) || out[t] != -1)
        throw std::invalid_argument("character is not a partition of 0..n-1");
      out[t] = static_cast<int>(i);
    }
  return out;
}

void check_partition(const Tree& tree, const Character& f) {
  if (f.num_taxa() != tree.num_taxa()) throw std::invalid_argument("character does not cover the taxa of the tree");
  f.block_of();
}

// ---------------------------------------------------------------- text / JSON

std::string format_character(const Tree& tree, const Character& f) {
  std::string out;
  for (std::size_t i = 0; i < f.blocks().size(); ++i) {
    if (i) out += '|';
    const auto& block = f.blocks()[i];
    for (std::size_t j = 0; j < block.size(); ++j) {
      if (j) out += ',';
      out += tree.label(block[j]);
    }
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_on(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto at = s.find(sep, start);
    parts.push_back(trim(s.substr(start, at - start)));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return parts;
}

TaxonId lookup(const Tree& tree, std::string_view label) {
  auto id = tree.find_taxon(label);
  if (!id) throw ParseError("unknown taxon '" + std::string(label) + "' in character");
  return *id;
}

Character finish(const Tree& tree, std::vector<TaxonSet> blocks) {
  Character f(std::move(blocks));
  try {
    check_partition(tree, f);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return f;
}

}  // namespace

Character parse_character(const Tree& tree, std::string_view text) {
  const bool compact_ok = std::all_of(tree.labels().begin(), tree.labels().end(),
                                      [](const std::string& l) { return l.size() == 1; });
  std::vector<TaxonSet> blocks;
  for (std::string_view part : split_on(trim(text), '|')) {
    if (part.empty()) throw ParseError("empty block in character '" + std::string(text) + "'");
    TaxonSet block;
    if (part.find(',') != std::string_view::npos) {
      for (std::string_view label : split_on(part, ',')) {
        if (label.empty()) throw ParseError("empty label in character");
        block.push_back(lookup(tree, label));
      }
    } else if (compact_ok) {
      for (char c : part) block.push_back(lookup(tree, std::string_view(&c, 1)));
    } else {
      block.push_back(lookup(tree, part));
    }
    blocks.push_back(std::move(block));
  }
  return finish(tree, std::move(blocks));
}

nlohmann::json character_to_json(const Tree& tree, const Character& f) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& block : f.blocks()) out.push_back(tree.labels_of(block));
  return out;
}

Character character_from_json(const Tree& tree, const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("character JSON must be an array of arrays");
  std::vector<TaxonSet> blocks;
  for (const auto& block : j) {
    if (!block.is_array() || block.empty()) throw ParseError("character block must be a non-empty array");
    TaxonSet b;
    for (const auto& label : block) {
      if (!label.is_string()) throw ParseError("taxon labels must be strings");
      b.push_back(lookup(tree, label.get<std::string>()));
    }
    blocks.push_back(std::move(b));
  }
  return finish(tree, std::move(blocks));
}

// ---------------------------------------------------------------- convexity

namespace {

struct OpenBlock {
  int block = -1;  // -1: no block crosses the edge
  int count = 0;   // taxa of `block` below the edge
};

// Bottom-up pass shared by is_convex and edge_signature. Fills `open` for
// every non-root vertex; returns false on the first vertex shared by two
// blocks.
bool open_blocks(const Tree& tree, const Rooting& r, const std::vector<int>& block_of,
                 const std::vector<int>& block_size, std::vector<OpenBlock>& open) {
  open.assign(tree.num_vertices(), {});
  for (auto it = r.preorder.rbegin(); it != r.preorder.rend(); ++it) {
    const VertexId v = *it;
    if (tree.is_leaf(v)) {
      const int b = block_of[v];
      if (block_size[b] > 1) open[v] = {b, 1};
      continue;
    }
    const OpenBlock& x = open[r.children[v][0]];
    const OpenBlock& y = open[r.children[v][1]];
    if (x.block >= 0 && y.block >= 0) {
      if (x.block != y.block) return false;
      const int count = x.count + y.count;
      if (count < block_size[x.block]) open[v] = {x.block, count};
    } else if (x.block >= 0) {
      open[v] = x;
    } else if (y.block >= 0) {
      open[v] = y;
    }
  }
  const OpenBlock& top = open[r.top];
  if (top.block >= 0)
    return top.block == block_of[r.root] && top.count + 1 == block_size[top.block];
  return true;
}

std::vector<int> sizes_of(const Character& f) {
  std::vector<int> sizes;
  for (const auto& b : f.blocks()) sizes.push_back(static_cast<int>(b.size()));
  return sizes;
}

}  // namespace

bool is_convex(const Tree& tree, const Character& f) {
  check_partition(tree, f);
  if (tree.num_taxa() == 1) return true;
  const Rooting r = root_at_leaf(tree, 0);
  std::vector<OpenBlock> open;
  return open_blocks(tree, r, f.block_of(), sizes_of(f), open);
}

int parsimony_score(const Tree& tree, const Character& f) {
  check_partition(tree, f);
  if (tree.num_taxa() == 1) return 0;
  const std::vector<int> block_of = f.block_of();
  const std::size_t words = (f.blocks().size() + 63) / 64;
  const Rooting r = root_at_leaf(tree, 0);

  std::vector<std::vector<std::uint64_t>> sets(tree.num_vertices());
  int score = 0;
  for (auto it = r.preorder.rbegin(); it != r.preorder.rend(); ++it) {
    const VertexId v = *it;
    auto& s = sets[v];
    s.assign(words, 0);
    if (tree.is_leaf(v)) {
      s[block_of[v] / 64] |= std::uint64_t{1} << (block_of[v] % 64);
      continue;
    }
    const auto& a = sets[r.children[v][0]];
    const auto& b = sets[r.children[v][1]];
    bool any = false;
    for (std::size_t w = 0; w < words; ++w) {
      s[w] = a[w] & b[w];
      any = any || s[w] != 0;
    }
    if (!any) {
      for (std::size_t w = 0; w < words; ++w) s[w] = a[w] | b[w];
      ++score;
    }
  }
  const int root_state = block_of[r.root];
  if (!((sets[r.top][root_state / 64] >> (root_state % 64)) & 1)) ++score;
  return score;
}

std::vector<std::uint16_t> edge_signature(const Tree& tree, const Character& f, int k) {
  check_partition(tree, f);
  std::vector<std::uint16_t> word;
  if (tree.num_taxa() == 1) return word;
  const Rooting r = root_at_leaf(tree, 0);
  std::vector<OpenBlock> open;
  if (!open_blocks(tree, r, f.block_of(), sizes_of(f), open))
    throw std::invalid_argument("edge_signature: character is not convex");
  auto state = [&](VertexId v) -> std::uint16_t {
    return open[v].block < 0 ? 0 : static_cast<std::uint16_t>(std::min(open[v].count, k));
  };
  word.push_back(state(r.top));
  for (VertexId v : r.preorder) {
    if (tree.is_leaf(v)) continue;
    word.push_back(state(r.children[v][0]));
    word.push_back(state(r.children[v][1]));
  }
  return word;
}

// ---------------------------------------------------------------- stream

CharacterStream::CharacterStream(Tree tree, int k) : tree_(std::move(tree)), k_(k) {
  if (k < 1) throw std::invalid_argument("list_gk: k must be positive");
  const int n = tree_.num_taxa();
  if (n < k_) {
    done_ = true;
    return;
  }
  if (n == 1) return;  // the single character {x}

  rooting_ = root_at_leaf(tree_, 0);
  const int width = k_ + 1;
  feasible_.assign(tree_.num_vertices(), std::vector<bool>(width, false));
  for (auto it = rooting_.preorder.rbegin(); it != rooting_.preorder.rend(); ++it) {
    const VertexId v = *it;
    auto& out = feasible_[v];
    if (tree_.is_leaf(v)) {
      out[1] = true;
      out[0] = k_ == 1;
      continue;
    }
    const auto& a = feasible_[rooting_.children[v][0]];
    const auto& b = feasible_[rooting_.children[v][1]];
    out[0] = a[0] && b[0];
    for (int s = 1; s <= k_; ++s) out[s] = (a[s] && b[0]) || (a[0] && b[s]);
    for (int x = 1; x <= k_; ++x) {
      if (!a[x]) continue;
      for (int y = 1; y <= k_; ++y) {
        if (!b[y]) continue;
        out[std::min(x + y, k_)] = true;
        if (x + y >= k_) out[0] = true;
      }
    }
    internal_.push_back(v);
  }
  std::reverse(internal_.begin(), internal_.end());

  for (int s = 0; s <= k_; ++s) {
    if (!feasible_[rooting_.top][s]) continue;
    const bool ok = s == 0 ? k_ == 1 : std::min(s + 1, k_) == k_;
    if (ok) root_choices_.push_back(static_cast<std::uint16_t>(s));
  }
  combo_cache_.resize(static_cast<std::size_t>(tree_.num_vertices()) * width);
  combo_ready_.assign(combo_cache_.size(), false);
  state_.assign(tree_.num_vertices(), 0);
  choice_.assign(internal_.size(), 0);
}

const std::vector<CharacterStream::Combo>& CharacterStream::combos(VertexId v, int state) {
  const std::size_t slot = static_cast<std::size_t>(v) * (k_ + 1) + state;
  auto& list = combo_cache_[slot];
  if (combo_ready_[slot]) return list;
  combo_ready_[slot] = true;
  const auto& a = feasible_[rooting_.children[v][0]];
  const auto& b = feasible_[rooting_.children[v][1]];
  for (int x = 0; x <= k_; ++x) {
    if (!a[x]) continue;
    for (int y = 0; y <= k_; ++y) {
      if (!b[y]) continue;
      bool ok;
      if (state == 0)
        ok = (x == 0 && y == 0) || (x > 0 && y > 0 && x + y >= k_);
      else if (x == 0 || y == 0)
        ok = x + y == state;
      else
        ok = std::min(x + y, k_) == state;
      if (ok) list.emplace_back(static_cast<std::uint16_t>(x), static_cast<std::uint16_t>(y));
    }
  }
  return list;
}

void CharacterStream::apply(std::size_t position) {
  const VertexId v = internal_[position];
  const Combo& c = combos(v, state_[v])[choice_[position]];
  state_[rooting_.children[v][0]] = c.first;
  state_[rooting_.children[v][1]] = c.second;
}

void CharacterStream::fill_from(std::size_t position) {
  for (std::size_t i = position; i < internal_.size(); ++i) {
    choice_[i] = 0;
    apply(i);
  }
}

Character CharacterStream::materialize() {
  word_.clear();
  word_.push_back(state_[rooting_.top]);
  std::vector<int> block(tree_.num_vertices(), -1);
  int blocks = 0;
  block[rooting_.root] = blocks++;
  const VertexId top = rooting_.top;
  block[top] = state_[top] > 0 ? block[rooting_.root] : (tree_.is_leaf(top) ? blocks++ : -1);
  for (VertexId v : internal_) {
    const auto [c0, c1] = rooting_.children[v];
    word_.push_back(state_[c0]);
    word_.push_back(state_[c1]);
    if (block[v] < 0 && state_[c0] > 0 && state_[c1] > 0) block[v] = blocks++;
    for (VertexId c : {c0, c1}) {
      if (state_[c] > 0)
        block[c] = block[v];
      else
        block[c] = tree_.is_leaf(c) ? blocks++ : -1;
    }
  }
  std::vector<TaxonSet> parts(blocks);
  for (TaxonId t = 0; t < tree_.num_taxa(); ++t) parts[block[t]].push_back(t);
  return Character(std::move(parts));
}

std::optional<Character> CharacterStream::next() {
  if (done_) return std::nullopt;
  if (tree_.num_taxa() == 1) {
    done_ = true;
    word_.clear();
    return Character(std::vector<TaxonSet>{TaxonSet{0}});
  }
  if (!started_) {
    started_ = true;
    if (root_choices_.empty()) {
      done_ = true;
      return std::nullopt;
    }
    state_[rooting_.top] = root_choices_[0];
    fill_from(0);
    return materialize();
  }
  for (std::size_t i = internal_.size(); i-- > 0;) {
    const VertexId v = internal_[i];
    if (++choice_[i] < combos(v, state_[v]).size()) {
      apply(i);
      fill_from(i + 1);
      return materialize();
    }
  }
  if (++root_index_ < root_choices_.size()) {
    state_[rooting_.top] = root_choices_[root_index_];
    fill_from(0);
    return materialize();
  }
  done_ = true;
  return std::nullopt;
}

std::vector<Character> list_gk(const Tree& tree, int k) {
  std::vector<Character> out;
  CharacterStream stream(tree, k);
  while (auto f = stream.next()) out.push_back(std::move(*f));
  return out;
}

}  // namespace convexchar
