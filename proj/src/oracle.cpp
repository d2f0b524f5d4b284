#include "convexchar/oracle.hpp"

#include <stdexcept>
#include <string>

#include "convexchar/error.hpp"

namespace convexchar::oracle {

namespace {

void guard(std::size_t n) {
  if (static_cast<int>(n) > kMaxTaxa)
    throw GuardError("brute force refuses " + std::to_string(n) + " taxa (limit " + std::to_string(kMaxTaxa) + ")");
}

}  // namespace

PartitionCursor::PartitionCursor(std::vector<TaxonId> taxa, int min_block)
    : taxa_(std::move(taxa)), min_block_(min_block) {
  guard(taxa_.size());
  if (taxa_.empty()) throw std::invalid_argument("all_partitions: no taxa");
  if (min_block_ < 1 || min_block_ > static_cast<int>(taxa_.size()))
    throw std::invalid_argument("all_partitions: min_block must lie in 1..|taxa|");
  rgs_.assign(taxa_.size(), -1);
}

bool PartitionCursor::feasible(int position) const {
  int deficit = 0;
  for (int s : block_size_)
    if (s < min_block_) deficit += min_block_ - s;
  return deficit <= static_cast<int>(taxa_.size()) - (position + 1);
}

bool PartitionCursor::extend(int position) {
  const int n = static_cast<int>(taxa_.size());
  for (int i = position; i < n; ++i) {
    bool placed = false;
    for (int c = 0; c <= blocks_ && !placed; ++c) {
      rgs_[i] = c;
      if (c == blocks_) {
        ++blocks_;
        block_size_.push_back(0);
      }
      ++block_size_[c];
      if (feasible(i)) {
        placed = true;
      } else {
        --block_size_[c];
        if (c == blocks_ - 1 && block_size_[c] == 0) {
          --blocks_;
          block_size_.pop_back();
        }
      }
    }
    if (!placed) return false;
  }
  return true;
}

bool PartitionCursor::advance_from(int position) {
  for (int i = position; i >= 1; --i) {
    int c = rgs_[i];
    --block_size_[c];
    if (c == blocks_ - 1 && block_size_[c] == 0) {
      --blocks_;
      block_size_.pop_back();
    }
    for (int next = c + 1; next <= blocks_; ++next) {
      rgs_[i] = next;
      if (next == blocks_) {
        ++blocks_;
        block_size_.push_back(0);
      }
      ++block_size_[next];
      if (feasible(i) && extend(i + 1)) return true;
      --block_size_[next];
      if (next == blocks_ - 1 && block_size_[next] == 0) {
        --blocks_;
        block_size_.pop_back();
      }
    }
  }
  return false;
}

std::optional<Character> PartitionCursor::next() {
  if (done_) return std::nullopt;
  bool ok;
  if (!started_) {
    started_ = true;
    ok = extend(0);
  } else {
    ok = advance_from(static_cast<int>(taxa_.size()) - 1);
  }
  if (!ok) {
    done_ = true;
    return std::nullopt;
  }
  std::vector<TaxonSet> blocks(blocks_);
  for (std::size_t i = 0; i < taxa_.size(); ++i) blocks[rgs_[i]].push_back(taxa_[i]);
  return Character(std::move(blocks));
}

std::vector<Character> all_partitions(const std::vector<TaxonId>& taxa, int min_block) {
  std::vector<Character> out;
  PartitionCursor cursor(taxa, min_block);
  while (auto f = cursor.next()) out.push_back(std::move(*f));
  return out;
}

bool naive_is_convex(const Tree& tree, const Character& f) {
  check_partition(tree, f);
  const int nv = tree.num_vertices();
  std::vector<int> owner(nv, -1);
  for (std::size_t b = 0; b < f.blocks().size(); ++b) {
    const TaxonSet& block = f.blocks()[b];
    std::vector<bool> member(tree.num_taxa(), false);
    for (TaxonId t : block) member[t] = true;
    // Strip leaves that are not members until none remain.
    std::vector<bool> present(nv, true);
    std::vector<int> degree(nv);
    for (VertexId v = 0; v < nv; ++v) degree[v] = tree.degree(v);
    std::vector<VertexId> strip;
    for (VertexId v = 0; v < nv; ++v)
      if (degree[v] <= 1 && !(tree.is_leaf(v) && member[v])) strip.push_back(v);
    while (!strip.empty()) {
      VertexId v = strip.back();
      strip.pop_back();
      if (!present[v]) continue;
      present[v] = false;
      for (VertexId w : tree.neighbors(v)) {
        if (!present[w]) continue;
        if (--degree[w] <= 1 && !(tree.is_leaf(w) && member[w])) strip.push_back(w);
      }
    }
    for (VertexId v = 0; v < nv; ++v) {
      if (!present[v]) continue;
      if (owner[v] != -1) return false;
      owner[v] = static_cast<int>(b);
    }
  }
  return true;
}

std::vector<Character> brute_list(const Tree& tree, int k) {
  guard(tree.num_taxa());
  std::vector<Character> out;
  if (k > tree.num_taxa()) return out;
  PartitionCursor cursor(tree.all_taxa(), k);
  while (auto f = cursor.next())
    if (naive_is_convex(tree, *f)) out.push_back(std::move(*f));
  return out;
}

BigCount brute_count(const Tree& tree, int k) {
  guard(tree.num_taxa());
  if (k < 1) throw std::invalid_argument("brute_count: k must be positive");
  if (k > tree.num_taxa()) return 0;
  BigCount total = 0;
  PartitionCursor cursor(tree.all_taxa(), k);
  while (auto f = cursor.next())
    if (naive_is_convex(tree, *f)) ++total;
  return total;
}

}  // namespace convexchar::oracle
