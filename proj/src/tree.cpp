#include "convexchar/tree.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <unordered_set>

#include "convexchar/error.hpp"
#include "convexchar/newick.hpp"

namespace convexchar {

// ---------------------------------------------------------------- Tree

std::optional<TaxonId> Tree::find_taxon(std::string_view label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == labels_.end() || *it != label) return std::nullopt;
  return static_cast<TaxonId>(it - labels_.begin());
}

TaxonId Tree::taxon(std::string_view label) const {
  auto id = find_taxon(label);
  if (!id) throw std::invalid_argument("unknown taxon '" + std::string(label) + "'");
  return *id;
}

TaxonSet Tree::taxa_of(const std::vector<std::string>& labels) const {
  TaxonSet out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(taxon(l));
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw std::invalid_argument("taxon listed twice");
  return out;
}

std::vector<std::string> Tree::labels_of(const TaxonSet& taxa) const {
  std::vector<std::string> out;
  out.reserve(taxa.size());
  for (TaxonId t : taxa) out.push_back(label(t));
  return out;
}

TaxonSet Tree::all_taxa() const {
  TaxonSet out(labels_.size());
  std::iota(out.begin(), out.end(), 0);
  return out;
}

std::vector<std::pair<VertexId, VertexId>> Tree::edges() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  out.reserve(num_edges() > 0 ? num_edges() : 0);
  for (VertexId v = 0; v < num_vertices(); ++v)
    for (VertexId w : neighbors(v))
      if (v < w) out.emplace_back(v, w);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- TreeGraph

TreeGraph TreeGraph::from_tree(const Tree& tree) {
  TreeGraph g;
  for (VertexId v = 0; v < tree.num_vertices(); ++v) {
    if (tree.is_leaf(v))
      g.add_leaf(tree.label(v));
    else
      g.add_vertex();
  }
  for (auto [u, v] : tree.edges()) g.add_edge(u, v);
  return g;
}

void TreeGraph::check(VertexId v) const {
  if (v < 0 || v >= num_vertices() || !alive_[v])
    throw std::invalid_argument("TreeGraph: no such vertex " + std::to_string(v));
}

VertexId TreeGraph::add_vertex() {
  adjacency_.emplace_back();
  labels_.emplace_back();
  alive_.push_back(true);
  return num_vertices() - 1;
}

VertexId TreeGraph::add_leaf(std::string label) {
  if (label.empty()) throw ParseError("empty taxon label");
  VertexId v = add_vertex();
  labels_[v] = std::move(label);
  return v;
}

void TreeGraph::add_edge(VertexId a, VertexId b) {
  check(a);
  check(b);
  if (a == b) throw std::invalid_argument("TreeGraph: self loop");
  adjacency_[a].push_back(b);
  adjacency_[b].push_back(a);
}

void TreeGraph::remove_edge(VertexId a, VertexId b) {
  check(a);
  check(b);
  auto drop = [](std::vector<VertexId>& list, VertexId x) {
    auto it = std::find(list.begin(), list.end(), x);
    if (it == list.end()) throw std::invalid_argument("TreeGraph: no such edge");
    list.erase(it);
  };
  drop(adjacency_[a], b);
  drop(adjacency_[b], a);
}

VertexId TreeGraph::subdivide(VertexId a, VertexId b) {
  remove_edge(a, b);
  VertexId mid = add_vertex();
  add_edge(a, mid);
  add_edge(mid, b);
  return mid;
}

void TreeGraph::remove_vertex(VertexId v) {
  check(v);
  for (VertexId w : adjacency_[v]) {
    auto& list = adjacency_[w];
    list.erase(std::find(list.begin(), list.end(), v));
  }
  adjacency_[v].clear();
  alive_[v] = false;
}

void TreeGraph::prune_unlabeled_leaves() {
  std::vector<VertexId> work;
  for (VertexId v = 0; v < num_vertices(); ++v)
    if (alive_[v] && labels_[v].empty() && adjacency_[v].size() <= 1) work.push_back(v);
  while (!work.empty()) {
    VertexId v = work.back();
    work.pop_back();
    if (!alive_[v]) continue;
    std::vector<VertexId> nbrs = adjacency_[v];
    remove_vertex(v);
    for (VertexId w : nbrs)
      if (labels_[w].empty() && adjacency_[w].size() <= 1) work.push_back(w);
  }
}

Tree TreeGraph::build() const {
  std::vector<VertexId> vertices;
  std::vector<VertexId> leaves;
  std::size_t degree_sum = 0;
  for (VertexId v = 0; v < num_vertices(); ++v) {
    if (!alive_[v]) continue;
    vertices.push_back(v);
    degree_sum += adjacency_[v].size();
    if (!labels_[v].empty()) leaves.push_back(v);
  }
  if (leaves.empty()) throw ParseError("tree has no taxa");

  {
    std::unordered_set<std::string_view> seen;
    for (VertexId v : leaves)
      if (!seen.insert(labels_[v]).second) throw ParseError("duplicate taxon label '" + labels_[v] + "'");
  }
  for (VertexId v : leaves)
    if (adjacency_[v].size() > 1)
      throw ParseError("taxon '" + labels_[v] + "' labels an internal vertex");

  // Connected and acyclic: |E| = |V| - 1 and everything reachable.
  if (degree_sum / 2 + 1 != vertices.size()) throw ParseError("graph is not a tree");
  {
    std::vector<bool> seen(num_vertices(), false);
    std::vector<VertexId> stack{vertices.front()};
    seen[vertices.front()] = true;
    std::size_t reached = 0;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      ++reached;
      for (VertexId w : adjacency_[v])
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
    if (reached != vertices.size()) throw ParseError("graph is not connected");
  }

  // Suppress unlabeled degree-2 vertices on a scratch copy.
  std::vector<std::vector<VertexId>> adj = adjacency_;
  std::vector<bool> live = alive_;
  for (VertexId v : vertices) {
    if (!labels_[v].empty()) continue;
    std::size_t d = adj[v].size();
    if (d <= 1) throw ParseError("unlabeled leaf vertex");
    if (d > 3)
      throw ParseError("vertex of degree " + std::to_string(d) + "; only binary trees are supported");
    if (d == 2) {
      VertexId x = adj[v][0], y = adj[v][1];
      std::replace(adj[x].begin(), adj[x].end(), v, y);
      std::replace(adj[y].begin(), adj[y].end(), v, x);
      adj[v].clear();
      live[v] = false;
    }
  }

  // Intern taxa in label order, then number internal vertices breadth first
  // from taxon 0.
  std::sort(leaves.begin(), leaves.end(),
            [&](VertexId a, VertexId b) { return labels_[a] < labels_[b]; });
  const int n = static_cast<int>(leaves.size());
  std::vector<VertexId> new_id(num_vertices(), -1);
  for (int i = 0; i < n; ++i) new_id[leaves[i]] = i;
  int next = n;
  {
    std::queue<VertexId> queue;
    queue.push(leaves[0]);
    std::vector<bool> seen(num_vertices(), false);
    seen[leaves[0]] = true;
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop();
      if (new_id[v] < 0) new_id[v] = next++;
      for (VertexId w : adj[v])
        if (!seen[w]) {
          seen[w] = true;
          queue.push(w);
        }
    }
  }

  Tree tree;
  tree.labels_.resize(n);
  for (int i = 0; i < n; ++i) tree.labels_[i] = labels_[leaves[i]];
  tree.adjacency_.assign(next, {-1, -1, -1});
  tree.degree_.assign(next, 0);
  for (VertexId v = 0; v < num_vertices(); ++v) {
    if (!live[v] || new_id[v] < 0) continue;
    VertexId nv = new_id[v];
    std::vector<VertexId> nbrs;
    for (VertexId w : adj[v]) nbrs.push_back(new_id[w]);
    std::sort(nbrs.begin(), nbrs.end());
    for (std::size_t i = 0; i < nbrs.size(); ++i) tree.adjacency_[nv][i] = nbrs[i];
    tree.degree_[nv] = static_cast<std::uint8_t>(nbrs.size());
  }
  if (n >= 3 && next != 2 * n - 2) throw ParseError("internal error: vertex count mismatch");
  return tree;
}

// ---------------------------------------------------------------- queries

Rooting root_at_leaf(const Tree& tree, TaxonId root) {
  const int nv = tree.num_vertices();
  if (root < 0 || root >= tree.num_taxa()) throw std::invalid_argument("root_at_leaf: bad taxon");
  Rooting r;
  r.root = root;
  r.parent.assign(nv, -1);
  r.children.assign(nv, {-1, -1});
  r.size.assign(nv, 0);
  r.min_taxon.assign(nv, tree.num_taxa());
  if (tree.num_taxa() == 1) {
    r.size[root] = 1;
    r.min_taxon[root] = root;
    return r;
  }
  r.top = tree.neighbors(root)[0];
  r.parent[r.top] = root;

  // Iterative DFS for a postorder, then fill sizes bottom up.
  std::vector<VertexId> post;
  post.reserve(nv);
  std::vector<VertexId> stack{r.top};
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    post.push_back(v);
    int c = 0;
    for (VertexId w : tree.neighbors(v)) {
      if (w == r.parent[v]) continue;
      r.parent[w] = v;
      r.children[v][c++] = w;
      stack.push_back(w);
    }
  }
  for (auto it = post.rbegin(); it != post.rend(); ++it) {
    VertexId v = *it;
    if (tree.is_leaf(v)) {
      r.size[v] = 1;
      r.min_taxon[v] = v;
      continue;
    }
    auto& ch = r.children[v];
    if (r.min_taxon[ch[1]] < r.min_taxon[ch[0]]) std::swap(ch[0], ch[1]);
    r.size[v] = r.size[ch[0]] + r.size[ch[1]];
    r.min_taxon[v] = r.min_taxon[ch[0]];
  }
  r.size[root] = tree.num_taxa();
  r.min_taxon[root] = std::min(root, r.min_taxon[r.top]);

  r.preorder.reserve(nv - 1);
  stack.assign(1, r.top);
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    r.preorder.push_back(v);
    if (!tree.is_leaf(v)) {
      stack.push_back(r.children[v][1]);
      stack.push_back(r.children[v][0]);
    }
  }
  return r;
}

TaxonSet side_taxa(const Tree& tree, VertexId from, VertexId to) {
  TaxonSet out;
  std::vector<std::pair<VertexId, VertexId>> stack{{to, from}};
  while (!stack.empty()) {
    auto [v, p] = stack.back();
    stack.pop_back();
    if (tree.is_leaf(v)) out.push_back(v);
    for (VertexId w : tree.neighbors(v))
      if (w != p) stack.emplace_back(w, v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

TaxonSet complement(const TaxonSet& part, int n) {
  TaxonSet out;
  out.reserve(n - part.size());
  auto it = part.begin();
  for (TaxonId t = 0; t < n; ++t) {
    if (it != part.end() && *it == t)
      ++it;
    else
      out.push_back(t);
  }
  return out;
}

// Taxa below every vertex of the rooting, produced bottom up.
std::vector<TaxonSet> taxa_below(const Tree& tree, const Rooting& r) {
  std::vector<TaxonSet> below(tree.num_vertices());
  for (auto it = r.preorder.rbegin(); it != r.preorder.rend(); ++it) {
    VertexId v = *it;
    if (tree.is_leaf(v)) {
      below[v] = {v};
      continue;
    }
    const auto& a = below[r.children[v][0]];
    const auto& b = below[r.children[v][1]];
    below[v].reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(below[v]));
  }
  return below;
}

}  // namespace

std::vector<Split> splits(const Tree& tree) {
  std::vector<Split> out;
  const int n = tree.num_taxa();
  if (n < 2) return out;
  Rooting r = root_at_leaf(tree, 0);
  auto below = taxa_below(tree, r);
  for (VertexId v : r.preorder) {
    Split s;
    s.side_b = below[v];
    s.side_a = complement(s.side_b, n);
    s.a_end = r.parent[v];
    s.b_end = v;
    out.push_back(std::move(s));
  }
  return out;
}

void check_taxon_set(const Tree& tree, const TaxonSet& taxa) {
  for (std::size_t i = 0; i < taxa.size(); ++i) {
    if (taxa[i] < 0 || taxa[i] >= tree.num_taxa()) throw std::invalid_argument("taxon id out of range");
    if (i > 0 && taxa[i - 1] >= taxa[i]) throw std::invalid_argument("taxon set must be sorted and unique");
  }
}

std::optional<Split> find_split(const Tree& tree, const TaxonSet& side_b) {
  check_taxon_set(tree, side_b);
  const int n = tree.num_taxa();
  if (side_b.empty() || static_cast<int>(side_b.size()) >= n) return std::nullopt;
  std::vector<bool> in_b(n, false);
  for (TaxonId t : side_b) in_b[t] = true;
  Rooting r = root_at_leaf(tree, 0);
  // Count members of side_b below each vertex; the edge we want has either
  // exactly side_b below it, or exactly the complement below it.
  std::vector<int> count(tree.num_vertices(), 0);
  const int want = static_cast<int>(side_b.size());
  for (auto it = r.preorder.rbegin(); it != r.preorder.rend(); ++it) {
    VertexId v = *it;
    count[v] = tree.is_leaf(v) ? (in_b[v] ? 1 : 0) : count[r.children[v][0]] + count[r.children[v][1]];
    bool b_below = count[v] == want && r.size[v] == want;
    bool b_above = count[v] == 0 && r.size[v] == n - want;
    if (b_below || b_above) {
      Split s;
      s.side_b = side_b;
      s.side_a = complement(side_b, n);
      s.a_end = b_below ? r.parent[v] : v;
      s.b_end = b_below ? v : r.parent[v];
      return s;
    }
  }
  return std::nullopt;
}

Split find_bounded_split(const Tree& tree, int k) {
  const int n = tree.num_taxa();
  if (k < 2) throw std::invalid_argument("find_bounded_split: k must be at least 2");
  if (n <= k) throw std::invalid_argument("find_bounded_split: needs more than k taxa");
  Rooting r = root_at_leaf(tree, 0);
  VertexId v = r.top;
  while (!tree.is_leaf(v)) {
    auto [c0, c1] = r.children[v];
    if (r.size[c0] >= k)
      v = c0;
    else if (r.size[c1] >= k)
      v = c1;
    else
      break;
  }
  Split s;
  s.b_end = v;
  s.a_end = r.parent[v];
  s.side_b = side_taxa(tree, s.a_end, s.b_end);
  s.side_a = complement(s.side_b, n);
  return s;
}

std::vector<std::pair<TaxonId, TaxonId>> cherries(const Tree& tree) {
  std::vector<std::pair<TaxonId, TaxonId>> out;
  if (tree.num_taxa() == 2) {
    out.emplace_back(0, 1);
    return out;
  }
  for (VertexId v = tree.num_taxa(); v < tree.num_vertices(); ++v) {
    std::vector<TaxonId> leaves;
    for (VertexId w : tree.neighbors(v))
      if (tree.is_leaf(w)) leaves.push_back(w);
    for (std::size_t i = 0; i < leaves.size(); ++i)
      for (std::size_t j = i + 1; j < leaves.size(); ++j) out.emplace_back(leaves[i], leaves[j]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Tripartition> tripartitions(const Tree& tree) {
  std::vector<Tripartition> out;
  const int n = tree.num_taxa();
  if (n < 3) return out;
  Rooting r = root_at_leaf(tree, 0);
  auto below = taxa_below(tree, r);
  for (VertexId v : r.preorder) {
    if (tree.is_leaf(v)) continue;
    std::array<TaxonSet, 3> parts{below[r.children[v][0]], below[r.children[v][1]],
                                  complement(below[v], n)};
    std::sort(parts.begin(), parts.end(), [](const TaxonSet& a, const TaxonSet& b) { return a[0] < b[0]; });
    out.push_back({std::move(parts[0]), std::move(parts[1]), std::move(parts[2]), v});
  }
  return out;
}

Tree restrict_to(const Tree& tree, const TaxonSet& subset) {
  if (subset.empty()) throw std::invalid_argument("restrict: empty taxon subset");
  check_taxon_set(tree, subset);
  if (static_cast<int>(subset.size()) == tree.num_taxa()) return tree;

  std::vector<bool> keep_leaf(tree.num_taxa(), false);
  for (TaxonId t : subset) keep_leaf[t] = true;
  Rooting r = root_at_leaf(tree, subset.front());
  std::vector<int> count(tree.num_vertices(), 0);
  for (auto it = r.preorder.rbegin(); it != r.preorder.rend(); ++it) {
    VertexId v = *it;
    count[v] = tree.is_leaf(v) ? (keep_leaf[v] ? 1 : 0) : count[r.children[v][0]] + count[r.children[v][1]];
  }

  TreeGraph g;
  std::vector<VertexId> map(tree.num_vertices(), -1);
  map[r.root] = g.add_leaf(tree.label(r.root));
  for (VertexId v : r.preorder) {
    if (count[v] == 0) continue;
    map[v] = tree.is_leaf(v) ? g.add_leaf(tree.label(v)) : g.add_vertex();
    g.add_edge(map[r.parent[v]], map[v]);
  }
  return g.build();
}

Tree restrict_to(const Tree& tree, const std::vector<std::string>& labels) {
  return restrict_to(tree, tree.taxa_of(labels));
}

Tree delete_taxa(const Tree& tree, const TaxonSet& subset) {
  check_taxon_set(tree, subset);
  if (static_cast<int>(subset.size()) >= tree.num_taxa())
    throw std::invalid_argument("delete_taxa: cannot delete every taxon");
  if (subset.empty()) return tree;
  return restrict_to(tree, complement(subset, tree.num_taxa()));
}

bool same_topology(const Tree& a, const Tree& b) { return write_newick(a) == write_newick(b); }

}  // namespace convexchar
