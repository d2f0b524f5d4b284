#include "convexchar/extremal.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace convexchar {

namespace {

std::string padded(const std::string& prefix, int value, int width) {
  std::string digits = std::to_string(value);
  return prefix + std::string(width > static_cast<int>(digits.size()) ? width - digits.size() : 0, '0') + digits;
}

void require_distinct(const std::vector<std::string>& labels) {
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) throw std::invalid_argument("duplicate taxon labels");
  if (seen.count("")) throw std::invalid_argument("empty taxon label");
}

// Copies `p` into `g`; returns the vertex to connect to the rest of the tree.
VertexId graft(TreeGraph& g, const Pendant& p) {
  const Tree& t = p.tree;
  std::vector<VertexId> map(t.num_vertices());
  for (VertexId v = 0; v < t.num_vertices(); ++v) map[v] = t.is_leaf(v) ? g.add_leaf(t.label(v)) : g.add_vertex();
  const auto edges = t.edges();
  for (auto [u, v] : edges) g.add_edge(map[u], map[v]);
  if (t.num_taxa() == 1) return map[0];
  const auto [u, v] = edges.at(p.root_edge);
  return g.subdivide(map[u], map[v]);
}

// Index of the edge at taxon `leaf` in tree.edges().
int edge_at_leaf(const Tree& tree, TaxonId leaf) {
  const auto edges = tree.edges();
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].first == leaf || edges[i].second == leaf) return static_cast<int>(i);
  return 0;
}

Pendant caterpillar_pendant(const std::vector<std::string>& labels) {
  Tree t = gen_caterpillar(labels);
  int edge = t.num_taxa() > 1 ? edge_at_leaf(t, t.taxon(labels.front())) : 0;
  return {std::move(t), edge};
}

// Every vertex on the `to` side of edge from-to, `to` included.
std::vector<VertexId> side_vertices(const Tree& tree, VertexId from, VertexId to) {
  std::vector<VertexId> out;
  std::vector<std::pair<VertexId, VertexId>> stack{{to, from}};
  while (!stack.empty()) {
    auto [v, p] = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (VertexId w : tree.neighbors(v))
      if (w != p) stack.emplace_back(w, v);
  }
  return out;
}

// Pendant hanging at `root` away from `attach`, as a tree plus root edge.
Pendant pendant_at(const Tree& tree, VertexId attach, VertexId root) {
  const TaxonSet taxa = side_taxa(tree, attach, root);
  Tree sub = restrict_to(tree, taxa);
  if (taxa.size() == 1) return {std::move(sub), 0};
  std::vector<VertexId> kids;
  for (VertexId w : tree.neighbors(root))
    if (w != attach) kids.push_back(w);
  const TaxonSet first = sub.taxa_of(tree.labels_of(side_taxa(tree, root, kids[0])));
  auto split = find_split(sub, first);
  const auto edges = sub.edges();
  const std::pair<VertexId, VertexId> e{std::min(split->a_end, split->b_end), std::max(split->a_end, split->b_end)};
  const int index = static_cast<int>(std::find(edges.begin(), edges.end(), e) - edges.begin());
  return {std::move(sub), index};
}

}  // namespace

std::vector<std::string> default_labels(int n) {
  std::vector<std::string> out;
  out.reserve(n);
  if (n <= 26) {
    for (int i = 0; i < n; ++i) out.emplace_back(1, static_cast<char>('a' + i));
    return out;
  }
  const int width = std::max<int>(3, static_cast<int>(std::to_string(n).size()));
  for (int i = 1; i <= n; ++i) out.push_back(padded("t", i, width));
  return out;
}

Tree gen_caterpillar(const std::vector<std::string>& labels) {
  const int n = static_cast<int>(labels.size());
  if (n < 1) throw std::invalid_argument("gen_caterpillar: needs at least one taxon");
  require_distinct(labels);
  TreeGraph g;
  std::vector<VertexId> leaves;
  for (const auto& l : labels) leaves.push_back(g.add_leaf(l));
  if (n == 1) return g.build();
  if (n == 2) {
    g.add_edge(leaves[0], leaves[1]);
    return g.build();
  }
  const int spine_len = n - 2;
  std::vector<VertexId> spine;
  for (int i = 0; i < spine_len; ++i) {
    spine.push_back(g.add_vertex());
    if (i > 0) g.add_edge(spine[i - 1], spine[i]);
  }
  for (int i = 0; i < n; ++i) {
    const int at = i == 0 ? 0 : (i == n - 1 ? spine_len - 1 : i - 1);
    g.add_edge(spine[at], leaves[i]);
  }
  return g.build();
}

Tree gen_caterpillar(int n) { return gen_caterpillar(default_labels(n)); }

FullyLoadedSpec default_fully_loaded_spec(int n, int k) { return default_fully_loaded_spec(n, k, default_labels(n)); }

FullyLoadedSpec default_fully_loaded_spec(int n, int k, const std::vector<std::string>& labels) {
  if (k < 2) throw std::invalid_argument("fully loaded trees need k >= 2");
  if (n < k) throw std::invalid_argument("fully loaded trees need n >= k");
  if (static_cast<int>(labels.size()) != n) throw std::invalid_argument("label count does not match n");
  require_distinct(labels);
  const int chunk = k - 1;
  const int leaves = (n + chunk - 1) / chunk;
  const int width = static_cast<int>(std::to_string(leaves).size());
  std::vector<std::string> scaffold_labels;
  for (int i = 1; i <= leaves; ++i) scaffold_labels.push_back(padded("S", i, width));

  FullyLoadedSpec spec{n, k, gen_caterpillar(scaffold_labels), n % chunk, std::nullopt, {}};
  if (spec.residue_size) spec.residue_leaf = scaffold_labels.back();
  int next = 0;
  for (int i = 0; i < leaves; ++i) {
    const int size = (spec.residue_size && i == leaves - 1) ? spec.residue_size : chunk;
    std::vector<std::string> part(labels.begin() + next, labels.begin() + next + size);
    next += size;
    spec.pendants.emplace(scaffold_labels[i], caterpillar_pendant(part));
  }
  return spec;
}

FullyLoadedSpec random_fully_loaded_spec(int n, int k, std::uint64_t seed) {
  FullyLoadedSpec spec = default_fully_loaded_spec(n, k);
  std::mt19937_64 rng(seed);
  auto any_shape = [&](const std::vector<std::string>& labels) {
    return labels.size() >= 3 ? gen_random(labels, rng()) : gen_caterpillar(labels);
  };
  const std::vector<std::string> scaffold_labels = spec.scaffold.labels();
  spec.scaffold = any_shape(scaffold_labels);
  std::vector<std::string> taxa = default_labels(n);
  std::shuffle(taxa.begin(), taxa.end(), rng);
  if (spec.residue_size) spec.residue_leaf = scaffold_labels[rng() % scaffold_labels.size()];
  spec.pendants.clear();
  auto next = taxa.begin();
  for (const auto& leaf : scaffold_labels) {
    const int size = spec.residue_leaf == leaf ? spec.residue_size : k - 1;
    std::vector<std::string> part(next, next + size);
    next += size;
    Tree t = any_shape(part);
    const int edge = t.num_edges() > 0 ? static_cast<int>(rng() % t.num_edges()) : 0;
    spec.pendants.emplace(leaf, Pendant{std::move(t), edge});
  }
  return spec;
}

void check_spec(const FullyLoadedSpec& spec) {
  if (spec.k < 2) throw std::invalid_argument("fully loaded spec: k must be at least 2");
  if (spec.n < spec.k) throw std::invalid_argument("fully loaded spec: n must be at least k");
  const int chunk = spec.k - 1;
  if (spec.scaffold.num_taxa() != (spec.n + chunk - 1) / chunk)
    throw std::invalid_argument("fully loaded spec: scaffold must have ceil(n/(k-1)) taxa");
  if (spec.residue_size != spec.n % chunk) throw std::invalid_argument("fully loaded spec: residue size must be n mod (k-1)");
  if (spec.residue_size != 0) {
    if (!spec.residue_leaf || !spec.scaffold.find_taxon(*spec.residue_leaf))
      throw std::invalid_argument("fully loaded spec: residue leaf must name a scaffold taxon");
  } else if (spec.residue_leaf) {
    throw std::invalid_argument("fully loaded spec: residue leaf given without a residue");
  }
  if (spec.pendants.size() != static_cast<std::size_t>(spec.scaffold.num_taxa()))
    throw std::invalid_argument("fully loaded spec: one pendant per scaffold leaf");
  std::vector<std::string> all;
  for (const auto& leaf : spec.scaffold.labels()) {
    auto it = spec.pendants.find(leaf);
    if (it == spec.pendants.end()) throw std::invalid_argument("fully loaded spec: no pendant for scaffold leaf " + leaf);
    const Pendant& p = it->second;
    const int want = (spec.residue_leaf && *spec.residue_leaf == leaf) ? spec.residue_size : chunk;
    if (p.tree.num_taxa() != want) throw std::invalid_argument("fully loaded spec: pendant " + leaf + " has the wrong size");
    if (p.tree.num_taxa() > 1 && (p.root_edge < 0 || p.root_edge >= p.tree.num_edges()))
      throw std::invalid_argument("fully loaded spec: pendant root edge out of range");
    all.insert(all.end(), p.tree.labels().begin(), p.tree.labels().end());
  }
  require_distinct(all);
}

Tree gen_fully_loaded(int n, int k) { return gen_fully_loaded(default_fully_loaded_spec(n, k)); }

Tree gen_fully_loaded(const FullyLoadedSpec& spec) {
  check_spec(spec);
  const Tree& s = spec.scaffold;
  TreeGraph g;
  std::vector<VertexId> map(s.num_vertices());
  for (VertexId v = 0; v < s.num_vertices(); ++v)
    map[v] = s.is_leaf(v) ? graft(g, spec.pendants.at(s.label(v))) : g.add_vertex();
  for (auto [u, v] : s.edges()) g.add_edge(map[u], map[v]);
  return g.build();
}

std::optional<FullyLoadedSpec> is_fully_loaded(const Tree& tree, int k) {
  const int n = tree.num_taxa();
  if (k < 2 || n < k) return std::nullopt;
  const int chunk = k - 1;
  const int leaves = (n + chunk - 1) / chunk;

  // Maximal pendant subtrees with at most k-1 taxa, as (attach, root) pairs.
  std::vector<std::pair<VertexId, VertexId>> pendants;
  if (leaves == 2) {
    for (const Split& s : splits(tree)) {
      if (static_cast<int>(s.side_b.size()) == chunk || static_cast<int>(s.side_a.size()) == chunk) {
        pendants = {{s.a_end, s.b_end}, {s.b_end, s.a_end}};
        break;
      }
    }
    if (pendants.empty()) return std::nullopt;
  } else {
    const Rooting r = root_at_leaf(tree, 0);
    // far(u, v): taxa on v's side of edge u-v.
    auto far = [&](VertexId u, VertexId v) { return r.parent[v] == u ? r.size[v] : n - r.size[u]; };
    for (VertexId u = 0; u < tree.num_vertices(); ++u) {
      for (VertexId v : tree.neighbors(u)) {
        if (far(u, v) > chunk) continue;
        bool maximal = !tree.is_leaf(u);
        for (VertexId x : tree.neighbors(u))
          if (x != v && n - far(u, x) <= chunk) maximal = false;
        if (maximal) pendants.emplace_back(u, v);
      }
    }
  }

  if (static_cast<int>(pendants.size()) != leaves) return std::nullopt;
  std::vector<TaxonSet> parts;
  int off_size = 0;
  for (auto [u, v] : pendants) {
    parts.push_back(side_taxa(tree, u, v));
    if (static_cast<int>(parts.back().size()) != chunk) ++off_size;
  }
  if (off_size > (n % chunk ? 1 : 0)) return std::nullopt;
  int covered = 0;
  for (const auto& p : parts) covered += static_cast<int>(p.size());
  if (covered != n) return std::nullopt;

  FullyLoadedSpec spec;
  spec.n = n;
  spec.k = k;
  spec.residue_size = n % chunk;
  TreeGraph g = TreeGraph::from_tree(tree);
  for (std::size_t i = 0; i < pendants.size(); ++i) {
    auto [u, v] = pendants[i];
    const std::string name = tree.label(parts[i].front());
    spec.pendants.emplace(name, pendant_at(tree, u, v));
    if (static_cast<int>(parts[i].size()) != chunk) spec.residue_leaf = name;
  }
  if (leaves == 2) {
    TreeGraph edge;
    edge.add_edge(edge.add_leaf(tree.label(parts[0].front())), edge.add_leaf(tree.label(parts[1].front())));
    spec.scaffold = edge.build();
    return spec;
  }
  // Cut every pendant away and hang a named leaf in its place.
  for (std::size_t i = 0; i < pendants.size(); ++i) {
    auto [u, v] = pendants[i];
    for (VertexId w : side_vertices(tree, u, v)) g.remove_vertex(w);
  }
  for (std::size_t i = 0; i < pendants.size(); ++i) {
    VertexId leaf = g.add_leaf(tree.label(parts[i].front()));
    g.add_edge(pendants[i].first, leaf);
  }
  spec.scaffold = g.build();
  return spec;
}

Tree gen_random(int n, std::uint64_t seed) { return gen_random(default_labels(n), seed); }

Tree gen_random(const std::vector<std::string>& labels, std::uint64_t seed) {
  const int n = static_cast<int>(labels.size());
  if (n < 3) throw std::invalid_argument("gen_random: needs at least 3 taxa");
  require_distinct(labels);
  std::mt19937_64 rng(seed);
  TreeGraph g;
  const VertexId center = g.add_vertex();
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int i = 0; i < 3; ++i) {
    VertexId leaf = g.add_leaf(labels[i]);
    g.add_edge(center, leaf);
    edges.emplace_back(center, leaf);
  }
  for (int i = 3; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
    const std::size_t e = pick(rng);
    auto [u, v] = edges[e];
    const VertexId mid = g.subdivide(u, v);
    const VertexId leaf = g.add_leaf(labels[i]);
    g.add_edge(mid, leaf);
    edges[e] = {u, mid};
    edges.emplace_back(mid, v);
    edges.emplace_back(mid, leaf);
  }
  return g.build();
}

namespace {

void insert_all(TreeGraph& g, std::vector<std::pair<VertexId, VertexId>>& edges,
                const std::vector<std::string>& labels, std::size_t next,
                const std::function<void(const Tree&)>& visit) {
  if (next == labels.size()) {
    visit(g.build());
    return;
  }
  const std::size_t count = edges.size();
  for (std::size_t e = 0; e < count; ++e) {
    TreeGraph h = g;
    auto local = edges;
    auto [u, v] = local[e];
    const VertexId mid = h.subdivide(u, v);
    const VertexId leaf = h.add_leaf(labels[next]);
    h.add_edge(mid, leaf);
    local[e] = {u, mid};
    local.emplace_back(mid, v);
    local.emplace_back(mid, leaf);
    insert_all(h, local, labels, next + 1, visit);
  }
}

}  // namespace

void for_each_topology(const std::vector<std::string>& labels, const std::function<void(const Tree&)>& visit) {
  require_distinct(labels);
  if (labels.size() < 3) {
    visit(gen_caterpillar(labels));
    return;
  }
  TreeGraph g;
  const VertexId center = g.add_vertex();
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int i = 0; i < 3; ++i) {
    VertexId leaf = g.add_leaf(labels[i]);
    g.add_edge(center, leaf);
    edges.emplace_back(center, leaf);
  }
  insert_all(g, edges, labels, 3, visit);
}

Tree linearize(const Tree& tree, const Tripartition& tp) {
  const VertexId u = tp.center;
  if (u < tree.num_taxa() || u >= tree.num_vertices()) throw std::invalid_argument("linearize: centre is not internal");
  if (tp.part_a.size() < 2 || tp.part_b.size() < 2 || tp.part_c.size() < 2)
    throw std::invalid_argument("linearize: every part needs at least two taxa");
  VertexId a_root = -1, b_root = -1, c_root = -1;
  for (VertexId x : tree.neighbors(u)) {
    const TaxonSet side = side_taxa(tree, u, x);
    if (side == tp.part_a)
      a_root = x;
    else if (side == tp.part_b)
      b_root = x;
    else if (side == tp.part_c)
      c_root = x;
  }
  if (a_root < 0 || b_root < 0 || c_root < 0)
    throw std::invalid_argument("linearize: parts do not match the subtrees at the centre");

  TreeGraph g = TreeGraph::from_tree(tree);
  for (VertexId w : side_vertices(tree, u, c_root)) g.remove_vertex(w);
  g.remove_vertex(u);
  VertexId previous = a_root;
  for (TaxonId c : tp.part_c) {
    const VertexId spine = g.add_vertex();
    g.add_edge(previous, spine);
    g.add_edge(spine, g.add_leaf(tree.label(c)));
    previous = spine;
  }
  g.add_edge(previous, b_root);
  return g.build();
}

Tree replace_with_local_fully_loaded(const Tree& tree, const Split& split, int k) {
  if (k < 2) throw std::invalid_argument("replace_with_local_fully_loaded: k must be at least 2");
  const int b = static_cast<int>(split.side_b.size());
  if (b < k || b > 2 * (k - 1))
    throw std::invalid_argument("replace_with_local_fully_loaded: need k <= |B| <= 2(k-1)");
  auto located = find_split(tree, split.side_b);
  if (!located) throw std::invalid_argument("replace_with_local_fully_loaded: tree lacks the split");
  const VertexId attach = located->a_end, root = located->b_end;

  // Already a single-edge fully loaded subtree: nothing to do.
  std::vector<VertexId> kids;
  for (VertexId w : tree.neighbors(root))
    if (w != attach) kids.push_back(w);
  for (VertexId kid : kids)
    if (static_cast<int>(side_taxa(tree, root, kid).size()) == k - 1) return tree;

  std::vector<std::string> first, second;
  for (TaxonId t : split.side_b) (static_cast<int>(first.size()) < k - 1 ? first : second).push_back(tree.label(t));

  TreeGraph g = TreeGraph::from_tree(tree);
  for (VertexId w : side_vertices(tree, attach, root)) g.remove_vertex(w);
  const VertexId left = graft(g, caterpillar_pendant(first));
  const VertexId right = graft(g, caterpillar_pendant(second));
  g.add_edge(left, right);
  g.add_edge(attach, g.subdivide(left, right));
  return g.build();
}

}  // namespace convexchar
