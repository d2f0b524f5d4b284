#include "convexchar/charcount.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <vector>

#include "convexchar/newick.hpp"

namespace convexchar {

BigCount count_gk(const Tree& tree, int k) {
  if (k < 1) throw std::invalid_argument("count_gk: k must be positive");
  const int n = tree.num_taxa();
  if (n < k) return 0;
  if (n == 1) return 1;

  const Rooting r = root_at_leaf(tree, 0);
  // table[v][s]: s == 0 means the edge above v is cut, s in 1..k means one
  // block crosses it holding min(s, k) taxa below.
  std::vector<std::vector<BigCount>> table(tree.num_vertices());
  const int width = k + 1;
  for (auto it = r.preorder.rbegin(); it != r.preorder.rend(); ++it) {
    const VertexId v = *it;
    auto& out = table[v];
    out.assign(width, 0);
    if (tree.is_leaf(v)) {
      out[1] = 1;
      if (k == 1) out[0] = 1;
      continue;
    }
    const auto& left = table[r.children[v][0]];
    const auto& right = table[r.children[v][1]];
    out[0] = left[0] * right[0];
    for (int s = 1; s <= k; ++s) {
      if (!left[s].is_zero() && !right[0].is_zero()) out[s] += left[s] * right[0];
      if (!left[0].is_zero() && !right[s].is_zero()) out[s] += left[0] * right[s];
    }
    for (int a = 1; a <= k; ++a) {
      if (left[a].is_zero()) continue;
      for (int b = 1; b <= k; ++b) {
        if (right[b].is_zero()) continue;
        BigCount product = left[a] * right[b];
        const int merged = std::min(a + b, k);
        out[merged] += product;       // block continues upward
        if (a + b >= k) out[0] += product;  // block closes at v
      }
    }
    table[r.children[v][0]].clear();
    table[r.children[v][1]].clear();
  }

  const auto& top = table[r.top];
  BigCount total = k == 1 ? top[0] : BigCount(0);
  for (int s = 1; s <= k; ++s)
    if (std::min(s + 1, k) == k) total += top[s];
  return total;
}

namespace {

struct CountCache {
  std::shared_mutex mutex;
  std::map<std::pair<std::string, int>, BigCount> entries;
};

CountCache& cache() {
  static CountCache instance;
  return instance;
}

}  // namespace

BigCount count_gk_cached(const Tree& tree, int k) {
  auto key = std::make_pair(write_newick(tree), k);
  auto& c = cache();
  {
    std::shared_lock lock(c.mutex);
    auto it = c.entries.find(key);
    if (it != c.entries.end()) return it->second;
  }
  BigCount value = count_gk(tree, k);
  std::unique_lock lock(c.mutex);
  c.entries.emplace(std::move(key), value);
  return value;
}

void clear_count_cache() {
  auto& c = cache();
  std::unique_lock lock(c.mutex);
  c.entries.clear();
}

BigCount fibonacci(int index) {
  if (index < 0) throw std::invalid_argument("fibonacci: negative index");
  BigCount a = 0, b = 1;
  for (int i = 0; i < index; ++i) {
    BigCount next = a + b;
    a = std::move(b);
    b = std::move(next);
  }
  return a;
}

BigCount g1_closed(int n) {
  if (n < 1) throw std::invalid_argument("g1_closed: n must be positive");
  return fibonacci(2 * n - 1);
}

BigCount g2_closed(int n) {
  if (n < 1) throw std::invalid_argument("g2_closed: n must be positive");
  return fibonacci(n - 1);
}

BigCount gk_caterpillar(int n, int k) {
  if (k < 1) throw std::invalid_argument("gk_caterpillar: k must be positive");
  if (n < 0) throw std::invalid_argument("gk_caterpillar: negative n");
  if (k == 1) return n == 0 ? BigCount(0) : g1_closed(n);
  std::vector<BigCount> g(n + 1);
  for (int m = 0; m <= n; ++m) {
    if (m < k)
      g[m] = 0;
    else if (m < 2 * k)
      g[m] = 1;
    else
      g[m] = g[m - 1] + g[m - k];
  }
  return g[n];
}

BigCount gk_fully_loaded(int n, int k) {
  if (k < 2) throw std::invalid_argument("gk_fully_loaded: k must be at least 2");
  if (n < k) throw std::invalid_argument("gk_fully_loaded: needs n >= k");
  return g2_closed((n + k - 2) / (k - 1));
}

namespace {

constexpr double kPhi = 1.6180339887498948482;

template <typename F>
double bisect(F f, double lo, double hi, double tolerance) {
  double flo = f(lo);
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (std::fabs(fm) <= tolerance * 1e-3) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

GrowthRate growth_rate(int k) {
  if (k < 1) throw std::invalid_argument("growth_rate: k must be positive");
  GrowthRate g;
  g.k = k;
  if (k == 1) {
    g.alpha = kPhi * kPhi;
    g.min_rate = g.alpha;
    g.residual = 0;
    return g;
  }
  auto poly = [k](double x) { return std::pow(x, k) - std::pow(x, k - 1) - 1.0; };
  g.alpha = bisect(poly, 1.0, 2.0, 1e-12);
  g.residual = std::fabs(poly(g.alpha));
  g.min_rate = std::pow(kPhi, 1.0 / (k - 1));
  return g;
}

std::string format_rate(double rate) {
  // Work in thousandths; the small bias keeps exact halves from rounding down
  // through binary representation error.
  const double scaled = std::floor(rate * 1000.0 + 0.5 + 1e-9);
  const long long milli = static_cast<long long>(scaled);
  std::string frac = std::to_string(milli % 1000);
  return std::to_string(milli / 1000) + "." + std::string(3 - frac.size(), '0') + frac;
}

double g3_caterpillar_constant() {
  const double alpha = growth_rate(3).alpha;
  auto cubic = [](double x) { return ((31.0 * x - 31.0) * x + 9.0) * x - 1.0; };
  // The cubic has a single real root, and it lies in (0, 1).
  const double root = bisect(cubic, 0.0, 1.0, 1e-15);
  return root / (alpha * alpha * alpha);
}

std::uint64_t g3_caterpillar_closed(int n) {
  if (n < 0) throw std::invalid_argument("g3_caterpillar_closed: negative n");
  const long double c = g3_caterpillar_constant();
  const long double alpha = growth_rate(3).alpha;
  return static_cast<std::uint64_t>(std::floor(c * std::pow(alpha, static_cast<long double>(n)) + 0.5L));
}

bool decrease_recurrence_check(const Tree& tree, int k, const TaxonSet& side) {
  TaxonSet a = side;
  if (a.empty()) {
    for (const Split& s : splits(tree)) {
      if (static_cast<int>(s.side_b.size()) == k) {
        a = s.side_b;
        break;
      }
      if (static_cast<int>(s.side_a.size()) == k) {
        a = s.side_a;
        break;
      }
    }
  }
  if (static_cast<int>(a.size()) != k || !find_split(tree, a))
    throw std::invalid_argument("decrease_recurrence_check: no split with a side of size k");
  const BigCount whole = count_gk(tree, k);
  const BigCount without_side = count_gk(delete_taxa(tree, a), k);
  const BigCount without_one = count_gk(delete_taxa(tree, {a.front()}), k);
  return whole == without_side + without_one;
}

}  // namespace convexchar
