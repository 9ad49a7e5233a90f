#include "lowdeg/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <sstream>

namespace lowdeg {

bool guard_override() {
  const char* v = std::getenv("LOWDEG_GUARD_OVERRIDE");
  return v != nullptr && std::string(v) == "1";
}

void check_guard(const char* what, long long value, long long limit) {
  if (value > limit && !guard_override()) {
    throw SizeLimitError(std::string(what) + " = " + std::to_string(value) + " exceeds guard " +
                         std::to_string(limit) + " (set LOWDEG_GUARD_OVERRIDE=1 to lift)");
  }
}

MultiGraph::MultiGraph(std::initializer_list<std::tuple<int, int, int>> edges) {
  for (const auto& [i, j, m] : edges) add(i, j, m);
}

void MultiGraph::add(int i, int j, int mult) {
  if (i <= 0 || j <= 0) throw ValidationError("vertex ids must be positive");
  if (i > j) std::swap(i, j);
  if (mult == 0) return;
  int& slot = edges_[{i, j}];
  slot += mult;
  if (slot < 0) throw ValidationError("negative edge multiplicity");
  size_ += mult;
  if (slot == 0) edges_.erase({i, j});
}

int MultiGraph::mult(int i, int j) const {
  if (i > j) std::swap(i, j);
  auto it = edges_.find({i, j});
  return it == edges_.end() ? 0 : it->second;
}

std::vector<int> MultiGraph::vertices() const {
  std::set<int> vs;
  for (const auto& [key, m] : edges_) {
    vs.insert(key.first);
    vs.insert(key.second);
  }
  return {vs.begin(), vs.end()};
}

bool MultiGraph::has_vertex(int v) const {
  for (const auto& [key, m] : edges_)
    if (key.first == v || key.second == v) return true;
  return false;
}

int MultiGraph::degree(int v) const {
  int deg = 0;
  for (const auto& [key, m] : edges_) {
    if (key.first == v) deg += m;
    if (key.second == v) deg += m;
  }
  return deg;
}

std::map<int, int> MultiGraph::degrees() const {
  std::map<int, int> deg;
  for (const auto& [key, m] : edges_) {
    deg[key.first] += m;
    deg[key.second] += m;
  }
  return deg;
}

bool MultiGraph::is_simple() const {
  for (const auto& [key, m] : edges_)
    if (m != 1 || key.first == key.second) return false;
  return true;
}

bool MultiGraph::has_loops() const {
  for (const auto& [key, m] : edges_)
    if (key.first == key.second) return true;
  return false;
}

bool MultiGraph::leq(const MultiGraph& other) const {
  for (const auto& [key, m] : edges_) {
    auto it = other.edges_.find(key);
    if (it == other.edges_.end() || it->second < m) return false;
  }
  return true;
}

MultiGraph MultiGraph::plus(const MultiGraph& other) const {
  MultiGraph out = *this;
  for (const auto& [key, m] : other.edges_) out.add(key.first, key.second, m);
  return out;
}

MultiGraph MultiGraph::minus(const MultiGraph& other) const {
  if (!other.leq(*this)) throw ValidationError("minus: subtrahend is not a subgraph");
  MultiGraph out = *this;
  for (const auto& [key, m] : other.edges_) out.add(key.first, key.second, -m);
  return out;
}

MultiGraph MultiGraph::intersect(const MultiGraph& other) const {
  MultiGraph out;
  for (const auto& [key, m] : edges_) {
    int o = other.mult(key.first, key.second);
    if (o > 0) out.add(key.first, key.second, std::min(m, o));
  }
  return out;
}

MultiGraph MultiGraph::sym_diff(const MultiGraph& other) const {
  MultiGraph out;
  for (const auto& [key, m] : edges_)
    if (other.mult(key.first, key.second) == 0) out.add(key.first, key.second, m);
  for (const auto& [key, m] : other.edges_)
    if (mult(key.first, key.second) == 0) out.add(key.first, key.second, m);
  return out;
}

MultiGraph MultiGraph::bar() const {
  MultiGraph out = *this;
  out.add(1, 2, 1);
  return out;
}

namespace {

struct UnionFind {
  std::map<int, int> parent;
  int find(int x) {
    auto it = parent.find(x);
    if (it == parent.end()) {
      parent[x] = x;
      return x;
    }
    if (it->second == x) return x;
    int r = find(it->second);
    parent[x] = r;
    return r;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<MultiGraph> MultiGraph::components() const {
  UnionFind uf;
  for (const auto& [key, m] : edges_) uf.unite(key.first, key.second);
  std::map<int, MultiGraph> by_root;
  for (const auto& [key, m] : edges_) by_root[uf.find(key.first)].add(key.first, key.second, m);
  std::vector<MultiGraph> out;
  for (auto& [root, g] : by_root) out.push_back(std::move(g));
  std::sort(out.begin(), out.end());
  return out;
}

int MultiGraph::component_count() const { return static_cast<int>(components().size()); }

bool MultiGraph::connected() const { return component_count() <= 1; }

MultiGraph MultiGraph::components_touching(const std::vector<int>& vs) const {
  MultiGraph out;
  for (const auto& comp : components()) {
    bool touch = false;
    for (int v : vs) touch = touch || comp.has_vertex(v);
    if (touch) out = out.plus(comp);
  }
  return out;
}

std::string MultiGraph::canonical() const {
  std::ostringstream os;
  os << size_ << ' ' << vertex_count() << " :";
  bool first = true;
  for (const auto& [key, m] : edges_) {
    os << (first ? " " : " ; ") << key.first << ',' << key.second;
    if (m != 1) os << ',' << m;
    first = false;
  }
  return os.str();
}

MultiGraph MultiGraph::parse(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw ValidationError("graph text lacks ':'");
  std::istringstream head(text.substr(0, colon));
  int d = -1, v = -1;
  head >> d >> v;
  MultiGraph g;
  std::string body = text.substr(colon + 1);
  std::istringstream items(body);
  std::string item;
  while (std::getline(items, item, ';')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) continue;
    std::vector<int> nums;
    std::istringstream parts(item);
    std::string part;
    while (std::getline(parts, part, ',')) nums.push_back(std::stoi(part));
    if (nums.size() < 2 || nums.size() > 3) throw ValidationError("bad edge item: " + item);
    g.add(nums[0], nums[1], nums.size() == 3 ? nums[2] : 1);
  }
  if (d >= 0 && d != g.size()) throw ValidationError("edge count mismatch in: " + text);
  if (v >= 0 && v != g.vertex_count()) throw ValidationError("vertex count mismatch in: " + text);
  return g;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    throw std::overflow_error("64-bit overflow in combinatorial product");
  return a * b;
}

std::uint64_t factorial(int k) {
  if (k < 0) throw ValidationError("factorial of negative");
  std::uint64_t r = 1;
  for (int i = 2; i <= k; ++i) r = checked_mul(r, static_cast<std::uint64_t>(i));
  return r;
}

std::uint64_t binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (long long i = 1; i <= k; ++i) {
    // r * (n - k + i) is divisible by i at every step
    std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
    std::uint64_t g = std::gcd(r, static_cast<std::uint64_t>(i));
    std::uint64_t rr = r / g;
    std::uint64_t ii = static_cast<std::uint64_t>(i) / g;
    r = checked_mul(rr, num / ii);
  }
  return r;
}

std::uint64_t falling_factorial(long long n, long long k) {
  if (k < 0) throw ValidationError("falling factorial with negative length");
  std::uint64_t r = 1;
  for (long long i = 0; i < k; ++i) {
    if (n - i <= 0) return 0;
    r = checked_mul(r, static_cast<std::uint64_t>(n - i));
  }
  return r;
}

std::uint64_t graph_factorial(const MultiGraph& g) {
  std::uint64_t r = 1;
  for (const auto& [key, m] : g.edges()) r = checked_mul(r, factorial(m));
  return r;
}

std::uint64_t graph_binomial(const MultiGraph& alpha, const MultiGraph& beta) {
  if (!beta.leq(alpha)) return 0;
  std::uint64_t r = 1;
  for (const auto& [key, m] : alpha.edges()) r = checked_mul(r, binomial(m, beta.mult(key.first, key.second)));
  return r;
}

void for_each_subgraph(const MultiGraph& alpha, const std::function<void(const MultiGraph&)>& fn) {
  std::vector<std::pair<MultiGraph::Key, int>> slots(alpha.edges().begin(), alpha.edges().end());
  std::vector<int> pick(slots.size(), 0);
  while (true) {
    MultiGraph beta;
    for (std::size_t s = 0; s < slots.size(); ++s)
      if (pick[s] > 0) beta.add(slots[s].first.first, slots[s].first.second, pick[s]);
    fn(beta);
    std::size_t s = 0;
    while (s < slots.size() && pick[s] == slots[s].second) pick[s++] = 0;
    if (s == slots.size()) break;
    ++pick[s];
  }
}

int excess_degree(const MultiGraph& g) {
  int delta = 0;
  for (const auto& [v, d] : g.degrees())
    if (d >= 3) delta += d;
  return delta;
}

GraphStats graph_stats(const MultiGraph& g) {
  GraphStats s;
  s.edge_count = g.size();
  s.vertex_count = g.vertex_count();
  s.excess = s.edge_count - s.vertex_count + 1;
  s.component_count = g.component_count();
  s.excess_degree = excess_degree(g);
  return s;
}

bool is_rooted_connected(const MultiGraph& g) {
  if (g.empty()) return true;
  return g.has_vertex(1) && g.connected();
}

bool is_good_sw(const MultiGraph& g) {
  if (g.empty()) return true;
  if (!g.has_vertex(1) || !g.has_vertex(2)) return false;
  MultiGraph b = g.bar();
  if (!b.connected()) return false;
  for (const auto& [v, d] : b.degrees())
    if (d < 2) return false;
  return true;
}

bool is_good_sbm(const MultiGraph& g) { return g.is_simple() && is_good_sw(g); }

GraphClass parse_graph_class(const std::string& name) {
  if (name == "all") return GraphClass::All;
  if (name == "connected-rooted-at-1") return GraphClass::ConnectedRooted;
  if (name == "good-SW") return GraphClass::GoodSW;
  if (name == "good-SBM") return GraphClass::GoodSBM;
  if (name == "tree-Tk") return GraphClass::TreeTk;
  if (name == "saw-SD") return GraphClass::SawSD;
  throw ValidationError("unknown graph class: " + name);
}

std::string graph_class_name(GraphClass cls) {
  switch (cls) {
    case GraphClass::All: return "all";
    case GraphClass::ConnectedRooted: return "connected-rooted-at-1";
    case GraphClass::GoodSW: return "good-SW";
    case GraphClass::GoodSBM: return "good-SBM";
    case GraphClass::TreeTk: return "tree-Tk";
    case GraphClass::SawSD: return "saw-SD";
  }
  return "?";
}

namespace {

constexpr int kMaxVertices = 10;
constexpr int kMaxTreeVertices = 12;
constexpr int kMaxSawVertices = 400;
constexpr int kMaxEdges = 8;
constexpr long long kMaxRawCandidates = 50'000'000;

void validate_spec(const GraphClassSpec& spec) {
  if (spec.n < 1) throw ValidationError("n must be >= 1");
  switch (spec.cls) {
    case GraphClass::GoodSBM:
    case GraphClass::TreeTk:
    case GraphClass::SawSD:
      if (spec.parallel || spec.loops)
        throw ValidationError(graph_class_name(spec.cls) + " is a simple-graph class; parallel/loops flags are illegal");
      break;
    default:
      break;
  }
  if (spec.max_edges < 0 || spec.k < 0 || spec.D < 0) throw ValidationError("negative size parameter");
  int vlimit = kMaxVertices;
  if (spec.cls == GraphClass::TreeTk) vlimit = kMaxTreeVertices;
  if (spec.cls == GraphClass::SawSD) vlimit = kMaxSawVertices;
  check_guard("n", spec.n, vlimit);
  int edges = spec.max_edges;
  if (spec.cls == GraphClass::TreeTk) edges = 2 * spec.k + 2;
  if (spec.cls == GraphClass::SawSD) edges = spec.D;
  check_guard("edges", edges, kMaxEdges);
}

// All multiplicity vectors over the slot list with total <= max_edges.
std::vector<MultiGraph> enumerate_slots(int n, int max_edges, bool parallel, bool loops,
                                        const std::function<bool(const MultiGraph&)>& keep) {
  std::vector<MultiGraph::Key> slots;
  for (int i = 1; i <= n; ++i)
    for (int j = loops ? i : i + 1; j <= n; ++j) slots.emplace_back(i, j);
  long long raw = 0;
  for (int e = 0; e <= max_edges; ++e) {
    long long c = parallel ? static_cast<long long>(binomial(static_cast<long long>(slots.size()) + e - 1, e))
                           : static_cast<long long>(binomial(static_cast<long long>(slots.size()), e));
    raw += c;
  }
  check_guard("raw enumeration candidates", raw, kMaxRawCandidates);

  std::vector<MultiGraph> out;
  MultiGraph cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t s, int budget) {
    if (s == slots.size()) {
      if (keep(cur)) out.push_back(cur);
      return;
    }
    rec(s + 1, budget);
    int cap = parallel ? budget : std::min(budget, 1);
    for (int m = 1; m <= cap; ++m) {
      cur.add(slots[s].first, slots[s].second, 1);
      rec(s + 1, budget - m);
    }
    if (cap > 0) cur.add(slots[s].first, slots[s].second, -cap);
  };
  rec(0, max_edges);
  std::sort(out.begin(), out.end());
  return out;
}

// Labeled trees on the given vertices via Pruefer sequences.
std::vector<MultiGraph> labeled_trees(const std::vector<int>& vs) {
  const int m = static_cast<int>(vs.size());
  std::vector<MultiGraph> out;
  if (m == 1) {
    out.emplace_back();
    return out;
  }
  if (m == 2) {
    MultiGraph g;
    g.add(vs[0], vs[1]);
    out.push_back(g);
    return out;
  }
  std::vector<int> seq(m - 2, 0);
  while (true) {
    std::vector<int> deg(m, 1);
    for (int x : seq) ++deg[x];
    MultiGraph g;
    for (int x : seq) {
      int leaf = 0;
      while (deg[leaf] != 1) ++leaf;
      g.add(vs[leaf], vs[x]);
      --deg[leaf];
      --deg[x];
    }
    int u = -1, w = -1;
    for (int i = 0; i < m; ++i)
      if (deg[i] == 1) (u < 0 ? u : w) = i;
    g.add(vs[u], vs[w]);
    out.push_back(g);
    int p = 0;
    while (p < m - 2 && seq[p] == m - 1) seq[p++] = 0;
    if (p == m - 2) break;
    ++seq[p];
  }
  return out;
}

void for_each_subset(const std::vector<int>& pool, int size, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (static_cast<int>(pick.size()) == size) {
      fn(pick);
      return;
    }
    for (std::size_t i = start; i < pool.size(); ++i) {
      pick.push_back(pool[i]);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
}

std::vector<MultiGraph> enumerate_trees_tk(int n, int k) {
  std::vector<MultiGraph> out;
  for (int a = 2; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      std::vector<int> rest;
      for (int v = 2; v <= n; ++v)
        if (v != a && v != b) rest.push_back(v);
      for_each_subset(rest, k, [&](const std::vector<int>& sa) {
        std::vector<int> rest2;
        for (int v : rest)
          if (std::find(sa.begin(), sa.end(), v) == sa.end()) rest2.push_back(v);
        for_each_subset(rest2, k, [&](const std::vector<int>& sb) {
          std::vector<int> va{a}, vb{b};
          va.insert(va.end(), sa.begin(), sa.end());
          vb.insert(vb.end(), sb.begin(), sb.end());
          std::sort(va.begin(), va.end());
          std::sort(vb.begin(), vb.end());
          auto ta = labeled_trees(va);
          auto tb = labeled_trees(vb);
          for (const auto& x : ta)
            for (const auto& y : tb) {
              MultiGraph g = x.plus(y);
              g.add(1, a);
              g.add(1, b);
              out.push_back(g);
            }
        });
      });
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MultiGraph> enumerate_saw(int n, int D) {
  std::vector<MultiGraph> out;
  if (D < 1 || n < 2) return out;
  std::vector<int> path{1};
  std::vector<bool> used(n + 1, false);
  used[1] = used[2] = true;
  std::function<void()> rec = [&]() {
    int steps = static_cast<int>(path.size()) - 1;
    if (steps == D - 1) {
      MultiGraph g;
      for (std::size_t i = 0; i + 1 < path.size(); ++i) g.add(path[i], path[i + 1]);
      g.add(path.back(), 2);
      out.push_back(g);
      return;
    }
    for (int v = 3; v <= n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      path.push_back(v);
      rec();
      path.pop_back();
      used[v] = false;
    }
  };
  rec();
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<MultiGraph> enumerate(const GraphClassSpec& spec) {
  validate_spec(spec);
  switch (spec.cls) {
    case GraphClass::All:
      return enumerate_slots(spec.n, spec.max_edges, spec.parallel, spec.loops, [](const MultiGraph&) { return true; });
    case GraphClass::ConnectedRooted:
      return enumerate_slots(spec.n, spec.max_edges, spec.parallel, spec.loops, is_rooted_connected);
    case GraphClass::GoodSW:
      return enumerate_slots(spec.n, spec.max_edges, spec.parallel, spec.loops, is_good_sw);
    case GraphClass::GoodSBM:
      return enumerate_slots(spec.n, spec.max_edges, false, false, is_good_sbm);
    case GraphClass::TreeTk:
      return enumerate_trees_tk(spec.n, spec.k);
    case GraphClass::SawSD:
      return enumerate_saw(spec.n, spec.D);
  }
  return {};
}

long long count_by_profile(const GraphClassSpec& spec, int d, int v) {
  GraphClassSpec s = spec;
  if (s.cls == GraphClass::All || s.cls == GraphClass::ConnectedRooted || s.cls == GraphClass::GoodSW ||
      s.cls == GraphClass::GoodSBM)
    s.max_edges = d;
  long long count = 0;
  for (const auto& g : enumerate(s)) {
    if (g.size() != d) continue;
    int vc = g.vertex_count();
    if (s.cls == GraphClass::ConnectedRooted && !g.has_vertex(1)) ++vc;
    if (vc == v) ++count;
  }
  return count;
}

long long count_spanning_trees(int v) {
  if (v == 1) return 1;
  GraphClassSpec spec{GraphClass::All, v, v - 1};
  long long count = 0;
  for (const auto& g : enumerate(spec))
    if (g.size() == v - 1 && g.vertex_count() == v && g.connected()) ++count;
  return count;
}

}  // namespace lowdeg
