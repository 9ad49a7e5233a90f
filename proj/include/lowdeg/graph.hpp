#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace lowdeg {

struct SizeLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// True when LOWDEG_GUARD_OVERRIDE=1 is set in the environment.
bool guard_override();
// Throws SizeLimitError unless value <= limit or the override is active.
void check_guard(const char* what, long long value, long long limit);

// Labeled multigraph on positive integer vertex ids. Keys are (i, j) with
// i <= j; i == j is a self-loop. Zero multiplicities are never stored.
class MultiGraph {
 public:
  using Key = std::pair<int, int>;

  MultiGraph() = default;
  MultiGraph(std::initializer_list<std::tuple<int, int, int>> edges);

  void add(int i, int j, int mult = 1);
  int mult(int i, int j) const;
  const std::map<Key, int>& edges() const { return edges_; }

  int size() const { return size_; }
  bool empty() const { return edges_.empty(); }
  std::vector<int> vertices() const;
  int vertex_count() const { return static_cast<int>(vertices().size()); }
  bool has_vertex(int v) const;
  // Self-loops count 2 toward the degree of their vertex.
  int degree(int v) const;
  std::map<int, int> degrees() const;
  bool is_simple() const;
  bool has_loops() const;

  bool leq(const MultiGraph& other) const;
  MultiGraph plus(const MultiGraph& other) const;
  // Requires other.leq(*this).
  MultiGraph minus(const MultiGraph& other) const;
  MultiGraph intersect(const MultiGraph& other) const;  // min multiplicity
  MultiGraph sym_diff(const MultiGraph& other) const;   // simple graphs only
  MultiGraph bar() const;                                // + one copy of (1,2)

  std::vector<MultiGraph> components() const;
  int component_count() const;
  bool connected() const;  // the empty graph counts as connected
  // Union of the components of *this that contain any of the given vertices.
  MultiGraph components_touching(const std::vector<int>& vs) const;

  // "d v : i,j[,mult] ; ..." with edges in canonical order.
  std::string canonical() const;
  static MultiGraph parse(const std::string& text);

  friend bool operator==(const MultiGraph& a, const MultiGraph& b) { return a.edges_ == b.edges_; }
  friend bool operator<(const MultiGraph& a, const MultiGraph& b) { return a.edges_ < b.edges_; }

 private:
  std::map<Key, int> edges_;
  int size_ = 0;
};

// Checked 64-bit combinatorics.
std::uint64_t factorial(int k);
std::uint64_t binomial(long long n, long long k);
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t falling_factorial(long long n, long long k);
// alpha! = prod alpha_ij!
std::uint64_t graph_factorial(const MultiGraph& g);
// binom(alpha, beta) = prod binom(alpha_ij, beta_ij); 0 unless beta <= alpha.
std::uint64_t graph_binomial(const MultiGraph& alpha, const MultiGraph& beta);

// Calls fn for every beta <= alpha (all multiplicity vectors), including the
// empty graph and alpha itself.
void for_each_subgraph(const MultiGraph& alpha, const std::function<void(const MultiGraph&)>& fn);

struct GraphStats {
  int edge_count = 0;
  int vertex_count = 0;
  int excess = 1;  // |alpha| - |V(alpha)| + 1
  int component_count = 0;
  int excess_degree = 0;  // sum of degrees >= 3
};
GraphStats graph_stats(const MultiGraph& g);
int excess_degree(const MultiGraph& g);

bool is_rooted_connected(const MultiGraph& g);  // empty, or connected with 1 in V
bool is_good_sw(const MultiGraph& g);           // empty, or 1,2 in V, bar connected, deg_bar >= 2
bool is_good_sbm(const MultiGraph& g);          // good_sw restricted to simple graphs

enum class GraphClass { All, ConnectedRooted, GoodSW, GoodSBM, TreeTk, SawSD };

struct GraphClassSpec {
  GraphClass cls = GraphClass::All;
  int n = 0;
  int max_edges = 0;  // All / ConnectedRooted / GoodSW / GoodSBM
  int k = 0;          // TreeTk
  int D = 0;          // SawSD
  bool parallel = false;
  bool loops = false;
};

GraphClass parse_graph_class(const std::string& name);
std::string graph_class_name(GraphClass cls);

// Every labeled graph in the class, each once, sorted canonically.
std::vector<MultiGraph> enumerate(const GraphClassSpec& spec);

// Number of graphs in the class with |alpha| = d and v vertices. For
// ConnectedRooted, v counts V(alpha) together with vertex 1.
long long count_by_profile(const GraphClassSpec& spec, int d, int v);

// Number of spanning trees on {1..v}, by enumeration.
long long count_spanning_trees(int v);

}  // namespace lowdeg
