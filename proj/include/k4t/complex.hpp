#pragma once

#include <string>
#include <vector>

#include "k4t/tree.hpp"

namespace k4t {

// A complex vertex (k, x, p, q): x is a core of the tree, p and q split the
// d(x)-1 upward directions of x into two blocks, and the entries spend the
// remaining budget 3-k. p always holds at least one positive entry.
struct InteractionVertex {
  int k = 0;
  NodeId core = kNoNode;
  std::vector<int> p;
  std::vector<int> q;

  // Number of upward directions covered, i.e. d(core) - 1.
  int len() const { return static_cast<int>(p.size() + q.size()); }
  // 1-based entry across p then q. Throws std::invalid_argument off-range.
  int entry(int i) const;
  int sum_p() const;

  friend bool operator==(const InteractionVertex&,
                         const InteractionVertex&) = default;
  // Enumeration order: (core, k, p, q) ascending lexicographic.
  friend bool operator<(const InteractionVertex& a,
                        const InteractionVertex& b) {
    if (a.core != b.core) return a.core < b.core;
    if (a.k != b.k) return a.k < b.k;
    if (a.p != b.p) return a.p < b.p;
    return a.q < b.q;
  }
};

struct BuildOptions {
  enum class SameCoreEdges { None, Rule1 };
  enum class Rule3Boundary { Extended, PaperStrict };

  bool include_isolated = true;
  SameCoreEdges same_core_edges = SameCoreEdges::None;
  // Extended lets a q entry meeting the budget exactly (entry + k == 4)
  // produce an edge; the strict variant requires a strict surplus there,
  // which no q entry can ever reach, so strict complexes lose every edge
  // that rides on a q entry.
  Rule3Boundary rule3_boundary = Rule3Boundary::Extended;
  bool allow_empty_q = false;

  friend bool operator==(const BuildOptions&, const BuildOptions&) = default;
};

// Undirected simple graph; vertex labels are optional and carry the
// generating tuples when the graph came from build_complex.
struct ComplexGraph {
  int n = 0;
  std::vector<std::vector<int>> adj;      // sorted neighbor lists
  std::vector<InteractionVertex> labels;  // empty when unlabeled

  bool labeled() const { return !labels.empty(); }
  int degree(int v) const;
  bool has_edge(int a, int b) const;
  int edge_count() const;
  std::vector<std::pair<int, int>> edge_list() const;  // (i, j), i < j, sorted

  // Validates: ids in range, no loops, no duplicate edges, label count.
  static ComplexGraph from_edges(int n,
                                 const std::vector<std::pair<int, int>>& edges,
                                 std::vector<InteractionVertex> labels = {});
};

// All tuples over the cores of a planted tree, in (core, k, p, q) order.
std::vector<InteractionVertex> enumerate_vertices(const RootedPlaneTree& t,
                                                  bool allow_empty_q = false);

// The weight v presents toward tree vertex y: k when y is not strictly
// above v's core, otherwise the entry at the direction leading to y.
int weight_toward(const RootedPlaneTree& t, const InteractionVertex& v,
                  NodeId y);

// Resolved adjacency. Same core: no edge (or both-k=2 under Rule1).
// Distinct, not stacked: edge iff k sums to >= 4. Stacked: with e the lower
// vertex's entry toward the upper core and s = e + upper.k, edge iff s >= 5,
// or s == 4 unless e sits in lower.p and exhausts sum(p) (and, for e in q,
// only when the extended boundary is on). Identical tuples are never
// adjacent.
bool adjacent(const RootedPlaneTree& t, const InteractionVertex& u,
              const InteractionVertex& w, const BuildOptions& opts = {});

ComplexGraph build_complex(const RootedPlaneTree& t,
                           const BuildOptions& opts = {});

// Drop degree-0 vertices, renumbering but keeping relative order (and
// labels, when present).
ComplexGraph prune_isolated(const ComplexGraph& g);

// Tuples at core x whose entry at direction i is >= 2 (1 <= i <= d(x)-1).
std::vector<InteractionVertex> lambda_set(const RootedPlaneTree& t, NodeId x,
                                          int i);

enum class GraphFormat { Json, Dot, EdgeList };

// Deterministic, byte-stable exports. Json: {"vertices":[...],"edges":[...]}
// with per-vertex id/core/k/p/q (id only when unlabeled). EdgeList: "i j"
// lines. Dot: labeled graph block.
std::string export_graph(const ComplexGraph& g, GraphFormat format);

}  // namespace k4t
