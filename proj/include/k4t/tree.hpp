#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace k4t {

using NodeId = int;
inline constexpr NodeId kNoNode = -1;

// Rooted tree with ordered (plane) children. Node 0 is always the root.
//
// Trees produced by parse_tree() are *planted*: the root is the planted
// vertex and has exactly one child, so it never counts as a branching
// vertex. The container itself also holds general rooted trees (core
// shapes, re-rooted trees); callers that need the planted form check
// is_planted().
class RootedPlaneTree {
 public:
  // parent == kNoNode creates the root and is only legal on an empty tree.
  NodeId add_node(NodeId parent);

  int size() const { return static_cast<int>(parent_.size()); }
  NodeId root() const { return size() ? 0 : kNoNode; }
  NodeId parent(NodeId v) const { return parent_.at(v); }
  const std::vector<NodeId>& children(NodeId v) const {
    return children_.at(v);
  }
  // Degree in the underlying undirected tree (parent edge included).
  int degree(NodeId v) const {
    return static_cast<int>(children_.at(v).size()) + (parent_.at(v) >= 0);
  }
  bool is_leaf(NodeId v) const { return degree(v) <= 1; }
  bool is_planted() const {
    return size() >= 2 && children_.front().size() == 1;
  }
  // v, parent(v), ..., root.
  std::vector<NodeId> root_path(NodeId v) const;

 private:
  std::vector<std::vector<NodeId>> children_;
  std::vector<NodeId> parent_;
};

// Nested-parens tree text. The outermost group is the planted root and
// must contain exactly one child group; leaves are "()". Whitespace is
// ignored. Node ids are assigned in preorder (root = 0). Throws ParseError.
RootedPlaneTree parse_tree(std::string_view text);

// Inverse of parse_tree for planted trees; for general rooted trees emits
// the root's group with one child group per subtree, preserving child order.
std::string serialize_tree(const RootedPlaneTree& t);

// i >= 1 iff x lies on the y-to-root path and that path leaves x through
// x's i-th upward (child) edge; 0 otherwise (y below x or incomparable).
// Throws std::invalid_argument when x == y or an id is out of range.
int direction(const RootedPlaneTree& t, NodeId x, NodeId y);

// True iff one of x, y lies on the other's root path.
bool is_stacked(const RootedPlaneTree& t, NodeId x, NodeId y);

// Cores are the vertices of degree >= 3. Edges join cores whose tree path
// contains no third core; every edge is stored as (below, above).
struct CoreTree {
  std::vector<NodeId> cores;                     // ascending tree ids
  std::vector<std::pair<NodeId, NodeId>> edges;  // (below, above)
  NodeId core_root = kNoNode;                    // core nearest the root
  // direction(x, y) for every stacked core pair, both orders.
  std::map<std::pair<NodeId, NodeId>, int> dir_of;

  bool is_core(NodeId v) const;
  // The core adjacency as its own rooted tree (rooted at core_root,
  // children ordered by direction). order, when given, receives the core
  // tree-id for each new node id.
  RootedPlaneTree as_tree(std::vector<NodeId>* order = nullptr) const;
};

CoreTree core_tree(const RootedPlaneTree& t);

// Suppress every degree-2 vertex (the planted root, degree 1, survives).
// Idempotent; invariant under edge subdivision.
RootedPlaneTree homeo_reduce(const RootedPlaneTree& t);

enum class IsoMode { Rooted, Unrooted };

// Canonical string: equal strings <=> isomorphic in the given mode (plane
// order is ignored in both modes; Unrooted also forgets the root by
// re-rooting at the centroid(s)).
std::string canonical_form(const RootedPlaneTree& t, IsoMode mode);

// As above but label-preserving; labels must not contain parentheses.
std::string canonical_form_labeled(const RootedPlaneTree& t,
                                   const std::vector<std::string>& labels,
                                   IsoMode mode);

bool is_isomorphic(const RootedPlaneTree& a, const RootedPlaneTree& b,
                   IsoMode mode);

// Rebuild a tree from an undirected edge list, rooted at `root` (new id 0,
// BFS order, neighbors visited in ascending id order). order, when given,
// receives the original id for each new node id.
RootedPlaneTree tree_from_edges(int n,
                                const std::vector<std::pair<int, int>>& edges,
                                int root, std::vector<int>* order = nullptr);

}  // namespace k4t
