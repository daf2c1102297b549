#include "k4t/tree.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <queue>
#include <stdexcept>

#include "k4t/errors.hpp"

namespace k4t {

NodeId RootedPlaneTree::add_node(NodeId parent) {
  if (parent == kNoNode && !parent_.empty())
    throw std::invalid_argument("tree already has a root");
  if (parent != kNoNode && (parent < 0 || parent >= size()))
    throw std::invalid_argument("bad parent id");
  NodeId id = size();
  parent_.push_back(parent);
  children_.emplace_back();
  if (parent != kNoNode) children_[parent].push_back(id);
  return id;
}

std::vector<NodeId> RootedPlaneTree::root_path(NodeId v) const {
  std::vector<NodeId> path;
  for (NodeId cur = v; cur != kNoNode; cur = parent_.at(cur))
    path.push_back(cur);
  return path;
}

RootedPlaneTree parse_tree(std::string_view text) {
  RootedPlaneTree t;
  std::vector<NodeId> stack;
  bool closed_root = false;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch == '(') {
      if (closed_root) throw ParseError("trailing content after tree");
      stack.push_back(t.add_node(stack.empty() ? kNoNode : stack.back()));
    } else if (ch == ')') {
      if (stack.empty()) throw ParseError("unbalanced ')'");
      stack.pop_back();
      if (stack.empty()) closed_root = true;
    } else {
      throw ParseError(std::string("unexpected character '") + ch + "'");
    }
  }
  if (!stack.empty()) throw ParseError("unbalanced '('");
  if (t.size() == 0) throw ParseError("empty input");
  if (t.children(t.root()).size() != 1)
    throw ParseError("planted root must have exactly one child");
  return t;
}

std::string serialize_tree(const RootedPlaneTree& t) {
  std::string out;
  std::function<void(NodeId)> encode = [&](NodeId v) {
    out += '(';
    for (NodeId c : t.children(v)) encode(c);
    out += ')';
  };
  if (t.size()) encode(t.root());
  return out;
}

int direction(const RootedPlaneTree& t, NodeId x, NodeId y) {
  if (x < 0 || x >= t.size() || y < 0 || y >= t.size())
    throw std::invalid_argument("node id out of range");
  if (x == y) throw std::invalid_argument("direction of a node to itself");
  NodeId prev = y;
  for (NodeId cur = t.parent(y); cur != kNoNode; cur = t.parent(cur)) {
    if (cur == x) {
      const auto& ch = t.children(x);
      auto it = std::find(ch.begin(), ch.end(), prev);
      return static_cast<int>(it - ch.begin()) + 1;
    }
    prev = cur;
  }
  return 0;
}

bool is_stacked(const RootedPlaneTree& t, NodeId x, NodeId y) {
  return direction(t, x, y) >= 1 || direction(t, y, x) >= 1;
}

bool CoreTree::is_core(NodeId v) const {
  return std::binary_search(cores.begin(), cores.end(), v);
}

RootedPlaneTree CoreTree::as_tree(std::vector<NodeId>* order) const {
  RootedPlaneTree t;
  if (order) order->clear();
  if (core_root == kNoNode) return t;
  std::map<NodeId, std::vector<NodeId>> kids;  // below -> aboves, by direction
  for (auto [below, above] : edges) kids[below].push_back(above);
  for (auto& [below, list] : kids) {
    std::sort(list.begin(), list.end(), [&](NodeId a, NodeId b) {
      int da = dir_of.at({below, a}), db = dir_of.at({below, b});
      return da != db ? da < db : a < b;
    });
  }
  std::function<void(NodeId, NodeId)> grow = [&](NodeId core, NodeId parent) {
    NodeId id = t.add_node(parent);
    if (order) order->push_back(core);
    auto it = kids.find(core);
    if (it == kids.end()) return;
    for (NodeId above : it->second) grow(above, id);
  };
  grow(core_root, kNoNode);
  return t;
}

CoreTree core_tree(const RootedPlaneTree& t) {
  CoreTree ct;
  for (NodeId v = 0; v < t.size(); ++v)
    if (t.degree(v) >= 3) ct.cores.push_back(v);
  if (ct.cores.empty()) return ct;

  for (NodeId y : ct.cores) {
    NodeId up = t.parent(y);
    while (up != kNoNode && t.degree(up) < 3) up = t.parent(up);
    if (up == kNoNode) {
      ct.core_root = y;  // no core below: nearest to the root
    } else {
      ct.edges.emplace_back(up, y);
    }
  }
  std::sort(ct.edges.begin(), ct.edges.end());

  for (NodeId x : ct.cores) {
    for (NodeId y : ct.cores) {
      if (x == y) continue;
      int d = direction(t, x, y);
      if (d >= 1) {
        ct.dir_of[{x, y}] = d;
        ct.dir_of[{y, x}] = 0;
      }
    }
  }
  return ct;
}

RootedPlaneTree homeo_reduce(const RootedPlaneTree& t) {
  RootedPlaneTree out;
  if (t.size() == 0) return out;
  std::function<void(NodeId, NodeId)> walk = [&](NodeId v, NodeId kept) {
    for (NodeId c : t.children(v)) {
      if (t.degree(c) == 2) {
        walk(c, kept);
      } else {
        walk(c, out.add_node(kept));
      }
    }
  };
  walk(t.root(), out.add_node(kNoNode));
  return out;
}

namespace {

using Adjacency = std::vector<std::vector<int>>;

Adjacency undirected(const RootedPlaneTree& t) {
  Adjacency adj(t.size());
  for (NodeId v = 1; v < t.size(); ++v) {
    adj[v].push_back(t.parent(v));
    adj[t.parent(v)].push_back(v);
  }
  return adj;
}

std::string ahu(const Adjacency& adj, const std::vector<std::string>* labels,
                int v, int parent) {
  std::vector<std::string> sub;
  for (int c : adj[v])
    if (c != parent) sub.push_back(ahu(adj, labels, c, v));
  std::sort(sub.begin(), sub.end());
  std::string s = "(";
  if (labels) s += (*labels)[v];
  for (auto& x : sub) s += x;
  s += ')';
  return s;
}

std::vector<int> centroids(const Adjacency& adj) {
  int n = static_cast<int>(adj.size());
  if (n == 1) return {0};
  std::vector<int> sz(n, 1), best;
  std::function<void(int, int)> sizes = [&](int v, int parent) {
    for (int c : adj[v])
      if (c != parent) {
        sizes(c, v);
        sz[v] += sz[c];
      }
  };
  sizes(0, -1);
  int opt = n + 1;
  std::function<void(int, int)> scan = [&](int v, int parent) {
    int heaviest = n - sz[v];
    for (int c : adj[v])
      if (c != parent) heaviest = std::max(heaviest, sz[c]);
    if (heaviest < opt) {
      opt = heaviest;
      best.assign(1, v);
    } else if (heaviest == opt) {
      best.push_back(v);
    }
    for (int c : adj[v])
      if (c != parent) scan(c, v);
  };
  scan(0, -1);
  std::sort(best.begin(), best.end());
  return best;
}

std::string canon_impl(const RootedPlaneTree& t,
                       const std::vector<std::string>* labels, IsoMode mode) {
  if (t.size() == 0) return "";
  Adjacency adj = undirected(t);
  if (mode == IsoMode::Rooted) return ahu(adj, labels, t.root(), -1);
  std::string out;
  for (int c : centroids(adj)) {
    std::string s = ahu(adj, labels, c, -1);
    if (out.empty() || s < out) out = s;
  }
  return out;
}

}  // namespace

std::string canonical_form(const RootedPlaneTree& t, IsoMode mode) {
  return canon_impl(t, nullptr, mode);
}

std::string canonical_form_labeled(const RootedPlaneTree& t,
                                   const std::vector<std::string>& labels,
                                   IsoMode mode) {
  if (static_cast<int>(labels.size()) != t.size())
    throw std::invalid_argument("one label per node required");
  for (const auto& l : labels)
    if (l.find_first_of("()") != std::string::npos)
      throw std::invalid_argument("labels must not contain parentheses");
  return canon_impl(t, &labels, mode);
}

bool is_isomorphic(const RootedPlaneTree& a, const RootedPlaneTree& b,
                   IsoMode mode) {
  return canonical_form(a, mode) == canonical_form(b, mode);
}

RootedPlaneTree tree_from_edges(int n,
                                const std::vector<std::pair<int, int>>& edges,
                                int root, std::vector<int>* order) {
  if (root < 0 || root >= n) throw std::invalid_argument("bad root id");
  if (static_cast<int>(edges.size()) != n - 1)
    throw std::invalid_argument("edge list is not a tree");
  Adjacency adj(n);
  for (auto [a, b] : edges) {
    adj.at(a).push_back(b);
    adj.at(b).push_back(a);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  RootedPlaneTree t;
  if (order) order->clear();
  std::vector<NodeId> new_id(n, kNoNode);
  std::queue<int> bfs;
  new_id[root] = t.add_node(kNoNode);
  if (order) order->push_back(root);
  bfs.push(root);
  int seen = 1;
  while (!bfs.empty()) {
    int v = bfs.front();
    bfs.pop();
    for (int c : adj[v]) {
      if (new_id[c] != kNoNode) continue;
      new_id[c] = t.add_node(new_id[v]);
      if (order) order->push_back(c);
      bfs.push(c);
      ++seen;
    }
  }
  if (seen != n) throw std::invalid_argument("edge list is not a tree");
  return t;
}

}  // namespace k4t
