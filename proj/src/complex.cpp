#include "k4t/complex.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "k4t/errors.hpp"

namespace k4t {

int InteractionVertex::entry(int i) const {
  if (i < 1 || i > len())
    throw std::invalid_argument("entry index out of range");
  int lp = static_cast<int>(p.size());
  return i <= lp ? p[i - 1] : q[i - lp - 1];
}

int InteractionVertex::sum_p() const {
  return std::accumulate(p.begin(), p.end(), 0);
}

int ComplexGraph::degree(int v) const {
  return static_cast<int>(adj.at(v).size());
}

bool ComplexGraph::has_edge(int a, int b) const {
  const auto& list = adj.at(a);
  return std::binary_search(list.begin(), list.end(), b);
}

int ComplexGraph::edge_count() const {
  int twice = 0;
  for (const auto& list : adj) twice += static_cast<int>(list.size());
  return twice / 2;
}

std::vector<std::pair<int, int>> ComplexGraph::edge_list() const {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v)
    for (int u : adj[v])
      if (v < u) edges.emplace_back(v, u);
  std::sort(edges.begin(), edges.end());
  return edges;
}

ComplexGraph ComplexGraph::from_edges(
    int n, const std::vector<std::pair<int, int>>& edges,
    std::vector<InteractionVertex> labels) {
  if (n < 0) throw SchemaError("negative vertex count");
  if (!labels.empty() && static_cast<int>(labels.size()) != n)
    throw SchemaError("label count does not match vertex count");
  ComplexGraph g;
  g.n = n;
  g.adj.resize(n);
  g.labels = std::move(labels);
  std::vector<std::pair<int, int>> seen;
  for (auto [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw SchemaError("edge endpoint out of range");
    if (a == b) throw SchemaError("self-loop");
    seen.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw SchemaError("duplicate edge");
  for (auto [a, b] : seen) {
    g.adj[a].push_back(b);
    g.adj[b].push_back(a);
  }
  for (auto& list : g.adj) std::sort(list.begin(), list.end());
  return g;
}

namespace {

void compositions(int total, int parts, std::vector<int>& cur,
                  const std::function<void()>& emit) {
  if (parts == 0) {
    if (total == 0) emit();
    return;
  }
  for (int first = 0; first <= total; ++first) {
    cur.push_back(first);
    compositions(total - first, parts - 1, cur, emit);
    cur.pop_back();
  }
}

void require_planted(const RootedPlaneTree& t) {
  if (!t.is_planted())
    throw std::invalid_argument("operation requires a planted tree");
}

// Core logic shared by adjacent() and the build loop; directions are the
// two direction() values between the cores (u.core != w.core).
bool adjacent_given_dirs(const InteractionVertex& u,
                         const InteractionVertex& w, int duw, int dwu,
                         const BuildOptions& opts) {
  if (duw == 0 && dwu == 0) return u.k + w.k >= 4;
  const InteractionVertex& lower = duw >= 1 ? u : w;
  const InteractionVertex& upper = duw >= 1 ? w : u;
  int i = duw >= 1 ? duw : dwu;
  int e = lower.entry(i);
  int s = e + upper.k;
  if (s >= 5) return true;
  if (s < 4) return false;
  if (i <= static_cast<int>(lower.p.size())) return e != lower.sum_p();
  return opts.rule3_boundary == BuildOptions::Rule3Boundary::Extended;
}

}  // namespace

std::vector<InteractionVertex> enumerate_vertices(const RootedPlaneTree& t,
                                                  bool allow_empty_q) {
  require_planted(t);
  std::vector<InteractionVertex> out;
  for (NodeId x = 0; x < t.size(); ++x) {
    int d = t.degree(x);
    if (d < 3) continue;
    for (int k = 0; k <= 2; ++k) {
      int max_lp = allow_empty_q ? d - 1 : d - 2;
      for (int lp = 1; lp <= max_lp; ++lp) {
        int lq = d - 1 - lp;
        for (int sp = 1; sp <= 3 - k; ++sp) {
          std::vector<int> p, q;
          compositions(sp, lp, p, [&] {
            compositions(3 - k - sp, lq, q, [&] {
              out.push_back({k, x, p, q});
            });
          });
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int weight_toward(const RootedPlaneTree& t, const InteractionVertex& v,
                  NodeId y) {
  int d = direction(t, v.core, y);
  return d == 0 ? v.k : v.entry(d);
}

bool adjacent(const RootedPlaneTree& t, const InteractionVertex& u,
              const InteractionVertex& w, const BuildOptions& opts) {
  if (u.core == w.core) {
    if (u == w) return false;
    return opts.same_core_edges == BuildOptions::SameCoreEdges::Rule1 &&
           u.k + w.k >= 4;
  }
  return adjacent_given_dirs(u, w, direction(t, u.core, w.core),
                             direction(t, w.core, u.core), opts);
}

ComplexGraph build_complex(const RootedPlaneTree& t,
                           const BuildOptions& opts) {
  std::vector<InteractionVertex> vs = enumerate_vertices(t, opts.allow_empty_q);
  int n = static_cast<int>(vs.size());

  // Pairwise core directions, computed once.
  std::vector<NodeId> cores;
  for (NodeId v = 0; v < t.size(); ++v)
    if (t.degree(v) >= 3) cores.push_back(v);
  std::vector<int> core_idx(t.size(), -1);
  for (int i = 0; i < static_cast<int>(cores.size()); ++i)
    core_idx[cores[i]] = i;
  int c = static_cast<int>(cores.size());
  std::vector<std::vector<int>> dir(c, std::vector<int>(c, 0));
  for (int a = 0; a < c; ++a)
    for (int b = 0; b < c; ++b)
      if (a != b) dir[a][b] = direction(t, cores[a], cores[b]);

  ComplexGraph g;
  g.n = n;
  g.adj.resize(n);
  bool rule1_same_core =
      opts.same_core_edges == BuildOptions::SameCoreEdges::Rule1;
  for (int a = 0; a < n; ++a) {
    int ca = core_idx[vs[a].core];
    for (int b = a + 1; b < n; ++b) {
      bool hit;
      if (vs[a].core == vs[b].core) {
        hit = rule1_same_core && vs[a].k + vs[b].k >= 4;
      } else {
        int cb = core_idx[vs[b].core];
        hit = adjacent_given_dirs(vs[a], vs[b], dir[ca][cb], dir[cb][ca],
                                  opts);
      }
      if (hit) {
        g.adj[a].push_back(b);
        g.adj[b].push_back(a);
      }
    }
  }
  g.labels = std::move(vs);
  if (!opts.include_isolated) return prune_isolated(g);
  return g;
}

ComplexGraph prune_isolated(const ComplexGraph& g) {
  std::vector<int> keep, remap(g.n, -1);
  for (int v = 0; v < g.n; ++v)
    if (!g.adj[v].empty()) {
      remap[v] = static_cast<int>(keep.size());
      keep.push_back(v);
    }
  ComplexGraph out;
  out.n = static_cast<int>(keep.size());
  out.adj.resize(out.n);
  for (int v : keep)
    for (int u : g.adj[v]) out.adj[remap[v]].push_back(remap[u]);
  if (g.labeled())
    for (int v : keep) out.labels.push_back(g.labels[v]);
  return out;
}

std::vector<InteractionVertex> lambda_set(const RootedPlaneTree& t, NodeId x,
                                          int i) {
  require_planted(t);
  if (x < 0 || x >= t.size() || t.degree(x) < 3)
    throw std::invalid_argument("not a core");
  if (i < 1 || i > t.degree(x) - 1)
    throw std::invalid_argument("direction out of range");
  std::vector<InteractionVertex> out;
  for (auto& v : enumerate_vertices(t))
    if (v.core == x && v.entry(i) >= 2) out.push_back(std::move(v));
  return out;
}

namespace {

std::string bracketed(const std::vector<int>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s + "]";
}

}  // namespace

std::string export_graph(const ComplexGraph& g, GraphFormat format) {
  auto edges = g.edge_list();
  switch (format) {
    case GraphFormat::Json: {
      nlohmann::ordered_json doc;
      doc["vertices"] = nlohmann::ordered_json::array();
      for (int v = 0; v < g.n; ++v) {
        nlohmann::ordered_json rec;
        rec["id"] = v;
        if (g.labeled()) {
          rec["core"] = g.labels[v].core;
          rec["k"] = g.labels[v].k;
          rec["p"] = g.labels[v].p;
          rec["q"] = g.labels[v].q;
        }
        doc["vertices"].push_back(std::move(rec));
      }
      doc["edges"] = nlohmann::ordered_json::array();
      for (auto [a, b] : edges) doc["edges"].push_back({a, b});
      return doc.dump() + "\n";
    }
    case GraphFormat::EdgeList: {
      std::string out;
      for (auto [a, b] : edges)
        out += std::to_string(a) + " " + std::to_string(b) + "\n";
      return out;
    }
    case GraphFormat::Dot: {
      std::string out = "graph K4T {\n";
      for (int v = 0; v < g.n; ++v) {
        out += "  " + std::to_string(v);
        if (g.labeled()) {
          const auto& l = g.labels[v];
          out += " [label=\"(" + std::to_string(l.k) + "," +
                 std::to_string(l.core) + "," + bracketed(l.p) + "," +
                 bracketed(l.q) + ")\"]";
        }
        out += ";\n";
      }
      for (auto [a, b] : edges)
        out += "  " + std::to_string(a) + " -- " + std::to_string(b) + ";\n";
      return out + "}\n";
    }
  }
  throw std::invalid_argument("unknown export format");
}

}  // namespace k4t
