#include "k4t/reconstruct.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "k4t/errors.hpp"

namespace k4t {

namespace {

ComplexGraph import_json(const std::string& bytes) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("invalid json: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges"))
    throw SchemaError("expected object with vertices and edges");
  const auto& vs = doc["vertices"];
  const auto& es = doc["edges"];
  if (!vs.is_array() || !es.is_array())
    throw SchemaError("vertices and edges must be arrays");

  int n = static_cast<int>(vs.size());
  std::vector<InteractionVertex> labels;
  int with_labels = 0;
  for (int i = 0; i < n; ++i) {
    const auto& rec = vs[i];
    if (!rec.is_object() || !rec.contains("id") ||
        !rec["id"].is_number_integer() || rec["id"].get<int>() != i)
      throw SchemaError("vertex ids must be dense from 0 in order");
    bool full = rec.contains("core") && rec.contains("k") &&
                rec.contains("p") && rec.contains("q");
    if (full) {
      InteractionVertex v;
      try {
        v.core = rec["core"].get<int>();
        v.k = rec["k"].get<int>();
        v.p = rec["p"].get<std::vector<int>>();
        v.q = rec["q"].get<std::vector<int>>();
      } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("bad vertex label: ") + e.what());
      }
      labels.push_back(std::move(v));
      ++with_labels;
    }
  }
  if (with_labels != 0 && with_labels != n)
    throw SchemaError("either all vertices carry labels or none do");

  std::vector<std::pair<int, int>> edges;
  for (const auto& e : es) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer())
      throw SchemaError("each edge must be a pair of integer ids");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return ComplexGraph::from_edges(n, edges, std::move(labels));
}

ComplexGraph import_edgelist(const std::string& bytes) {
  std::vector<std::pair<int, int>> edges;
  int n = 0;
  std::istringstream in(bytes);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    long a, b;
    if (!(row >> a >> b)) throw SchemaError("edgelist line needs two ids");
    std::string rest;
    if (row >> rest) throw SchemaError("trailing content on edgelist line");
    if (a < 0 || b < 0) throw SchemaError("negative vertex id");
    edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
    n = std::max(n, static_cast<int>(std::max(a, b)) + 1);
  }
  return ComplexGraph::from_edges(n, edges);
}

}  // namespace

ComplexGraph import_graph(const std::string& bytes, GraphFormat format) {
  switch (format) {
    case GraphFormat::Json:
      return import_json(bytes);
    case GraphFormat::EdgeList:
      return import_edgelist(bytes);
    default:
      throw SchemaError("unsupported import format");
  }
}

DedupResult dedupe_classes(const ComplexGraph& pruned) {
  for (int v = 0; v < pruned.n; ++v)
    if (pruned.adj[v].empty())
      throw std::invalid_argument("dedupe requires a pruned graph");

  DedupResult out;
  out.class_of.assign(pruned.n, -1);
  std::map<std::vector<int>, int> by_neighborhood;
  for (int v = 0; v < pruned.n; ++v) {
    auto [it, fresh] = by_neighborhood.try_emplace(
        pruned.adj[v], static_cast<int>(out.classes.size()));
    if (fresh) out.classes.push_back({v, {}});
    out.class_of[v] = it->second;
    out.classes[it->second].members.push_back(v);
  }

  int nc = static_cast<int>(out.classes.size());
  std::vector<std::pair<int, int>> redges;
  for (int c = 0; c < nc; ++c) {
    std::set<int> nbr;
    for (int u : pruned.adj[out.classes[c].representative])
      nbr.insert(out.class_of[u]);
    for (int d : nbr)
      if (c < d) redges.emplace_back(c, d);
  }
  out.reduced = ComplexGraph::from_edges(nc, redges);
  return out;
}

std::vector<PeelLevel> peel_levels(const ComplexGraph& reduced,
                                   const PeelOptions& opts,
                                   std::vector<std::string>* diagnostics) {
  auto fail = [](const std::string& what) {
    throw ReconstructionError("peel", what);
  };
  std::vector<bool> alive(reduced.n, true);
  int alive_count = reduced.n;
  auto residual_degree = [&](int v) {
    int d = 0;
    for (int u : reduced.adj[v]) d += alive[u];
    return d;
  };

  std::vector<PeelLevel> levels;
  while (alive_count > 0) {
    std::vector<int> deg(reduced.n, 0);
    int edge_ends = 0;
    for (int v = 0; v < reduced.n; ++v)
      if (alive[v]) {
        deg[v] = residual_degree(v);
        edge_ends += deg[v];
      }
    if (edge_ends == 0) fail("residual is nonempty but has no edges");

    PeelLevel level;
    if (alive_count == 2) {  // residual K2: orientation is arbitrary
      std::vector<int> both;
      for (int v = 0; v < reduced.n; ++v)
        if (alive[v]) both.push_back(v);
      int x = opts.k2_pick_high ? both[1] : both[0];
      int y = opts.k2_pick_high ? both[0] : both[1];
      if (diagnostics)
        diagnostics->push_back("peel: residual K2 on classes {" +
                               std::to_string(both[0]) + "," +
                               std::to_string(both[1]) + "}, leaf side " +
                               std::to_string(x) + " chosen arbitrarily");
      level.pairs.emplace_back(x, y);
      alive[x] = alive[y] = false;
      alive_count = 0;
      levels.push_back(std::move(level));
      continue;
    }

    std::vector<int> leaves;
    for (int v = 0; v < reduced.n; ++v)
      if (alive[v] && deg[v] == 1) leaves.push_back(v);
    if (leaves.empty()) fail("residual has no leaves");

    std::map<int, int> leaf_of;  // clique node -> its unique leaf
    for (int x : leaves) {
      int y = -1;
      for (int u : reduced.adj[x])
        if (alive[u]) y = u;
      if (deg[y] == 1) fail("leaf paired with another leaf");
      if (!leaf_of.emplace(y, x).second)
        fail("clique node adjacent to two residual leaves");
      level.pairs.emplace_back(x, y);
    }
    std::vector<int> clique;
    for (auto [y, x] : leaf_of) clique.push_back(y);
    for (size_t a = 0; a < clique.size(); ++a)
      for (size_t b = a + 1; b < clique.size(); ++b)
        if (!reduced.has_edge(clique[a], clique[b]))
          fail("level neighbors do not form a clique");

    std::sort(level.pairs.begin(), level.pairs.end());
    for (auto [x, y] : level.pairs) {
      alive[x] = alive[y] = false;
      alive_count -= 2;
    }
    levels.push_back(std::move(level));
  }
  return levels;
}

RootedPlaneTree CoreShape::as_tree(std::vector<int>* order) const {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < size(); ++v)
    for (int u : adj[v])
      if (v < u) edges.emplace_back(v, u);
  return tree_from_edges(size(), edges, 0, order);
}

CoreShape build_core_shape(const std::vector<PeelLevel>& levels,
                           const ComplexGraph& reduced) {
  int last = static_cast<int>(levels.size()) - 1;
  if (last < 0) throw ReconstructionError("shape", "no levels to place");

  CoreShape shape;
  shape.adj.emplace_back();  // z0
  shape.node_pair.emplace_back(-1, -1);
  shape.attachment.push_back(CoreShape::Attachment::Hub);
  std::vector<std::vector<int>> node_id(levels.size());
  for (int i = 0; i <= last; ++i)
    for (size_t j = 0; j < levels[i].pairs.size(); ++j) {
      node_id[i].push_back(shape.size());
      shape.adj.emplace_back();
      shape.node_pair.emplace_back(i, static_cast<int>(j));
      shape.attachment.push_back(CoreShape::Attachment::Hub);
    }

  auto link = [&](int a, int b) {
    shape.adj[a].push_back(b);
    shape.adj[b].push_back(a);
  };
  for (int i = 0; i <= last; ++i) {
    for (size_t j = 0; j < levels[i].pairs.size(); ++j) {
      int self = node_id[i][j];
      if (i == last) {
        shape.attachment[self] = CoreShape::Attachment::Hub;
        link(0, self);
        continue;
      }
      int y = levels[i].pairs[j].second;
      int parent = -1;
      for (int m = i + 1; m <= last && parent == -1; ++m) {
        std::vector<int> hits;
        for (size_t l = 0; l < levels[m].pairs.size(); ++l)
          if (reduced.has_edge(levels[m].pairs[l].first, y))
            hits.push_back(node_id[m][l]);
        if (hits.size() > 1)
          throw ReconstructionError(
              "shape", "multiple parents at the first matching level");
        if (hits.size() == 1) parent = hits[0];
      }
      if (parent == -1) {
        shape.attachment[self] = CoreShape::Attachment::Fallback;
        link(0, self);
      } else {
        shape.attachment[self] = CoreShape::Attachment::MinRule;
        link(parent, self);
      }
    }
  }
  for (auto& list : shape.adj) std::sort(list.begin(), list.end());
  return shape;
}

namespace {

// Smallest k >= 3 with (k-1)(k-2)/2 == t, or -1.
int triangular_degree(int t) {
  for (int k = 3; static_cast<long>(k - 1) * (k - 2) / 2 <= t; ++k)
    if ((k - 1) * (k - 2) / 2 == t) return k;
  return -1;
}

}  // namespace

std::vector<int> recover_degrees(const std::vector<PeelLevel>& levels,
                                 const DedupResult& dedup,
                                 const CoreShape& shape) {
  auto fail = [](const std::string& what) {
    throw ReconstructionError("degrees", what);
  };
  auto mult = [&](int cls) { return dedup.classes.at(cls).multiplicity(); };

  std::vector<int> degrees(shape.size(), -1);
  for (int v = 1; v < shape.size(); ++v) {
    auto [i, j] = shape.node_pair[v];
    int t = mult(levels[i].pairs[j].second);
    degrees[v] = triangular_degree(t);
    if (degrees[v] < 0)
      fail("class size " + std::to_string(t) +
           " admits no integer degree");
  }
  int hub_t = -1;
  for (int child : shape.adj[0]) {
    auto [i, j] = shape.node_pair[child];
    int t = mult(levels[i].pairs[j].first);
    if (hub_t == -1) hub_t = t;
    if (t != hub_t) fail("children of z0 disagree on the hub class size");
  }
  if (hub_t < 0) fail("z0 has no children");
  degrees[0] = triangular_degree(hub_t);
  if (degrees[0] < 0)
    fail("class size " + std::to_string(hub_t) +
         " admits no integer degree");
  return degrees;
}

RootedPlaneTree assemble_tree(const CoreShape& shape,
                              const std::vector<int>& degrees) {
  if (static_cast<int>(degrees.size()) != shape.size())
    throw std::invalid_argument("one degree per shape node required");
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < shape.size(); ++v)
    for (int u : shape.adj[v])
      if (v < u) edges.emplace_back(v, u);

  int next = shape.size();
  int star = -1;
  for (int v = 0; v < shape.size(); ++v) {
    int want = degrees[v];
    if (want < 3 || want < shape.shape_degree(v))
      throw ReconstructionError(
          "assemble", "degree " + std::to_string(want) +
                          " under the shape degree at node " +
                          std::to_string(v));
    for (int extra = shape.shape_degree(v); extra < want; ++extra) {
      edges.emplace_back(v, next);
      if (star == -1) star = next;
      ++next;
    }
  }
  if (star == -1)
    throw ReconstructionError("assemble", "no pendant leaf to plant");
  return tree_from_edges(next, edges, star);
}

ReconstructionResult reconstruct(const ComplexGraph& g,
                                 const ReconstructOptions& opts) {
  ReconstructionResult r;
  ComplexGraph pruned = prune_isolated(g);
  if (pruned.n == 0)
    throw InsufficientDataError(
        "no interaction edges survive pruning; the source tree has at most "
        "one core");
  DedupResult dd = dedupe_classes(pruned);
  {
    std::string sizes;
    for (const auto& c : dd.classes)
      sizes += (sizes.empty() ? "" : ",") + std::to_string(c.multiplicity());
    r.diagnostics.push_back("dedupe: " + std::to_string(dd.classes.size()) +
                            " classes, sizes [" + sizes + "]");
  }
  std::vector<PeelLevel> levels =
      peel_levels(dd.reduced, opts.peel, &r.diagnostics);
  {
    std::string sizes;
    for (const auto& lv : levels)
      sizes += (sizes.empty() ? "" : ",") + std::to_string(lv.pairs.size());
    r.diagnostics.push_back("peel: level sizes [" + sizes + "]");
    for (size_t i = 1; i < levels.size(); ++i)
      if (levels[i].pairs.size() > levels[i - 1].pairs.size())
        r.diagnostics.push_back(
            "peel: level " + std::to_string(i + 1) +
            " larger than its predecessor (not fatal)");
  }
  r.shape = build_core_shape(levels, dd.reduced);
  int fallbacks = 0;
  for (auto a : r.shape.attachment)
    fallbacks += a == CoreShape::Attachment::Fallback;
  r.diagnostics.push_back("shape: " + std::to_string(r.shape.size()) +
                          " nodes, " + std::to_string(fallbacks) +
                          " fallback attachments");
  r.degrees = recover_degrees(levels, dd, r.shape);
  r.assembled = assemble_tree(r.shape, r.degrees);
  return r;
}

std::string result_to_json(const ReconstructionResult& r) {
  nlohmann::ordered_json doc;
  doc["coreTree"] = serialize_tree(r.shape.as_tree());
  nlohmann::ordered_json degs = nlohmann::ordered_json::object();
  for (int v = 0; v < r.shape.size(); ++v)
    degs[std::to_string(v)] = r.degrees[v];
  doc["degrees"] = std::move(degs);
  doc["assembled"] = serialize_tree(r.assembled);
  doc["diagnostics"] = r.diagnostics;
  return doc.dump() + "\n";
}

}  // namespace k4t
