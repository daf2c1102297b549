#include "k4t/verify.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "k4t/errors.hpp"
#include "k4t/reconstruct.hpp"

namespace k4t {

namespace {

// Deterministic across platforms: mt19937_64 output is fully specified.
int pick(std::mt19937_64& rng, int n) {
  return static_cast<int>(rng() % static_cast<std::uint64_t>(n));
}

double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

constexpr std::uint64_t kSubdivideStream = 0x9e3779b97f4a7c15ULL;

}  // namespace

RootedPlaneTree gen_random_tree(const GenParams& params) {
  if (params.core_count < 0) throw std::invalid_argument("core_count < 0");
  if (params.max_degree < 3) throw std::invalid_argument("max_degree < 3");
  std::mt19937_64 rng(params.seed);

  RootedPlaneTree t;
  NodeId star = t.add_node(kNoNode);
  if (params.core_count == 0) {
    NodeId cur = t.add_node(star);
    for (int extra = 1 + pick(rng, 4); extra > 0; --extra)
      cur = t.add_node(cur);
  } else {
    auto expand = [&](NodeId leaf, std::vector<NodeId>& leaves) {
      int kids = params.binary_only
                     ? 2
                     : 2 + pick(rng, params.max_degree - 2);
      for (int c = 0; c < kids; ++c) leaves.push_back(t.add_node(leaf));
    };
    std::vector<NodeId> leaves;
    expand(t.add_node(star), leaves);
    for (int cores = 1; cores < params.core_count; ++cores) {
      int at = pick(rng, static_cast<int>(leaves.size()));
      NodeId leaf = leaves[at];
      leaves.erase(leaves.begin() + at);
      expand(leaf, leaves);
    }
    if (!params.binary_only) {  // vary degrees beyond the expansion draw
      for (NodeId v = 0; v < t.size(); ++v)
        if (t.degree(v) >= 3 && t.degree(v) < params.max_degree &&
            unit(rng) < 1.0 / 3)
          t.add_node(v);
    }
  }
  if (params.subdivision_rate > 0)
    return subdivide(t, params.subdivision_rate,
                     params.seed ^ kSubdivideStream);
  return t;
}

RootedPlaneTree subdivide(const RootedPlaneTree& t, double rate,
                          std::uint64_t seed) {
  if (rate <= 0) return t;
  std::mt19937_64 rng(seed);
  RootedPlaneTree out;
  std::vector<NodeId> map(t.size(), kNoNode);
  // add_node only appends, so in any tree ids grow from parent to child and
  // run in sibling order. Creating the twins in id order therefore keeps
  // both the plane structure and the relative id order of the originals;
  // the latter is what keeps tuple enumeration aligned across twins.
  map[t.root()] = out.add_node(kNoNode);
  for (NodeId v = 1; v < t.size(); ++v) {
    NodeId attach = map[t.parent(v)];
    if (unit(rng) < rate)
      for (int len = 1 + pick(rng, 2); len > 0; --len)
        attach = out.add_node(attach);
    map[v] = out.add_node(attach);
  }
  return out;
}

std::vector<RootedPlaneTree> gen_corpus(std::uint64_t seed, int count,
                                        int max_cores, int max_degree,
                                        bool mix_binary) {
  std::vector<RootedPlaneTree> corpus;
  corpus.reserve(count);
  for (int i = 0; i < count; ++i) {
    GenParams p;
    p.seed = seed * 1000003ULL + static_cast<std::uint64_t>(i);
    p.max_degree = max_degree;
    p.binary_only = mix_binary && i % 3 == 0;
    int slot = i % 10;  // mostly >= 2 cores, with degenerates sprinkled in
    if (slot == 4)
      p.core_count = 0;
    else if (slot == 8)
      p.core_count = 1;
    else
      p.core_count = 2 + (i * 7 + slot) % std::max(1, max_cores - 1);
    if (i % 5 == 2) p.subdivision_rate = 0.3;
    corpus.push_back(gen_random_tree(p));
  }
  return corpus;
}

std::string report_to_json(const CheckReport& r) {
  nlohmann::ordered_json doc;
  doc["check"] = r.check_name;
  doc["treesTested"] = r.trees_tested;
  doc["passed"] = r.passed();
  auto fails = nlohmann::ordered_json::array();
  for (const auto& [tree, detail] : r.failures)
    fails.push_back({{"tree", tree}, {"detail", detail}});
  doc["failures"] = std::move(fails);
  return doc.dump() + "\n";
}

namespace {

void add_failure(CheckReport& r, const RootedPlaneTree& t,
                 const std::string& detail) {
  r.failures.emplace_back(serialize_tree(t), detail);
}

std::string tuple_str(const InteractionVertex& v) {
  std::string s = "(" + std::to_string(v.k) + "," + std::to_string(v.core);
  auto block = [&](const std::vector<int>& xs) {
    s += ",[";
    for (size_t i = 0; i < xs.size(); ++i)
      s += (i ? "," : "") + std::to_string(xs[i]);
    s += "]";
  };
  block(v.p);
  block(v.q);
  return s + ")";
}

// Lemma criterion for "cannot carry an edge", independent of the graph.
bool lemma_isolated(const InteractionVertex& v) {
  return v.k == 1 || v.sum_p() == 2;
}

bool is_binary(const RootedPlaneTree& t) {
  for (NodeId v = 1; v < t.size(); ++v)
    if (!t.is_leaf(v) && t.degree(v) != 3) return false;
  return true;
}

}  // namespace

CheckReport check_isolation_lemma(const std::vector<RootedPlaneTree>& corpus) {
  CheckReport r;
  r.check_name = "isolation-lemma";
  for (const auto& t : corpus) {
    ++r.trees_tested;
    ComplexGraph g = build_complex(t);
    for (int v = 0; v < g.n; ++v)
      if (lemma_isolated(g.labels[v]) && g.degree(v) > 0)
        add_failure(r, t, tuple_str(g.labels[v]) + " has degree " +
                              std::to_string(g.degree(v)));
  }
  return r;
}

CheckReport check_counts(const std::vector<RootedPlaneTree>& corpus) {
  CheckReport r;
  r.check_name = "lambda-counts";
  for (const auto& t : corpus) {
    ++r.trees_tested;
    for (NodeId x : core_tree(t).cores) {
      int d = t.degree(x);
      int tri = (d - 1) * (d - 2) / 2;
      int k2 = 0;
      for (const auto& v : enumerate_vertices(t))
        k2 += v.core == x && v.k == 2;
      if (k2 != tri)
        add_failure(r, t, "core " + std::to_string(x) + ": " +
                              std::to_string(k2) + " k=2 tuples, expected " +
                              std::to_string(tri));
      for (int i = 1; i <= d - 1; ++i) {
        int live = 0;
        for (const auto& v : lambda_set(t, x, i)) live += !lemma_isolated(v);
        if (live != tri)
          add_failure(r, t, "core " + std::to_string(x) + " direction " +
                                std::to_string(i) + ": " +
                                std::to_string(live) +
                                " live lambda members, expected " +
                                std::to_string(tri));
      }
    }
  }
  return r;
}

CheckReport check_binary_structure(
    const std::vector<RootedPlaneTree>& corpus) {
  CheckReport r;
  r.check_name = "binary-structure";
  for (const auto& t : corpus) {
    if (!is_binary(t)) continue;
    ++r.trees_tested;
    CoreTree ft = core_tree(t);
    ComplexGraph g = build_complex(t);
    ComplexGraph pruned = prune_isolated(g);

    if (ft.cores.size() >= 2) {
      int complex_leaves = 0;
      for (int v = 0; v < pruned.n; ++v) complex_leaves += pruned.degree(v) == 1;
      std::map<NodeId, int> core_deg;
      for (auto [a, b] : ft.edges) ++core_deg[a], ++core_deg[b];
      int ft_leaves = 0;
      for (NodeId c : ft.cores) ft_leaves += core_deg[c] == 1;
      if (complex_leaves != ft_leaves)
        add_failure(r, t, std::to_string(complex_leaves) +
                              " complex leaves vs " +
                              std::to_string(ft_leaves) + " core-tree leaves");
    }

    for (int v = 0; v < g.n; ++v) {
      const InteractionVertex& lv = g.labels[v];
      if (lemma_isolated(lv)) continue;
      int dir = 0;
      if (lv.k == 0) {
        std::vector<int> big;
        for (int i = 1; i <= lv.len(); ++i)
          if (lv.entry(i) >= 2) big.push_back(i);
        if (big.size() != 1) {
          add_failure(r, t, tuple_str(lv) + " lacks a unique entry >= 2");
          continue;
        }
        dir = big.front();
      }
      int expected = 0;
      for (NodeId y : ft.cores)
        expected += y != lv.core && direction(t, lv.core, y) == dir;
      if (g.degree(v) != expected)
        add_failure(r, t, tuple_str(lv) + " degree " +
                              std::to_string(g.degree(v)) + ", expected " +
                              std::to_string(expected) + " (direction " +
                              std::to_string(dir) + ")");
    }

    std::set<std::vector<int>> hoods(pruned.adj.begin(), pruned.adj.end());
    if (static_cast<int>(hoods.size()) != pruned.n)
      add_failure(r, t, "duplicate neighborhoods in the pruned complex");
  }
  return r;
}

CheckReport check_clique_independence(
    const std::vector<RootedPlaneTree>& corpus) {
  CheckReport r;
  r.check_name = "clique-independence";
  for (const auto& t : corpus) {
    ComplexGraph pruned = prune_isolated(build_complex(t));
    if (pruned.n == 0) continue;
    ++r.trees_tested;
    CoreTree ft = core_tree(t);
    std::set<std::pair<NodeId, NodeId>> ft_edges;
    for (auto [a, b] : ft.edges) {
      ft_edges.emplace(a, b);
      ft_edges.emplace(b, a);
    }
    DedupResult dd = dedupe_classes(pruned);
    std::vector<PeelLevel> levels;
    try {
      levels = peel_levels(dd.reduced);
    } catch (const ReconstructionError& e) {
      add_failure(r, t, std::string("peel failed: ") + e.what());
      continue;
    }
    for (size_t li = 0; li < levels.size(); ++li) {
      if (levels[li].pairs.size() < 3) continue;
      std::vector<NodeId> cores;
      for (auto [x, y] : levels[li].pairs)
        cores.push_back(pruned.labels[dd.classes[y].representative].core);
      for (size_t a = 0; a < cores.size(); ++a)
        for (size_t b = a + 1; b < cores.size(); ++b)
          if (cores[a] == cores[b] || ft_edges.count({cores[a], cores[b]}))
            add_failure(r, t, "level " + std::to_string(li + 1) +
                                  " cliques cores " +
                                  std::to_string(cores[a]) + " and " +
                                  std::to_string(cores[b]) +
                                  " which touch in the core tree");
    }
  }
  return r;
}

CheckReport roundtrip_check(const std::vector<RootedPlaneTree>& corpus) {
  CheckReport r;
  r.check_name = "roundtrip";
  for (const auto& t : corpus) {
    CoreTree ft = core_tree(t);
    if (ft.cores.size() < 2) continue;
    ++r.trees_tested;

    std::vector<NodeId> ft_order;
    RootedPlaneTree ft_tree = ft.as_tree(&ft_order);
    std::string want_shape = canonical_form(ft_tree, IsoMode::Unrooted);
    std::vector<std::string> ft_labels;
    for (int v = 0; v < ft_tree.size(); ++v)
      ft_labels.push_back(std::to_string(t.degree(ft_order[v])));
    std::string want_degrees =
        canonical_form_labeled(ft_tree, ft_labels, IsoMode::Unrooted);
    RootedPlaneTree reduced = homeo_reduce(t);

    ComplexGraph g = build_complex(t);
    for (bool high : {false, true}) {
      ReconstructOptions opts;
      opts.peel.k2_pick_high = high;
      std::string tag = high ? " (K2 flipped)" : "";
      ReconstructionResult res;
      try {
        res = reconstruct(g, opts);
      } catch (const ReconstructionError& e) {
        add_failure(r, t, std::string("reconstruct failed: ") + e.what() + tag);
        continue;
      }
      std::vector<int> order;
      RootedPlaneTree shape_tree = res.shape.as_tree(&order);
      if (canonical_form(shape_tree, IsoMode::Unrooted) != want_shape)
        add_failure(r, t, "recovered shape differs from the core tree" + tag);
      std::vector<std::string> labels;
      for (int v = 0; v < shape_tree.size(); ++v)
        labels.push_back(std::to_string(res.degrees[order[v]]));
      if (canonical_form_labeled(shape_tree, labels, IsoMode::Unrooted) !=
          want_degrees)
        add_failure(r, t, "recovered degrees mismatch the source cores" + tag);
      if (!is_isomorphic(res.assembled, reduced, IsoMode::Unrooted))
        add_failure(r, t,
                    "assembled tree differs from the reduced source" + tag);
    }
  }
  return r;
}

CheckReport check_subdivision_invariance(
    const std::vector<RootedPlaneTree>& corpus, double rate,
    std::uint64_t seed) {
  CheckReport r;
  r.check_name = "subdivision-invariance";
  std::uint64_t salt = 0;
  for (const auto& t : corpus) {
    ++r.trees_tested;
    RootedPlaneTree twin = subdivide(t, rate, seed + salt++);
    ComplexGraph ga = build_complex(t);
    ComplexGraph gb = build_complex(twin);
    if (export_graph(ga, GraphFormat::EdgeList) !=
        export_graph(gb, GraphFormat::EdgeList)) {
      add_failure(r, t, "edge lists diverge after subdivision");
      continue;
    }
    bool same_labels = ga.n == gb.n;
    for (int v = 0; same_labels && v < ga.n; ++v)
      same_labels = ga.labels[v].k == gb.labels[v].k &&
                    ga.labels[v].p == gb.labels[v].p &&
                    ga.labels[v].q == gb.labels[v].q;
    if (!same_labels) {
      add_failure(r, t, "tuple labels diverge after subdivision");
      continue;
    }
    std::string ra, rb;
    try {
      ra = result_to_json(reconstruct(ga));
    } catch (const InsufficientDataError&) {
      ra = "(insufficient)";
    }
    try {
      rb = result_to_json(reconstruct(gb));
    } catch (const InsufficientDataError&) {
      rb = "(insufficient)";
    }
    if (ra != rb)
      add_failure(r, t, "reconstruction output diverges after subdivision");
  }
  return r;
}

bool clause_adjacent(const RootedPlaneTree& t, const InteractionVertex& u,
                     const InteractionVertex& w, const BuildOptions& opts,
                     Clause* which) {
  auto decide = [&](Clause c) {
    if (which) *which = c;
  };
  if (u.core == w.core) {
    decide(Clause::SameCore);
    if (u == w) return false;
    return opts.same_core_edges == BuildOptions::SameCoreEdges::Rule1 &&
           u.k + w.k >= 4;
  }
  if (!is_stacked(t, u.core, w.core)) {
    decide(Clause::NotStacked);
    return u.k + w.k >= 4;
  }
  const InteractionVertex& lower = direction(t, u.core, w.core) >= 1 ? u : w;
  const InteractionVertex& upper = &lower == &u ? w : u;
  int i = direction(t, lower.core, upper.core);
  int e = lower.entry(i);
  int k2 = upper.k;
  if (i <= static_cast<int>(lower.p.size())) {
    decide(Clause::PEntry);
    if (e > 4 - k2) return true;
    // boundary: some other p entry must be positive
    return e + k2 == 4 && lower.sum_p() - e >= 1;
  }
  decide(Clause::QEntry);
  if (opts.rule3_boundary == BuildOptions::Rule3Boundary::Extended)
    return e >= 4 - k2;
  return e > 4 - k2;
}

std::vector<EdgeDisagreement> differential_edge_oracle(
    const RootedPlaneTree& t, const BuildOptions& opts_a,
    const BuildOptions& opts_b) {
  // The tuple set itself only depends on allow_empty_q; compare over the
  // union so neither side hides vertices from the other.
  std::vector<InteractionVertex> vs = enumerate_vertices(
      t, opts_a.allow_empty_q || opts_b.allow_empty_q);
  std::vector<EdgeDisagreement> out;
  for (size_t i = 0; i < vs.size(); ++i)
    for (size_t j = i + 1; j < vs.size(); ++j) {
      bool a = adjacent(t, vs[i], vs[j], opts_a);
      Clause which;
      bool b = clause_adjacent(t, vs[i], vs[j], opts_b, &which);
      if (a != b)
        out.push_back({static_cast<int>(i), static_cast<int>(j), a, b, which});
    }
  return out;
}

}  // namespace k4t
