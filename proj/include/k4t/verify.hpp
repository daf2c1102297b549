#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "k4t/complex.hpp"
#include "k4t/tree.hpp"

namespace k4t {

struct GenParams {
  std::uint64_t seed = 0;
  int core_count = 5;   // target number of branching vertices
  int max_degree = 6;   // cap on any vertex degree
  bool binary_only = false;
  double subdivision_rate = 0.0;  // chance of a degree-2 chain per edge
};

// Deterministic in params. core_count == 0 gives a core-free path tree.
// The branching skeleton depends only on (seed, core_count, max_degree,
// binary_only); subdivision draws from a separate stream, so rate-0 and
// rate>0 twins share their skeleton. Throws std::invalid_argument on
// unsatisfiable params (core_count < 0 or max_degree < 3).
RootedPlaneTree gen_random_tree(const GenParams& params);

// Insert a 1-2 vertex degree-2 chain into each edge with the given
// probability. rate 0 returns the tree unchanged.
RootedPlaneTree subdivide(const RootedPlaneTree& t, double rate,
                          std::uint64_t seed);

// A mixed corpus for the property checks: core counts sweep 0..max_cores
// and every third tree is binary. Deterministic in seed.
std::vector<RootedPlaneTree> gen_corpus(std::uint64_t seed, int count,
                                        int max_cores, int max_degree,
                                        bool mix_binary = true);

struct CheckReport {
  std::string check_name;
  int trees_tested = 0;
  // (serialized tree, detail) per failing tree, for replay.
  std::vector<std::pair<std::string, std::string>> failures;

  bool passed() const { return failures.empty(); }
};

std::string report_to_json(const CheckReport& r);

// Every tuple with k == 1 or sum(p) == 2 has degree 0 in the built complex.
CheckReport check_isolation_lemma(const std::vector<RootedPlaneTree>& corpus);

// Per core x and direction i: the lambda_set members that dodge the
// isolation criterion number (d-1)(d-2)/2, as do the k == 2 tuples at x.
CheckReport check_counts(const std::vector<RootedPlaneTree>& corpus);

// Binary trees only (non-binary corpus members are skipped): pruned-complex
// leaf count == core-tree leaf count (two or more cores), every
// non-isolated tuple's degree equals the number of cores at its designated
// direction, and no two pruned vertices share a neighborhood.
CheckReport check_binary_structure(
    const std::vector<RootedPlaneTree>& corpus);

// Every peeled level whose clique has size >= 3 names cores that form an
// independent set in the core tree.
CheckReport check_clique_independence(
    const std::vector<RootedPlaneTree>& corpus);

// End to end on every tree with >= 2 cores, under both residual-K2
// orientations: recovered shape matches the core tree (unrooted), degrees
// match under an isomorphism, and the assembled tree matches the
// homeomorphism reduction of the source.
CheckReport roundtrip_check(const std::vector<RootedPlaneTree>& corpus);

// Subdividing edges must not change the complex: the exports and the
// reconstruction output of each tree and its subdivided twin are
// byte-identical.
CheckReport check_subdivision_invariance(
    const std::vector<RootedPlaneTree>& corpus, double rate,
    std::uint64_t seed);

// Which clause of the edge definition decided a pair.
enum class Clause { SameCore, NotStacked, PEntry, QEntry };

// Independent clause-by-clause edge predicate, kept deliberately separate
// from adjacent(): it re-derives stacking and direction per pair and walks
// the definition clauses literally. `which`, when given, receives the
// deciding clause.
bool clause_adjacent(const RootedPlaneTree& t, const InteractionVertex& u,
                     const InteractionVertex& w, const BuildOptions& opts,
                     Clause* which = nullptr);

struct EdgeDisagreement {
  int u = -1;  // enumeration indices
  int w = -1;
  bool a_edge = false;  // adjacent() under optsA
  bool b_edge = false;  // clause_adjacent() under optsB
  Clause clause = Clause::SameCore;
};

// adjacent() under optsA versus clause_adjacent() under optsB across all
// tuple pairs of t. Identical options must yield an empty list.
std::vector<EdgeDisagreement> differential_edge_oracle(
    const RootedPlaneTree& t, const BuildOptions& opts_a,
    const BuildOptions& opts_b);

}  // namespace k4t
