#pragma once

#include <string>
#include <utility>
#include <vector>

#include "k4t/complex.hpp"
#include "k4t/tree.hpp"

namespace k4t {

// Parses json/edgelist bytes produced by export_graph (labels optional;
// the pipeline only reads them for diagnostics). Throws SchemaError.
ComplexGraph import_graph(const std::string& bytes, GraphFormat format);

// Vertices of the pruned graph grouped by exact neighborhood equality.
struct NeighborhoodClass {
  int representative = -1;   // lowest member id
  std::vector<int> members;  // ascending pruned-graph ids
  int multiplicity() const { return static_cast<int>(members.size()); }
};

struct DedupResult {
  ComplexGraph reduced;                    // one node per class, unlabeled
  std::vector<NeighborhoodClass> classes;  // index == reduced node id
  std::vector<int> class_of;               // pruned vertex id -> class id
};

// Pre: no isolated vertices. Classes are numbered by first appearance.
DedupResult dedupe_classes(const ComplexGraph& pruned);

// One peeled level: residual leaves x paired with their unique neighbors y;
// the y side of a level always forms a clique.
struct PeelLevel {
  std::vector<std::pair<int, int>> pairs;  // (x class, y class), sorted by x
};

struct PeelOptions {
  // A residual K2 has no distinguished leaf side; the default takes the
  // lower class id as x. Flipping must yield an isomorphic final tree.
  bool k2_pick_high = false;
};

// Repeatedly strips residual leaves together with their neighbor clique.
// Throws ReconstructionError("peel", ...) when the input is not shaped
// like a valid complex (leafless residual, clique violation, a clique
// node touching two leaves, leaf paired with leaf outside the K2 case).
std::vector<PeelLevel> peel_levels(const ComplexGraph& reduced,
                                   const PeelOptions& opts = {},
                                   std::vector<std::string>* diagnostics =
                                       nullptr);

struct CoreShape {
  enum class Attachment { Hub, MinRule, Fallback };

  // Node 0 is the hub z0; node 1.. are the peeled pairs in level-major
  // order. Last-level nodes hang off z0 by construction (Hub); earlier
  // nodes attach to the first later level whose x class sees their y class
  // (MinRule), else to z0 (Fallback).
  std::vector<std::vector<int>> adj;                 // sorted tree adjacency
  std::vector<std::pair<int, int>> node_pair;        // node -> (level, pair)
  std::vector<Attachment> attachment;

  int size() const { return static_cast<int>(adj.size()); }
  int shape_degree(int v) const { return static_cast<int>(adj.at(v).size()); }
  // Rooted at z0; order, when given, receives the shape node id per new id.
  RootedPlaneTree as_tree(std::vector<int>* order = nullptr) const;
};

CoreShape build_core_shape(const std::vector<PeelLevel>& levels,
                           const ComplexGraph& reduced);

// Degrees per shape node. A pair node's degree k solves
// (k-1)(k-2)/2 == multiplicity(y class) exactly; z0's solves the same
// equation against the x-class multiplicity shared by all its children.
// Throws ReconstructionError("degrees", ...) when a size is not a
// triangular number or the children disagree.
std::vector<int> recover_degrees(const std::vector<PeelLevel>& levels,
                                 const DedupResult& dedup,
                                 const CoreShape& shape);

// Pendant leaves bring every shape node up to its recovered degree; the
// planted root lands on the first pendant. Pre: degrees[v] >= max(3,
// shape degree).
RootedPlaneTree assemble_tree(const CoreShape& shape,
                              const std::vector<int>& degrees);

struct ReconstructOptions {
  PeelOptions peel;
};

struct ReconstructionResult {
  CoreShape shape;
  std::vector<int> degrees;    // by shape node id
  RootedPlaneTree assembled;   // planted
  std::vector<std::string> diagnostics;
};

// prune -> dedupe -> peel -> shape -> degrees -> assemble. Throws
// InsufficientDataError when nothing survives pruning.
ReconstructionResult reconstruct(const ComplexGraph& g,
                                 const ReconstructOptions& opts = {});

// {"coreTree":..., "degrees":{...}, "assembled":..., "diagnostics":[...]}
// coreTree is the shape serialized from the hub z0.
std::string result_to_json(const ReconstructionResult& r);

}  // namespace k4t
