#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "k4t/complex.hpp"
#include "k4t/errors.hpp"
#include "k4t/reconstruct.hpp"
#include "k4t/tree.hpp"
#include "k4t/verify.hpp"

namespace {

// Exit codes shared with the test suite.
enum ExitCode {
  kOk = 0,
  kUsage = 2,
  kParse = 3,
  kSchema = 4,
  kStage = 5,
  kCheckFailed = 6,
  kDegenerate = 7,
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& bytes) {
  if (path.empty()) {
    std::cout << bytes;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open " + path);
  out << bytes;
}

k4t::GraphFormat parse_format(const std::string& name) {
  if (name == "json") return k4t::GraphFormat::Json;
  if (name == "dot") return k4t::GraphFormat::Dot;
  return k4t::GraphFormat::EdgeList;
}

// Inline text and --file are mutually exclusive; exactly one is required.
std::string tree_text(const std::string& inline_text,
                      const std::string& file) {
  if (!inline_text.empty() && !file.empty())
    throw std::invalid_argument(
        "both inline tree text and --file given; pass exactly one");
  if (inline_text.empty() && file.empty())
    throw std::invalid_argument("no tree given; pass text or --file");
  return file.empty() ? inline_text : read_input(file);
}

struct BuildArgs {
  std::string tree;
  std::string file;
  std::string format = "json";
  std::string output;
  bool include_isolated = false;
  std::string same_core = "none";
  std::string rule3 = "extended";
  bool allow_empty_q = false;

  k4t::BuildOptions options() const {
    k4t::BuildOptions o;
    o.include_isolated = true;  // prune when exporting, not when building
    o.same_core_edges = same_core == "rule1"
                            ? k4t::BuildOptions::SameCoreEdges::Rule1
                            : k4t::BuildOptions::SameCoreEdges::None;
    o.rule3_boundary = rule3 == "strict"
                           ? k4t::BuildOptions::Rule3Boundary::PaperStrict
                           : k4t::BuildOptions::Rule3Boundary::Extended;
    o.allow_empty_q = allow_empty_q;
    return o;
  }
};

int cmd_build(const BuildArgs& a) {
  k4t::RootedPlaneTree t = k4t::parse_tree(tree_text(a.tree, a.file));
  k4t::ComplexGraph full = k4t::build_complex(t, a.options());
  int isolated = 0;
  for (int v = 0; v < full.n; ++v) isolated += full.degree(v) == 0;
  k4t::ComplexGraph out =
      a.include_isolated ? full : k4t::prune_isolated(full);
  write_output(a.output, k4t::export_graph(out, parse_format(a.format)));
  std::cerr << "vertices=" << out.n << " edges=" << out.edge_count()
            << " isolated=" << isolated << "\n";
  return kOk;
}

struct ReconstructArgs {
  std::string input;
  std::string format = "json";
  std::string output;
  bool k2_high = false;
};

int cmd_reconstruct(const ReconstructArgs& a) {
  k4t::ComplexGraph g =
      k4t::import_graph(read_input(a.input), parse_format(a.format));
  k4t::ReconstructOptions opts;
  opts.peel.k2_pick_high = a.k2_high;
  k4t::ReconstructionResult res = k4t::reconstruct(g, opts);
  write_output(a.output, k4t::result_to_json(res));
  return kOk;
}

struct RoundtripArgs {
  std::string tree;
  std::string file;
};

int cmd_roundtrip(const RoundtripArgs& a) {
  k4t::RootedPlaneTree t = k4t::parse_tree(tree_text(a.tree, a.file));
  if (k4t::core_tree(t).cores.size() < 2) {
    std::cout << "UNSUPPORTED: fewer than two branching vertices, the "
                 "complex carries no interaction data\n";
    return kDegenerate;
  }
  std::string want =
      k4t::canonical_form(k4t::homeo_reduce(t), k4t::IsoMode::Unrooted);
  k4t::ComplexGraph g = k4t::build_complex(t);
  for (bool high : {false, true}) {
    k4t::ReconstructOptions opts;
    opts.peel.k2_pick_high = high;
    k4t::ReconstructionResult res;
    try {
      res = k4t::reconstruct(g, opts);
    } catch (const k4t::ReconstructionError& e) {
      std::cout << "FAIL " << e.what() << "\n";
      return kCheckFailed;
    }
    std::string got =
        k4t::canonical_form(res.assembled, k4t::IsoMode::Unrooted);
    if (got != want) {
      std::cout << "FAIL recovered " << got << " from " << want
                << (high ? " (K2 flipped)" : "") << "\n";
      return kCheckFailed;
    }
    if (!high) {
      std::cout << "PASS tree=" << got << " degrees=[";
      for (size_t i = 0; i < res.degrees.size(); ++i)
        std::cout << (i ? "," : "") << res.degrees[i];
      std::cout << "]\n";
    }
  }
  return kOk;
}

struct CheckArgs {
  std::uint64_t seed = 42;
  int trees = 200;
  int binary_trees = 100;
  int max_cores = 12;
  int max_degree = 6;
  bool json = false;
  std::string output;
  bool all = false;
  bool isolation = false;
  bool counts = false;
  bool binary = false;
  bool independence = false;
  bool roundtrip = false;
  bool subdivision = false;
};

int cmd_check(const CheckArgs& a) {
  bool any = a.isolation || a.counts || a.binary || a.independence ||
             a.roundtrip || a.subdivision;
  bool all = a.all || !any;  // bare `check` runs everything

  std::vector<k4t::RootedPlaneTree> mixed =
      k4t::gen_corpus(a.seed, a.trees, a.max_cores, a.max_degree);
  std::vector<k4t::RootedPlaneTree> binary_corpus;
  for (int i = 0; i < a.binary_trees; ++i) {
    k4t::GenParams p;
    p.seed = a.seed * 7919ULL + static_cast<std::uint64_t>(i);
    p.core_count = 2 + i % a.max_cores;
    p.max_degree = a.max_degree;
    p.binary_only = true;
    binary_corpus.push_back(k4t::gen_random_tree(p));
  }

  std::vector<k4t::CheckReport> reports;
  if (all || a.isolation) reports.push_back(k4t::check_isolation_lemma(mixed));
  if (all || a.counts) reports.push_back(k4t::check_counts(mixed));
  if (all || a.binary)
    reports.push_back(k4t::check_binary_structure(binary_corpus));
  if (all || a.independence)
    reports.push_back(k4t::check_clique_independence(mixed));
  if (all || a.roundtrip) reports.push_back(k4t::roundtrip_check(mixed));
  if (all || a.subdivision)
    reports.push_back(k4t::check_subdivision_invariance(
        mixed, 0.5, a.seed ^ 0x5bd1e995u));

  bool passed = true;
  std::string out;
  for (const auto& r : reports) {
    passed = passed && r.passed();
    if (a.json) {
      out += k4t::report_to_json(r);
    } else {
      out += (r.passed() ? "PASS " : "FAIL ") + r.check_name + " (" +
             std::to_string(r.trees_tested) + " trees";
      if (!r.passed())
        out += ", " + std::to_string(r.failures.size()) + " failures";
      out += ")\n";
      for (const auto& [tree, detail] : r.failures)
        out += "  " + tree + ": " + detail + "\n";
    }
  }
  write_output(a.output, out);
  return passed ? kOk : kCheckFailed;
}

struct GenArgs {
  std::uint64_t seed = 42;
  int count = 1;
  int cores = 5;
  int max_degree = 6;
  bool binary = false;
  double subdivision_rate = 0.0;
};

int cmd_gen(const GenArgs& a) {
  for (int i = 0; i < a.count; ++i) {
    k4t::GenParams p;
    p.seed = a.seed + static_cast<std::uint64_t>(i);
    p.core_count = a.cores;
    p.max_degree = a.max_degree;
    p.binary_only = a.binary;
    p.subdivision_rate = a.subdivision_rate;
    std::cout << k4t::serialize_tree(k4t::gen_random_tree(p)) << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"interaction complex toolkit: build the complex of a plane "
               "tree, reconstruct trees from abstract complexes, and run "
               "the verification suites"};
  app.require_subcommand(1);

  BuildArgs build;
  CLI::App* b = app.add_subcommand(
      "build", "build the interaction complex of a tree");
  b->add_option("tree", build.tree, "tree text, e.g. \"(((()())()))\"");
  b->add_option("--file", build.file, "read the tree text from a file");
  b->add_option("--format", build.format, "output format")
      ->check(CLI::IsMember({"json", "dot", "edgelist"}))
      ->capture_default_str();
  b->add_option("-o,--output", build.output, "write to a file, not stdout");
  b->add_flag("--include-isolated", build.include_isolated,
              "keep isolated vertices in the export");
  b->add_option("--same-core-edges", build.same_core,
                "edges between tuples at one core")
      ->check(CLI::IsMember({"none", "rule1"}))
      ->capture_default_str();
  b->add_option("--rule3", build.rule3, "q-entry boundary handling")
      ->check(CLI::IsMember({"extended", "strict"}))
      ->capture_default_str();
  b->add_flag("--allow-empty-q", build.allow_empty_q,
              "also enumerate tuples with an empty q block");

  ReconstructArgs rec;
  CLI::App* rsub = app.add_subcommand(
      "reconstruct", "recover a tree from an exported complex");
  rsub->add_option("input", rec.input, "graph file, or - for stdin")
      ->required();
  rsub->add_option("--format", rec.format, "input format")
      ->check(CLI::IsMember({"json", "edgelist"}))
      ->capture_default_str();
  rsub->add_option("-o,--output", rec.output, "write to a file, not stdout");
  rsub->add_flag("--k2-high", rec.k2_high,
                 "flip the residual-K2 orientation");

  RoundtripArgs rt;
  CLI::App* rtsub = app.add_subcommand(
      "roundtrip", "build, reconstruct and compare one tree");
  rtsub->add_option("tree", rt.tree, "tree text");
  rtsub->add_option("--file", rt.file, "read the tree text from a file");

  CheckArgs check;
  CLI::App* c =
      app.add_subcommand("check", "run verification suites on a corpus");
  c->add_option("--seed", check.seed, "corpus seed")
      ->envname("K4T_SEED")
      ->capture_default_str();
  c->add_option("--trees", check.trees, "mixed corpus size")
      ->capture_default_str();
  c->add_option("--binary-trees", check.binary_trees, "binary corpus size")
      ->capture_default_str();
  c->add_option("--max-cores", check.max_cores, "corpus core cap")
      ->capture_default_str();
  c->add_option("--max-degree", check.max_degree, "corpus degree cap")
      ->capture_default_str();
  c->add_flag("--json", check.json, "machine-readable reports");
  c->add_option("-o,--output", check.output, "write to a file, not stdout");
  c->add_flag("--all", check.all, "run every suite (default)");
  c->add_flag("--isolation", check.isolation, "isolation criterion suite");
  c->add_flag("--counts", check.counts, "per-direction counting suite");
  c->add_flag("--binary", check.binary, "binary structure suite");
  c->add_flag("--independence", check.independence,
              "peeled-clique independence suite");
  c->add_flag("--roundtrip", check.roundtrip, "end-to-end roundtrip suite");
  c->add_flag("--subdivision", check.subdivision,
              "subdivision invariance suite");

  GenArgs gen;
  CLI::App* g = app.add_subcommand("gen", "emit random corpus trees");
  g->add_option("--seed", gen.seed, "base seed")
      ->envname("K4T_SEED")
      ->capture_default_str();
  g->add_option("--count", gen.count, "number of trees")
      ->capture_default_str();
  g->add_option("--cores", gen.cores, "branching vertices per tree")
      ->capture_default_str();
  g->add_option("--max-degree", gen.max_degree, "degree cap")
      ->capture_default_str();
  g->add_flag("--binary", gen.binary, "binary trees only");
  g->add_option("--subdivision-rate", gen.subdivision_rate,
                "chance of a degree-2 chain per edge")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (app.got_subcommand(b)) return cmd_build(build);
    if (app.got_subcommand(rsub)) return cmd_reconstruct(rec);
    if (app.got_subcommand(rtsub)) return cmd_roundtrip(rt);
    if (app.got_subcommand(c)) return cmd_check(check);
    if (app.got_subcommand(g)) return cmd_gen(gen);
  } catch (const k4t::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const k4t::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kSchema;
  } catch (const k4t::InsufficientDataError& e) {
    std::cerr << "insufficient interaction data: " << e.what() << "\n";
    return kDegenerate;
  } catch (const k4t::ReconstructionError& e) {
    std::cerr << "reconstruction error: " << e.what() << "\n";
    return kStage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
