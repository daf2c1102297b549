#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace k4t {

// Malformed tree text.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent graph bytes (JSON/edgelist).
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A reconstruction stage rejected its input. `stage` names the pipeline
// step (dedupe, peel, shape, degrees, assemble).
struct ReconstructionError : std::runtime_error {
  ReconstructionError(std::string stage_name, const std::string& what)
      : std::runtime_error(stage_name + ": " + what),
        stage(std::move(stage_name)) {}
  std::string stage;
};

// The graph carries no usable interaction data (empty after pruning);
// single-core and core-free trees land here by design.
struct InsufficientDataError : ReconstructionError {
  explicit InsufficientDataError(const std::string& what)
      : ReconstructionError("input", what) {}
};

}  // namespace k4t
