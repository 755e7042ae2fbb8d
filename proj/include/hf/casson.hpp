#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hf/modfin.hpp"
#include "hf/poset.hpp"
#include "hf/ro.hpp"
#include "hf/tree.hpp"
#include "json.hpp"

namespace hf {

// A handle is its signed tree plus a display label.
struct CassonHandle {
  TreeGenerator tree;
  std::string label;
};

enum class HandleClass { standard_2handle, casson_handle };

std::string handle_class_name(HandleClass c);

// Finite trees (explicit generators) build the standard smooth 2-handle;
// every infinite generator kind yields a genuine Casson handle.
HandleClass classify_handle(const TreeGenerator& tree, int probe_depth);

// Builds the set of nonempty levels as an eventually periodic set and
// asks whether it belongs to the cofinite filter. Infinite generators
// have every level nonempty, explicit trees only finitely many. `horizon`
// bounds the probe for custom rules.
bool sfinite_tree(const TreeGenerator& tree, int horizon);

// Handle embedding order: CH(A) embeds in CH(B) exactly when the tree of
// B embeds into the tree of A at the truncation depth. (The smaller tree
// belongs to the larger handle.)
std::optional<EmbeddingWitness> ch_embeds(const CassonHandle& A,
                                          const CassonHandle& B, int depth,
                                          SignPolicy policy);

struct LinearExtraction {
  SignedTree branch;          // leftmost maximal branch as a linear tree
  EmbeddingWitness witness;   // branch -> input truncation
};

// Leftmost branch of the truncation, with its embedding witness. Errors
// if some level <= depth is empty.
LinearExtraction extract_linear(const TreeGenerator& tree, int depth);

struct AlgebraStats {
  int depth = 0;
  int elements_log2 = 0;
  std::optional<std::uint64_t> elements;
  bool separative = false;
  bool splitting = false;

  nlohmann::ordered_json to_json() const;
};

// Proof-pipeline artifact: the extracted linear branch, its embedding
// into the distinguished-branch binary tree, and the sign-free binary
// forcing poset with its algebra statistics. The poset and stats depend
// only on the depth, never on the input tree.
struct ForcingReport {
  int depth = 0;
  SignedTree input_truncation;
  LinearExtraction linear;
  SignedTree binary_tree;
  EmbeddingWitness binary_witness;  // linear branch -> binary tree
  ForcingPoset cohen_poset;
  AlgebraStats stats;

  nlohmann::ordered_json to_json() const;
};

ForcingReport casson_to_cohen(const TreeGenerator& tree, int depth,
                              std::uint64_t cap = kDefaultAlgebraCap);

// Level-indexed displacement rule: stage n moves by the number of
// self-intersections one level down, p(n) = n + k_{n+1}. The literal
// rule fails loudly when the counts collide (NotInjective) or never
// settle into a period within the horizon (NotEventuallyPeriodic). The
// cumulative reading adds all counts up to the stage instead.
AlmostPermutation ch_permutation(const TreeGenerator& tree, int horizon,
                                 bool cumulative = false);

}  // namespace hf
