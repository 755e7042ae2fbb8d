#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace hf {

// Self-intersection sign of a tree node. The root is the attachment and
// carries `none`; every other node carries plus or minus.
enum class Sign : unsigned char { none, plus, minus };

char sign_char(Sign s);
Sign sign_from_char(char c);

// Rooted, finitely branching tree with per-node signs. Nodes are stored
// in preorder; node 0 is the root. Child order is significant for
// printing but not for embedding.
struct SignedTree {
  struct Node {
    Sign sign = Sign::none;
    int parent = -1;
    int level = 0;
    std::vector<int> children;
  };

  std::vector<Node> nodes;

  static SignedTree root_only();

  int size() const { return static_cast<int>(nodes.size()); }
  int depth() const;

  // Appends a child of `parent` and returns its id.
  int add_child(int parent, Sign s);

  // Child-index path from the root ({} for the root itself).
  std::vector<int> path_of(int node) const;

  // Canonical condition name: "e" for the root, child indices otherwise
  // ("01", "1[12]0" for indices >= 10).
  std::string path_name(int node) const;

  // Node id at a child-index path, or -1 if absent.
  int node_at(const std::vector<int>& path) const;

  bool operator==(const SignedTree& o) const;

  std::string to_dsl() const;   // canonical s-expression, root printed "(."
  std::string to_dot() const;
  nlohmann::ordered_json to_json() const;  // {sign, children:[...]}
};

// Per-level node and sign counts, levels 1..depth.
struct LevelStat {
  int level = 0;
  long long nodes = 0;
  long long plus = 0;
  long long minus = 0;
  bool operator==(const LevelStat&) const = default;
};

std::vector<LevelStat> level_profile(const SignedTree& tree);

// A recipe for an infinite (or explicit finite) signed tree. Operations
// that need nodes take an explicit truncation depth; there are no
// implicit defaults.
class TreeGenerator {
public:
  enum class Kind { linear, full_binary, binary_branch, explicit_tree, custom };

  // Signs of the children of the node at `path` (empty path = root).
  // Also fixes the branching: the returned size is the child count.
  using CustomRule = std::function<std::vector<Sign>(const std::vector<int>&)>;

  static TreeGenerator linear(Sign s);
  static TreeGenerator full_binary();
  static TreeGenerator binary_branch(Sign branch_sign);
  static TreeGenerator explicit_tree(SignedTree t);
  static TreeGenerator custom(CustomRule rule, std::string name);

  Kind kind() const { return kind_; }
  Sign sign() const { return sign_; }
  const SignedTree& tree() const;        // explicit_tree only
  const std::string& custom_name() const { return name_; }

  // True for the kinds that denote an infinite tree.
  bool is_infinite_kind() const { return kind_ != Kind::explicit_tree; }

  // Explicit tree of all nodes at levels <= depth.
  SignedTree truncate(int depth) const;

  std::string to_dsl() const;            // not available for custom
  nlohmann::ordered_json to_json() const;

private:
  TreeGenerator() = default;

  Kind kind_ = Kind::linear;
  Sign sign_ = Sign::plus;
  SignedTree tree_;
  CustomRule rule_;
  std::string name_;
};

// Parses the tree DSL: `linear(+|-)`, `binary`, `binary_branch(+|-)`, or
// an s-expression `(SIGN child ...)` with SIGN in {+,-,.}. A top-level
// `(.` form is the root itself; a signed top-level form is wrapped under
// a fresh unsigned root.
TreeGenerator parse_tree(const std::string& text);

// Canonical DSL text; inverse of parse_tree on canonical inputs.
std::string print_tree(const TreeGenerator& gen);

enum class EmbedMode { level_preserving, homeomorphic };
enum class SignPolicy { strict, ignore };

EmbedMode embed_mode_from_string(const std::string& s);
SignPolicy sign_policy_from_string(const std::string& s);

// Node map small -> big witnessing an embedding.
struct EmbeddingWitness {
  std::vector<int> map;  // indexed by small node id

  nlohmann::ordered_json to_json(const SignedTree& small,
                                 const SignedTree& big) const;
};

// Searches for an embedding of `small` into `big`. Level-preserving mode
// sends children to children; homeomorphic mode may send children to
// strict descendants in disjoint child subtrees. Children are matched as
// an unordered set via maximum bipartite matching; ties resolve to the
// leftmost target, so witnesses are deterministic.
std::optional<EmbeddingWitness> tree_embeds(const SignedTree& small,
                                            const SignedTree& big,
                                            EmbedMode mode,
                                            SignPolicy policy);

// Replays a witness against the embedding invariants.
bool verify_witness(const SignedTree& small, const SignedTree& big,
                    const EmbeddingWitness& witness, EmbedMode mode,
                    SignPolicy policy);

}  // namespace hf
