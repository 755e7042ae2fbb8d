#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hf/bitset.hpp"
#include "hf/tree.hpp"
#include "json.hpp"

namespace hf {

// Finite set of forcing conditions with a stronger-than order. p <= q
// reads "p extends q"; common extensions are common lower bounds. Order
// axioms are verified on construction.
class ForcingPoset {
public:
  ForcingPoset() = default;  // empty poset

  // `pairs` lists p <= q by name; reflexive pairs are implied.
  static ForcingPoset from_relation(std::vector<std::string> names,
                                    const std::vector<std::pair<std::string, std::string>>& pairs);
  static ForcingPoset from_json(const nlohmann::json& j);

  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int p) const { return names_[p]; }

  int index_of(const std::string& name) const;  // throws UnknownCondition

  bool leq(int p, int q) const { return above_[p].test(q); }
  const DynBitset& below(int p) const { return below_[p]; }
  const DynBitset& above(int p) const { return above_[p]; }

  // Minimal elements (no strictly stronger condition).
  std::vector<int> minimals() const;

  bool has_maximum() const;  // a single weakest condition

  nlohmann::ordered_json to_json() const;

private:
  friend ForcingPoset poset_from_tree(const SignedTree&, bool);

  void finish_and_verify();

  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  std::vector<DynBitset> below_;  // below_[p] = {r : r <= p}, includes p
  std::vector<DynBitset> above_;  // above_[p] = {q : p <= q}, includes p
};

// Conditions are the tree's nodes (optionally minus the root); p <= q iff
// q lies on p's root path. Signs are discarded.
ForcingPoset poset_from_tree(const SignedTree& tree, bool include_root = true);

// True iff p and q have a common extension.
bool compatible(const ForcingPoset& P, int p, int q);
bool compatible(const ForcingPoset& P, const std::string& p, const std::string& q);

struct SeparativityVerdict {
  bool separative = false;
  // First failing pair in lexicographic condition order: p is not <= q,
  // yet every r <= p is compatible with q.
  std::optional<std::pair<int, int>> counterexample;

  nlohmann::ordered_json to_json(const ForcingPoset& P) const;
};

// Exhaustive O(|P|^3) separativity check.
SeparativityVerdict is_separative(const ForcingPoset& P);

// True iff every condition has an extension in D.
bool is_dense_subset(const ForcingPoset& P, const std::vector<int>& D);
bool is_dense_subset(const ForcingPoset& P, const std::vector<std::string>& D);

}  // namespace hf
