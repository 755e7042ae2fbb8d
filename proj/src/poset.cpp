#include "hf/poset.hpp"

#include <algorithm>

#include "hf/error.hpp"

namespace hf {

int ForcingPoset::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end())
    throw Error("UnknownCondition", "unknown condition '" + name + "'");
  return it->second;
}

void ForcingPoset::finish_and_verify() {
  const int n = size();
  for (int i = 0; i < n; ++i) {
    if (!above_[i].test(i) || !below_[i].test(i))
      throw Error("InvalidOrder", "relation is not reflexive at '" + names_[i] + "'");
  }
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (p != q && leq(p, q) && leq(q, p))
        throw Error("InvalidOrder", "relation is not antisymmetric on ('" +
                                        names_[p] + "','" + names_[q] + "')");
      // transitivity: p <= q implies above(q) subset of above(p)
      if (leq(p, q) && !above_[q].is_subset_of(above_[p]))
        throw Error("InvalidOrder", "relation is not transitive through ('" +
                                        names_[p] + "','" + names_[q] + "')");
    }
  }
}

ForcingPoset ForcingPoset::from_relation(
    std::vector<std::string> names,
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  ForcingPoset P;
  P.names_ = std::move(names);
  const int n = P.size();
  for (int i = 0; i < n; ++i) {
    if (P.index_.count(P.names_[i]))
      throw Error("InvalidOrder", "duplicate condition '" + P.names_[i] + "'");
    P.index_[P.names_[i]] = i;
  }
  P.below_.assign(n, DynBitset(n));
  P.above_.assign(n, DynBitset(n));
  for (int i = 0; i < n; ++i) {
    P.below_[i].set(i);
    P.above_[i].set(i);
  }
  for (const auto& [a, b] : pairs) {
    int p = P.index_of(a), q = P.index_of(b);
    P.above_[p].set(q);
    P.below_[q].set(p);
  }
  P.finish_and_verify();
  return P;
}

ForcingPoset ForcingPoset::from_json(const nlohmann::json& j) {
  std::vector<std::string> names = j.at("conditions").get<std::vector<std::string>>();
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& e : j.at("leq"))
    pairs.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
  return from_relation(std::move(names), pairs);
}

std::vector<int> ForcingPoset::minimals() const {
  std::vector<int> out;
  for (int p = 0; p < size(); ++p)
    if (below_[p].count() == 1) out.push_back(p);
  return out;
}

bool ForcingPoset::has_maximum() const {
  for (int p = 0; p < size(); ++p)
    if (above_[p].count() == 1)
      return below_[p].count() == static_cast<std::size_t>(size());
  return false;
}

nlohmann::ordered_json ForcingPoset::to_json() const {
  nlohmann::ordered_json j;
  j["conditions"] = names_;
  auto arr = nlohmann::ordered_json::array();
  for (int p = 0; p < size(); ++p)
    for (int q = 0; q < size(); ++q)
      if (p != q && leq(p, q)) arr.push_back({names_[p], names_[q]});
  j["leq"] = std::move(arr);
  return j;
}

ForcingPoset poset_from_tree(const SignedTree& tree, bool include_root) {
  ForcingPoset P;
  std::vector<int> cond_nodes;
  for (int i = include_root ? 0 : 1; i < tree.size(); ++i) cond_nodes.push_back(i);

  const int n = static_cast<int>(cond_nodes.size());
  std::vector<int> cond_index(tree.size(), -1);
  for (int i = 0; i < n; ++i) {
    cond_index[cond_nodes[i]] = i;
    P.names_.push_back(tree.path_name(cond_nodes[i]));
    P.index_[P.names_.back()] = i;
  }
  P.below_.assign(n, DynBitset(n));
  P.above_.assign(n, DynBitset(n));
  for (int i = 0; i < n; ++i) {
    // ancestors-or-self along the root path are the weaker conditions
    int node = cond_nodes[i];
    while (node != -1) {
      int a = cond_index[node];
      if (a != -1) {
        P.above_[i].set(a);
        P.below_[a].set(i);
      }
      node = tree.nodes[node].parent;
    }
  }
  P.finish_and_verify();
  return P;
}

bool compatible(const ForcingPoset& P, int p, int q) {
  if (p < 0 || p >= P.size() || q < 0 || q >= P.size())
    throw Error("UnknownCondition", "condition index out of range");
  return P.below(p).intersects(P.below(q));
}

bool compatible(const ForcingPoset& P, const std::string& p, const std::string& q) {
  return compatible(P, P.index_of(p), P.index_of(q));
}

SeparativityVerdict is_separative(const ForcingPoset& P) {
  const int n = P.size();
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (P.leq(p, q)) continue;
      bool found = false;
      const DynBitset& down_p = P.below(p);
      for (std::size_t r = down_p.next_set(0); r < down_p.size();
           r = down_p.next_set(r + 1)) {
        if (!P.below(static_cast<int>(r)).intersects(P.below(q))) {
          found = true;
          break;
        }
      }
      if (!found) return {false, std::make_pair(p, q)};
    }
  }
  return {true, std::nullopt};
}

nlohmann::ordered_json SeparativityVerdict::to_json(const ForcingPoset& P) const {
  nlohmann::ordered_json j;
  j["separative"] = separative;
  if (counterexample) {
    nlohmann::ordered_json c;
    c["p"] = P.name(counterexample->first);
    c["q"] = P.name(counterexample->second);
    j["counterexample"] = std::move(c);
  } else {
    j["counterexample"] = nullptr;
  }
  return j;
}

bool is_dense_subset(const ForcingPoset& P, const std::vector<int>& D) {
  DynBitset dset(P.size());
  for (int d : D) {
    if (d < 0 || d >= P.size())
      throw Error("UnknownCondition", "condition index out of range");
    dset.set(static_cast<std::size_t>(d));
  }
  for (int p = 0; p < P.size(); ++p)
    if (!P.below(p).intersects(dset)) return false;
  return true;
}

bool is_dense_subset(const ForcingPoset& P, const std::vector<std::string>& D) {
  std::vector<int> idx;
  idx.reserve(D.size());
  for (const auto& name : D) idx.push_back(P.index_of(name));
  return is_dense_subset(P, idx);
}

}  // namespace hf
