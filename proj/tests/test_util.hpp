#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "hf/bitset.hpp"
#include "hf/poset.hpp"
#include "hf/tree.hpp"

namespace hftest {

// Grafts a whole tree below `parent`; the grafted root becomes a signed
// node. Requires sub's parents to precede children (true for any tree
// built through add_child).
inline void graft(hf::SignedTree& dst, int parent, const hf::SignedTree& sub,
                  hf::Sign root_sign) {
  std::vector<int> copied(sub.nodes.size(), -1);
  copied[0] = dst.add_child(parent, root_sign);
  for (std::size_t i = 1; i < sub.nodes.size(); ++i) {
    const auto& n = sub.nodes[i];
    hf::Sign s = n.sign == hf::Sign::none ? hf::Sign::plus : n.sign;
    copied[i] = dst.add_child(copied[static_cast<std::size_t>(n.parent)], s);
  }
}

// All ordered rooted tree shapes with exactly `nodes` nodes (root
// included), signs all plus. Catalan growth; keep nodes <= 10.
inline const std::vector<hf::SignedTree>& all_tree_shapes(int nodes) {
  static std::map<int, std::vector<hf::SignedTree>> memo;
  auto found = memo.find(nodes);
  if (found != memo.end()) return found->second;

  std::function<const std::vector<hf::SignedTree>&(int)> build =
      [&](int n) -> const std::vector<hf::SignedTree>& {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    std::vector<hf::SignedTree> out;
    if (n == 1) {
      out.push_back(hf::SignedTree::root_only());
    } else if (n > 1) {
      std::vector<int> parts;
      std::function<void(int)> rec = [&](int remaining) {
        if (remaining == 0) {
          std::vector<std::size_t> idx(parts.size(), 0);
          while (true) {
            hf::SignedTree t = hf::SignedTree::root_only();
            for (std::size_t c = 0; c < parts.size(); ++c)
              graft(t, 0, build(parts[c])[idx[c]], hf::Sign::plus);
            out.push_back(std::move(t));
            std::size_t c = 0;
            for (; c < parts.size(); ++c) {
              if (++idx[c] < build(parts[c]).size()) break;
              idx[c] = 0;
            }
            if (c == parts.size()) break;
          }
          return;
        }
        for (int part = 1; part <= remaining; ++part) {
          parts.push_back(part);
          rec(remaining - part);
          parts.pop_back();
        }
      };
      rec(n - 1);
    }
    return memo.emplace(n, std::move(out)).first->second;
  };
  return build(nodes);
}

inline bool has_unary_node(const hf::SignedTree& t) {
  for (const auto& n : t.nodes)
    if (n.children.size() == 1) return true;
  return false;
}

// Random tree by uniform attachment, deterministic under the seed.
inline hf::SignedTree random_tree(std::mt19937& rng, int nodes) {
  hf::SignedTree t = hf::SignedTree::root_only();
  for (int i = 1; i < nodes; ++i) {
    std::uniform_int_distribution<int> pick(0, t.size() - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    t.add_child(pick(rng), coin(rng) ? hf::Sign::plus : hf::Sign::minus);
  }
  return t;
}

// Definition replay, independent of the library's implementation: U*
// computed straight from the quantifier.
inline hf::DynBitset oracle_regularize(const hf::ForcingPoset& P,
                                       const hf::DynBitset& U) {
  hf::DynBitset out(static_cast<std::size_t>(P.size()));
  for (int p = 0; p < P.size(); ++p) {
    bool keep = true;
    for (int q = 0; q < P.size() && keep; ++q) {
      if (!P.leq(q, p)) continue;  // q <= p
      bool witness = false;
      for (int r = 0; r < P.size(); ++r)
        if (P.leq(r, q) && U.test(static_cast<std::size_t>(r))) { witness = true; break; }
      if (!witness) keep = false;
    }
    if (keep) out.set(static_cast<std::size_t>(p));
  }
  return out;
}

// Brute-force regular-open enumeration over all subsets (poset size <= 20).
inline std::vector<hf::DynBitset> oracle_regular_opens(const hf::ForcingPoset& P) {
  std::vector<hf::DynBitset> out;
  const int n = P.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    hf::DynBitset U(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      if (mask & (std::uint64_t{1} << i)) U.set(static_cast<std::size_t>(i));
    bool down = true;
    for (int p = 0; p < n && down; ++p) {
      if (!U.test(static_cast<std::size_t>(p))) continue;
      for (int r = 0; r < n; ++r)
        if (P.leq(r, p) && !U.test(static_cast<std::size_t>(r))) { down = false; break; }
    }
    if (!down) continue;
    if (oracle_regularize(P, U) == U) out.push_back(U);
  }
  return out;
}

// Replays a separativity counterexample against the definition.
inline bool replay_non_separative_pair(const hf::ForcingPoset& P, int p, int q) {
  if (P.leq(p, q)) return false;
  for (int r = 0; r < P.size(); ++r) {
    if (!P.leq(r, p)) continue;
    bool compat = false;
    for (int k = 0; k < P.size(); ++k)
      if (P.leq(k, r) && P.leq(k, q)) { compat = true; break; }
    if (!compat) return false;  // r would witness separativity
  }
  return true;
}

}  // namespace hftest
