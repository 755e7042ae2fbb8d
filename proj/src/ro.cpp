#include "hf/ro.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hf/cantor.hpp"
#include "hf/error.hpp"

namespace hf {

DynBitset regularize(const ForcingPoset& P, const DynBitset& U) {
  const int n = P.size();
  DynBitset out(n);
  for (int p = 0; p < n; ++p) {
    bool in = true;
    const DynBitset& down_p = P.below(p);
    for (std::size_t q = down_p.next_set(0); q < down_p.size();
         q = down_p.next_set(q + 1)) {
      if (!P.below(static_cast<int>(q)).intersects(U)) {
        in = false;
        break;
      }
    }
    if (in) out.set(p);
  }
  return out;
}

bool is_downward_closed(const ForcingPoset& P, const DynBitset& U) {
  for (int p = 0; p < P.size(); ++p)
    if (U.test(p) && !P.below(p).is_subset_of(U)) return false;
  return true;
}

bool is_regular_open(const ForcingPoset& P, const DynBitset& U) {
  return is_downward_closed(P, U) && regularize(P, U) == U;
}

int ROAlgebra::index_of(const DynBitset& carrier) const {
  // recover the minimal-set mask, then confirm
  std::size_t mask = 0;
  for (std::size_t i = 0; i < minimal_conditions_.size(); ++i)
    if (carrier.test(minimal_conditions_[i])) mask |= (std::size_t{1} << i);
  if (mask >= elements_.size() || !(elements_[mask] == carrier)) return -1;
  return static_cast<int>(mask);
}

int ROAlgebra::meet(int a, int b) const {
  return static_cast<int>(static_cast<std::size_t>(a) & static_cast<std::size_t>(b));
}

int ROAlgebra::join(int a, int b) const {
  // mask union matches regularize(U or V): joins only add non-minimal points
  return static_cast<int>(static_cast<std::size_t>(a) | static_cast<std::size_t>(b));
}

int ROAlgebra::complement(int a) const {
  std::size_t full = elements_.size() - 1;
  return static_cast<int>(full & ~static_cast<std::size_t>(a));
}

bool ROAlgebra::leq(int a, int b) const {
  return (static_cast<std::size_t>(a) & ~static_cast<std::size_t>(b)) == 0;
}

bool ROAlgebra::is_atom(int a) const {
  auto m = static_cast<std::size_t>(a);
  return m != 0 && (m & (m - 1)) == 0;
}

std::vector<int> ROAlgebra::atoms() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < minimal_conditions_.size(); ++i)
    out.push_back(static_cast<int>(std::size_t{1} << i));
  return out;
}

nlohmann::ordered_json ROAlgebra::to_json() const {
  nlohmann::ordered_json j;
  j["base"] = base_.to_json();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& e : elements_) {
    auto elem = nlohmann::ordered_json::array();
    for (std::size_t p = e.next_set(0); p < e.size(); p = e.next_set(p + 1))
      elem.push_back(base_.name(static_cast<int>(p)));
    arr.push_back(std::move(elem));
  }
  j["elements"] = std::move(arr);
  return j;
}

int completion_count_log2(const ForcingPoset& P) {
  return static_cast<int>(P.minimals().size());
}

ROAlgebra completion(const ForcingPoset& P, std::uint64_t cap) {
  const auto mins = P.minimals();
  const int k = static_cast<int>(mins.size());
  if (k >= 64 || (std::uint64_t{1} << k) > cap)
    throw Error("CapExceeded",
                "algebra would have 2^" + std::to_string(k) +
                    " elements, over the materialization cap of " +
                    std::to_string(cap));

  ROAlgebra A;
  A.base_ = P;
  A.minimal_conditions_ = mins;
  A.minimal_slot_.assign(P.size(), -1);
  for (int i = 0; i < k; ++i) A.minimal_slot_[mins[i]] = i;

  const std::size_t count = std::size_t{1} << k;
  A.elements_.reserve(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    DynBitset seed(P.size());
    for (int i = 0; i < k; ++i)
      if (mask & (std::size_t{1} << i)) seed.set(mins[i]);
    A.elements_.push_back(regularize(P, seed));
  }
  return A;
}

std::vector<DynBitset> dense_embedding(const ForcingPoset& P) {
  std::vector<DynBitset> e;
  e.reserve(P.size());
  for (int p = 0; p < P.size(); ++p) e.push_back(regularize(P, P.below(p)));
  return e;
}

DenseEmbeddingReport verify_dense_embedding(const ForcingPoset& P,
                                            const ROAlgebra& A) {
  DenseEmbeddingReport rep;
  auto e = dense_embedding(P);

  rep.injective = true;
  for (int p = 0; p < P.size() && rep.injective; ++p)
    for (int q = p + 1; q < P.size(); ++q)
      if (e[p] == e[q]) {
        rep.injective = false;
        rep.failing_pair = {P.name(p), P.name(q)};
        break;
      }

  rep.order_reflecting = true;
  for (int p = 0; p < P.size() && rep.order_reflecting; ++p)
    for (int q = 0; q < P.size(); ++q) {
      bool below = P.leq(p, q);
      bool included = e[p].is_subset_of(e[q]);
      if (below != included) {
        rep.order_reflecting = false;
        if (!rep.failing_pair) rep.failing_pair = {P.name(p), P.name(q)};
        break;
      }
    }

  rep.dense_image = true;
  for (std::size_t i = 1; i < A.element_count(); ++i) {
    const DynBitset& u = A.elements()[i];
    bool contains_some = false;
    for (int p = 0; p < P.size(); ++p)
      if (e[p].any() && e[p].is_subset_of(u)) {
        contains_some = true;
        break;
      }
    if (!contains_some) {
      rep.dense_image = false;
      break;
    }
  }
  return rep;
}

nlohmann::ordered_json DenseEmbeddingReport::to_json() const {
  nlohmann::ordered_json j;
  j["injective"] = injective;
  j["order_reflecting"] = order_reflecting;
  j["dense_image"] = dense_image;
  if (failing_pair)
    j["failing_pair"] = {failing_pair->first, failing_pair->second};
  return j;
}

bool atom_splitting(const TreeGenerator& gen, int depth) {
  if (gen.kind() != TreeGenerator::Kind::full_binary &&
      gen.kind() != TreeGenerator::Kind::binary_branch)
    throw Error("InvalidArgument",
                "atom splitting is defined for binary-shaped generators only");
  if (depth < 1) throw Error("InvalidArgument", "depth must be >= 1");

  SignedTree shallow = gen.truncate(depth);
  SignedTree deep = gen.truncate(depth + 1);
  ForcingPoset P = poset_from_tree(shallow, true);
  ForcingPoset Q = poset_from_tree(deep, true);

  // Atoms at `depth` are the regularizations of single minimal
  // conditions. Refining an element maps its carrier through node
  // identity into the deeper poset, closes downward, and regularizes.
  auto q_minimal_mask = [&]() {
    DynBitset m(Q.size());
    for (int p : Q.minimals()) m.set(p);
    return m;
  }();

  for (int leaf : P.minimals()) {
    DynBitset atom = regularize(P, P.below(leaf));
    DynBitset pushed(Q.size());
    for (std::size_t p = atom.next_set(0); p < atom.size(); p = atom.next_set(p + 1)) {
      int node = deep.node_at(shallow.path_of(static_cast<int>(p)));
      if (node < 0) throw Error("Internal", "refinement lost a node");
      pushed |= Q.below(Q.index_of(deep.path_name(node)));
    }
    DynBitset refined = regularize(Q, pushed);
    // two disjoint nonzero elements below iff at least two atoms inside
    DynBitset inner = refined & q_minimal_mask;
    if (inner.count() < 2) return false;
  }
  return true;
}

bool iso_check(int depth, std::uint64_t cap) {
  if (depth < 1) throw Error("InvalidArgument", "depth must be >= 1");
  SignedTree tree = TreeGenerator::full_binary().truncate(depth);
  ForcingPoset P = poset_from_tree(tree, true);
  ROAlgebra A = completion(P, cap);

  // image of an element: union of cylinders of its minimal conditions
  auto phi = [&](int idx) {
    std::vector<std::string> cyls;
    const DynBitset& carrier = A.elements()[static_cast<std::size_t>(idx)];
    // conditions were built with the root included, so condition index
    // and tree node id coincide
    for (int leaf : P.minimals()) {
      if (!carrier.test(leaf)) continue;
      std::string prefix;
      for (int step : tree.path_of(leaf)) prefix += static_cast<char>('0' + step);
      cyls.push_back(std::move(prefix));
    }
    return CantorClopen::from_cylinders(std::move(cyls));
  };

  // the map must anchor node -> cylinder(path) on principal elements
  auto e = dense_embedding(P);
  for (int p = 0; p < P.size(); ++p) {
    int idx = A.index_of(e[p]);
    if (idx < 0) return false;
    std::string prefix;
    for (int step : tree.path_of(p)) prefix += static_cast<char>('0' + step);
    if (!(phi(idx) == CantorClopen::cylinder(prefix))) return false;
  }

  const int count = static_cast<int>(A.element_count());
  std::vector<CantorClopen> images;
  images.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) images.push_back(phi(i));

  // bijection onto the subalgebra generated by depth-d cylinders
  std::set<std::vector<std::string>> image_set;
  for (const auto& c : images) image_set.insert(c.cylinders());
  if (static_cast<int>(image_set.size()) != count) return false;
  std::vector<std::string> leaves;
  for (int leaf : P.minimals()) {
    std::string prefix;
    for (int step : tree.path_of(leaf)) prefix += static_cast<char>('0' + step);
    leaves.push_back(std::move(prefix));
  }
  for (std::size_t mask = 0; mask < (std::size_t{1} << leaves.size()); ++mask) {
    std::vector<std::string> pick;
    for (std::size_t i = 0; i < leaves.size(); ++i)
      if (mask & (std::size_t{1} << i)) pick.push_back(leaves[i]);
    if (!image_set.count(CantorClopen::from_cylinders(std::move(pick)).cylinders()))
      return false;
  }

  // structure map on all pairs
  if (!(images[static_cast<std::size_t>(A.bottom())] == CantorClopen::empty())) return false;
  if (!(images[static_cast<std::size_t>(A.top())] == CantorClopen::full())) return false;
  for (int a = 0; a < count; ++a) {
    if (!(images[static_cast<std::size_t>(A.complement(a))] ==
          clopen_complement(images[static_cast<std::size_t>(a)])))
      return false;
    for (int b = 0; b < count; ++b) {
      if (!(images[static_cast<std::size_t>(A.meet(a, b))] ==
            clopen_intersect(images[static_cast<std::size_t>(a)],
                             images[static_cast<std::size_t>(b)])))
        return false;
      if (!(images[static_cast<std::size_t>(A.join(a, b))] ==
            clopen_union(images[static_cast<std::size_t>(a)],
                         images[static_cast<std::size_t>(b)])))
        return false;
    }
  }
  return true;
}

}  // namespace hf
