#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hf/bitset.hpp"
#include "hf/poset.hpp"
#include "hf/tree.hpp"
#include "json.hpp"

namespace hf {

// Default cap on materialized algebra size (element count).
inline constexpr std::uint64_t kDefaultAlgebraCap = std::uint64_t{1} << 16;

// U* = {p : for all q <= p there is r <= q with r in U}. Idempotent and
// monotone; U subset of U* whenever U is downward closed.
DynBitset regularize(const ForcingPoset& P, const DynBitset& U);

bool is_downward_closed(const ForcingPoset& P, const DynBitset& U);
bool is_regular_open(const ForcingPoset& P, const DynBitset& U);

// The complete Boolean algebra of regular open subsets of a finite
// poset, fully materialized. Elements are indexed canonically by the set
// of minimal conditions they contain.
class ROAlgebra {
public:
  const ForcingPoset& base() const { return base_; }
  const std::vector<DynBitset>& elements() const { return elements_; }
  std::size_t element_count() const { return elements_.size(); }

  int bottom() const { return 0; }
  int top() const { return static_cast<int>(elements_.size()) - 1; }

  int index_of(const DynBitset& carrier) const;  // -1 if not an element

  int meet(int a, int b) const;
  int join(int a, int b) const;
  int complement(int a) const;

  bool leq(int a, int b) const;  // subset order
  bool is_atom(int a) const;
  std::vector<int> atoms() const;

  nlohmann::ordered_json to_json() const;

private:
  friend ROAlgebra completion(const ForcingPoset&, std::uint64_t);

  ForcingPoset base_;
  std::vector<int> minimal_conditions_;
  std::vector<DynBitset> elements_;  // indexed by minimal-set mask
  std::vector<int> minimal_slot_;    // condition -> bit position, -1 otherwise
};

// Number of regular open subsets is 2^(#minimal conditions); this
// reports the exponent without materializing anything.
int completion_count_log2(const ForcingPoset& P);

// Materializes the full algebra; throws CapExceeded (reporting the count
// bound) when the element count would pass `cap`.
ROAlgebra completion(const ForcingPoset& P, std::uint64_t cap = kDefaultAlgebraCap);

// e(p) = regularize of the principal down-set of p.
std::vector<DynBitset> dense_embedding(const ForcingPoset& P);

// Which clauses of the dense-embedding contract hold; for separative
// posets all three do.
struct DenseEmbeddingReport {
  bool injective = false;
  bool order_reflecting = false;
  bool dense_image = false;
  std::optional<std::pair<std::string, std::string>> failing_pair;

  bool ok() const { return injective && order_reflecting && dense_image; }
  nlohmann::ordered_json to_json() const;
};

DenseEmbeddingReport verify_dense_embedding(const ForcingPoset& P,
                                            const ROAlgebra& A);

// Finite refinement-splitting surrogate for atomlessness: every atom at
// `depth`, pushed one level deeper along node identity, contains two
// disjoint nonzero elements. Only binary-shaped generators qualify.
// Works on the poset structure directly, so deep truncations whose
// algebras could never be materialized are still checkable.
bool atom_splitting(const TreeGenerator& gen, int depth);

// True iff node -> cylinder(path) extends to a Boolean isomorphism
// between the depth-d binary-truncation completion and the subalgebra of
// clopen sets generated by depth-d cylinders. Structure map checked on
// every element pair.
bool iso_check(int depth, std::uint64_t cap = kDefaultAlgebraCap);

}  // namespace hf
