#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "hf/error.hpp"
#include "hf/ro.hpp"
#include "test_util.hpp"

using namespace hf;

namespace {

ForcingPoset binary_poset(int depth) {
  return poset_from_tree(TreeGenerator::full_binary().truncate(depth), true);
}

DynBitset subset_of(const ForcingPoset& P, const std::vector<std::string>& names) {
  DynBitset u(static_cast<std::size_t>(P.size()));
  for (const auto& n : names) u.set(static_cast<std::size_t>(P.index_of(n)));
  return u;
}

}  // namespace

TEST_SUITE_BEGIN("regularize");

TEST_CASE("regularize pulls the root in when both leaves are present") {
  ForcingPoset P = binary_poset(1);
  DynBitset u = subset_of(P, {"0", "1"});
  DynBitset star = regularize(P, u);
  CHECK(star == subset_of(P, {"e", "0", "1"}));
}

TEST_CASE("regularize of empty and full") {
  ForcingPoset P = binary_poset(2);
  DynBitset empty(static_cast<std::size_t>(P.size()));
  CHECK(regularize(P, empty) == empty);
  DynBitset full(static_cast<std::size_t>(P.size()));
  for (int i = 0; i < P.size(); ++i) full.set(static_cast<std::size_t>(i));
  CHECK(regularize(P, full) == full);
}

TEST_CASE("regularize is idempotent, monotone, extensive on open sets") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    ForcingPoset P = poset_from_tree(hftest::random_tree(rng, 11), true);
    const int n = P.size();
    std::uniform_int_distribution<int> coin(0, 1);
    DynBitset u(static_cast<std::size_t>(n)), v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      if (coin(rng)) u.set(static_cast<std::size_t>(i));
      if (coin(rng)) v.set(static_cast<std::size_t>(i));
    }
    DynBitset uv = u;
    uv |= v;  // u subset uv

    DynBitset su = regularize(P, u);
    CHECK(regularize(P, su) == su);                      // idempotent
    CHECK(su.is_subset_of(regularize(P, uv)));           // monotone
    CHECK(su == hftest::oracle_regularize(P, u));        // definition replay

    // downward closure of u is contained in its regularization
    DynBitset open(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p)
      if (u.test(static_cast<std::size_t>(p))) open |= P.below(p);
    CHECK(open.is_subset_of(regularize(P, open)));
  }
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("completion");

TEST_CASE("element counts 4, 16, 256 at depths 1..3") {
  CHECK(completion(binary_poset(1)).element_count() == 4);
  CHECK(completion(binary_poset(2)).element_count() == 16);
  CHECK(completion(binary_poset(3)).element_count() == 256);
  CHECK(completion_count_log2(binary_poset(3)) == 8);
}

TEST_CASE("single condition gives the 2-element algebra") {
  ForcingPoset P = poset_from_tree(SignedTree::root_only(), true);
  ROAlgebra A = completion(P);
  CHECK(A.element_count() == 2);
  CHECK(A.elements()[static_cast<std::size_t>(A.bottom())].none());
  CHECK(A.elements()[static_cast<std::size_t>(A.top())].count() == 1);
}

TEST_CASE("cap exceeded reports the bound") {
  ForcingPoset P = binary_poset(3);
  CHECK_THROWS_WITH_AS(completion(P, 128), doctest::Contains("2^8"), Error);
  try {
    completion(P, 128);
  } catch (const Error& e) {
    CHECK(e.kind() == "CapExceeded");
  }
}

TEST_CASE("elements match the brute-force enumeration") {
  // depth 1 and 2 binary plus assorted random posets <= 12 conditions
  std::mt19937 rng(43);
  std::vector<ForcingPoset> posets{binary_poset(1), binary_poset(2)};
  for (int i = 0; i < 8; ++i)
    posets.push_back(poset_from_tree(hftest::random_tree(rng, 11), true));
  for (const auto& P : posets) {
    auto expected = hftest::oracle_regular_opens(P);
    ROAlgebra A = completion(P);
    REQUIRE(A.element_count() == expected.size());
    for (const auto& u : expected) CHECK(A.index_of(u) >= 0);
    for (const auto& e : A.elements()) CHECK(is_regular_open(P, e));
  }
}

TEST_CASE("ops agree with their set-theoretic definitions") {
  for (int d = 1; d <= 2; ++d) {
    ForcingPoset P = binary_poset(d);
    ROAlgebra A = completion(P);
    const int n = static_cast<int>(A.element_count());
    for (int a = 0; a < n; ++a) {
      // complement: {p : no q <= p lies in U}
      DynBitset direct(static_cast<std::size_t>(P.size()));
      for (int p = 0; p < P.size(); ++p)
        if (!P.below(p).intersects(A.elements()[static_cast<std::size_t>(a)]))
          direct.set(static_cast<std::size_t>(p));
      CHECK(A.elements()[static_cast<std::size_t>(A.complement(a))] == direct);
      for (int b = 0; b < n; ++b) {
        DynBitset meet_direct = A.elements()[static_cast<std::size_t>(a)] &
                                A.elements()[static_cast<std::size_t>(b)];
        CHECK(A.elements()[static_cast<std::size_t>(A.meet(a, b))] == meet_direct);
        DynBitset join_direct = regularize(
            P, A.elements()[static_cast<std::size_t>(a)] |
                   A.elements()[static_cast<std::size_t>(b)]);
        CHECK(A.elements()[static_cast<std::size_t>(A.join(a, b))] == join_direct);
      }
    }
  }
}

TEST_CASE("boolean axioms, exhaustive through 256 elements") {
  for (int d = 1; d <= 3; ++d) {
    ROAlgebra A = completion(binary_poset(d));
    const int n = static_cast<int>(A.element_count());
    const int bot = A.bottom(), top = A.top();
    for (int a = 0; a < n; ++a) {
      CHECK(A.meet(a, A.complement(a)) == bot);
      CHECK(A.join(a, A.complement(a)) == top);
      CHECK(A.complement(A.complement(a)) == a);
      CHECK(A.meet(a, top) == a);
      CHECK(A.join(a, bot) == a);
      for (int b = 0; b < n; ++b) {
        CHECK(A.meet(a, b) == A.meet(b, a));
        CHECK(A.join(a, b) == A.join(b, a));
        CHECK(A.complement(A.meet(a, b)) == A.join(A.complement(a), A.complement(b)));
        CHECK(A.meet(a, A.join(a, b)) == a);  // absorption
      }
    }
    // associativity and distributivity on a deterministic triple sample
    std::mt19937 rng(97);
    std::uniform_int_distribution<int> pick(0, n - 1);
    const int triples = d < 3 ? n * n * n : 10000;
    for (int i = 0; i < triples; ++i) {
      int a, b, c;
      if (d < 3) {
        a = i % n;
        b = (i / n) % n;
        c = i / (n * n);
      } else {
        a = pick(rng);
        b = pick(rng);
        c = pick(rng);
      }
      CHECK(A.meet(A.meet(a, b), c) == A.meet(a, A.meet(b, c)));
      CHECK(A.join(A.join(a, b), c) == A.join(a, A.join(b, c)));
      CHECK(A.meet(a, A.join(b, c)) == A.join(A.meet(a, b), A.meet(a, c)));
      CHECK(A.join(a, A.meet(b, c)) == A.meet(A.join(a, b), A.join(a, c)));
    }
  }
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("dense embedding");

TEST_CASE("depth-1 values") {
  ForcingPoset P = binary_poset(1);
  auto e = dense_embedding(P);
  CHECK(e[static_cast<std::size_t>(P.index_of("0"))] == subset_of(P, {"0"}));
  CHECK(e[static_cast<std::size_t>(P.index_of("1"))] == subset_of(P, {"1"}));
  CHECK(e[static_cast<std::size_t>(P.index_of("e"))] == subset_of(P, {"e", "0", "1"}));
}

TEST_CASE("singleton poset embeds onto the top") {
  ForcingPoset P = poset_from_tree(SignedTree::root_only(), true);
  auto e = dense_embedding(P);
  CHECK(e[0].count() == 1);
}

TEST_CASE("separative posets embed injectively, order-reflecting, densely") {
  for (int d = 1; d <= 3; ++d) {
    ForcingPoset P = binary_poset(d);
    auto rep = verify_dense_embedding(P, completion(P));
    CHECK(rep.injective);
    CHECK(rep.order_reflecting);
    CHECK(rep.dense_image);
  }
}

TEST_CASE("the 2-chain fails and the report says where") {
  ForcingPoset P = poset_from_tree(TreeGenerator::linear(Sign::plus).truncate(1), true);
  auto rep = verify_dense_embedding(P, completion(P));
  CHECK_FALSE(rep.ok());
  CHECK_FALSE(rep.injective);
  CHECK_FALSE(rep.order_reflecting);
  CHECK(rep.failing_pair.has_value());
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("atom splitting");

TEST_CASE("binary generators split at every probed depth") {
  CHECK(atom_splitting(TreeGenerator::full_binary(), 1));
  CHECK(atom_splitting(TreeGenerator::full_binary(), 3));
  CHECK(atom_splitting(TreeGenerator::binary_branch(Sign::minus), 2));
}

TEST_CASE("linear generators are rejected") {
  CHECK_THROWS_AS(atom_splitting(TreeGenerator::linear(Sign::plus), 2), Error);
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("iso check");

TEST_CASE("binary completions match the clopen algebra at depths 1..3") {
  CHECK(iso_check(1));
  CHECK(iso_check(2));
  CHECK(iso_check(3));
}

TEST_SUITE_END();
