#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "hf/error.hpp"
#include "hf/poset.hpp"
#include "test_util.hpp"

using namespace hf;

TEST_SUITE_BEGIN("poset");

TEST_CASE("poset from binary depth 1") {
  ForcingPoset P = poset_from_tree(TreeGenerator::full_binary().truncate(1), true);
  REQUIRE(P.size() == 3);
  int e = P.index_of("e"), z = P.index_of("0"), o = P.index_of("1");
  CHECK(P.leq(z, e));
  CHECK(P.leq(o, e));
  CHECK_FALSE(P.leq(e, z));
  CHECK_FALSE(P.leq(z, o));
  CHECK_FALSE(P.leq(o, z));
  CHECK(P.has_maximum());
}

TEST_CASE("poset without root") {
  ForcingPoset P = poset_from_tree(TreeGenerator::linear(Sign::plus).truncate(2), false);
  REQUIRE(P.size() == 2);
  CHECK(P.leq(P.index_of("00"), P.index_of("0")));
  CHECK_FALSE(P.leq(P.index_of("0"), P.index_of("00")));

  ForcingPoset single = poset_from_tree(SignedTree::root_only(), true);
  CHECK(single.size() == 1);
  ForcingPoset empty = poset_from_tree(SignedTree::root_only(), false);
  CHECK(empty.size() == 0);
}

TEST_CASE("from_relation verifies the axioms") {
  CHECK_THROWS_AS(ForcingPoset::from_relation({"a", "b"}, {{"a", "b"}, {"b", "a"}}),
                  Error);
  CHECK_THROWS_AS(
      ForcingPoset::from_relation({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}),
      Error);  // missing a <= c
  ForcingPoset P = ForcingPoset::from_relation(
      {"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}});
  CHECK(P.leq(P.index_of("a"), P.index_of("c")));
}

TEST_CASE("json round trip") {
  ForcingPoset P = poset_from_tree(TreeGenerator::full_binary().truncate(2), true);
  ForcingPoset Q = ForcingPoset::from_json(nlohmann::json::parse(P.to_json().dump()));
  CHECK(P.to_json() == Q.to_json());
}

TEST_CASE("compatibility") {
  ForcingPoset P = poset_from_tree(TreeGenerator::full_binary().truncate(1), true);
  CHECK(compatible(P, "0", "e"));
  CHECK_FALSE(compatible(P, "0", "1"));
  for (int p = 0; p < P.size(); ++p) CHECK(compatible(P, p, p));
  CHECK_THROWS_AS(P.index_of("zz"), Error);
}

TEST_CASE("compatible is symmetric; leq implies compatible") {
  std::mt19937 rng(17);
  for (int i = 0; i < 15; ++i) {
    ForcingPoset P = poset_from_tree(hftest::random_tree(rng, 14), true);
    for (int p = 0; p < P.size(); ++p)
      for (int q = 0; q < P.size(); ++q) {
        CHECK(compatible(P, p, q) == compatible(P, q, p));
        if (P.leq(p, q)) CHECK(compatible(P, p, q));
      }
  }
}

TEST_CASE("full binary truncations are separative (depths 1..4 here)") {
  for (int d = 1; d <= 4; ++d) {
    ForcingPoset P = poset_from_tree(TreeGenerator::full_binary().truncate(d), true);
    CHECK(is_separative(P).separative);
  }
}

TEST_CASE("3-chain fails separativity with the parent/child pair") {
  ForcingPoset P = poset_from_tree(TreeGenerator::linear(Sign::plus).truncate(2), true);
  SeparativityVerdict v = is_separative(P);
  REQUIRE_FALSE(v.separative);
  REQUIRE(v.counterexample.has_value());
  auto [p, q] = *v.counterexample;
  // first failing pair in lexicographic condition order: the root over its child
  CHECK(P.name(p) == "e");
  CHECK(P.name(q) == "0");
  CHECK(hftest::replay_non_separative_pair(P, p, q));
}

TEST_CASE("antichain is separative") {
  SignedTree t = SignedTree::root_only();
  for (int i = 0; i < 4; ++i) t.add_child(0, Sign::plus);
  ForcingPoset P = poset_from_tree(t, false);  // 4-element antichain
  CHECK(P.size() == 4);
  CHECK(is_separative(P).separative);
}

TEST_CASE("unary-node obstruction on every shape up to 8 nodes") {
  for (int n = 1; n <= 8; ++n) {
    for (const auto& t : hftest::all_tree_shapes(n)) {
      ForcingPoset P = poset_from_tree(t, true);
      SeparativityVerdict v = is_separative(P);
      if (hftest::has_unary_node(t)) {
        REQUIRE_FALSE(v.separative);
        REQUIRE(v.counterexample.has_value());
        CHECK(hftest::replay_non_separative_pair(P, v.counterexample->first,
                                                 v.counterexample->second));
      } else {
        CHECK(v.separative);
      }
    }
  }
}

TEST_CASE("dense subsets") {
  ForcingPoset P = poset_from_tree(TreeGenerator::full_binary().truncate(2), true);
  std::vector<std::string> leaves{"00", "01", "10", "11"};
  CHECK(is_dense_subset(P, leaves));
  CHECK_FALSE(is_dense_subset(P, std::vector<std::string>{"e"}));
  CHECK(is_dense_subset(P, P.names()));
  CHECK_THROWS_AS(is_dense_subset(P, std::vector<std::string>{"nope"}), Error);
}

TEST_SUITE_END();
