#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

namespace hf {

// Eventually periodic subset of N, the decidable fragment on which the
// mod-finite quotient is computed. Membership:
//
//   n >= N : n mod P in R
//   n <  N : n listed among the members below N
//
// Canonical form has minimal period, then minimal tail start, so
// syntactic equality decides set equality. Text form:
// "tail(N=4, P=2, R={0}) + {1,3}".
class ModFinSet {
public:
  ModFinSet(std::uint64_t tail_start, std::uint64_t period,
            std::set<std::uint64_t> residues, std::set<std::uint64_t> members_below);

  static ModFinSet naturals();
  static ModFinSet empty_set();
  static ModFinSet evens();
  static ModFinSet odds();
  // N minus a finite set.
  static ModFinSet cofinite_without(const std::set<std::uint64_t>& missing);
  static ModFinSet parse(const std::string& text);

  bool contains(std::uint64_t n) const;

  std::uint64_t tail_start() const { return tail_start_; }
  std::uint64_t period() const { return period_; }
  const std::set<std::uint64_t>& residues() const { return residues_; }
  const std::set<std::uint64_t>& members_below() const { return members_below_; }

  bool is_cofinite() const;
  bool is_finite() const;

  // Syntactic equality of canonical forms (true set equality, not mod
  // finite).
  bool operator==(const ModFinSet&) const = default;

  std::string to_text() const;
  nlohmann::ordered_json to_json() const;

private:
  void canonicalize();

  std::uint64_t tail_start_ = 0;
  std::uint64_t period_ = 1;
  std::set<std::uint64_t> residues_;
  std::set<std::uint64_t> members_below_;
};

// A Delta B finite; decided on the periodic tails over lcm of periods.
bool eq_mod_fin(const ModFinSet& a, const ModFinSet& b);

// Membership in the cofinite filter.
bool frechet_contains(const ModFinSet& a);

ModFinSet set_union(const ModFinSet& a, const ModFinSet& b);
ModFinSet set_intersect(const ModFinSet& a, const ModFinSet& b);
ModFinSet set_complement(const ModFinSet& a);

// Injection between cofinite subsets of N with eventually periodic
// displacements:
//
//   n >= N : n -> n + d[n mod P]
//   n <  N : defined only at the listed exceptional points
//
// Validated on construction: globally injective, image inside N, and the
// residue shift r -> (r + d_r) mod P a permutation (which makes the
// image cofinite). Text form: "disp(N=0, P=2, d=[1,-1]) + {0->5}".
class AlmostPermutation {
public:
  AlmostPermutation(std::uint64_t tail_start, std::uint64_t period,
                    std::vector<std::int64_t> displacements,
                    std::map<std::uint64_t, std::uint64_t> exceptions);

  static AlmostPermutation identity();
  static AlmostPermutation shift(std::int64_t k);
  static AlmostPermutation pairswap();  // 2k <-> 2k+1
  static AlmostPermutation parse(const std::string& text);

  bool in_domain(std::uint64_t n) const;
  bool in_image(std::uint64_t m) const;
  std::optional<std::uint64_t> apply(std::uint64_t n) const;

  std::uint64_t tail_start() const { return tail_start_; }
  std::uint64_t period() const { return period_; }
  const std::vector<std::int64_t>& displacements() const { return displacements_; }
  const std::map<std::uint64_t, std::uint64_t>& exceptions() const { return exceptions_; }

  ModFinSet domain() const;
  ModFinSet image() const;

  bool operator==(const AlmostPermutation&) const = default;

  std::string to_text() const;
  nlohmann::ordered_json to_json() const;

private:
  void canonicalize();
  void validate() const;

  std::uint64_t tail_start_ = 0;
  std::uint64_t period_ = 1;
  std::vector<std::int64_t> displacements_;
  std::map<std::uint64_t, std::uint64_t> exceptions_;
};

// f(A intersect dom f), canonically represented. Well defined mod Fin.
ModFinSet induced_auto(const AlmostPermutation& f, const ModFinSet& A);

// compose(f, g) = f after g.
AlmostPermutation compose(const AlmostPermutation& f, const AlmostPermutation& g);
AlmostPermutation invert(const AlmostPermutation& f);

struct CyclicityVerdict {
  bool cyclic = false;
  // i < j inside the periodic tail with f(i) > f(j); first such pair.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> witness;

  nlohmann::ordered_json to_json() const;
};

// Scans one window [N, N+2P); by periodicity a reversal there recurs in
// every window, which is what makes the verdict stable.
CyclicityVerdict classify_cyclic(const AlmostPermutation& f);

}  // namespace hf
