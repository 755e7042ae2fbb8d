#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace hf {

// Clopen subset of Cantor space as a canonical antichain of binary
// cylinder prefixes: no prefix extends another and no complete sibling
// pair {s0, s1} survives canonicalization, so equality is syntactic.
class CantorClopen {
public:
  static CantorClopen empty();
  static CantorClopen full();                       // the single cylinder ""
  static CantorClopen cylinder(const std::string& s);
  static CantorClopen from_cylinders(std::vector<std::string> cylinders);

  const std::vector<std::string>& cylinders() const { return cylinders_; }
  bool is_empty() const { return cylinders_.empty(); }

  // Membership of the branch with the given prefix-extension behaviour:
  // true iff some cylinder is a prefix of `branch`.
  bool contains_branch(const std::string& branch) const;

  bool operator==(const CantorClopen& o) const = default;

  nlohmann::ordered_json to_json() const;

private:
  std::vector<std::string> cylinders_;
};

CantorClopen clopen_union(const CantorClopen& a, const CantorClopen& b);
CantorClopen clopen_intersect(const CantorClopen& a, const CantorClopen& b);
CantorClopen clopen_complement(const CantorClopen& a);

// Closed middle-third interval coded by a binary prefix: digit b maps to
// ternary digit 2b. Exact rationals with denominator 3^k; never floats.
struct CantorInterval {
  std::int64_t lo_num = 0;
  std::int64_t hi_num = 1;
  std::int64_t den = 1;  // 3^(prefix length)

  bool operator==(const CantorInterval&) const = default;

  bool contains(const CantorInterval& inner) const;
  bool interiors_disjoint(const CantorInterval& o) const;

  nlohmann::ordered_json to_json() const;
};

CantorInterval branch_to_interval(const std::string& prefix);

}  // namespace hf
