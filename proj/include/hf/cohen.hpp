#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace hf {

// Eventually periodic 0/1 sequence: finite prefix then a repeating
// block. Text form "[prefix.]block^", e.g. "01^" or "110.01^".
struct PeriodicBinarySeq {
  std::string prefix;
  std::string block;  // nonempty

  int at(std::size_t m) const;

  static PeriodicBinarySeq parse(const std::string& text);
  std::string to_text() const;
  bool operator==(const PeriodicBinarySeq&) const = default;
};

// A dense set of Cohen conditions. Compact text forms: "len:3",
// "diff:01^", "pat:101".
class DenseSetSpec {
public:
  enum class Kind { min_length, differs_from, contains_pattern };

  static DenseSetSpec min_length(std::size_t n);
  static DenseSetSpec differs_from(PeriodicBinarySeq seq);
  static DenseSetSpec contains_pattern(std::string pattern);
  static DenseSetSpec parse(const std::string& text);

  Kind kind() const { return kind_; }
  std::size_t length_bound() const { return n_; }
  const PeriodicBinarySeq& sequence() const { return seq_; }
  const std::string& pattern() const { return pattern_; }

  bool contains(const std::string& condition) const;

  // Extra length beyond which every condition has an extension inside.
  std::size_t slack() const;

  std::string to_text() const;

private:
  Kind kind_ = Kind::min_length;
  std::size_t n_ = 0;
  PeriodicBinarySeq seq_;
  std::string pattern_;
};

// Checks that every condition of length <= depth has an extension of
// length <= depth + slack inside the set.
bool verify_dense(const DenseSetSpec& spec, int depth);

struct GenericRun {
  std::string prefix;
  std::vector<std::pair<int, std::string>> trace;  // (spec index, condition)

  nlohmann::ordered_json to_json(const std::vector<DenseSetSpec>& specs) const;
};

inline constexpr std::size_t kDefaultSearchBudget = std::size_t{1} << 16;

// Length-then-lex least extension of `p` inside the spec's set. Candidate
// testing is budgeted; lengths that provably contain no member are
// skipped so the budget is spent on real candidates.
std::string least_extension(const std::string& p, const DenseSetSpec& spec,
                            std::size_t budget = kDefaultSearchBudget);

// Deterministic generic construction: p0 = "", each step extends to the
// least condition meeting the next spec.
GenericRun generic_prefix(const std::vector<DenseSetSpec>& specs, std::size_t k,
                          std::size_t budget = kDefaultSearchBudget);

// True iff the run's prefix already disagrees with every listed sequence.
bool diagonal_check(const GenericRun& run,
                    const std::vector<PeriodicBinarySeq>& xs);

}  // namespace hf
