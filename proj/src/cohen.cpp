#include "hf/cohen.hpp"

#include <algorithm>

#include "hf/error.hpp"

namespace hf {

namespace {

void check_bits(const std::string& s, const char* what) {
  for (char c : s)
    if (c != '0' && c != '1')
      throw ParseError(std::string(what) + " must be over {0,1}");
}

}  // namespace

int PeriodicBinarySeq::at(std::size_t m) const {
  if (m < prefix.size()) return prefix[m] - '0';
  return block[(m - prefix.size()) % block.size()] - '0';
}

PeriodicBinarySeq PeriodicBinarySeq::parse(const std::string& text) {
  if (text.empty() || text.back() != '^')
    throw ParseError("periodic sequence must end with '^' (e.g. \"01^\")");
  std::string body = text.substr(0, text.size() - 1);
  PeriodicBinarySeq seq;
  auto dot = body.find('.');
  if (dot == std::string::npos) {
    seq.block = body;
  } else {
    seq.prefix = body.substr(0, dot);
    seq.block = body.substr(dot + 1);
  }
  if (seq.block.empty()) throw ParseError("periodic block must be nonempty");
  check_bits(seq.prefix, "sequence prefix");
  check_bits(seq.block, "sequence block");
  return seq;
}

std::string PeriodicBinarySeq::to_text() const {
  return prefix.empty() ? block + "^" : prefix + "." + block + "^";
}

DenseSetSpec DenseSetSpec::min_length(std::size_t n) {
  DenseSetSpec s;
  s.kind_ = Kind::min_length;
  s.n_ = n;
  return s;
}

DenseSetSpec DenseSetSpec::differs_from(PeriodicBinarySeq seq) {
  DenseSetSpec s;
  s.kind_ = Kind::differs_from;
  s.seq_ = std::move(seq);
  return s;
}

DenseSetSpec DenseSetSpec::contains_pattern(std::string pattern) {
  if (pattern.empty()) throw ParseError("pattern must be nonempty");
  check_bits(pattern, "pattern");
  DenseSetSpec s;
  s.kind_ = Kind::contains_pattern;
  s.pattern_ = std::move(pattern);
  return s;
}

DenseSetSpec DenseSetSpec::parse(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw ParseError("spec must look like len:N, diff:SEQ^ or pat:BITS");
  std::string head = text.substr(0, colon);
  std::string body = text.substr(colon + 1);
  if (head == "len") {
    if (body.empty() || !std::all_of(body.begin(), body.end(), [](char c) {
          return c >= '0' && c <= '9';
        }))
      throw ParseError("len: needs a decimal length");
    return min_length(std::stoull(body));
  }
  if (head == "diff") return differs_from(PeriodicBinarySeq::parse(body));
  if (head == "pat") return contains_pattern(body);
  throw ParseError("unknown spec kind '" + head + "'");
}

bool DenseSetSpec::contains(const std::string& condition) const {
  switch (kind_) {
    case Kind::min_length:
      return condition.size() >= n_;
    case Kind::differs_from:
      for (std::size_t m = 0; m < condition.size(); ++m)
        if (condition[m] - '0' != seq_.at(m)) return true;
      return false;
    case Kind::contains_pattern:
      return condition.find(pattern_) != std::string::npos;
  }
  return false;
}

std::size_t DenseSetSpec::slack() const {
  switch (kind_) {
    case Kind::min_length: return n_;
    case Kind::differs_from: return 1;
    case Kind::contains_pattern: return pattern_.size();
  }
  return 0;
}

std::string DenseSetSpec::to_text() const {
  switch (kind_) {
    case Kind::min_length: return "len:" + std::to_string(n_);
    case Kind::differs_from: return "diff:" + seq_.to_text();
    case Kind::contains_pattern: return "pat:" + pattern_;
  }
  return "";
}

namespace {

// Smallest extension length that can possibly contain a member. Lengths
// below it are provably member-free, so the search never spends budget
// there.
std::size_t min_feasible_length(const std::string& p, const DenseSetSpec& spec) {
  if (spec.contains(p)) return p.size();
  switch (spec.kind()) {
    case DenseSetSpec::Kind::min_length:
      return std::max(p.size(), spec.length_bound());
    case DenseSetSpec::Kind::differs_from:
      // p itself agrees everywhere, so one more bit is needed
      return p.size() + 1;
    case DenseSetSpec::Kind::contains_pattern: {
      // pattern absent from p: an occurrence must end inside the
      // appended part, so it needs |w| minus the best suffix overlap
      const std::string& w = spec.pattern();
      std::size_t best = 0;
      for (std::size_t k = std::min(p.size(), w.size() - 1); k > 0; --k) {
        if (p.compare(p.size() - k, k, w, 0, k) == 0) { best = k; break; }
      }
      return p.size() + (w.size() - best);
    }
  }
  return p.size();
}

}  // namespace

std::string least_extension(const std::string& p, const DenseSetSpec& spec,
                            std::size_t budget) {
  std::size_t tested = 0;
  for (std::size_t len = min_feasible_length(p, spec);; ++len) {
    // lex odometer over the appended suffix, starting from all zeros
    std::string cand = p + std::string(len - p.size(), '0');
    while (true) {
      if (++tested > budget)
        throw Error("BudgetExceeded",
                    "no extension met spec '" + spec.to_text() + "' within " +
                        std::to_string(budget) + " candidates");
      if (spec.contains(cand)) return cand;
      std::size_t j = cand.size();
      while (j > p.size() && cand[j - 1] == '1') cand[--j] = '0';
      if (j == p.size()) break;  // suffix wrapped; try the next length
      cand[j - 1] = '1';
    }
  }
}

bool verify_dense(const DenseSetSpec& spec, int depth) {
  if (depth < 0) throw Error("InvalidArgument", "depth must be >= 0");
  if (depth > 20) throw Error("InvalidArgument", "verify_dense depth capped at 20");
  std::size_t bound = static_cast<std::size_t>(depth) + spec.slack();
  for (int len = 0; len <= depth; ++len) {
    std::string cond(static_cast<std::size_t>(len), '0');
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << len); ++bits) {
      for (int i = 0; i < len; ++i)
        cond[static_cast<std::size_t>(i)] = ((bits >> (len - 1 - i)) & 1) ? '1' : '0';
      std::string least = least_extension(cond, spec);
      if (least.size() > bound) return false;
    }
  }
  return true;
}

GenericRun generic_prefix(const std::vector<DenseSetSpec>& specs, std::size_t k,
                          std::size_t budget) {
  if (k > specs.size())
    throw Error("InvalidArgument", "k exceeds the number of specs");
  GenericRun run;
  for (std::size_t i = 0; i < k; ++i) {
    run.prefix = least_extension(run.prefix, specs[i], budget);
    run.trace.emplace_back(static_cast<int>(i), run.prefix);
  }
  return run;
}

bool diagonal_check(const GenericRun& run,
                    const std::vector<PeriodicBinarySeq>& xs) {
  for (const auto& x : xs) {
    bool differs = false;
    for (std::size_t m = 0; m < run.prefix.size(); ++m)
      if (run.prefix[m] - '0' != x.at(m)) { differs = true; break; }
    if (!differs) return false;
  }
  return true;
}

nlohmann::ordered_json GenericRun::to_json(
    const std::vector<DenseSetSpec>& specs) const {
  nlohmann::ordered_json j;
  j["prefix"] = prefix;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& [idx, cond] : trace) {
    nlohmann::ordered_json step;
    step["spec"] = specs[static_cast<std::size_t>(idx)].to_text();
    step["condition"] = cond;
    arr.push_back(std::move(step));
  }
  j["trace"] = std::move(arr);
  return j;
}

}  // namespace hf
