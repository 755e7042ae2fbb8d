#include "hf/modfin.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "hf/error.hpp"

namespace hf {

namespace {

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
  return a / std::gcd(a, b) * b;
}

std::uint64_t floor_mod(std::int64_t v, std::uint64_t p) {
  std::int64_t m = v % static_cast<std::int64_t>(p);
  if (m < 0) m += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(m);
}

}  // namespace

// --- ModFinSet -----------------------------------------------------------

ModFinSet::ModFinSet(std::uint64_t tail_start, std::uint64_t period,
                     std::set<std::uint64_t> residues,
                     std::set<std::uint64_t> members_below)
    : tail_start_(tail_start), period_(period), residues_(std::move(residues)),
      members_below_(std::move(members_below)) {
  if (period_ == 0) throw Error("InvalidArgument", "period must be >= 1");
  for (auto r : residues_)
    if (r >= period_)
      throw Error("InvalidArgument", "residue " + std::to_string(r) +
                                         " outside 0.." + std::to_string(period_ - 1));
  for (auto m : members_below_)
    if (m >= tail_start_)
      throw Error("InvalidArgument",
                  "exceptional member " + std::to_string(m) + " not below N=" +
                      std::to_string(tail_start_));
  canonicalize();
}

void ModFinSet::canonicalize() {
  // minimal period: smallest divisor whose residue pattern repeats
  for (std::uint64_t d = 1; d < period_; ++d) {
    if (period_ % d != 0) continue;
    bool collapses = true;
    for (std::uint64_t x = 0; x < period_ && collapses; ++x)
      if (residues_.count(x) != residues_.count(x % d)) collapses = false;
    if (collapses) {
      std::set<std::uint64_t> reduced;
      for (auto r : residues_)
        if (r < d) reduced.insert(r);
      residues_ = std::move(reduced);
      period_ = d;
      break;
    }
  }
  // minimal tail start: absorb exceptional entries that agree with the tail
  while (tail_start_ > 0) {
    std::uint64_t m = tail_start_ - 1;
    bool tail_val = residues_.count(m % period_) > 0;
    bool actual = members_below_.count(m) > 0;
    if (tail_val != actual) break;
    members_below_.erase(m);
    --tail_start_;
  }
}

ModFinSet ModFinSet::naturals() { return ModFinSet(0, 1, {0}, {}); }
ModFinSet ModFinSet::empty_set() { return ModFinSet(0, 1, {}, {}); }
ModFinSet ModFinSet::evens() { return ModFinSet(0, 2, {0}, {}); }
ModFinSet ModFinSet::odds() { return ModFinSet(0, 2, {1}, {}); }

ModFinSet ModFinSet::cofinite_without(const std::set<std::uint64_t>& missing) {
  std::uint64_t start = missing.empty() ? 0 : *missing.rbegin() + 1;
  std::set<std::uint64_t> members;
  for (std::uint64_t n = 0; n < start; ++n)
    if (!missing.count(n)) members.insert(n);
  return ModFinSet(start, 1, {0}, std::move(members));
}

bool ModFinSet::contains(std::uint64_t n) const {
  if (n >= tail_start_) return residues_.count(n % period_) > 0;
  return members_below_.count(n) > 0;
}

bool ModFinSet::is_cofinite() const {
  return residues_.size() == period_;  // canonical: P=1, R={0}
}

bool ModFinSet::is_finite() const { return residues_.empty(); }

std::string ModFinSet::to_text() const {
  std::ostringstream os;
  os << "tail(N=" << tail_start_ << ", P=" << period_ << ", R={";
  bool first = true;
  for (auto r : residues_) {
    if (!first) os << ",";
    os << r;
    first = false;
  }
  os << "})";
  if (!members_below_.empty()) {
    os << " + {";
    first = true;
    for (auto m : members_below_) {
      if (!first) os << ",";
      os << m;
      first = false;
    }
    os << "}";
  }
  return os.str();
}

nlohmann::ordered_json ModFinSet::to_json() const {
  nlohmann::ordered_json j;
  j["N"] = tail_start_;
  j["P"] = period_;
  j["R"] = residues_;
  j["exceptions"] = members_below_;
  return j;
}

bool eq_mod_fin(const ModFinSet& a, const ModFinSet& b) {
  // canonical tails coincide exactly when the symmetric difference is finite
  return a.period() == b.period() && a.residues() == b.residues();
}

bool frechet_contains(const ModFinSet& a) { return a.is_cofinite(); }

namespace {

// Pointwise combination of two eventually periodic sets: tail over the
// lcm period, explicit members below the combined start.
template <typename F>
ModFinSet pointwise(const ModFinSet& a, const ModFinSet& b, F&& op) {
  std::uint64_t period = lcm_u64(a.period(), b.period());
  std::uint64_t start = std::max(a.tail_start(), b.tail_start());
  // one full window beyond start touches every residue class once
  std::set<std::uint64_t> residues;
  for (std::uint64_t n = start; n < start + period; ++n)
    if (op(a.contains(n), b.contains(n))) residues.insert(n % period);
  std::set<std::uint64_t> members;
  for (std::uint64_t n = 0; n < start; ++n)
    if (op(a.contains(n), b.contains(n))) members.insert(n);
  return ModFinSet(start, period, std::move(residues), std::move(members));
}

}  // namespace

ModFinSet set_union(const ModFinSet& a, const ModFinSet& b) {
  return pointwise(a, b, [](bool x, bool y) { return x || y; });
}

ModFinSet set_intersect(const ModFinSet& a, const ModFinSet& b) {
  return pointwise(a, b, [](bool x, bool y) { return x && y; });
}

ModFinSet set_complement(const ModFinSet& a) {
  std::set<std::uint64_t> residues;
  for (std::uint64_t r = 0; r < a.period(); ++r)
    if (!a.residues().count(r)) residues.insert(r);
  std::set<std::uint64_t> members;
  for (std::uint64_t n = 0; n < a.tail_start(); ++n)
    if (!a.contains(n)) members.insert(n);
  return ModFinSet(a.tail_start(), a.period(), std::move(residues),
                   std::move(members));
}

// --- AlmostPermutation ----------------------------------------------------

AlmostPermutation::AlmostPermutation(
    std::uint64_t tail_start, std::uint64_t period,
    std::vector<std::int64_t> displacements,
    std::map<std::uint64_t, std::uint64_t> exceptions)
    : tail_start_(tail_start), period_(period),
      displacements_(std::move(displacements)), exceptions_(std::move(exceptions)) {
  if (period_ == 0 || displacements_.size() != period_)
    throw Error("InvalidArgument", "need exactly P displacements");
  validate();
  canonicalize();
}

void AlmostPermutation::validate() const {
  // tail stays inside N
  for (std::uint64_t n = tail_start_; n < tail_start_ + period_; ++n) {
    std::int64_t v = static_cast<std::int64_t>(n) + displacements_[n % period_];
    if (v < 0)
      throw Error("InvalidArgument", "tail maps " + std::to_string(n) +
                                         " below zero");
  }
  // residue shift must permute Z_P, otherwise two classes collide
  std::vector<char> hit(period_, 0);
  for (std::uint64_t r = 0; r < period_; ++r) {
    std::uint64_t s = floor_mod(static_cast<std::int64_t>(r) + displacements_[r],
                                period_);
    if (hit[s])
      throw Error("NotInjective",
                  "residue classes collide modulo P=" + std::to_string(period_));
    hit[s] = 1;
  }
  // exceptions: below N, injective, and not colliding with the tail image
  std::set<std::uint64_t> values;
  for (const auto& [n, v] : exceptions_) {
    if (n >= tail_start_)
      throw Error("InvalidArgument", "exceptional point " + std::to_string(n) +
                                         " not below N=" + std::to_string(tail_start_));
    if (!values.insert(v).second)
      throw Error("NotInjective", "two exceptional points share the value " +
                                      std::to_string(v));
  }
  for (auto v : values) {
    // tail preimage of v exists iff some class r has v - d_r >= N, matching r
    for (std::uint64_t r = 0; r < period_; ++r) {
      std::int64_t n = static_cast<std::int64_t>(v) - displacements_[r];
      if (n >= static_cast<std::int64_t>(tail_start_) &&
          floor_mod(n, period_) == r)
        throw Error("NotInjective", "exceptional value " + std::to_string(v) +
                                        " collides with the tail image");
    }
  }
}

void AlmostPermutation::canonicalize() {
  // minimal period of the displacement vector
  for (std::uint64_t d = 1; d < period_; ++d) {
    if (period_ % d != 0) continue;
    bool collapses = true;
    for (std::uint64_t x = 0; x < period_ && collapses; ++x)
      if (displacements_[x] != displacements_[x % d]) collapses = false;
    if (collapses) {
      displacements_.resize(d);
      period_ = d;
      break;
    }
  }
  // minimal tail start
  while (tail_start_ > 0) {
    std::uint64_t m = tail_start_ - 1;
    auto it = exceptions_.find(m);
    if (it == exceptions_.end()) break;
    std::int64_t tail_v = static_cast<std::int64_t>(m) + displacements_[m % period_];
    if (tail_v < 0 || static_cast<std::uint64_t>(tail_v) != it->second) break;
    exceptions_.erase(it);
    --tail_start_;
  }
}

AlmostPermutation AlmostPermutation::identity() {
  return AlmostPermutation(0, 1, {0}, {});
}

AlmostPermutation AlmostPermutation::shift(std::int64_t k) {
  if (k >= 0) return AlmostPermutation(0, 1, {k}, {});
  return AlmostPermutation(static_cast<std::uint64_t>(-k), 1, {k}, {});
}

AlmostPermutation AlmostPermutation::pairswap() {
  return AlmostPermutation(0, 2, {1, -1}, {});
}

bool AlmostPermutation::in_domain(std::uint64_t n) const {
  return n >= tail_start_ || exceptions_.count(n) > 0;
}

std::optional<std::uint64_t> AlmostPermutation::apply(std::uint64_t n) const {
  if (n >= tail_start_) {
    return static_cast<std::uint64_t>(static_cast<std::int64_t>(n) +
                                      displacements_[n % period_]);
  }
  auto it = exceptions_.find(n);
  if (it == exceptions_.end()) return std::nullopt;
  return it->second;
}

bool AlmostPermutation::in_image(std::uint64_t m) const {
  for (std::uint64_t r = 0; r < period_; ++r) {
    std::int64_t n = static_cast<std::int64_t>(m) - displacements_[r];
    if (n >= static_cast<std::int64_t>(tail_start_) && floor_mod(n, period_) == r)
      return true;
  }
  for (const auto& [n, v] : exceptions_)
    if (v == m) return true;
  return false;
}

ModFinSet AlmostPermutation::domain() const {
  std::set<std::uint64_t> members;
  for (const auto& [n, v] : exceptions_) members.insert(n);
  return ModFinSet(tail_start_, 1, {0}, std::move(members));
}

ModFinSet AlmostPermutation::image() const {
  // beyond this bound every point of N is hit by the tail alone
  std::int64_t max_d = *std::max_element(displacements_.begin(), displacements_.end());
  std::uint64_t bound = tail_start_ + static_cast<std::uint64_t>(std::max<std::int64_t>(0, max_d)) + period_;
  for (const auto& [n, v] : exceptions_) bound = std::max(bound, v + 1);
  std::set<std::uint64_t> members;
  for (std::uint64_t m = 0; m < bound; ++m)
    if (in_image(m)) members.insert(m);
  return ModFinSet(bound, 1, {0}, std::move(members));
}

std::string AlmostPermutation::to_text() const {
  std::ostringstream os;
  os << "disp(N=" << tail_start_ << ", P=" << period_ << ", d=[";
  for (std::uint64_t i = 0; i < period_; ++i) {
    if (i) os << ",";
    os << displacements_[i];
  }
  os << "])";
  if (!exceptions_.empty()) {
    os << " + {";
    bool first = true;
    for (const auto& [n, v] : exceptions_) {
      if (!first) os << ",";
      os << n << "->" << v;
      first = false;
    }
    os << "}";
  }
  return os.str();
}

nlohmann::ordered_json AlmostPermutation::to_json() const {
  nlohmann::ordered_json j;
  j["N"] = tail_start_;
  j["P"] = period_;
  j["d"] = displacements_;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& [n, v] : exceptions_) arr.push_back({n, v});
  j["exceptions"] = std::move(arr);
  return j;
}

// --- operations -----------------------------------------------------------

ModFinSet induced_auto(const AlmostPermutation& f, const ModFinSet& A) {
  std::uint64_t period = lcm_u64(f.period(), A.period());
  std::int64_t max_abs = 0;
  for (auto d : f.displacements()) max_abs = std::max(max_abs, d < 0 ? -d : d);
  std::uint64_t start = std::max(f.tail_start(), A.tail_start()) +
                        static_cast<std::uint64_t>(max_abs) + period;
  for (const auto& [n, v] : f.exceptions()) start = std::max(start, v + 1);

  // beyond `start` membership is decided by the residue image of the tail
  std::set<std::uint64_t> residues;
  for (std::uint64_t r = 0; r < period; ++r) {
    if (!A.residues().count(r % A.period())) continue;
    std::uint64_t img = floor_mod(static_cast<std::int64_t>(r) +
                                      f.displacements()[r % f.period()],
                                  period);
    residues.insert(img);
  }
  // explicit members below start, evaluated directly
  std::set<std::uint64_t> members;
  std::uint64_t scan_to = start + static_cast<std::uint64_t>(max_abs) + period;
  for (std::uint64_t n = 0; n < scan_to; ++n) {
    if (!A.contains(n) || !f.in_domain(n)) continue;
    std::uint64_t v = *f.apply(n);
    if (v < start) members.insert(v);
  }
  return ModFinSet(start, period, std::move(residues), std::move(members));
}

AlmostPermutation compose(const AlmostPermutation& f, const AlmostPermutation& g) {
  std::uint64_t period = lcm_u64(f.period(), g.period());
  std::int64_t max_abs_g = 0;
  for (auto d : g.displacements()) max_abs_g = std::max(max_abs_g, d < 0 ? -d : d);
  std::uint64_t start = std::max(g.tail_start(),
                                 f.tail_start() + static_cast<std::uint64_t>(max_abs_g)) +
                        period;

  std::vector<std::int64_t> disps(period);
  for (std::uint64_t r = 0; r < period; ++r) {
    std::int64_t dg = g.displacements()[r % g.period()];
    std::uint64_t mid = floor_mod(static_cast<std::int64_t>(r) + dg,
                                  f.period());
    disps[r] = dg + f.displacements()[mid];
  }

  std::map<std::uint64_t, std::uint64_t> exceptions;
  for (std::uint64_t n = 0; n < start; ++n) {
    auto mid = g.apply(n);
    if (!mid) continue;
    auto out = f.apply(*mid);
    if (!out) continue;
    exceptions[n] = *out;
  }
  return AlmostPermutation(start, period, std::move(disps), std::move(exceptions));
}

AlmostPermutation invert(const AlmostPermutation& f) {
  std::uint64_t period = f.period();
  std::int64_t max_abs = 0;
  for (auto d : f.displacements()) max_abs = std::max(max_abs, d < 0 ? -d : d);
  std::uint64_t start = f.tail_start() + static_cast<std::uint64_t>(max_abs) + period;
  for (const auto& [n, v] : f.exceptions()) start = std::max(start, v + 1);

  // inverse displacement on the image class of each residue
  std::vector<std::int64_t> disps(period, 0);
  for (std::uint64_t r = 0; r < period; ++r) {
    std::uint64_t s = floor_mod(static_cast<std::int64_t>(r) + f.displacements()[r],
                                period);
    disps[s] = -f.displacements()[r];
  }

  std::map<std::uint64_t, std::uint64_t> exceptions;
  std::uint64_t scan_to = start + static_cast<std::uint64_t>(max_abs) + period;
  for (std::uint64_t n = 0; n < scan_to; ++n) {
    auto v = f.apply(n);
    if (v && *v < start) exceptions[*v] = n;
  }
  return AlmostPermutation(start, period, std::move(disps), std::move(exceptions));
}

CyclicityVerdict classify_cyclic(const AlmostPermutation& f) {
  std::uint64_t lo = f.tail_start();
  std::uint64_t hi = lo + 2 * f.period();
  for (std::uint64_t i = lo; i < hi; ++i) {
    for (std::uint64_t j = i + 1; j < hi; ++j) {
      if (*f.apply(i) > *f.apply(j)) return {true, std::make_pair(i, j)};
    }
  }
  return {false, std::nullopt};
}

nlohmann::ordered_json CyclicityVerdict::to_json() const {
  nlohmann::ordered_json j;
  j["cyclic"] = cyclic;
  if (witness) j["witness"] = {witness->first, witness->second};
  return j;
}

// --- text parsers ----------------------------------------------------------

namespace {

class TextCursor {
public:
  explicit TextCursor(const std::string& s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  bool eof() {
    skip_ws();
    return pos_ >= s_.size();
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
    return false;
  }
  void expect(char c) {
    if (!accept(c))
      throw ParseError(std::string("expected '") + c + "' at position " +
                       std::to_string(pos_ + 1));
  }
  void expect_word(const char* w) {
    skip_ws();
    std::size_t len = std::string(w).size();
    if (s_.compare(pos_, len, w) != 0)
      throw ParseError(std::string("expected '") + w + "'");
    pos_ += len;
  }
  std::int64_t integer() {
    skip_ws();
    bool neg = accept('-');
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] < '0' || s_[pos_] > '9')
      throw ParseError("expected a number at position " + std::to_string(pos_ + 1));
    std::int64_t v = 0;
    while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') {
      v = v * 10 + (s_[pos_] - '0');
      ++pos_;
    }
    return neg ? -v : v;
  }
  std::uint64_t natural() {
    std::int64_t v = integer();
    if (v < 0) throw ParseError("expected a nonnegative number");
    return static_cast<std::uint64_t>(v);
  }

private:
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

ModFinSet ModFinSet::parse(const std::string& text) {
  TextCursor cur(text);
  cur.expect_word("tail");
  cur.expect('(');
  cur.expect_word("N=");
  std::uint64_t N = cur.natural();
  cur.expect(',');
  cur.expect_word("P=");
  std::uint64_t P = cur.natural();
  cur.expect(',');
  cur.expect_word("R=");
  cur.expect('{');
  std::set<std::uint64_t> residues;
  if (!cur.accept('}')) {
    do {
      residues.insert(cur.natural());
    } while (cur.accept(','));
    cur.expect('}');
  }
  cur.expect(')');
  std::set<std::uint64_t> members;
  if (cur.accept('+')) {
    cur.expect('{');
    if (!cur.accept('}')) {
      do {
        members.insert(cur.natural());
      } while (cur.accept(','));
      cur.expect('}');
    }
  }
  if (!cur.eof()) throw ParseError("trailing input after set expression");
  return ModFinSet(N, P, std::move(residues), std::move(members));
}

AlmostPermutation AlmostPermutation::parse(const std::string& text) {
  TextCursor cur(text);
  cur.expect_word("disp");
  cur.expect('(');
  cur.expect_word("N=");
  std::uint64_t N = cur.natural();
  cur.expect(',');
  cur.expect_word("P=");
  std::uint64_t P = cur.natural();
  cur.expect(',');
  cur.expect_word("d=");
  cur.expect('[');
  std::vector<std::int64_t> disps;
  if (!cur.accept(']')) {
    do {
      disps.push_back(cur.integer());
    } while (cur.accept(','));
    cur.expect(']');
  }
  cur.expect(')');
  std::map<std::uint64_t, std::uint64_t> exceptions;
  if (cur.accept('+')) {
    cur.expect('{');
    if (!cur.accept('}')) {
      do {
        std::uint64_t n = cur.natural();
        cur.expect('-');
        cur.expect('>');
        exceptions[n] = cur.natural();
      } while (cur.accept(','));
      cur.expect('}');
    }
  }
  if (!cur.eof()) throw ParseError("trailing input after permutation expression");
  return AlmostPermutation(N, P, std::move(disps), std::move(exceptions));
}

}  // namespace hf
