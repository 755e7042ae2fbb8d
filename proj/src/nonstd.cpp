#include "hf/nonstd.hpp"

#include <algorithm>
#include <sstream>

#include "hf/error.hpp"

namespace hf {

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const Rat& Poly::leading() const {
  if (c_.empty()) throw Error("InvalidArgument", "zero polynomial has no leading coefficient");
  return c_.back();
}

Rat Poly::eval(std::int64_t n) const {
  Rat acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * Rat(n) + *it;
  return acc;
}

bool Poly::is_integer_valued() const {
  for (int n = 0; n <= degree(); ++n)
    if (!eval(n).is_integer()) return false;
  return true;
}

std::int64_t Poly::positivity_bound() const {
  if (c_.size() <= 1) return 0;
  // all real roots lie below 1 + max |c_i / c_deg|
  Rat lead = c_.back();
  Rat maxratio(0);
  for (std::size_t i = 0; i + 1 < c_.size(); ++i) {
    Rat r = c_[i] / lead;
    if (r.sign() < 0) r = -r;
    if (maxratio < r) maxratio = r;
  }
  std::int64_t bound = maxratio.num() / maxratio.den() + 2;
  return bound;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()), Rat(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
  std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()), Rat(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
  return Poly(std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rat> c(a.c_.size() + b.c_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(c));
}

std::string Poly::to_text() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    Rat v = c_[i];
    if (first) {
      if (v.sign() < 0) { os << "-"; v = -v; }
    } else {
      os << (v.sign() < 0 ? "-" : "+");
      if (v.sign() < 0) v = -v;
    }
    first = false;
    if (i == 0) {
      os << v.str();
    } else {
      if (!(v == Rat(1))) os << v.str() << "*";
      os << "n";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) return "0";
  return os.str();
}

nlohmann::ordered_json Poly::to_json() const {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : c_) arr.push_back({r.num(), r.den()});
  return arr;
}

// "c", "c*n^k", "n^k", with +/- separators; variable letter n or i.
Poly Poly::parse(const std::string& text) {
  std::vector<Rat> coeffs;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  auto number = [&]() -> std::int64_t {
    skip_ws();
    if (pos >= text.size() || text[pos] < '0' || text[pos] > '9')
      throw ParseError("expected a number in polynomial at position " +
                       std::to_string(pos + 1));
    std::int64_t v = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9')
      v = v * 10 + (text[pos++] - '0');
    return v;
  };
  skip_ws();
  if (pos >= text.size()) throw ParseError("empty polynomial");
  bool first = true;
  while (true) {
    skip_ws();
    if (pos >= text.size()) break;
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      throw ParseError("expected + or - between polynomial terms");
    }
    skip_ws();
    Rat coeff(1);
    bool have_coeff = false;
    if (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      std::int64_t num = number();
      std::int64_t den = 1;
      skip_ws();
      if (pos < text.size() && text[pos] == '/') {
        ++pos;
        den = number();
      }
      coeff = Rat(num, den);
      have_coeff = true;
    }
    std::size_t deg = 0;
    skip_ws();
    bool star = false;
    if (have_coeff && pos < text.size() && text[pos] == '*') {
      star = true;
      ++pos;
      skip_ws();
    }
    if (pos < text.size() && (text[pos] == 'n' || text[pos] == 'i')) {
      ++pos;
      deg = 1;
      skip_ws();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        deg = static_cast<std::size_t>(number());
      }
    } else if (star) {
      throw ParseError("'*' must be followed by the variable");
    } else if (!have_coeff) {
      throw ParseError("expected a coefficient or the variable at position " +
                       std::to_string(pos + 1));
    }
    if (deg > 16) throw ParseError("polynomial degree capped at 16");
    if (coeffs.size() <= deg) coeffs.resize(deg + 1, Rat(0));
    coeffs[deg] += sign < 0 ? -coeff : coeff;
    first = false;
  }
  if (first) throw ParseError("empty polynomial");
  return Poly(std::move(coeffs));
}

Poly power_sum(int k) {
  if (k < 0 || k > 16) throw Error("InvalidArgument", "power_sum supports 0 <= k <= 16");
  // (n+1)^(k+1) - 1 = sum_{j=0}^{k} C(k+1, j) S_j(n)
  static const Poly n_plus_1({Rat(1), Rat(1)});
  std::vector<Poly> sums;
  sums.reserve(static_cast<std::size_t>(k) + 1);
  for (int m = 0; m <= k; ++m) {
    Poly lhs = Poly::constant(Rat(-1));
    Poly pw = Poly::constant(Rat(1));
    for (int i = 0; i < m + 1; ++i) pw = pw * n_plus_1;
    lhs = lhs + pw;
    // binomials C(m+1, j)
    std::vector<std::int64_t> binom(static_cast<std::size_t>(m) + 2, 0);
    binom[0] = 1;
    for (int row = 1; row <= m + 1; ++row)
      for (int j = row; j > 0; --j) binom[static_cast<std::size_t>(j)] += binom[static_cast<std::size_t>(j - 1)];
    for (int j = 0; j < m; ++j)
      lhs = lhs - Poly::constant(Rat(binom[static_cast<std::size_t>(j)])) * sums[static_cast<std::size_t>(j)];
    Poly sm = lhs * Poly::constant(Rat(1, m + 1));
    sums.push_back(std::move(sm));
  }
  return sums[static_cast<std::size_t>(k)];
}

// --- NonstandardNat --------------------------------------------------------

NonstandardNat::NonstandardNat(std::uint64_t tail_start, Poly tail,
                               std::map<std::uint64_t, std::uint64_t> exceptions)
    : tail_start_(tail_start), tail_(std::move(tail)),
      exceptions_(std::move(exceptions)) {
  for (const auto& [n, v] : exceptions_)
    if (n >= tail_start_)
      throw Error("InvalidArgument", "exceptional point " + std::to_string(n) +
                                         " not below N=" + std::to_string(tail_start_));
  if (!tail_.is_zero() && !tail_.is_integer_valued())
    throw Error("NotIntegerValued", "tail polynomial is not integer valued");
  if (!tail_.is_zero() && tail_.degree() >= 1 && tail_.leading().sign() < 0)
    throw Error("InvalidArgument", "tail polynomial is eventually negative");
  if (!tail_.is_zero() && tail_.degree() == 0 && tail_.leading().sign() < 0)
    throw Error("InvalidArgument", "constant tail must be nonnegative");
  // explicit nonnegativity up to the sign-stability bound
  std::int64_t stable = tail_.positivity_bound();
  for (std::int64_t n = static_cast<std::int64_t>(tail_start_); n <= stable; ++n)
    if (tail_.eval(n).sign() < 0)
      throw Error("InvalidArgument", "tail value at n=" + std::to_string(n) +
                                         " is negative");
  canonicalize();
}

void NonstandardNat::canonicalize() {
  while (tail_start_ > 0) {
    std::uint64_t m = tail_start_ - 1;
    auto it = exceptions_.find(m);
    if (it == exceptions_.end()) break;
    Rat tv = tail_.eval(static_cast<std::int64_t>(m));
    if (!tv.is_integer() || tv.sign() < 0 ||
        static_cast<std::uint64_t>(tv.num()) != it->second)
      break;
    exceptions_.erase(it);
    --tail_start_;
  }
}

NonstandardNat NonstandardNat::standard(std::uint64_t k) {
  return NonstandardNat(0, Poly::constant(Rat(static_cast<std::int64_t>(k))), {});
}

std::uint64_t NonstandardNat::value_at(std::uint64_t n) const {
  if (n >= tail_start_) {
    Rat v = tail_.eval(static_cast<std::int64_t>(n));
    return static_cast<std::uint64_t>(v.num());
  }
  return exceptions_.at(n);
}

std::string NonstandardNat::to_text() const {
  std::ostringstream os;
  os << "poly(N=" << tail_start_ << ", q=" << tail_.to_text() << ")";
  if (!exceptions_.empty()) {
    os << " + {";
    bool first = true;
    for (const auto& [n, v] : exceptions_) {
      if (!first) os << ",";
      os << n << ":" << v;
      first = false;
    }
    os << "}";
  }
  return os.str();
}

nlohmann::ordered_json NonstandardNat::to_json() const {
  nlohmann::ordered_json j;
  j["N"] = tail_start_;
  j["q"] = tail_.to_json();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& [n, v] : exceptions_) arr.push_back({n, v});
  j["exceptions"] = std::move(arr);
  return j;
}

NonstandardNat NonstandardNat::parse(const std::string& text) {
  auto open = text.find("poly(N=");
  if (open != 0) throw ParseError("expected poly(N=..., q=...)");
  std::size_t pos = 7;
  std::uint64_t N = 0;
  bool any = false;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
    N = N * 10 + static_cast<std::uint64_t>(text[pos++] - '0');
    any = true;
  }
  if (!any) throw ParseError("expected N= number");
  while (pos < text.size() && (text[pos] == ' ' || text[pos] == ',')) ++pos;
  if (text.compare(pos, 2, "q=") != 0) throw ParseError("expected q=");
  pos += 2;
  int depth = 1;
  std::size_t qstart = pos;
  while (pos < text.size() && depth > 0) {
    if (text[pos] == '(') ++depth;
    if (text[pos] == ')') --depth;
    if (depth > 0) ++pos;
  }
  if (depth != 0) throw ParseError("unterminated poly(...)");
  Poly q = Poly::parse(text.substr(qstart, pos - qstart));
  ++pos;  // ')'
  std::map<std::uint64_t, std::uint64_t> exceptions;
  while (pos < text.size() && text[pos] == ' ') ++pos;
  if (pos < text.size() && text[pos] == '+') {
    ++pos;
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos >= text.size() || text[pos] != '{') throw ParseError("expected {exceptions}");
    ++pos;
    while (true) {
      while (pos < text.size() && (text[pos] == ' ' || text[pos] == ',')) ++pos;
      if (pos < text.size() && text[pos] == '}') { ++pos; break; }
      std::uint64_t n = 0, v = 0;
      bool got = false;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        n = n * 10 + static_cast<std::uint64_t>(text[pos++] - '0');
        got = true;
      }
      if (!got || pos >= text.size() || text[pos] != ':')
        throw ParseError("expected n:value in exceptions");
      ++pos;
      got = false;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        v = v * 10 + static_cast<std::uint64_t>(text[pos++] - '0');
        got = true;
      }
      if (!got) throw ParseError("expected n:value in exceptions");
      exceptions[n] = v;
    }
  }
  while (pos < text.size() && text[pos] == ' ') ++pos;
  if (pos != text.size()) throw ParseError("trailing input after poly expression");
  return NonstandardNat(N, std::move(q), std::move(exceptions));
}

namespace {

template <typename F>
NonstandardNat pointwise_ns(const NonstandardNat& a, const NonstandardNat& b,
                            const Poly& tail, F&& value_op) {
  std::uint64_t start = std::max(a.tail_start(), b.tail_start());
  std::map<std::uint64_t, std::uint64_t> exceptions;
  for (std::uint64_t n = 0; n < start; ++n)
    exceptions[n] = value_op(a.value_at(n), b.value_at(n));
  return NonstandardNat(start, tail, std::move(exceptions));
}

}  // namespace

NonstandardNat ns_add(const NonstandardNat& a, const NonstandardNat& b) {
  return pointwise_ns(a, b, a.tail() + b.tail(),
                      [](std::uint64_t x, std::uint64_t y) { return x + y; });
}

NonstandardNat ns_mul(const NonstandardNat& a, const NonstandardNat& b) {
  return pointwise_ns(a, b, a.tail() * b.tail(),
                      [](std::uint64_t x, std::uint64_t y) { return x * y; });
}

NsCmp ns_cmp(const NonstandardNat& a, const NonstandardNat& b) {
  Poly diff = a.tail() - b.tail();
  if (diff.is_zero()) return NsCmp::equal;
  return diff.leading().sign() > 0 ? NsCmp::greater : NsCmp::less;
}

std::optional<std::uint64_t> is_standard(const NonstandardNat& a) {
  if (a.tail().degree() > 0) return std::nullopt;
  if (a.tail().is_zero()) return 0;
  return static_cast<std::uint64_t>(a.tail().leading().num());
}

bool is_infinite(const NonstandardNat& a) { return a.tail().degree() >= 1; }

NonstandardNat partial_sums(const Poly& term) {
  if (term.is_zero()) return NonstandardNat::standard(0);
  if (!term.is_integer_valued())
    throw Error("NotIntegerValued", "summation term is not integer valued");
  Poly total;
  for (int k = 0; k <= term.degree(); ++k) {
    Rat c = k < static_cast<int>(term.coeffs().size()) ? term.coeffs()[static_cast<std::size_t>(k)] : Rat(0);
    if (c.is_zero()) continue;
    total = total + Poly::constant(c) * power_sum(k);
  }
  return NonstandardNat(0, std::move(total), {});
}

}  // namespace hf
