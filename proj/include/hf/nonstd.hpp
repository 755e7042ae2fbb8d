#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hf/rational.hpp"
#include "json.hpp"

namespace hf {

// Polynomial with exact rational coefficients, expanded canonical form
// (trailing zeros trimmed). Text form "1/2*n+1/2*n^2".
class Poly {
public:
  Poly() = default;
  explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Poly constant(Rat v) { return Poly({v}); }
  static Poly variable() { return Poly({Rat(0), Rat(1)}); }
  static Poly parse(const std::string& text);

  const std::vector<Rat>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Rat& leading() const;

  Rat eval(std::int64_t n) const;

  // Integer values at deg+1 consecutive points force integrality
  // everywhere; this checks 0..deg.
  bool is_integer_valued() const;

  // All values from this point on share the sign of the leading
  // coefficient (Cauchy-style root bound).
  std::int64_t positivity_bound() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  bool operator==(const Poly&) const = default;

  std::string to_text() const;
  nlohmann::ordered_json to_json() const;

private:
  void trim();
  std::vector<Rat> c_;
};

// Sum_{i=1}^{n} i^k as a polynomial in n (Faulhaber closed form).
Poly power_sum(int k);

enum class NsCmp { less, equal, greater };

// Nonstandard natural: an eventually polynomial sequence of naturals,
// taken modulo eventual equality. The tail polynomial must be integer
// valued and nonnegative from the tail start on (verified); finitely
// many exceptional values sit below the tail start. Standard k embeds as
// the constant polynomial k.
class NonstandardNat {
public:
  NonstandardNat(std::uint64_t tail_start, Poly tail,
                 std::map<std::uint64_t, std::uint64_t> exceptions);

  static NonstandardNat standard(std::uint64_t k);
  static NonstandardNat parse(const std::string& text);

  std::uint64_t tail_start() const { return tail_start_; }
  const Poly& tail() const { return tail_; }
  const std::map<std::uint64_t, std::uint64_t>& exceptions() const {
    return exceptions_;
  }

  std::uint64_t value_at(std::uint64_t n) const;

  // Syntactic equality of canonical forms.
  bool operator==(const NonstandardNat&) const = default;

  std::string to_text() const;
  nlohmann::ordered_json to_json() const;

private:
  void canonicalize();

  std::uint64_t tail_start_ = 0;
  Poly tail_;
  std::map<std::uint64_t, std::uint64_t> exceptions_;
};

NonstandardNat ns_add(const NonstandardNat& a, const NonstandardNat& b);
NonstandardNat ns_mul(const NonstandardNat& a, const NonstandardNat& b);

// Eventual dominance order; `equal` iff the canonical tails coincide
// (exceptions are invisible to the quotient).
NsCmp ns_cmp(const NonstandardNat& a, const NonstandardNat& b);

std::optional<std::uint64_t> is_standard(const NonstandardNat& a);
bool is_infinite(const NonstandardNat& a);

// n -> Sum_{i=1}^{n} term(i) in closed form. The term must be integer
// valued; the result is integer valued by construction and carries its
// integrality certificate through the constructor check.
NonstandardNat partial_sums(const Poly& term);

}  // namespace hf
