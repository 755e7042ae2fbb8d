#include "hf/cantor.hpp"

#include <algorithm>
#include <set>

#include "hf/error.hpp"

namespace hf {

namespace {

void check_binary(const std::string& s) {
  for (char c : s)
    if (c != '0' && c != '1')
      throw ParseError(std::string("cylinder prefixes are binary; got '") + c + "'");
}

bool is_prefix(const std::string& p, const std::string& s) {
  return p.size() <= s.size() && std::equal(p.begin(), p.end(), s.begin());
}

// Drop covered cylinders and merge sibling pairs until stable.
std::vector<std::string> canonicalize(std::vector<std::string> cs) {
  std::set<std::string> set(cs.begin(), cs.end());
  bool changed = true;
  while (changed) {
    changed = false;
    // absorb: remove any string with a proper prefix present
    for (auto it = set.begin(); it != set.end();) {
      bool covered = false;
      const std::string& s = *it;
      for (std::size_t len = 0; len < s.size(); ++len)
        if (set.count(s.substr(0, len))) { covered = true; break; }
      if (covered) {
        it = set.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
    // merge complete sibling pairs
    for (auto it = set.begin(); it != set.end();) {
      const std::string& s = *it;
      if (!s.empty() && s.back() == '0') {
        std::string sib = s;
        sib.back() = '1';
        if (set.count(sib)) {
          std::string parent = s.substr(0, s.size() - 1);
          set.erase(sib);
          it = set.erase(it);
          set.insert(parent);
          changed = true;
          continue;
        }
      }
      ++it;
    }
  }
  return {set.begin(), set.end()};
}

}  // namespace

CantorClopen CantorClopen::empty() { return CantorClopen{}; }

CantorClopen CantorClopen::full() {
  CantorClopen c;
  c.cylinders_ = {""};
  return c;
}

CantorClopen CantorClopen::cylinder(const std::string& s) {
  check_binary(s);
  CantorClopen c;
  c.cylinders_ = {s};
  return c;
}

CantorClopen CantorClopen::from_cylinders(std::vector<std::string> cylinders) {
  for (const auto& s : cylinders) check_binary(s);
  CantorClopen c;
  c.cylinders_ = canonicalize(std::move(cylinders));
  return c;
}

bool CantorClopen::contains_branch(const std::string& branch) const {
  for (const auto& cyl : cylinders_)
    if (is_prefix(cyl, branch)) return true;
  return false;
}

nlohmann::ordered_json CantorClopen::to_json() const {
  nlohmann::ordered_json j;
  j["cylinders"] = cylinders_;
  return j;
}

CantorClopen clopen_union(const CantorClopen& a, const CantorClopen& b) {
  std::vector<std::string> all = a.cylinders();
  all.insert(all.end(), b.cylinders().begin(), b.cylinders().end());
  return CantorClopen::from_cylinders(std::move(all));
}

CantorClopen clopen_intersect(const CantorClopen& a, const CantorClopen& b) {
  std::vector<std::string> out;
  for (const auto& s : a.cylinders()) {
    for (const auto& t : b.cylinders()) {
      if (is_prefix(s, t))
        out.push_back(t);
      else if (is_prefix(t, s))
        out.push_back(s);
    }
  }
  return CantorClopen::from_cylinders(std::move(out));
}

CantorClopen clopen_complement(const CantorClopen& a) {
  CantorClopen out = CantorClopen::full();
  for (const auto& s : a.cylinders()) {
    // complement of one cylinder: flip each prefix step
    std::vector<std::string> comp;
    for (std::size_t i = 0; i < s.size(); ++i) {
      std::string t = s.substr(0, i + 1);
      t.back() = t.back() == '0' ? '1' : '0';
      comp.push_back(std::move(t));
    }
    out = clopen_intersect(out, CantorClopen::from_cylinders(std::move(comp)));
  }
  return out;
}

bool CantorInterval::contains(const CantorInterval& inner) const {
  // lo <= inner.lo and inner.hi <= hi, cross-multiplied
  return static_cast<__int128>(lo_num) * inner.den <=
             static_cast<__int128>(inner.lo_num) * den &&
         static_cast<__int128>(inner.hi_num) * den <=
             static_cast<__int128>(hi_num) * inner.den;
}

bool CantorInterval::interiors_disjoint(const CantorInterval& o) const {
  // hi <= o.lo or o.hi <= lo
  return static_cast<__int128>(hi_num) * o.den <=
             static_cast<__int128>(o.lo_num) * den ||
         static_cast<__int128>(o.hi_num) * den <=
             static_cast<__int128>(lo_num) * o.den;
}

nlohmann::ordered_json CantorInterval::to_json() const {
  nlohmann::ordered_json lo{{"num", lo_num}, {"den", den}};
  nlohmann::ordered_json hi{{"num", hi_num}, {"den", den}};
  return nlohmann::ordered_json{{"lo", std::move(lo)}, {"hi", std::move(hi)}};
}

CantorInterval branch_to_interval(const std::string& prefix) {
  check_binary(prefix);
  if (prefix.size() > 39)
    throw Error("Overflow", "prefix longer than 39 exceeds exact 64-bit range");
  CantorInterval iv;
  iv.lo_num = 0;
  iv.den = 1;
  for (char c : prefix) {
    iv.lo_num = iv.lo_num * 3 + (c == '1' ? 2 : 0);
    iv.den *= 3;
  }
  iv.hi_num = iv.lo_num + 1;
  return iv;
}

}  // namespace hf
