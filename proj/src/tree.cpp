#include "hf/tree.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "hf/error.hpp"

namespace hf {

char sign_char(Sign s) {
  switch (s) {
    case Sign::plus: return '+';
    case Sign::minus: return '-';
    default: return '.';
  }
}

Sign sign_from_char(char c) {
  switch (c) {
    case '+': return Sign::plus;
    case '-': return Sign::minus;
    case '.': return Sign::none;
    default:
      throw ParseError(std::string("invalid sign character '") + c + "'");
  }
}

SignedTree SignedTree::root_only() {
  SignedTree t;
  t.nodes.push_back(Node{});
  return t;
}

int SignedTree::depth() const {
  int d = 0;
  for (const auto& n : nodes) d = std::max(d, n.level);
  return d;
}

int SignedTree::add_child(int parent, Sign s) {
  if (s == Sign::none)
    throw Error("InvalidArgument", "non-root nodes must carry + or -");
  int id = size();
  nodes.push_back(Node{s, parent, nodes[parent].level + 1, {}});
  nodes[parent].children.push_back(id);
  return id;
}

std::vector<int> SignedTree::path_of(int node) const {
  std::vector<int> path;
  while (node != 0) {
    int p = nodes[node].parent;
    const auto& siblings = nodes[p].children;
    int idx = static_cast<int>(
        std::find(siblings.begin(), siblings.end(), node) - siblings.begin());
    path.push_back(idx);
    node = p;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::string SignedTree::path_name(int node) const {
  if (node == 0) return "e";
  std::string out;
  for (int i : path_of(node)) {
    if (i < 10)
      out += static_cast<char>('0' + i);
    else
      out += "[" + std::to_string(i) + "]";
  }
  return out;
}

int SignedTree::node_at(const std::vector<int>& path) const {
  int node = 0;
  for (int i : path) {
    const auto& ch = nodes[node].children;
    if (i < 0 || i >= static_cast<int>(ch.size())) return -1;
    node = ch[i];
  }
  return node;
}

namespace {

bool structurally_equal(const SignedTree& a, int na, const SignedTree& b, int nb) {
  if (a.nodes[na].sign != b.nodes[nb].sign) return false;
  const auto& ca = a.nodes[na].children;
  const auto& cb = b.nodes[nb].children;
  if (ca.size() != cb.size()) return false;
  for (std::size_t i = 0; i < ca.size(); ++i)
    if (!structurally_equal(a, ca[i], b, cb[i])) return false;
  return true;
}

}  // namespace

bool SignedTree::operator==(const SignedTree& o) const {
  return structurally_equal(*this, 0, o, 0);
}

namespace {

void dsl_node(const SignedTree& t, int node, std::string& out) {
  out += '(';
  out += sign_char(t.nodes[node].sign);
  for (int c : t.nodes[node].children) {
    out += ' ';
    dsl_node(t, c, out);
  }
  out += ')';
}

}  // namespace

std::string SignedTree::to_dsl() const {
  std::string out;
  dsl_node(*this, 0, out);
  return out;
}

std::string SignedTree::to_dot() const {
  std::ostringstream os;
  os << "digraph tree {\n";
  for (int i = 0; i < size(); ++i)
    os << "  n" << i << " [label=\"" << sign_char(nodes[i].sign) << "\"];\n";
  for (int i = 1; i < size(); ++i)
    os << "  n" << nodes[i].parent << " -> n" << i << ";\n";
  os << "}\n";
  return os.str();
}

namespace {

nlohmann::ordered_json json_node(const SignedTree& t, int node) {
  nlohmann::ordered_json j;
  j["sign"] = std::string(1, sign_char(t.nodes[node].sign));
  auto arr = nlohmann::ordered_json::array();
  for (int c : t.nodes[node].children) arr.push_back(json_node(t, c));
  j["children"] = std::move(arr);
  return j;
}

}  // namespace

nlohmann::ordered_json SignedTree::to_json() const { return json_node(*this, 0); }

std::vector<LevelStat> level_profile(const SignedTree& tree) {
  std::vector<LevelStat> stats(tree.depth());
  for (int i = 1; i < tree.size(); ++i) {
    auto& s = stats[tree.nodes[i].level - 1];
    s.nodes += 1;
    if (tree.nodes[i].sign == Sign::plus) s.plus += 1;
    if (tree.nodes[i].sign == Sign::minus) s.minus += 1;
  }
  for (int l = 0; l < static_cast<int>(stats.size()); ++l)
    stats[l].level = l + 1;
  return stats;
}

TreeGenerator TreeGenerator::linear(Sign s) {
  if (s == Sign::none)
    throw Error("InvalidArgument", "linear generator needs + or -");
  TreeGenerator g;
  g.kind_ = Kind::linear;
  g.sign_ = s;
  return g;
}

TreeGenerator TreeGenerator::full_binary() {
  TreeGenerator g;
  g.kind_ = Kind::full_binary;
  g.sign_ = Sign::plus;
  return g;
}

TreeGenerator TreeGenerator::binary_branch(Sign branch_sign) {
  if (branch_sign == Sign::none)
    throw Error("InvalidArgument", "binary_branch generator needs + or -");
  TreeGenerator g;
  g.kind_ = Kind::binary_branch;
  g.sign_ = branch_sign;
  return g;
}

TreeGenerator TreeGenerator::explicit_tree(SignedTree t) {
  TreeGenerator g;
  g.kind_ = Kind::explicit_tree;
  g.tree_ = std::move(t);
  return g;
}

TreeGenerator TreeGenerator::custom(CustomRule rule, std::string name) {
  TreeGenerator g;
  g.kind_ = Kind::custom;
  g.rule_ = std::move(rule);
  g.name_ = std::move(name);
  return g;
}

const SignedTree& TreeGenerator::tree() const {
  if (kind_ != Kind::explicit_tree)
    throw Error("InvalidArgument", "generator has no explicit tree");
  return tree_;
}

namespace {

bool all_zero(const std::vector<int>& path) {
  return std::all_of(path.begin(), path.end(), [](int i) { return i == 0; });
}

}  // namespace

// Child signs the generator emits below `path`. Empty result = leaf.
static std::vector<Sign> generator_children(const TreeGenerator& g,
                                            const TreeGenerator::CustomRule& rule,
                                            const SignedTree* expl,
                                            const std::vector<int>& path) {
  using Kind = TreeGenerator::Kind;
  switch (g.kind()) {
    case Kind::linear:
      return {g.sign()};
    case Kind::full_binary:
      return {Sign::plus, Sign::plus};
    case Kind::binary_branch:
      // the all-left spine carries the distinguished sign
      return {all_zero(path) ? g.sign() : Sign::plus, Sign::plus};
    case Kind::explicit_tree: {
      int node = expl->node_at(path);
      std::vector<Sign> out;
      if (node < 0) return out;
      for (int c : expl->nodes[node].children) out.push_back(expl->nodes[c].sign);
      return out;
    }
    case Kind::custom: {
      auto out = rule(path);
      for (Sign s : out)
        if (s == Sign::none)
          throw Error("InvalidArgument", "custom rule emitted an unsigned child");
      return out;
    }
  }
  throw Error("Internal", "unreachable generator kind");
}

namespace {

void build_preorder(const TreeGenerator& g, const TreeGenerator::CustomRule& rule,
                    const SignedTree* expl, SignedTree& t, int parent,
                    std::vector<int>& path, int depth) {
  if (static_cast<int>(path.size()) >= depth) return;
  auto signs = generator_children(g, rule, expl, path);
  for (std::size_t c = 0; c < signs.size(); ++c) {
    int id = t.add_child(parent, signs[c]);
    path.push_back(static_cast<int>(c));
    build_preorder(g, rule, expl, t, id, path, depth);
    path.pop_back();
  }
}

}  // namespace

SignedTree TreeGenerator::truncate(int depth) const {
  if (depth < 0) throw Error("InvalidArgument", "truncation depth must be >= 0");
  SignedTree t = SignedTree::root_only();
  std::vector<int> path;
  const SignedTree* expl = kind_ == Kind::explicit_tree ? &tree_ : nullptr;
  build_preorder(*this, rule_, expl, t, 0, path, depth);
  return t;
}

std::string TreeGenerator::to_dsl() const {
  switch (kind_) {
    case Kind::linear:
      return std::string("linear(") + sign_char(sign_) + ")";
    case Kind::full_binary:
      return "binary";
    case Kind::binary_branch:
      return std::string("binary_branch(") + sign_char(sign_) + ")";
    case Kind::explicit_tree:
      return tree_.to_dsl();
    case Kind::custom:
      throw Error("InvalidArgument",
                  "custom generator has no DSL form (name: " + name_ + ")");
  }
  throw Error("Internal", "unreachable generator kind");
}

nlohmann::ordered_json TreeGenerator::to_json() const {
  nlohmann::ordered_json j;
  switch (kind_) {
    case Kind::linear:
      j["kind"] = "linear";
      j["sign"] = std::string(1, sign_char(sign_));
      break;
    case Kind::full_binary:
      j["kind"] = "binary";
      break;
    case Kind::binary_branch:
      j["kind"] = "binary_branch";
      j["sign"] = std::string(1, sign_char(sign_));
      break;
    case Kind::explicit_tree:
      j["kind"] = "explicit";
      j["tree"] = tree_.to_json();
      break;
    case Kind::custom:
      j["kind"] = "custom";
      j["name"] = name_;
      break;
  }
  return j;
}

std::string print_tree(const TreeGenerator& gen) { return gen.to_dsl(); }

// --- DSL parser ---------------------------------------------------------

namespace {

class Cursor {
public:
  explicit Cursor(const std::string& text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r')) {
      advance();
    }
  }

  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  char take() {
    char c = text_[pos_];
    advance();
    return c;
  }

  void expect(char c, const char* what) {
    if (eof() || peek() != c) fail(std::string("expected ") + what);
    take();
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, col_);
  }

private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

Sign parse_paren_sign(Cursor& cur, const char* ctx) {
  cur.skip_ws();
  cur.expect('(', "'('");
  cur.skip_ws();
  if (cur.eof()) cur.fail(std::string("missing sign in ") + ctx);
  char c = cur.take();
  if (c != '+' && c != '-') cur.fail(std::string("expected + or - in ") + ctx);
  cur.skip_ws();
  cur.expect(')', "')'");
  return sign_from_char(c);
}

// Parses the children of an already-open node up to its closing ')'.
void parse_sexpr_children(Cursor& cur, SignedTree& t, int parent) {
  while (true) {
    cur.skip_ws();
    if (cur.eof()) cur.fail("unterminated tree expression");
    if (cur.peek() == ')') {
      cur.take();
      return;
    }
    cur.expect('(', "'(' or ')'");
    cur.skip_ws();
    if (cur.eof()) cur.fail("missing node sign");
    char c = cur.take();
    if (c == '.') cur.fail("unsigned '.' is only allowed at the root");
    if (c != '+' && c != '-') cur.fail("node sign must be + or -");
    int id = t.add_child(parent, sign_from_char(c));
    parse_sexpr_children(cur, t, id);
  }
}

}  // namespace

TreeGenerator parse_tree(const std::string& text) {
  Cursor cur(text);
  cur.skip_ws();
  if (cur.eof()) cur.fail("empty tree expression");

  TreeGenerator gen = TreeGenerator::full_binary();
  if (cur.peek() == '(') {
    cur.take();
    cur.skip_ws();
    if (cur.eof()) cur.fail("missing root sign");
    char c = cur.take();
    SignedTree t = SignedTree::root_only();
    if (c == '.') {
      parse_sexpr_children(cur, t, 0);
    } else if (c == '+' || c == '-') {
      // signed top level: implicit unsigned root above it
      int id = t.add_child(0, sign_from_char(c));
      parse_sexpr_children(cur, t, id);
    } else {
      cur.fail("root sign must be +, - or .");
    }
    gen = TreeGenerator::explicit_tree(std::move(t));
  } else {
    std::string word;
    while (!cur.eof() &&
           (std::isalpha(static_cast<unsigned char>(cur.peek())) || cur.peek() == '_'))
      word += cur.take();
    if (word == "linear") {
      gen = TreeGenerator::linear(parse_paren_sign(cur, "linear(...)"));
    } else if (word == "binary") {
      gen = TreeGenerator::full_binary();
    } else if (word == "binary_branch") {
      gen = TreeGenerator::binary_branch(parse_paren_sign(cur, "binary_branch(...)"));
    } else if (word.empty()) {
      cur.fail("expected a generator name or '('");
    } else {
      cur.fail("unknown generator '" + word + "'");
    }
  }
  cur.skip_ws();
  if (!cur.eof()) cur.fail("trailing input after tree expression");
  return gen;
}

// --- Embedding ----------------------------------------------------------

namespace {

// Memoized search over (small node, big node) pairs. Memo cells are
// tri-state: 0 unknown, 1 yes, 2 no.
class EmbedSearch {
public:
  EmbedSearch(const SignedTree& small, const SignedTree& big, EmbedMode mode,
              SignPolicy policy)
      : small_(small), big_(big), mode_(mode), policy_(policy),
        at_(static_cast<std::size_t>(small.size()) * big.size(), 0),
        sub_(static_cast<std::size_t>(small.size()) * big.size(), 0) {}

  bool embeds_at(int s, int b) {
    auto& memo = at_[static_cast<std::size_t>(s) * big_.size() + b];
    if (memo) return memo == 1;
    bool ok = signs_ok(s, b) && children_match(s, b, nullptr);
    memo = ok ? 1 : 2;
    return ok;
  }

  // s embeds at b or at some descendant of b (homeomorphic mode).
  bool embeds_below(int s, int b) {
    auto& memo = sub_[static_cast<std::size_t>(s) * big_.size() + b];
    if (memo) return memo == 1;
    bool ok = embeds_at(s, b);
    if (!ok) {
      for (int c : big_.nodes[b].children)
        if (embeds_below(s, c)) { ok = true; break; }
    }
    memo = ok ? 1 : 2;
    return ok;
  }

  // Fills witness.map recursively; requires embeds_at(s, b).
  void extract(int s, int b, EmbeddingWitness& w) {
    w.map[s] = b;
    std::vector<int> assign;
    children_match(s, b, &assign);
    const auto& sc = small_.nodes[s].children;
    for (std::size_t i = 0; i < sc.size(); ++i) {
      int target = assign[i];
      if (mode_ == EmbedMode::homeomorphic) target = descend(sc[i], target);
      extract(sc[i], target, w);
    }
  }

private:
  bool signs_ok(int s, int b) const {
    if (policy_ == SignPolicy::ignore) return true;
    if (s == 0) return true;  // root exempt
    return small_.nodes[s].sign == big_.nodes[b].sign;
  }

  bool child_edge(int cs, int cb) {
    return mode_ == EmbedMode::level_preserving ? embeds_at(cs, cb)
                                                : embeds_below(cs, cb);
  }

  // Maximum bipartite matching of s's children into b's children.
  // Augmenting paths try targets in order, so the chosen assignment is
  // leftmost and deterministic.
  bool children_match(int s, int b, std::vector<int>* out_assign) {
    const auto& sc = small_.nodes[s].children;
    const auto& bc = big_.nodes[b].children;
    if (sc.empty()) {
      if (out_assign) out_assign->clear();
      return true;
    }
    if (sc.size() > bc.size()) return false;
    std::vector<int> match_b(bc.size(), -1);
    std::vector<int> match_s(sc.size(), -1);
    for (std::size_t i = 0; i < sc.size(); ++i) {
      std::vector<char> visited(bc.size(), 0);
      if (!augment(i, sc, bc, visited, match_b, match_s)) return false;
    }
    if (out_assign) {
      out_assign->resize(sc.size());
      for (std::size_t i = 0; i < sc.size(); ++i)
        (*out_assign)[i] = bc[static_cast<std::size_t>(match_s[i])];
    }
    return true;
  }

  bool augment(std::size_t i, const std::vector<int>& sc,
               const std::vector<int>& bc, std::vector<char>& visited,
               std::vector<int>& match_b, std::vector<int>& match_s) {
    for (std::size_t j = 0; j < bc.size(); ++j) {
      if (visited[j] || !child_edge(sc[i], bc[j])) continue;
      visited[j] = 1;
      if (match_b[j] < 0 ||
          augment(static_cast<std::size_t>(match_b[j]), sc, bc, visited,
                  match_b, match_s)) {
        match_b[j] = static_cast<int>(i);
        match_s[i] = static_cast<int>(j);
        return true;
      }
    }
    return false;
  }

  // First node in the subtree rooted at b where s embeds (homeomorphic).
  int descend(int s, int b) {
    if (embeds_at(s, b)) return b;
    for (int c : big_.nodes[b].children)
      if (embeds_below(s, c)) return descend(s, c);
    throw Error("Internal", "witness extraction lost an embedding");
  }

  const SignedTree& small_;
  const SignedTree& big_;
  EmbedMode mode_;
  SignPolicy policy_;
  std::vector<char> at_;
  std::vector<char> sub_;
};

}  // namespace

EmbedMode embed_mode_from_string(const std::string& s) {
  if (s == "level" || s == "level-preserving") return EmbedMode::level_preserving;
  if (s == "homeo" || s == "homeomorphic") return EmbedMode::homeomorphic;
  throw ParseError("unknown embedding mode '" + s + "'");
}

SignPolicy sign_policy_from_string(const std::string& s) {
  if (s == "strict") return SignPolicy::strict;
  if (s == "ignore") return SignPolicy::ignore;
  throw ParseError("unknown sign policy '" + s + "'");
}

std::optional<EmbeddingWitness> tree_embeds(const SignedTree& small,
                                            const SignedTree& big,
                                            EmbedMode mode, SignPolicy policy) {
  EmbedSearch search(small, big, mode, policy);
  if (!search.embeds_at(0, 0)) return std::nullopt;
  EmbeddingWitness w;
  w.map.assign(small.size(), -1);
  search.extract(0, 0, w);
  return w;
}

namespace {

bool is_ancestor(const SignedTree& t, int a, int node) {
  int p = t.nodes[node].parent;
  while (p != -1) {
    if (p == a) return true;
    p = t.nodes[p].parent;
  }
  return false;
}

}  // namespace

bool verify_witness(const SignedTree& small, const SignedTree& big,
                    const EmbeddingWitness& witness, EmbedMode mode,
                    SignPolicy policy) {
  if (static_cast<int>(witness.map.size()) != small.size()) return false;
  std::vector<char> used(big.size(), 0);
  for (int s = 0; s < small.size(); ++s) {
    int b = witness.map[s];
    if (b < 0 || b >= big.size() || used[b]) return false;
    used[b] = 1;
    if (policy == SignPolicy::strict && s != 0 &&
        small.nodes[s].sign != big.nodes[b].sign)
      return false;
  }
  if (witness.map[0] != 0) return false;
  for (int s = 1; s < small.size(); ++s) {
    int image = witness.map[s];
    int parent_image = witness.map[small.nodes[s].parent];
    if (mode == EmbedMode::level_preserving) {
      if (big.nodes[image].parent != parent_image) return false;
    } else {
      if (!is_ancestor(big, parent_image, image)) return false;
    }
  }
  // siblings must land in incomparable positions
  for (int s = 0; s < small.size(); ++s) {
    const auto& ch = small.nodes[s].children;
    for (std::size_t i = 0; i < ch.size(); ++i) {
      for (std::size_t j = i + 1; j < ch.size(); ++j) {
        int a = witness.map[ch[i]], b = witness.map[ch[j]];
        if (is_ancestor(big, a, b) || is_ancestor(big, b, a)) return false;
      }
    }
  }
  return true;
}

nlohmann::ordered_json EmbeddingWitness::to_json(const SignedTree& small,
                                                 const SignedTree& big) const {
  auto arr = nlohmann::ordered_json::array();
  for (std::size_t s = 0; s < map.size(); ++s) {
    arr.push_back({small.path_name(static_cast<int>(s)), big.path_name(map[s])});
  }
  return arr;
}

}  // namespace hf
