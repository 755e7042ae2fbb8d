#include "hf/casson.hpp"

#include <algorithm>

#include "hf/error.hpp"

namespace hf {

std::string handle_class_name(HandleClass c) {
  return c == HandleClass::standard_2handle ? "Standard2Handle" : "CassonHandle";
}

HandleClass classify_handle(const TreeGenerator& tree, int probe_depth) {
  if (probe_depth < 1) throw Error("InvalidArgument", "probe depth must be >= 1");
  return tree.is_infinite_kind() ? HandleClass::casson_handle
                                 : HandleClass::standard_2handle;
}

bool sfinite_tree(const TreeGenerator& tree, int horizon) {
  if (horizon < 1) throw Error("InvalidArgument", "horizon must be >= 1");

  ModFinSet levels = [&] {
    if (tree.kind() == TreeGenerator::Kind::explicit_tree) {
      int d = tree.tree().depth();
      std::set<std::uint64_t> nonempty;
      for (int l = 1; l <= d; ++l) nonempty.insert(static_cast<std::uint64_t>(l));
      return ModFinSet(static_cast<std::uint64_t>(d) + 1, 1, {}, std::move(nonempty));
    }
    if (tree.kind() == TreeGenerator::Kind::custom) {
      // probe: a custom rule may die out at some level
      auto profile = level_profile(tree.truncate(horizon));
      std::set<std::uint64_t> nonempty;
      int last = 0;
      for (const auto& s : profile)
        if (s.nodes > 0) {
          nonempty.insert(static_cast<std::uint64_t>(s.level));
          last = s.level;
        }
      if (last < horizon) {
        // died out: levels beyond `last` stay empty
        return ModFinSet(static_cast<std::uint64_t>(last) + 1, 1, {},
                         std::move(nonempty));
      }
      return ModFinSet(1, 1, {0}, {});
    }
    // built-in infinite generators populate every positive level
    return ModFinSet(1, 1, {0}, {});
  }();
  return frechet_contains(levels);
}

std::optional<EmbeddingWitness> ch_embeds(const CassonHandle& A,
                                          const CassonHandle& B, int depth,
                                          SignPolicy policy) {
  if (depth < 1) throw Error("InvalidArgument", "depth must be >= 1");
  SignedTree tb = B.tree.truncate(depth);
  SignedTree ta = A.tree.truncate(depth);
  return tree_embeds(tb, ta, EmbedMode::level_preserving, policy);
}

LinearExtraction extract_linear(const TreeGenerator& tree, int depth) {
  if (depth < 1) throw Error("InvalidArgument", "depth must be >= 1");
  SignedTree trunc = tree.truncate(depth);

  LinearExtraction out;
  out.branch = SignedTree::root_only();
  out.witness.map.assign(static_cast<std::size_t>(depth) + 1, -1);
  out.witness.map[0] = 0;

  int src = 0;
  int dst = 0;
  for (int l = 1; l <= depth; ++l) {
    if (trunc.nodes[src].children.empty())
      throw Error("TreeTooShallow",
                  "tree has no nodes at level " + std::to_string(l));
    src = trunc.nodes[src].children.front();
    dst = out.branch.add_child(dst, trunc.nodes[src].sign);
    out.witness.map[static_cast<std::size_t>(dst)] = src;
  }
  return out;
}

nlohmann::ordered_json AlgebraStats::to_json() const {
  nlohmann::ordered_json j;
  j["depth"] = depth;
  j["elements_log2"] = elements_log2;
  if (elements)
    j["elements"] = *elements;
  else
    j["elements"] = nullptr;
  j["separative"] = separative;
  j["atom_splitting"] = splitting;
  return j;
}

nlohmann::ordered_json ForcingReport::to_json() const {
  nlohmann::ordered_json j;
  j["depth"] = depth;
  j["linear_branch"] = linear.branch.to_dsl();
  j["linear_witness"] = linear.witness.to_json(linear.branch, input_truncation);
  j["binary_witness"] = binary_witness.to_json(linear.branch, binary_tree);
  j["cohen_poset"] = cohen_poset.to_json();
  j["algebra_stats"] = stats.to_json();
  return j;
}

ForcingReport casson_to_cohen(const TreeGenerator& tree, int depth,
                              std::uint64_t cap) {
  ForcingReport report;
  report.depth = depth;
  report.input_truncation = tree.truncate(depth);
  report.linear = extract_linear(tree, depth);

  // the distinguished branch of the binary tree carries the sign the
  // extracted branch starts with; signs are forgotten right after, so
  // the embedding ignores them
  Sign branch_sign = Sign::plus;
  if (report.linear.branch.size() > 1) branch_sign = report.linear.branch.nodes[1].sign;
  report.binary_tree = TreeGenerator::binary_branch(branch_sign).truncate(depth);
  auto w = tree_embeds(report.linear.branch, report.binary_tree,
                       EmbedMode::level_preserving, SignPolicy::ignore);
  if (!w) throw Error("Internal", "linear branch must embed in the binary tree");
  report.binary_witness = *w;

  // forget the signs: the canonical sign-free binary truncation
  SignedTree plain = TreeGenerator::full_binary().truncate(depth);
  report.cohen_poset = poset_from_tree(plain, true);

  ROAlgebra algebra = completion(report.cohen_poset, cap);
  report.stats.depth = depth;
  report.stats.elements_log2 = completion_count_log2(report.cohen_poset);
  report.stats.elements = static_cast<std::uint64_t>(algebra.element_count());
  report.stats.separative = is_separative(report.cohen_poset).separative;
  report.stats.splitting = atom_splitting(TreeGenerator::full_binary(), depth);
  return report;
}

AlmostPermutation ch_permutation(const TreeGenerator& tree, int horizon,
                                 bool cumulative) {
  if (horizon < 2) throw Error("InvalidArgument", "horizon must be >= 2");
  auto profile = level_profile(tree.truncate(horizon));

  // stage displacements: stage n is level n+1
  std::vector<std::int64_t> disp;
  std::int64_t running = 0;
  for (const auto& s : profile) {
    running += s.nodes;
    disp.push_back(cumulative ? running : s.nodes);
  }
  if (static_cast<int>(disp.size()) < horizon) {
    // explicit tree shallower than the horizon: stages beyond its depth
    // move by the (settled) displacement
    while (static_cast<int>(disp.size()) < horizon)
      disp.push_back(cumulative ? running : 0);
  }

  // minimal (period, preperiod) visible within the horizon, requiring
  // two full periods of evidence
  const std::size_t H = disp.size();
  for (std::size_t period = 1; 2 * period <= H; ++period) {
    // walk the match boundary down from the end; [start, H-period) all agree
    std::size_t start = H - period;
    while (start > 0 && disp[start - 1] == disp[start - 1 + period]) --start;
    if (start + 2 * period > H) continue;  // not enough evidence

    std::vector<std::int64_t> tail(disp.begin() + static_cast<std::ptrdiff_t>(start),
                                   disp.begin() + static_cast<std::ptrdiff_t>(start + period));
    std::map<std::uint64_t, std::uint64_t> exceptions;
    for (std::size_t n = 0; n < start; ++n) {
      std::int64_t v = static_cast<std::int64_t>(n) + disp[n];
      exceptions[n] = static_cast<std::uint64_t>(v);
    }
    // rotate the tail so indexing by n mod period lines up with `start`
    std::vector<std::int64_t> aligned(period);
    for (std::size_t i = 0; i < period; ++i)
      aligned[(start + i) % period] = tail[i];
    return AlmostPermutation(start, period, std::move(aligned),
                             std::move(exceptions));
  }
  throw Error("NotEventuallyPeriodic",
              "intersection counts show no period within horizon " +
                  std::to_string(horizon));
}

}  // namespace hf
