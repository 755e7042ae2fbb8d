#include "hf/cli.hpp"

#include <cstdlib>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hf/cantor.hpp"
#include "hf/casson.hpp"
#include "hf/cohen.hpp"
#include "hf/error.hpp"
#include "hf/modfin.hpp"
#include "hf/nonstd.hpp"
#include "hf/poset.hpp"
#include "hf/ro.hpp"
#include "hf/tree.hpp"

namespace hf::cli {

namespace {

using json = nlohmann::ordered_json;

void emit(std::ostream& out, const json& j) { out << j.dump() << "\n"; }

std::uint64_t algebra_cap() {
  const char* env = std::getenv("HANDLE_FORCING_CAP");
  if (!env || !*env) return kDefaultAlgebraCap;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (!end || *end != '\0' || v == 0)
    throw ParseError("HANDLE_FORCING_CAP must be a positive integer");
  return static_cast<std::uint64_t>(v);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

json first_values(const NonstandardNat& a, int count = 10) {
  auto arr = json::array();
  for (std::uint64_t n = 0; n < static_cast<std::uint64_t>(count); ++n)
    arr.push_back(a.value_at(n));
  return arr;
}

json ns_result(const NonstandardNat& a) {
  json j;
  j["text"] = a.to_text();
  j["value"] = a.to_json();
  j["first_values"] = first_values(a);
  return j;
}

struct TreeAtDepth {
  std::string dsl;
  int depth = 0;

  SignedTree truncated() const { return parse_tree(dsl).truncate(depth); }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Signed trees, tree forcing posets, regular-open completions,\n"
               "Cohen generics and the mod-finite machinery around them."};
  app.require_subcommand(1);

  std::function<void()> action;

  // ---- tree ----
  auto* tree_cmd = app.add_subcommand("tree", "Parse, print, truncate and embed signed trees");
  tree_cmd->require_subcommand(1);
  {
    auto* c = tree_cmd->add_subcommand("parse", "Parse DSL text into a generator");
    auto text = std::make_shared<std::string>();
    auto format = std::make_shared<std::string>("json");
    c->add_option("--text", *text, "tree DSL text")->required();
    c->add_option("--format", *format, "json|text")->check(CLI::IsMember({"json", "text"}));
    c->callback([&, text, format] {
      action = [&, text, format] {
        TreeGenerator g = parse_tree(*text);
        if (*format == "text")
          out << print_tree(g) << "\n";
        else
          emit(out, g.to_json());
      };
    });
  }
  {
    auto* c = tree_cmd->add_subcommand("print", "Canonical DSL text for parsed input");
    auto text = std::make_shared<std::string>();
    c->add_option("--text", *text, "tree DSL text")->required();
    c->callback([&, text] {
      action = [&, text] { out << print_tree(parse_tree(*text)) << "\n"; };
    });
  }
  {
    auto* c = tree_cmd->add_subcommand("truncate", "Explicit tree of levels <= depth");
    auto text = std::make_shared<std::string>();
    auto depth = std::make_shared<int>(0);
    auto format = std::make_shared<std::string>("json");
    c->add_option("--tree", *text, "tree DSL text")->required();
    c->add_option("--depth", *depth, "truncation depth")->required();
    c->add_option("--format", *format, "json|text|dot")
        ->check(CLI::IsMember({"json", "text", "dot"}));
    c->callback([&, text, depth, format] {
      action = [&, text, depth, format] {
        SignedTree t = parse_tree(*text).truncate(*depth);
        if (*format == "dot")
          out << t.to_dot();
        else if (*format == "text")
          out << t.to_dsl() << "\n";
        else
          emit(out, t.to_json());
      };
    });
  }
  {
    auto* c = tree_cmd->add_subcommand("embed", "Search for an embedding small -> big");
    auto small = std::make_shared<std::string>();
    auto big = std::make_shared<std::string>();
    auto small_depth = std::make_shared<int>(0);
    auto big_depth = std::make_shared<int>(0);
    auto mode = std::make_shared<std::string>("level");
    auto signs = std::make_shared<std::string>("strict");
    c->add_option("--small", *small, "small tree DSL")->required();
    c->add_option("--big", *big, "big tree DSL")->required();
    c->add_option("--small-depth", *small_depth, "truncation depth of small")->required();
    c->add_option("--big-depth", *big_depth, "truncation depth of big")->required();
    c->add_option("--mode", *mode, "level|homeo")->check(CLI::IsMember({"level", "homeo"}));
    c->add_option("--signs", *signs, "strict|ignore")->check(CLI::IsMember({"strict", "ignore"}));
    c->callback([&, small, big, small_depth, big_depth, mode, signs] {
      action = [&, small, big, small_depth, big_depth, mode, signs] {
        SignedTree ts = parse_tree(*small).truncate(*small_depth);
        SignedTree tb = parse_tree(*big).truncate(*big_depth);
        auto w = tree_embeds(ts, tb, embed_mode_from_string(*mode),
                             sign_policy_from_string(*signs));
        json j;
        j["embeds"] = w.has_value();
        j["witness"] = w ? w->to_json(ts, tb) : json(nullptr);
        emit(out, j);
      };
    });
  }

  // ---- poset ----
  auto* poset_cmd = app.add_subcommand(
      "poset",
      "Tree forcing posets. Convention: p <= q reads 'p extends q', so "
      "common extensions are common lower bounds and tree descendants are "
      "the stronger conditions.");
  poset_cmd->require_subcommand(1);
  auto add_tree_poset_opts = [](CLI::App* c, std::shared_ptr<TreeAtDepth> in,
                                std::shared_ptr<bool> no_root) {
    c->add_option("--tree", in->dsl, "tree DSL text")->required();
    c->add_option("--depth", in->depth, "truncation depth")->required();
    c->add_flag("--no-root", *no_root, "drop the root condition");
  };
  {
    auto* c = poset_cmd->add_subcommand("from-tree", "Poset dump of a tree truncation");
    auto in = std::make_shared<TreeAtDepth>();
    auto no_root = std::make_shared<bool>(false);
    add_tree_poset_opts(c, in, no_root);
    c->callback([&, in, no_root] {
      action = [&, in, no_root] {
        emit(out, poset_from_tree(in->truncated(), !*no_root).to_json());
      };
    });
  }
  {
    auto* c = poset_cmd->add_subcommand("separative", "Exhaustive separativity verdict");
    auto in = std::make_shared<TreeAtDepth>();
    auto no_root = std::make_shared<bool>(false);
    add_tree_poset_opts(c, in, no_root);
    c->callback([&, in, no_root] {
      action = [&, in, no_root] {
        ForcingPoset P = poset_from_tree(in->truncated(), !*no_root);
        emit(out, is_separative(P).to_json(P));
      };
    });
  }
  {
    auto* c = poset_cmd->add_subcommand("dense", "Is the listed subset dense?");
    auto in = std::make_shared<TreeAtDepth>();
    auto no_root = std::make_shared<bool>(false);
    auto subset = std::make_shared<std::string>();
    add_tree_poset_opts(c, in, no_root);
    c->add_option("--subset", *subset, "comma-separated condition names")->required();
    c->callback([&, in, no_root, subset] {
      action = [&, in, no_root, subset] {
        ForcingPoset P = poset_from_tree(in->truncated(), !*no_root);
        json j;
        j["dense"] = is_dense_subset(P, split_commas(*subset));
        emit(out, j);
      };
    });
  }

  // ---- algebra ----
  auto* algebra_cmd = app.add_subcommand("algebra", "Regular-open completions and the Cantor coding");
  algebra_cmd->require_subcommand(1);
  {
    auto* c = algebra_cmd->add_subcommand("complete", "Materialize the regular-open algebra");
    auto in = std::make_shared<TreeAtDepth>();
    auto no_root = std::make_shared<bool>(false);
    auto count_only = std::make_shared<bool>(false);
    add_tree_poset_opts(c, in, no_root);
    c->add_flag("--count-only", *count_only, "report the element count without materializing");
    c->callback([&, in, no_root, count_only] {
      action = [&, in, no_root, count_only] {
        ForcingPoset P = poset_from_tree(in->truncated(), !*no_root);
        if (*count_only) {
          json j;
          j["elements_log2"] = completion_count_log2(P);
          emit(out, j);
          return;
        }
        emit(out, completion(P, algebra_cap()).to_json());
      };
    });
  }
  {
    auto* c = algebra_cmd->add_subcommand(
        "iso-check", "Binary-truncation completion vs depth-d clopen algebra");
    auto depth = std::make_shared<int>(0);
    c->add_option("--depth", *depth, "resolution depth")->required();
    c->callback([&, depth] {
      action = [&, depth] {
        json j;
        j["depth"] = *depth;
        j["isomorphic"] = iso_check(*depth, algebra_cap());
        emit(out, j);
      };
    });
  }
  {
    auto* c = algebra_cmd->add_subcommand("atom-split", "Refinement splitting of atoms");
    auto text = std::make_shared<std::string>();
    auto depth = std::make_shared<int>(0);
    c->add_option("--tree", *text, "binary or binary_branch generator")->required();
    c->add_option("--depth", *depth, "truncation depth")->required();
    c->callback([&, text, depth] {
      action = [&, text, depth] {
        json j;
        j["depth"] = *depth;
        j["splits"] = atom_splitting(parse_tree(*text), *depth);
        emit(out, j);
      };
    });
  }
  {
    auto* c = algebra_cmd->add_subcommand("cantor-code", "Middle-third interval of a binary prefix");
    auto prefix = std::make_shared<std::string>();
    c->add_option("--prefix", *prefix, "binary prefix")->required();
    c->callback([&, prefix] {
      action = [&, prefix] {
        json iv = branch_to_interval(*prefix).to_json();
        json j;
        j["prefix"] = *prefix;
        j["lo"] = iv["lo"];
        j["hi"] = iv["hi"];
        emit(out, j);
      };
    });
  }

  // ---- cohen ----
  auto* cohen_cmd = app.add_subcommand("cohen", "Dense sets and the deterministic generic construction");
  cohen_cmd->require_subcommand(1);
  {
    auto* c = cohen_cmd->add_subcommand("generic", "Run the generic construction over a spec catalog");
    auto specs_text = std::make_shared<std::string>();
    auto k = std::make_shared<int>(-1);
    c->add_option("--specs", *specs_text,
                  "comma-separated specs (len:N, diff:SEQ^, pat:BITS)")
        ->required();
    c->add_option("-k,--steps", *k, "meet only the first k specs (default: all)");
    c->callback([&, specs_text, k] {
      action = [&, specs_text, k] {
        std::vector<DenseSetSpec> specs;
        for (const auto& s : split_commas(*specs_text))
          specs.push_back(DenseSetSpec::parse(s));
        std::size_t steps = *k < 0 ? specs.size() : static_cast<std::size_t>(*k);
        GenericRun run = generic_prefix(specs, steps);
        emit(out, run.to_json(specs));
      };
    });
  }
  {
    auto* c = cohen_cmd->add_subcommand("verify-dense", "Bounded density check of one spec");
    auto spec_text = std::make_shared<std::string>();
    auto depth = std::make_shared<int>(0);
    c->add_option("--spec", *spec_text, "len:N, diff:SEQ^ or pat:BITS")->required();
    c->add_option("--depth", *depth, "check conditions up to this length")->required();
    c->callback([&, spec_text, depth] {
      action = [&, spec_text, depth] {
        json j;
        j["spec"] = *spec_text;
        j["dense"] = verify_dense(DenseSetSpec::parse(*spec_text), *depth);
        emit(out, j);
      };
    });
  }
  {
    auto* c = cohen_cmd->add_subcommand("diagonal", "Does the prefix escape every listed sequence?");
    auto prefix = std::make_shared<std::string>();
    auto seqs = std::make_shared<std::string>();
    c->add_option("--prefix", *prefix, "generic prefix bits")->required();
    c->add_option("--seqs", *seqs, "comma-separated periodic sequences")->required();
    c->callback([&, prefix, seqs] {
      action = [&, prefix, seqs] {
        GenericRun run;
        run.prefix = *prefix;
        std::vector<PeriodicBinarySeq> xs;
        for (const auto& s : split_commas(*seqs)) xs.push_back(PeriodicBinarySeq::parse(s));
        json j;
        j["escapes"] = diagonal_check(run, xs);
        emit(out, j);
      };
    });
  }

  // ---- perm ----
  auto* perm_cmd = app.add_subcommand("perm", "Almost permutations and the mod-finite quotient");
  perm_cmd->require_subcommand(1);
  {
    auto* c = perm_cmd->add_subcommand("apply", "Image of a set under the induced automorphism");
    auto perm = std::make_shared<std::string>();
    auto set = std::make_shared<std::string>();
    c->add_option("--perm", *perm, "disp(N=..,P=..,d=[..]) + {n->v}")->required();
    c->add_option("--set", *set, "tail(N=..,P=..,R={..}) + {..}")->required();
    c->callback([&, perm, set] {
      action = [&, perm, set] {
        ModFinSet img = induced_auto(AlmostPermutation::parse(*perm),
                                     ModFinSet::parse(*set));
        json j;
        j["text"] = img.to_text();
        j["value"] = img.to_json();
        emit(out, j);
      };
    });
  }
  {
    auto* c = perm_cmd->add_subcommand("compose", "f after g");
    auto f = std::make_shared<std::string>();
    auto g = std::make_shared<std::string>();
    c->add_option("--f", *f, "outer permutation")->required();
    c->add_option("--g", *g, "inner permutation")->required();
    c->callback([&, f, g] {
      action = [&, f, g] {
        AlmostPermutation r = compose(AlmostPermutation::parse(*f),
                                      AlmostPermutation::parse(*g));
        json j;
        j["text"] = r.to_text();
        j["value"] = r.to_json();
        emit(out, j);
      };
    });
  }
  {
    auto* c = perm_cmd->add_subcommand("invert", "Inverse almost permutation");
    auto perm = std::make_shared<std::string>();
    c->add_option("--perm", *perm, "permutation text")->required();
    c->callback([&, perm] {
      action = [&, perm] {
        AlmostPermutation r = invert(AlmostPermutation::parse(*perm));
        json j;
        j["text"] = r.to_text();
        j["value"] = r.to_json();
        emit(out, j);
      };
    });
  }
  {
    auto* c = perm_cmd->add_subcommand("classify", "Order-reversing pair in the periodic tail?");
    auto perm = std::make_shared<std::string>();
    c->add_option("--perm", *perm, "permutation text")->required();
    c->callback([&, perm] {
      action = [&, perm] {
        emit(out, classify_cyclic(AlmostPermutation::parse(*perm)).to_json());
      };
    });
  }
  {
    auto* c = perm_cmd->add_subcommand("eqmodfin", "Equality modulo finite sets");
    auto a = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    c->add_option("--a", *a, "first set")->required();
    c->add_option("--b", *b, "second set")->required();
    c->callback([&, a, b] {
      action = [&, a, b] {
        json j;
        j["equal"] = eq_mod_fin(ModFinSet::parse(*a), ModFinSet::parse(*b));
        emit(out, j);
      };
    });
  }

  // ---- nonstd ----
  auto* nonstd_cmd = app.add_subcommand("nonstd", "Eventually polynomial nonstandard naturals");
  nonstd_cmd->require_subcommand(1);
  auto add_pair = [](CLI::App* c, std::shared_ptr<std::string> a,
                     std::shared_ptr<std::string> b) {
    c->add_option("--a", *a, "poly(N=..,q=..) + {n:v}")->required();
    c->add_option("--b", *b, "poly(N=..,q=..) + {n:v}")->required();
  };
  {
    auto* c = nonstd_cmd->add_subcommand("add", "Pointwise sum");
    auto a = std::make_shared<std::string>(), b = std::make_shared<std::string>();
    add_pair(c, a, b);
    c->callback([&, a, b] {
      action = [&, a, b] {
        emit(out, ns_result(ns_add(NonstandardNat::parse(*a), NonstandardNat::parse(*b))));
      };
    });
  }
  {
    auto* c = nonstd_cmd->add_subcommand("mul", "Pointwise product");
    auto a = std::make_shared<std::string>(), b = std::make_shared<std::string>();
    add_pair(c, a, b);
    c->callback([&, a, b] {
      action = [&, a, b] {
        emit(out, ns_result(ns_mul(NonstandardNat::parse(*a), NonstandardNat::parse(*b))));
      };
    });
  }
  {
    auto* c = nonstd_cmd->add_subcommand("cmp", "Eventual dominance comparison");
    auto a = std::make_shared<std::string>(), b = std::make_shared<std::string>();
    add_pair(c, a, b);
    c->callback([&, a, b] {
      action = [&, a, b] {
        NsCmp r = ns_cmp(NonstandardNat::parse(*a), NonstandardNat::parse(*b));
        json j;
        j["cmp"] = r == NsCmp::less ? "less" : r == NsCmp::equal ? "equal" : "greater";
        emit(out, j);
      };
    });
  }
  {
    auto* c = nonstd_cmd->add_subcommand("sum", "Closed form of partial sums of a term");
    auto term = std::make_shared<std::string>();
    c->add_option("--term", *term, "integer-valued polynomial in i (or n)")->required();
    c->callback([&, term] {
      action = [&, term] {
        emit(out, ns_result(partial_sums(Poly::parse(*term))));
      };
    });
  }
  {
    auto* c = nonstd_cmd->add_subcommand("classify", "Standard value or infinite?");
    auto a = std::make_shared<std::string>();
    c->add_option("--a", *a, "poly(N=..,q=..) + {n:v}")->required();
    c->callback([&, a] {
      action = [&, a] {
        NonstandardNat v = NonstandardNat::parse(*a);
        json j;
        if (auto k = is_standard(v)) {
          j["kind"] = "standard";
          j["value"] = *k;
        } else {
          j["kind"] = "infinite";
        }
        emit(out, j);
      };
    });
  }

  // ---- casson ----
  auto* casson_cmd = app.add_subcommand("casson", "Handle classification and the forcing pipeline");
  casson_cmd->require_subcommand(1);
  {
    auto* c = casson_cmd->add_subcommand("classify", "Standard 2-handle or genuine Casson handle");
    auto text = std::make_shared<std::string>();
    auto probe = std::make_shared<int>(4);
    c->add_option("--tree", *text, "tree DSL text")->required();
    c->add_option("--probe-depth", *probe, "probe depth (default 4)");
    c->callback([&, text, probe] {
      action = [&, text, probe] {
        json j;
        j["classification"] =
            handle_class_name(classify_handle(parse_tree(*text), *probe));
        emit(out, j);
      };
    });
  }
  {
    auto* c = casson_cmd->add_subcommand("sfinite", "Is the level set in the cofinite filter?");
    auto text = std::make_shared<std::string>();
    auto horizon = std::make_shared<int>(0);
    c->add_option("--tree", *text, "tree DSL text")->required();
    c->add_option("--horizon", *horizon, "probe horizon")->required();
    c->callback([&, text, horizon] {
      action = [&, text, horizon] {
        json j;
        j["sfinite"] = sfinite_tree(parse_tree(*text), *horizon);
        emit(out, j);
      };
    });
  }
  {
    auto* c = casson_cmd->add_subcommand("embeds", "Does handle A embed in handle B?");
    auto a = std::make_shared<std::string>(), b = std::make_shared<std::string>();
    auto depth = std::make_shared<int>(0);
    auto signs = std::make_shared<std::string>("strict");
    c->add_option("--a", *a, "tree DSL of A")->required();
    c->add_option("--b", *b, "tree DSL of B")->required();
    c->add_option("--depth", *depth, "truncation depth")->required();
    c->add_option("--signs", *signs, "strict|ignore")->check(CLI::IsMember({"strict", "ignore"}));
    c->callback([&, a, b, depth, signs] {
      action = [&, a, b, depth, signs] {
        CassonHandle A{parse_tree(*a), "A"};
        CassonHandle B{parse_tree(*b), "B"};
        auto w = ch_embeds(A, B, *depth, sign_policy_from_string(*signs));
        json j;
        j["embeds"] = w.has_value();
        j["witness"] = w ? w->to_json(B.tree.truncate(*depth), A.tree.truncate(*depth))
                         : json(nullptr);
        emit(out, j);
      };
    });
  }
  {
    auto* c = casson_cmd->add_subcommand("to-cohen", "Tree to canonical Cohen forcing report");
    auto text = std::make_shared<std::string>();
    auto depth = std::make_shared<int>(0);
    c->add_option("--tree", *text, "tree DSL text")->required();
    c->add_option("--depth", *depth, "pipeline depth")->required();
    auto format = std::make_shared<std::string>("json");
    c->add_option("--format", *format, "json")->check(CLI::IsMember({"json"}));
    c->callback([&, text, depth, format] {
      action = [&, text, depth, format] {
        emit(out, casson_to_cohen(parse_tree(*text), *depth, algebra_cap()).to_json());
      };
    });
  }
  {
    auto* c = casson_cmd->add_subcommand("permutation", "Level-displacement almost permutation");
    auto text = std::make_shared<std::string>();
    auto horizon = std::make_shared<int>(0);
    auto cumulative = std::make_shared<bool>(false);
    c->add_option("--tree", *text, "tree DSL text")->required();
    c->add_option("--horizon", *horizon, "probe horizon")->required();
    c->add_flag("--cumulative", *cumulative, "use the cumulative count reading");
    c->callback([&, text, horizon, cumulative] {
      action = [&, text, horizon, cumulative] {
        AlmostPermutation p = ch_permutation(parse_tree(*text), *horizon, *cumulative);
        json j;
        j["text"] = p.to_text();
        j["value"] = p.to_json();
        j["cyclic"] = classify_cyclic(p).cyclic;
        emit(out, j);
      };
    });
  }

  // CLI11 wants mutable argc/argv-style input
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    json j;
    j["error"] = "UsageError";
    j["message"] = e.what();
    err << j.dump() << "\n";
    return 2;
  } catch (const ParseError& e) {
    json j;
    j["error"] = e.kind();
    j["message"] = e.what();
    j["line"] = e.line();
    j["column"] = e.column();
    err << j.dump() << "\n";
    return 2;
  } catch (const Error& e) {
    json j;
    j["error"] = e.kind();
    j["message"] = e.what();
    err << j.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    json j;
    j["error"] = "Internal";
    j["message"] = e.what();
    err << j.dump() << "\n";
    return 1;
  }

  if (!action) {
    json j;
    j["error"] = "UsageError";
    j["message"] = "missing subcommand";
    err << j.dump() << "\n";
    return 2;
  }

  try {
    action();
  } catch (const ParseError& e) {
    json j;
    j["error"] = e.kind();
    j["message"] = e.what();
    j["line"] = e.line();
    j["column"] = e.column();
    err << j.dump() << "\n";
    return 2;
  } catch (const Error& e) {
    json j;
    j["error"] = e.kind();
    j["message"] = e.what();
    err << j.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    json j;
    j["error"] = "Internal";
    j["message"] = e.what();
    err << j.dump() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace hf::cli
