#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>
#include <string>
#include <vector>

#include "hf/cli.hpp"
#include "json.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = hf::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("tree print round-trips the canonical corpus") {
  for (const char* text :
       {"linear(+)", "linear(-)", "binary", "binary_branch(+)", "binary_branch(-)",
        "(.)", "(. (+))", "(. (-))", "(. (+ (+)))", "(. (+ (-)))",
        "(. (+ (+) (-)))", "(. (- (+) (+)))", "(. (+) (-))", "(. (-) (+))",
        "(. (+ (+ (+))))", "(. (- (- (-))))", "(. (+ (+) (+)) (- (-)))",
        "(. (+) (+) (+))"}) {
    Result r = run_cli({"tree", "print", "--text", text});
    CHECK(r.code == 0);
    CHECK(r.out == std::string(text) + "\n");
  }
}

TEST_CASE("tree parse emits generator json") {
  Result r = run_cli({"tree", "parse", "--text", "linear(+)"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["kind"] == "linear");
  CHECK(j["sign"] == "+");
}

TEST_CASE("tree truncate formats") {
  Result json = run_cli({"tree", "truncate", "--tree", "binary", "--depth", "1"});
  CHECK(json.code == 0);
  auto j = nlohmann::json::parse(json.out);
  CHECK(j["children"].size() == 2);

  Result dot = run_cli({"tree", "truncate", "--tree", "binary", "--depth", "1",
                        "--format", "dot"});
  CHECK(dot.code == 0);
  CHECK(dot.out.find("digraph") != std::string::npos);

  Result text = run_cli({"tree", "truncate", "--tree", "linear(-)", "--depth", "2",
                         "--format", "text"});
  CHECK(text.out == "(. (- (-)))\n");
}

TEST_CASE("tree embed reports witnesses") {
  Result r = run_cli({"tree", "embed", "--small", "linear(+)", "--big", "binary",
                      "--small-depth", "2", "--big-depth", "2"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["embeds"] == true);
  CHECK(j["witness"].size() == 3);

  Result none = run_cli({"tree", "embed", "--small", "binary", "--big", "linear(+)",
                         "--small-depth", "2", "--big-depth", "2"});
  auto j2 = nlohmann::json::parse(none.out);
  CHECK(j2["embeds"] == false);
  CHECK(j2["witness"].is_null());
}

TEST_CASE("poset commands") {
  Result dump = run_cli({"poset", "from-tree", "--tree", "binary", "--depth", "1"});
  auto j = nlohmann::json::parse(dump.out);
  CHECK(j["conditions"] == nlohmann::json::array({"e", "0", "1"}));

  Result sep = run_cli({"poset", "separative", "--tree", "binary", "--depth", "3"});
  auto js = nlohmann::json::parse(sep.out);
  CHECK(js["separative"] == true);
  CHECK(js["counterexample"].is_null());

  Result chain = run_cli({"poset", "separative", "--tree", "linear(+)", "--depth", "2"});
  auto jc = nlohmann::json::parse(chain.out);
  CHECK(jc["separative"] == false);
  CHECK(jc["counterexample"]["p"] == "e");

  Result dense = run_cli({"poset", "dense", "--tree", "binary", "--depth", "2",
                          "--subset", "00,01,10,11"});
  CHECK(nlohmann::json::parse(dense.out)["dense"] == true);

  Result sparse = run_cli({"poset", "dense", "--tree", "binary", "--depth", "2",
                           "--subset", "e"});
  CHECK(nlohmann::json::parse(sparse.out)["dense"] == false);
}

TEST_CASE("algebra commands") {
  Result complete = run_cli({"algebra", "complete", "--tree", "binary", "--depth", "1"});
  auto j = nlohmann::json::parse(complete.out);
  CHECK(j["elements"].size() == 4);

  Result count = run_cli({"algebra", "complete", "--tree", "binary", "--depth", "5",
                          "--count-only"});
  CHECK(nlohmann::json::parse(count.out)["elements_log2"] == 32);

  Result iso = run_cli({"algebra", "iso-check", "--depth", "2"});
  CHECK(nlohmann::json::parse(iso.out)["isomorphic"] == true);

  Result split = run_cli({"algebra", "atom-split", "--tree", "binary", "--depth", "2"});
  CHECK(nlohmann::json::parse(split.out)["splits"] == true);

  Result code = run_cli({"algebra", "cantor-code", "--prefix", "01"});
  auto jc = nlohmann::json::parse(code.out);
  CHECK(jc["lo"]["num"] == 2);
  CHECK(jc["lo"]["den"] == 9);
  CHECK(jc["hi"]["num"] == 3);
}

TEST_CASE("cohen commands") {
  Result gen = run_cli({"cohen", "generic", "--specs", "len:3,diff:0^,pat:101"});
  auto j = nlohmann::json::parse(gen.out);
  CHECK(j["prefix"] == "000101");
  CHECK(j["trace"].size() == 3);
  CHECK(j["trace"][0]["spec"] == "len:3");

  Result vd = run_cli({"cohen", "verify-dense", "--spec", "pat:11", "--depth", "4"});
  CHECK(nlohmann::json::parse(vd.out)["dense"] == true);

  Result diag = run_cli({"cohen", "diagonal", "--prefix", "0001", "--seqs", "0^,1^"});
  CHECK(nlohmann::json::parse(diag.out)["escapes"] == true);

  Result stuck = run_cli({"cohen", "diagonal", "--prefix", "000", "--seqs", "0^"});
  CHECK(nlohmann::json::parse(stuck.out)["escapes"] == false);
}

TEST_CASE("perm commands") {
  Result classify = run_cli({"perm", "classify", "--perm", "disp(N=0,P=1,d=[1])"});
  CHECK(classify.code == 0);
  CHECK(classify.out == "{\"cyclic\":false}\n");

  Result swap = run_cli({"perm", "classify", "--perm", "disp(N=0,P=2,d=[1,-1])"});
  auto js = nlohmann::json::parse(swap.out);
  CHECK(js["cyclic"] == true);
  CHECK(js["witness"] == nlohmann::json::array({0, 1}));

  Result apply = run_cli({"perm", "apply", "--perm", "disp(N=0,P=1,d=[1])", "--set",
                          "tail(N=0, P=2, R={0})"});
  auto ja = nlohmann::json::parse(apply.out);
  CHECK(ja["value"]["P"] == 2);
  CHECK(ja["value"]["R"] == nlohmann::json::array({1}));

  Result comp = run_cli({"perm", "compose", "--f", "disp(N=0,P=1,d=[1])", "--g",
                         "disp(N=0,P=1,d=[1])"});
  CHECK(nlohmann::json::parse(comp.out)["text"] == "disp(N=0, P=1, d=[2])");

  Result inv = run_cli({"perm", "invert", "--perm", "disp(N=0,P=2,d=[1,-1])"});
  CHECK(nlohmann::json::parse(inv.out)["text"] == "disp(N=0, P=2, d=[1,-1])");

  Result eq = run_cli({"perm", "eqmodfin", "--a", "tail(N=0, P=2, R={0})", "--b",
                       "tail(N=3, P=2, R={0}) + {1}"});
  CHECK(nlohmann::json::parse(eq.out)["equal"] == true);
}

TEST_CASE("nonstd commands") {
  Result add = run_cli({"nonstd", "add", "--a", "poly(N=0, q=n)", "--b",
                        "poly(N=0, q=n)"});
  CHECK(nlohmann::json::parse(add.out)["text"] == "poly(N=0, q=2*n)");

  Result cmp = run_cli({"nonstd", "cmp", "--a", "poly(N=0, q=n^2)", "--b",
                        "poly(N=0, q=1000*n)"});
  CHECK(nlohmann::json::parse(cmp.out)["cmp"] == "greater");

  Result sum = run_cli({"nonstd", "sum", "--term", "i"});
  auto js = nlohmann::json::parse(sum.out);
  CHECK(js["text"] == "poly(N=0, q=1/2*n+1/2*n^2)");
  CHECK(js["first_values"][4] == 10);

  Result cls = run_cli({"nonstd", "classify", "--a", "poly(N=0, q=5)"});
  auto jc = nlohmann::json::parse(cls.out);
  CHECK(jc["kind"] == "standard");
  CHECK(jc["value"] == 5);

  Result inf = run_cli({"nonstd", "classify", "--a", "poly(N=0, q=n)"});
  CHECK(nlohmann::json::parse(inf.out)["kind"] == "infinite");
}

TEST_CASE("casson commands") {
  Result cls = run_cli({"casson", "classify", "--tree", "linear(+)"});
  CHECK(nlohmann::json::parse(cls.out)["classification"] == "CassonHandle");

  Result std2 = run_cli({"casson", "classify", "--tree", "(. (+ (+)))"});
  CHECK(nlohmann::json::parse(std2.out)["classification"] == "Standard2Handle");

  Result sf = run_cli({"casson", "sfinite", "--tree", "binary", "--horizon", "6"});
  CHECK(nlohmann::json::parse(sf.out)["sfinite"] == true);

  Result emb = run_cli({"casson", "embeds", "--a", "binary", "--b", "linear(+)",
                        "--depth", "3"});
  CHECK(nlohmann::json::parse(emb.out)["embeds"] == true);

  Result rep = run_cli({"casson", "to-cohen", "--tree", "linear(+)", "--depth", "2",
                        "--format", "json"});
  auto j = nlohmann::json::parse(rep.out);
  CHECK(j["algebra_stats"]["elements"] == 16);
  CHECK(j["algebra_stats"]["separative"] == true);
  CHECK(j["algebra_stats"]["atom_splitting"] == true);

  Result perm = run_cli({"casson", "permutation", "--tree", "linear(+)",
                         "--horizon", "6"});
  auto jp = nlohmann::json::parse(perm.out);
  CHECK(jp["text"] == "disp(N=0, P=1, d=[1])");
  CHECK(jp["cyclic"] == false);
}

TEST_CASE("json output is byte-stable across runs") {
  std::vector<std::vector<std::string>> invocations{
      {"casson", "to-cohen", "--tree", "binary_branch(-)", "--depth", "3"},
      {"poset", "from-tree", "--tree", "binary", "--depth", "3"},
      {"cohen", "generic", "--specs", "len:5,pat:1101,diff:01^"},
      {"algebra", "complete", "--tree", "binary", "--depth", "2"},
      {"nonstd", "sum", "--term", "i^2"},
  };
  for (const auto& args : invocations) {
    Result a = run_cli(args);
    Result b = run_cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.err.empty());
  }
}

TEST_CASE("exit code contract") {
  // usage errors: 2
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"tree"}).code == 2);
  CHECK(run_cli({"tree", "parse"}).code == 2);                       // missing --text
  CHECK(run_cli({"tree", "parse", "--nope", "x"}).code == 2);        // unknown flag
  CHECK(run_cli({"bogus"}).code == 2);

  // malformed inputs: 2 with machine-readable stderr
  for (auto args : std::vector<std::vector<std::string>>{
           {"tree", "parse", "--text", "(+"},
           {"tree", "parse", "--text", "linear()"},
           {"tree", "parse", "--text", "(. (.))"},
           {"perm", "classify", "--perm", "disp(N=0"},
           {"nonstd", "classify", "--a", "poly(q=n)"},
           {"cohen", "generic", "--specs", "wat:3"},
           {"algebra", "cantor-code", "--prefix", "012"},
       }) {
    Result r = run_cli(args);
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    auto j = nlohmann::json::parse(r.err);
    CHECK(j.contains("error"));
    CHECK(j.contains("message"));
  }

  // domain errors: 1
  Result dom = run_cli({"casson", "permutation", "--tree", "binary", "--horizon", "8"});
  CHECK(dom.code == 1);
  auto j = nlohmann::json::parse(dom.err);
  CHECK(j["error"] == "NotEventuallyPeriodic");

  Result unknown = run_cli({"poset", "dense", "--tree", "binary", "--depth", "1",
                            "--subset", "zz"});
  CHECK(unknown.code == 1);
  CHECK(nlohmann::json::parse(unknown.err)["error"] == "UnknownCondition");

  // help: 0
  CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("cap override is honored through the environment") {
  setenv("HANDLE_FORCING_CAP", "8", 1);
  Result r = run_cli({"algebra", "complete", "--tree", "binary", "--depth", "2"});
  unsetenv("HANDLE_FORCING_CAP");
  CHECK(r.code == 1);
  CHECK(nlohmann::json::parse(r.err)["error"] == "CapExceeded");

  Result ok = run_cli({"algebra", "complete", "--tree", "binary", "--depth", "2"});
  CHECK(ok.code == 0);
}

TEST_SUITE_END();
