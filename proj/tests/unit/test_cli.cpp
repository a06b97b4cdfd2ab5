#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "koszulkit/classify.hpp"
#include "koszulkit/cli.hpp"
#include "koszulkit/hilbert.hpp"

using namespace kt;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
  json j() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream o, e;
  int c = run_cli(args, o, e);
  return {c, o.str(), e.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
  auto p = std::filesystem::temp_directory_path() / ("koszulkit_test_" + name);
  std::ofstream(p) << body;
  return p.string();
}

const char* kFive = "x*y, x*w, (x-y)*z, z^2, x^2+z*w";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("ideal file with ring line") {
    auto f = temp_file("five.txt", "# five quadrics\nring QQ [x,y,z,w]\nideal: x*y, x*w, (x-y)*z, z^2, x^2+z*w\n");
    auto r = run({"res", "--ideal", f, "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = r.j();
    CHECK(j["schema"] == 1);
    CHECK(j["betti"]["rows"] == json::parse("[[1,0,0,0,0],[0,5,4,0,0],[0,0,4,6,2]]"));
    CHECK(j["complex"] == true);
    CHECK(j["euler_matches_hilbert"] == true);
    // text output uses rows j - i with "--" for zeros
    auto t = run({"res", "--ideal", f});
    CHECK(t.out.find("1: --  5  4 -- --") != std::string::npos);
  }

  TEST_CASE("hilbert record agrees with the library") {
    auto r = run({"hilbert", "--ring", "F7 [x,y,z,w]", "--ideal", kFive, "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = r.j();
    auto h = hilbert_of_quotient(Id(parse_ring("ring F7 [x,y,z,w]"), kFive));
    CHECK(j["numerator"].get<IntPoly>() == h.numerator);
    CHECK(j["dim"] == 2);
    CHECK(j["e"] == 1);
  }

  TEST_CASE("gb with an explicit variable order") {
    auto r = run({"gb", "--ring", "QQ [a3,b3,b4,a4,x,y,z]", "--ideal", "x*z, y*z, a3*x+b3*y, a4*x+b4*y", "--order",
                  "deglex", "--perm", "a3,b3,b4,a4,x,y,z", "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = r.j();
    CHECK(j["size"] == 4);
    CHECK(j["quadratic"] == true);
    CHECK(j["variables"][0] == "a3");
    // the same order written inline
    auto r2 = run({"gb", "--ring", "QQ [a3,b3,b4,a4,x,y,z]", "--ideal", "x*z, y*z, a3*x+b3*y, a4*x+b4*y", "--order",
                   "deglex:a3,b3,b4,a4,x,y,z", "--format", "json"});
    CHECK(r2.j()["basis"] == j["basis"]);
    // degrevlex with x > y: x^2 - y^2, x*y need y^3
    auto r3 = run({"gb", "--ring", "QQ [x,y]", "--ideal", "x^2-y^2, x*y", "--format", "json"});
    CHECK(r3.j()["size"] == 3);
    CHECK(r3.j()["quadratic"] == false);
  }

  TEST_CASE("parse errors carry line and column") {
    auto f = temp_file("bad.txt", "ring QQ [x,y]\n\nideal: x^2, x*y + , y^2\n");
    auto r = run({"classify", "--ideal", f});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("classify:") == 0);
    CHECK(r.err.find("line 3") != std::string::npos);
    CHECK(r.err.find("column") != std::string::npos);
    auto inl = run({"hilbert", "--ring", "QQ [x,y]", "--ideal", "x^2, q*y"});
    CHECK(inl.code == kExitUsage);
    CHECK(inl.err.find("column 6") != std::string::npos);
    auto ring = run({"hilbert", "--ring", "QQ [x,x]", "--ideal", "x^2"});
    CHECK(ring.code == kExitUsage);
  }

  TEST_CASE("usage errors") {
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({"res", "--ring", "QQ [x]"}).code == kExitUsage);
    CHECK(run({"res", "--ideal", "x^2"}).code == kExitUsage);
    CHECK(run({"res", "--ideal", "/no/such/file.txt", "--ring", "QQ [x]"}).code == kExitUsage);
    CHECK(run({"gb", "--ring", "QQ [x,y]", "--ideal", "x^2", "--order", "lex"}).code == kExitUsage);
    CHECK(run({"gb", "--ring", "QQ [x,y]", "--ideal", "x^2", "--perm", "x,q"}).code == kExitUsage);
    CHECK(run({"gen", "--form", "2v"}).code == kExitUsage);
    CHECK(run({"res", "--ring", "QQ [x]", "--ideal", "x^2", "--format", "yaml"}).code == kExitUsage);
    auto help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("classify") != std::string::npos);
  }

  TEST_CASE("classify rejects five generators with module context") {
    auto r = run({"classify", "--ring", "QQ [x,y,z,w]", "--ideal", kFive});
    CHECK(r.code == kExitComputation);
    CHECK(r.err.find("classify: ") == 0);
    CHECK(r.err.find("5 minimal quadric generators") != std::string::npos);
    CHECK(r.out.empty());
  }

  TEST_CASE("classify record and json file") {
    auto out = (std::filesystem::temp_directory_path() / "koszulkit_test_cls.json").string();
    auto r = run({"classify", "--ring", "QQ [x,y,z,w]", "--ideal", "x*z, x*w, y*z, y*w", "--json", out});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("certified-Koszul") != std::string::npos);
    std::ifstream f(out);
    json j = json::parse(f);
    CHECK(j["schema"] == 1);
    CHECK(j["matched_case"] == "2i");
    CHECK(j["verdict"] == "certified-Koszul");
    CHECK(j["certificate"]["kind"] == "lg-quadratic");
    CHECK(j["certificate"]["lg"]["quadratic"] == true);
    CHECK(j["witnesses"].size() >= 2);
    // witnesses regenerate the ideal
    auto R = parse_ring("ring QQ [x,y,z,w]");
    std::vector<Witness> w;
    for (auto& [k, v] : j["witnesses"].items()) w.push_back({k, P(R, v.get<std::string>())});
    auto rep = classify(Id(R, "x*z, x*w, y*z, y*w"));
    REQUIRE(rep.form);
    CHECK(ideal_equal(Ideal(R, template_generators(*rep.form, w)), Id(R, "x*z, x*w, y*z, y*w")));
  }

  TEST_CASE("batch classify keeps input order") {
    auto f = temp_file("batch.txt",
                       "ring QQ [x,y,a,b]\n"
                       "ideal: b*x, x*y, a*x-b*y, x^2-y^2\n"
                       "ideal: x*a, x*b, y*a, y*b\n"
                       "ideal: x^2, y^2, a^2, b^2\n"
                       "ideal: x^2\n");
    for (const char* threads : {"1", "3"}) {
      setenv("KOSZULKIT_THREADS", threads, 1);
      auto r = run({"classify", "--ideal", f, "--format", "json"});
      CHECK(r.code == 0);
      auto res = r.j()["results"];
      REQUIRE(res.size() == 4);
      CHECK(res[0]["matched_case"] == "2iv-(c)");
      CHECK(res[0]["verdict"] == "certified-non-Koszul");
      CHECK(res[1]["matched_case"] == "2i");
      CHECK(res[2]["matched_case"] == "ht4-CI");
      CHECK(res[3]["matched_case"] == "CI");
    }
    unsetenv("KOSZULKIT_THREADS");
    // one failing entry: the rest are still reported, exit code flags the failure
    auto g = temp_file("batch2.txt", "ring QQ [x,y]\nideal: x^2, x*y\nideal: x^3\n");
    auto r = run({"classify", "--ideal", g, "--format", "json"});
    CHECK(r.code == kExitComputation);
    CHECK(r.j()["results"][1].contains("error"));
    CHECK(r.err.find("ideal 2") != std::string::npos);
  }

  TEST_CASE("structured output is deterministic") {
    std::vector<std::string> a = {"classify", "--ring", "F32003 [a1,a2,b3,b4,x,y,u,v]", "--ideal",
                                  "a1*x, a2*x, b3*y, b4*y", "--seed", "5", "--format", "json"};
    auto r1 = run(a), r2 = run(a);
    REQUIRE(r1.code == 0);
    CHECK(r1.out == r2.out);
    CHECK(r1.j()["matched_case"] == "2iv-(d)");
  }

  TEST_CASE("koszul verdicts") {
    auto ci = run({"koszul", "--ring", "QQ [x,y]", "--ideal", "x^2, y^2", "--bound", "5", "--format", "json"});
    CHECK(ci.j()["verdict"] == "linear-so-far");
    CHECK(ci.j()["froberg"] == true);
    auto bad = run({"koszul", "--ring", "F32003 [x,y,a,b]", "--ideal", "b*x, x*y, a*x-b*y, x^2-y^2", "--bound", "6",
                    "--format", "json"});
    CHECK(bad.j()["linear_so_far"] == false);
    auto mod = run({"koszul", "--ring", "F2 [x:(1,0),y:(1,0),a:(0,1),b:(0,1)]", "--ideal", "b*x, x*y, a*x-b*y, x^2-y^2",
                    "--module", "a, b", "--bound", "5", "--format", "json"});
    CHECK(mod.j()["position"] == json::parse("[5, 6]"));
  }

  TEST_CASE("gen writes an ideal file that classifies back") {
    auto out = (std::filesystem::temp_directory_path() / "koszulkit_test_gen.txt").string();
    auto g = run({"gen", "--form", "2iii", "--seed", "1", "--out", out, "--format", "json"});
    REQUIRE(g.code == 0);
    CHECK(g.j()["form"] == "2iii");
    CHECK(g.j()["witnesses"].contains("z"));
    auto again = run({"gen", "--form", "2iii", "--seed", "1", "--format", "json"});
    CHECK(again.j()["ideal"] == g.j()["ideal"]);
    auto c = run({"classify", "--ideal", out, "--format", "json"});
    REQUIRE(c.code == 0);
    CHECK(c.j()["matched_case"] == "2iii");
    CHECK(c.j()["verdict"] == "certified-Koszul");
    auto small = run({"gen", "--form", "ht4-CI", "--field", "F3", "--vars", "4", "--format", "json"});
    CHECK(small.code == 0);
  }

  TEST_CASE("appendix and manifest") {
    auto a = run({"appendix", "--char", "2", "--format", "json"});
    CHECK(a.code == 0);
    CHECK(a.j()["obstruction"]["hom"] == 4);
    CHECK(run({"appendix", "--char", "4"}).code != 0);
    auto m = run({"repro-paper", "--format", "json"});
    CHECK(m.code == 0);
    CHECK(m.j()["pass"] == true);
    // every check carries a provenance tag
    std::ifstream f(default_manifest_path());
    json man = json::parse(f);
    for (auto& c : man["checks"]) {
      std::string tag = c.value("provenance", "");
      CHECK((tag == "[PAPER]" || tag == "[DERIVED]" || tag == "[TRIVIAL]"));
    }
    // a failing expectation makes the driver fail
    auto bad = temp_file("manifest.json",
                         R"({"checks": [{"name": "wrong", "args": ["hilbert", "--ring", "QQ [x]", "--ideal", "x^2"],)"
                         R"( "expect": {"e": 3}}]})");
    auto r = run({"repro-paper", "--manifest", bad});
    CHECK(r.code == kExitCheckFailed);
    CHECK(r.out.find("FAIL wrong") != std::string::npos);
  }
}
