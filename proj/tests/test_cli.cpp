#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sys/wait.h>

#include "dpz/classify.hpp"
#include "dpz/elliptic_k.hpp"
#include "dpz/surface_k.hpp"

using namespace dpz;
using json = nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const char* bin = std::getenv("DPZ_BIN");
  REQUIRE(bin != nullptr);
  std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  Run r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    auto nl = s.find('\n', pos);
    out.push_back(s.substr(pos, nl - pos));
    if (nl == std::string::npos) break;
    pos = nl + 1;
  }
  return out;
}

EllipticClass from_json(const json& j) {
  auto c = make_class(j["rank"].get<Int>(), j["deg"].get<Int>(), parse_det(j["det"].get<std::string>()));
  c.shift = j["shift"].get<int>();
  return c;
}

}  // namespace

TEST_CASE("documented examples") {
  auto roots = run("roots --d 1 --count");
  CHECK(roots.code == 0);
  CHECK(roots.out == "240\n");

  auto res = run("resolution --V 1,0 --dL 1 --depth 4");
  CHECK(res.code == 0);
  CHECK(res.out.find("[-3,-2,-1] -> [0]") != std::string::npos);

  auto mod = run("moduli --slope 0 --r 1 --d 1 --format tsv");
  CHECK(mod.code == 0);
  auto ls = lines(mod.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == "slope\tr\td\ttype\tdegrees\tfiber_dim\ttorsion\tstatus");
  CHECK(ls[1].find("\tE8\t1,2,2,3,3,4,4,5,6\t") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run("roots --bogus").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("pairing --M x").code == 2);
  CHECK(run("roots --format xml").code == 2);
  CHECK(run("--help").code == 0);
  CHECK(run("pairing --M '(1; d=1:[0]; 1)' --N '(1; d=1:[0]; 1)'").code == 1);
  CHECK(run("candidates --slope 0").code == 1);
  CHECK(run("rational-nonsense").code == 2);
}

TEST_CASE("json output reparses into library types") {
  const std::string M = "(2; d=1:[1,0,0,0,0,0,0,0,-1]; 1)", N = "(1; d=1:[0,1,0,0,0,0,0,0,0]; 0)";
  auto p = run("--format json pairing --M '" + M + "' --N '" + N + "'");
  REQUIRE(p.code == 0);
  auto j = json::parse(p.out);
  CHECK(parse_surface_class(j["M"]) == parse_surface_class(M));
  CHECK(j["chi"].get<Int>() == euler_pairing(parse_surface_class(M), parse_surface_class(N)));

  auto t = json::parse(run("twist --format json --M '" + M + "' --D 'd=1:[1,-1,0,0,0,0,0,0,0]'").out);
  CHECK(parse_surface_class(t["result"]) == twist(parse_surface_class(M), parse_lattice_vector("d=1:[1,-1,0,0,0,0,0,0,0]")));

  auto a = json::parse(run("autoeq --format json --kind phi --M 2,2,L --N 1,5,D").out);
  CHECK(from_json(a["result"]) == phi_div(make_class(2, 2, parse_det("L")), make_class(1, 5, parse_det("D"))));

  auto c = json::parse(run("classify-slope --format json --slope -3/8").out);
  auto lib = classify_slope({3, 8});
  REQUIRE(c["classes"].size() == lib.size());
  for (std::size_t i = 0; i < lib.size(); ++i) {
    CHECK(parse_lattice_vector(c["classes"][i]["v"]) == lib[i].v);
    CHECK(parse_surface_class(c["classes"][i]["class"]) == lib[i].surface_class());
    CHECK(c["classes"][i]["tuple"].get<std::vector<Int>>() == lib[i].tuple);
  }

  auto m = json::parse(run("moduli --format json --r 3 --d 2").out);
  auto ms = configuration_search({{0, 1}, 3, 2, 0, 1});
  REQUIRE(m["descriptors"].size() == ms.size());
  for (std::size_t i = 0; i < ms.size(); ++i) {
    std::vector<LatticeVector> roots;
    for (auto& r : m["descriptors"][i]["roots"]) roots.push_back(parse_lattice_vector(r));
    CHECK(roots == ms[i].roots);
    CHECK(m["descriptors"][i]["constraints"].get<std::vector<std::vector<Int>>>() == ms[i].constraints);
  }
}

TEST_CASE("output is deterministic and independent of jobs") {
  auto a = run("moduli --r 2 --d 3 --format json");
  auto b = run("moduli --r 2 --d 3 --format json");
  auto c = run("--jobs 4 moduli --r 2 --d 3 --format json");
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
}

TEST_CASE("config file defaults") {
  const std::string path = "dpz_test_config.txt";
  {
    std::ofstream f(path);
    f << "# defaults\nd=2\nrelations=2q\n";
  }
  CHECK(run("roots --count --config " + path).out == "126\n");
  CHECK(run("roots --count --d 3 --config " + path).out == "72\n");
  CHECK(run("minimality --V 1,0 --dL 1 --config " + path).out.rfind("minimal", 0) == 0);
  CHECK(run("minimality --V 1,0 --dL 1").out.rfind("not minimal", 0) == 0);
  {
    std::ofstream f(path);
    f << "colour=blue\n";
  }
  CHECK(run("roots --count --config " + path).code == 2);
  std::remove(path.c_str());
}

TEST_CASE("other subcommands") {
  CHECK(run("decimate --degrees 1,2,2,3,3,4,4,5,6").out == "2, 3, 4, 5, 6\n");
  CHECK(run("koszul --V 1,0 --dL 3").out == "not koszul\n");
  CHECK(run("hilbert --V 2,1 --n 4").out == "1, 4, 8, 12, 16\n");
  CHECK(run("hilbert --V 2,1 --n 4 --series center").out == "1, 1, 2, 3, 4\n");
  CHECK(run("chi-e --M 1,0 --N 1,1 --format tsv").out == "M\tN\tchi\thom\text1\n(1,0,0)[0]\t(1,1,0)[0]\t1\t1\t0\n");
  CHECK(run("cvp --x 'd=1:[0,1/2,-1/2,0,0,0,0,0,0]'").out.rfind("dist2 = 1/2", 0) == 0);
  CHECK(run("polarization --d 1 --fix q --fix 3h-x1-x2-x3-x4-x5-x6-x7-x8").out.rfind("positive semidefinite", 0) == 0);
  CHECK(run("collection --class '(1; d=1:[0,0,0,0,0,0,0,-1,1]; 0)' --class '(1; d=1:[0,0,0,0,0,0,0,0,0]; 1)'").out == "ok\n");
  CHECK(run("alcove --x 'd=1:[0,0,0,0,0,0,0,0,0]'").out.rfind("c = (0,0,0,0,0,0,0,0)  c0 = (1)", 0) == 0);
  CHECK(run("phistar --M '(1; d=1:[-1,1,0,0,0,0,0,0,0]; 0)'").out == "(-2; d=1:[-2,0,1,1,1,1,1,1,1]; 0)\n");
  CHECK(run("candidates --slope -1/4").code == 0);
}
