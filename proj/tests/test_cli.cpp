#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "wgtool/cli.hpp"
#include "wheeler/axioms.hpp"
#include "wheeler/encoding.hpp"
#include "wheeler/gadgets.hpp"
#include "wheeler/optimization.hpp"
#include "wheeler/recognizer.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace wheeler;

namespace {

struct Workdir {
  fs::path root;
  Workdir() {
    root = fs::temp_directory_path() / ("wgtool-test-" + std::to_string(::getpid()));
    fs::remove_all(root);
    fs::create_directories(root);
  }
  ~Workdir() { fs::remove_all(root); }
  std::string put(const std::string &name, const std::string &content) const {
    const auto p = root / name;
    std::ofstream(p) << content;
    return p.string();
  }
  std::string path(const std::string &name) const { return (root / name).string(); }
  static std::string read(const std::string &p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }
};

struct Result {
  int code;
  std::string out, err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = wgtool::run(args, out, err);
  return {code, out.str(), err.str()};
}

const char *path3 = "wg 3 2 1\n1 2 1\n2 3 1\n";
const char *k22 = "wg 4 4 1\n1 3 1\n1 4 1\n2 3 1\n2 4 1\n";

} // namespace

TEST_CASE("recognize prints the witness of the library call") {
  Workdir w;
  auto g = w.put("path3.wg", path3);
  auto r = cli({"recognize", g});
  CHECK(r.code == wgtool::Ok);
  auto pi = recognize(parse_graph(path3));
  REQUIRE(pi);
  CHECK(r.out == "wheeler\n" + serialize_ordering(*pi));

  auto rej = cli({"recognize", w.put("k22.wg", k22)});
  CHECK(rej.code == wgtool::Rejected);
  CHECK(rej.out == "not-wheeler\n");

  auto file = cli({"recognize", g, "--algo", "exhaustive", "--witness", w.path("w.ord")});
  CHECK(file.code == wgtool::Ok);
  CHECK(Workdir::read(w.path("w.ord")) == serialize_ordering(*recognize_exhaustive(parse_graph(path3))));

  auto j = cli({"recognize", g, "--json", "--no-timing"});
  auto doc = json::parse(j.out);
  CHECK(doc["verdict"] == "wheeler");
  CHECK(doc["witness"] == json::array({1, 2, 3}));
  CHECK(doc["runtime_ms"] == 0.0);
}

TEST_CASE("recognize guard and usage errors") {
  Workdir w;
  std::string big = "wg 12 0 1\n";
  auto g = w.put("big.wg", big);
  CHECK(cli({"recognize", g, "--algo", "exhaustive", "--max-vertices", "5"}).code == wgtool::Guard);
  CHECK(cli({"recognize", g, "--algo", "nope"}).code == wgtool::Usage);
  CHECK(cli({"recognize", w.path("missing.wg")}).code == wgtool::Usage);
  CHECK(cli({"recognize", w.put("bad.wg", "wg 2 1 1\n1 2 5\n")}).code == wgtool::Usage);
  CHECK(cli({}).code == wgtool::Usage);
  CHECK(cli({"frobnicate"}).code == wgtool::Usage);
  auto help = cli({"--help"});
  CHECK(help.code == wgtool::Ok);
  CHECK(help.out.find("recognize") != std::string::npos);
}

TEST_CASE("check lists violations") {
  Workdir w;
  auto g = w.put("path3.wg", path3);
  CHECK(cli({"check", g, w.put("good.ord", "1 2 3\n")}).code == wgtool::Ok);
  auto bad = cli({"check", g, w.put("bad.ord", "3 2 1\n")});
  CHECK(bad.code == wgtool::Rejected);
  auto graph = parse_graph(path3);
  auto v = violations(graph, Ordering::from_sequence({2, 1, 0}));
  std::string expected = "improper\n";
  for (auto id : v) {
    const auto &e = graph.edge(id);
    expected += "violation " + std::to_string(e.tail + 1) + " " + std::to_string(e.head + 1) +
                " " + std::to_string(e.label) + "\n";
  }
  CHECK(bad.out == expected);
  auto j = json::parse(cli({"check", g, w.path("bad.ord"), "--json"}).out);
  CHECK(j["violations"].size() == v.size());
  CHECK(j.contains("runtime_ms"));
}

TEST_CASE("encode, decode and match") {
  Workdir w;
  auto g = w.put("path3.wg", path3);
  auto o = w.put("id.ord", "1 2 3\n");
  CHECK(cli({"encode", g, o, "-o", w.path("c.wgc")}).code == wgtool::Ok);
  const auto code = encode(parse_graph(path3), Ordering::identity(3));
  CHECK(Workdir::read(w.path("c.wgc")) == serialize_code(code));
  auto d = cli({"decode", w.path("c.wgc")});
  CHECK(d.code == wgtool::Ok);
  CHECK(d.out == serialize_graph(decode(code).graph));

  auto m = cli({"match", w.path("c.wgc"), "1"});
  auto r = match_pattern(code, std::vector<Label>{1});
  CHECK(m.out == std::to_string(r.begin + 1) + " " + std::to_string(r.end) + "\n");
  auto none = cli({"match", w.path("c.wgc"), "1,1,1"});
  CHECK(none.code == wgtool::Rejected);
  CHECK(none.out == "empty\n");
  CHECK(cli({"match", w.path("c.wgc"), "1,x"}).code == wgtool::Usage);

  auto bad = w.put("bad.wgc", "wgc 2 1 1\n011\n101\n2\n");
  CHECK(cli({"decode", bad}).code == wgtool::Usage);
  auto undecodable = w.put("u.wgc", "wgc 2 2 2\n0011\n1001\n1 2\n");
  CHECK(cli({"decode", undecodable}).code == wgtool::Rejected);
}

TEST_CASE("ws and wgv") {
  Workdir w;
  auto g = w.put("k22.wg", k22);
  const auto graph = parse_graph(k22);

  auto approx = cli({"ws", g, "-o", w.path("kept.wg"), "--ordering", w.path("kept.ord")});
  CHECK(approx.code == wgtool::Ok);
  auto lib = ws_approx(graph);
  CHECK(Workdir::read(w.path("kept.wg")) == serialize_graph(edge_subgraph(graph, lib.edges)));
  CHECK(Workdir::read(w.path("kept.ord")) == serialize_ordering(lib.order));

  auto exact = json::parse(cli({"ws", g, "--exact", "--json"}).out);
  CHECK(exact["edges_kept"] == ws_exact(graph).edges.size());
  CHECK(cli({"ws", g, "--exact", "--approx"}).code == wgtool::Usage);

  auto v = cli({"wgv", g});
  CHECK(v.code == wgtool::Ok);
  CHECK(v.out == "deleted 1\n1 3 1\n");
  auto over = cli({"wgv", g, "--budget", "0"});
  CHECK(over.code == wgtool::Rejected);
  CHECK(over.out == "over-budget\n");
  auto j = json::parse(cli({"wgv", g, "--json"}).out);
  CHECK(j["edges_kept"] == 3);
  CHECK(j["witness"].size() == 4);
}

TEST_CASE("gen writes reduction graphs and the betweenness witness") {
  Workdir w;
  auto btw = w.put("ex.btw", "btw 5 5\n3 4 5\n4 1 3\n1 4 5\n2 4 1\n5 2 3\n");
  auto r = cli({"gen", "btw", btw, "-o", w.path("g.wg"), "--witness", w.path("w.ord")});
  CHECK(r.code == wgtool::Ok);
  CHECK(cli({"check", w.path("g.wg"), w.path("w.ord")}).code == wgtool::Ok);
  CHECK(parse_graph(Workdir::read(w.path("g.wg"))).num_vertices() == 41);

  auto unsat = w.put("u.btw", "btw 3 2\n1 2 3\n2 1 3\n");
  CHECK(cli({"gen", "btw", unsat, "-o", w.path("u.wg"), "--witness", w.path("u.ord")}).code ==
        wgtool::Rejected);

  auto fas = w.put("c.fas", "fas 2 2\n1 2\n2 1\n");
  CHECK(cli({"gen", "fas", fas, "-o", w.path("f.wg"), "--heavy", "parallel"}).code == wgtool::Ok);
  CHECK(Workdir::read(w.path("f.wg")) ==
        serialize_graph(fas_to_wgv_graph(parse_fas("fas 2 2\n1 2\n2 1\n"), HeavyEdges::Parallel)));
  CHECK(cli({"gen", "fas", fas, "-o", w.path("f.wg"), "--witness", w.path("x")}).code ==
        wgtool::Usage);

  auto n4 = w.put("a.nae", "nae4 4 1\n1 2 3 4\n");
  CHECK(cli({"gen", "nae", n4, "-o", w.path("n.wg")}).code == wgtool::Ok);
  CHECK(Workdir::read(w.path("n.wg")) ==
        serialize_graph(naesat3star_to_graph(naesat4_to_naesat3star(Naesat4{4, {{1, 2, 3, 4}}}))));
  auto n3 = w.put("b.nae", "nae3s 3 1\n1 2 3\n");
  CHECK(cli({"gen", "nae", n3, "-o", w.path("n3.wg")}).code == wgtool::Ok);
}

TEST_CASE("report") {
  Workdir w;
  fs::create_directories(w.path("cases"));
  w.put("cases/a.wg", k22);
  w.put("cases/b.wg", path3);
  auto r = cli({"report", w.path("cases"), "--json", "--no-timing", "--out-dir", w.path("out")});
  CHECK(r.code == wgtool::Ok);
  auto doc = json::parse(r.out);
  REQUIRE(doc["cases"].size() == 2);
  CHECK(doc["cases"][0]["case"] == "a");
  CHECK(doc["cases"][0]["exact_kept"] == 3);
  CHECK(doc["cases"][1]["ratio"] == 1.0);
  CHECK(json::parse(Workdir::read(w.path("out/a.json"))) == doc["cases"][0]);

  CHECK(cli({"report", "--random", "3"}).code == wgtool::Usage);
  CHECK(cli({"report"}).code == wgtool::Usage);
  auto a = cli({"report", "--random", "4", "--seed", "9", "--no-timing"});
  auto b = cli({"report", "--random", "4", "--seed", "9", "--no-timing"});
  CHECK(a.code == wgtool::Ok);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("case vertices edges approx exact ratio\n", 0) == 0);
}
