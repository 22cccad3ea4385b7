#include "wgtool/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wheeler/axioms.hpp"
#include "wheeler/encoding.hpp"
#include "wheeler/gadgets.hpp"
#include "wheeler/optimization.hpp"
#include "wheeler/recognizer.hpp"

namespace wgtool {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw wheeler::Error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Writes through a temporary sibling so readers never see a partial file.
void write_file(const std::string &path, const std::string &content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw wheeler::Error("cannot write '" + path + "'");
    out << content;
    if (!out) throw wheeler::Error("cannot write '" + path + "'");
  }
  fs::rename(tmp, path);
}

struct Output {
  std::ostream &out;
  bool as_json = false;
  bool timing = true;
  Clock::time_point start = Clock::now();

  double runtime_ms() const {
    if (!timing) return 0;
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  }
  void emit(json j) const {
    j["runtime_ms"] = runtime_ms();
    out << j.dump() << '\n';
  }
};

json edge_json(const wheeler::Edge &e) { return json::array({e.tail + 1, e.head + 1, e.label}); }

json order_json(const wheeler::Ordering &pi) {
  json a = json::array();
  for (auto v : pi.sequence()) a.push_back(v + 1);
  return a;
}

std::string edge_line(const wheeler::Edge &e) {
  return std::to_string(e.tail + 1) + ' ' + std::to_string(e.head + 1) + ' ' +
         std::to_string(e.label) + '\n';
}

std::vector<wheeler::Label> parse_pattern(const std::string &text) {
  std::vector<wheeler::Label> pattern;
  std::string tok;
  std::istringstream in(text);
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used != tok.size() || v == 0) throw wheeler::Error("bad label '" + tok + "' in pattern");
    pattern.push_back(wheeler::Label(v));
  }
  return pattern;
}

void add_common(CLI::App *sub, bool &as_json, bool &no_timing) {
  sub->add_flag("--json", as_json, "Machine-readable output");
  sub->add_flag("--no-timing", no_timing, "Report runtime_ms as 0");
}

struct ReportCase {
  std::string name;
  wheeler::LabeledDigraph graph;
};

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Wheeler graph toolkit", "wgtool"};
  app.require_subcommand(1);

  bool as_json = false, no_timing = false;
  std::string graph_path, order_path, code_path, out_path, witness_path, pattern_text;
  std::string algo_name = "auto";
  std::size_t max_vertices = wheeler::RecognizerOptions{}.max_vertices;
  std::size_t node_limit = 0;
  std::size_t max_edges = wheeler::WgvOptions{}.max_edges;

  auto *check = app.add_subcommand("check", "Verify an ordering against the axioms");
  check->add_option("graph", graph_path)->required();
  check->add_option("ordering", order_path)->required();
  add_common(check, as_json, no_timing);

  auto *recog = app.add_subcommand("recognize", "Decide whether a graph is Wheeler");
  recog->add_option("graph", graph_path)->required();
  recog->add_option("--algo", algo_name, "exhaustive|codes|sigma1|special|auto");
  recog->add_option("--witness", witness_path, "Write the ordering here");
  recog->add_option("--max-vertices", max_vertices, "Exhaustive search size guard");
  recog->add_option("--node-limit", node_limit, "Search node guard, 0 for none");
  add_common(recog, as_json, no_timing);

  auto *enc = app.add_subcommand("encode", "Encode a graph under a proper ordering");
  enc->add_option("graph", graph_path)->required();
  enc->add_option("ordering", order_path)->required();
  enc->add_option("-o,--output", out_path, "Code file (default: stdout)");

  auto *dec = app.add_subcommand("decode", "Rebuild a graph from its code");
  dec->add_option("code", code_path)->required();
  dec->add_option("-o,--output", out_path, "Graph file (default: stdout)");

  auto *match = app.add_subcommand("match", "Backward search for a label pattern");
  match->add_option("code", code_path)->required();
  match->add_option("pattern", pattern_text, "Comma-separated labels, e.g. 1,2")->required();
  add_common(match, as_json, no_timing);

  bool approx = false, exact = false;
  std::string ws_order_path;
  auto *ws = app.add_subcommand("ws", "Large Wheeler subgraph");
  ws->add_option("graph", graph_path)->required();
  auto *approx_flag = ws->add_flag("--approx", approx, "Approximation (default)");
  ws->add_flag("--exact", exact, "Exact search")->excludes(approx_flag);
  ws->add_option("-o,--output", out_path, "Kept subgraph file (default: stdout)");
  ws->add_option("--ordering", ws_order_path, "Write the witness ordering here");
  ws->add_option("--max-edges", max_edges, "Exact search edge guard");
  ws->add_option("--max-vertices", max_vertices, "Exhaustive search size guard");
  add_common(ws, as_json, no_timing);

  std::optional<std::size_t> budget;
  auto *wgv = app.add_subcommand("wgv", "Minimum edge deletions to reach a Wheeler graph");
  wgv->add_option("graph", graph_path)->required();
  wgv->add_option("--budget", budget, "Stop after this many deletions");
  wgv->add_option("--max-edges", max_edges, "Edge guard without a budget");
  wgv->add_option("--max-vertices", max_vertices, "Exhaustive search size guard");
  add_common(wgv, as_json, no_timing);

  std::string gen_kind, heavy = "subdivided";
  auto *gen = app.add_subcommand("gen", "Build a reduction graph from an instance file");
  gen->add_option("kind", gen_kind, "btw|fas|nae")
      ->required()
      ->check(CLI::IsMember({"btw", "fas", "nae"}));
  gen->add_option("instance", graph_path)->required();
  gen->add_option("-o,--output", out_path, "Graph file")->required();
  gen->add_option("--witness", witness_path, "btw only: write the induced ordering");
  gen->add_option("--heavy", heavy, "fas only: subdivided|parallel")
      ->check(CLI::IsMember({"subdivided", "parallel"}));

  std::string report_dir, out_dir;
  std::optional<std::uint64_t> seed;
  std::size_t random_count = 0, rand_n = 6, rand_e = 8;
  wheeler::Label rand_sigma = 2;
  auto *report = app.add_subcommand("report", "Approximation ratios over a batch");
  report->add_option("dir", report_dir, "Directory of .wg files");
  report->add_option("--random", random_count, "Generate this many random graphs instead");
  report->add_option("--seed", seed, "Seed for --random (required)");
  report->add_option("--vertices", rand_n, "Random graph vertex count");
  report->add_option("--edges", rand_e, "Random graph edge count");
  report->add_option("--sigma", rand_sigma, "Random graph alphabet size");
  report->add_option("--out-dir", out_dir, "Also write one JSON file per case here");
  report->add_option("--max-edges", max_edges, "Exact search edge guard");
  report->add_option("--max-vertices", max_vertices, "Exhaustive search size guard");
  add_common(report, as_json, no_timing);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? Ok : Usage;
  }

  Output o{out, as_json, !no_timing};
  wheeler::RecognizerOptions ropts;
  ropts.max_vertices = max_vertices;
  ropts.node_limit = node_limit;

  try {
    if (check->parsed()) {
      auto g = wheeler::parse_graph(read_file(graph_path));
      auto pi = wheeler::parse_ordering(read_file(order_path), g.num_vertices());
      auto bad = wheeler::violations(g, pi);
      const bool proper = wheeler::check_ordering(g, pi);
      if (o.as_json) {
        json v = json::array();
        for (auto id : bad) v.push_back(edge_json(g.edge(id)));
        o.emit({{"verdict", proper ? "proper" : "improper"}, {"violations", v}});
      } else {
        out << (proper ? "proper\n" : "improper\n");
        for (auto id : bad) out << "violation " << edge_line(g.edge(id));
      }
      return proper ? Ok : Rejected;
    }

    if (recog->parsed()) {
      auto g = wheeler::parse_graph(read_file(graph_path));
      auto algo = wheeler::parse_algorithm(algo_name);
      if (algo == wheeler::Algorithm::Auto) algo = wheeler::choose_algorithm(g);
      auto pi = wheeler::recognize(g, algo, ropts);
      if (pi && !witness_path.empty()) write_file(witness_path, wheeler::serialize_ordering(*pi));
      if (o.as_json) {
        o.emit({{"verdict", pi ? "wheeler" : "not-wheeler"},
                {"algorithm", std::string(wheeler::algorithm_name(algo))},
                {"witness", pi ? order_json(*pi) : json(nullptr)}});
      } else {
        out << (pi ? "wheeler\n" : "not-wheeler\n");
        if (pi && witness_path.empty()) out << wheeler::serialize_ordering(*pi);
      }
      return pi ? Ok : Rejected;
    }

    if (enc->parsed()) {
      auto g = wheeler::parse_graph(read_file(graph_path));
      auto pi = wheeler::parse_ordering(read_file(order_path), g.num_vertices());
      auto text = wheeler::serialize_code(wheeler::encode(g, pi));
      if (out_path.empty()) out << text;
      else write_file(out_path, text);
      return Ok;
    }

    if (dec->parsed()) {
      auto code = wheeler::parse_code(read_file(code_path));
      std::string why;
      auto d = wheeler::try_decode(code, &why);
      if (!d) {
        err << "not a Wheeler code: " << why << '\n';
        return Rejected;
      }
      auto text = wheeler::serialize_graph(d->graph);
      if (out_path.empty()) out << text;
      else write_file(out_path, text);
      return Ok;
    }

    if (match->parsed()) {
      auto code = wheeler::parse_code(read_file(code_path));
      auto pattern = parse_pattern(pattern_text);
      auto r = wheeler::match_pattern(code, pattern);
      if (o.as_json) {
        o.emit({{"verdict", r.empty() ? "empty" : "match"},
                {"first", r.empty() ? 0 : r.begin + 1},
                {"last", r.empty() ? 0 : r.end}});
      } else if (r.empty()) {
        out << "empty\n";
      } else {
        // 1-based inclusive ranks.
        out << r.begin + 1 << ' ' << r.end << '\n';
      }
      return r.empty() ? Rejected : Ok;
    }

    if (ws->parsed()) {
      auto g = wheeler::parse_graph(read_file(graph_path));
      wheeler::WheelerSubgraph sub;
      if (exact) {
        wheeler::WgvOptions w;
        w.max_edges = max_edges;
        w.recognizer = ropts;
        sub = wheeler::ws_exact(g, w);
      } else {
        sub = wheeler::ws_approx(g);
      }
      auto text = wheeler::serialize_graph(wheeler::edge_subgraph(g, sub.edges));
      if (!ws_order_path.empty()) write_file(ws_order_path, wheeler::serialize_ordering(sub.order));
      if (!out_path.empty()) write_file(out_path, text);
      if (o.as_json) {
        json kept = json::array();
        for (auto id : sub.edges) kept.push_back(edge_json(g.edge(id)));
        o.emit({{"verdict", exact ? "exact" : "approx"},
                {"edges_kept", sub.edges.size()},
                {"edges", kept},
                {"witness", order_json(sub.order)}});
      } else if (out_path.empty()) {
        out << text;
      }
      return Ok;
    }

    if (wgv->parsed()) {
      auto g = wheeler::parse_graph(read_file(graph_path));
      wheeler::WgvOptions w;
      w.budget = budget;
      w.max_edges = max_edges;
      w.recognizer = ropts;
      auto r = wheeler::wgv_exact(g, w);
      if (o.as_json) {
        json del = json::array();
        if (r)
          for (auto id : r->deleted) del.push_back(edge_json(g.edge(id)));
        o.emit({{"verdict", r ? "found" : "over-budget"},
                {"edges_deleted", r ? json(r->deleted.size()) : json(nullptr)},
                {"edges_kept", r ? json(g.num_edges() - r->deleted.size()) : json(nullptr)},
                {"deleted", del},
                {"witness", r ? order_json(r->order) : json(nullptr)}});
      } else if (r) {
        out << "deleted " << r->deleted.size() << '\n';
        for (auto id : r->deleted) out << edge_line(g.edge(id));
      } else {
        out << "over-budget\n";
      }
      return r ? Ok : Rejected;
    }

    if (gen->parsed()) {
      const std::string text = read_file(graph_path);
      if (!witness_path.empty() && gen_kind != "btw") {
        err << "--witness is only available for btw instances\n";
        return Usage;
      }
      if (gen_kind == "btw") {
        auto inst = wheeler::parse_betweenness(text);
        write_file(out_path, wheeler::serialize_graph(wheeler::betweenness_to_graph(inst)));
        if (!witness_path.empty()) {
          auto order = wheeler::solve_betweenness(inst);
          if (!order) {
            err << "instance is unsatisfiable; no witness written\n";
            return Rejected;
          }
          write_file(witness_path, wheeler::serialize_ordering(
                                       wheeler::betweenness_ordering_to_wheeler(inst, *order)));
        }
      } else if (gen_kind == "fas") {
        auto style = heavy == "parallel" ? wheeler::HeavyEdges::Parallel
                                         : wheeler::HeavyEdges::Subdivided;
        write_file(out_path, wheeler::serialize_graph(
                                 wheeler::fas_to_wgv_graph(wheeler::parse_fas(text), style)));
      } else {
        const auto kind = wheeler::instance_kind(text);
        wheeler::Naesat3Star phi = kind == "nae4"
                                       ? wheeler::naesat4_to_naesat3star(wheeler::parse_naesat4(text))
                                       : wheeler::parse_naesat3star(text);
        write_file(out_path, wheeler::serialize_graph(wheeler::naesat3star_to_graph(phi)));
      }
      return Ok;
    }

    if (report->parsed()) {
      std::vector<ReportCase> cases;
      if (random_count > 0) {
        if (!seed) {
          err << "report --random needs --seed\n";
          return Usage;
        }
        if (rand_n == 0 && rand_e > 0) {
          err << "report --random: edges need at least one vertex\n";
          return Usage;
        }
        std::mt19937_64 rng(*seed);
        for (std::size_t i = 0; i < random_count; ++i) {
          std::vector<wheeler::Edge> edges;
          for (std::size_t j = 0; j < rand_e; ++j)
            edges.push_back({wheeler::Vertex(rng() % rand_n), wheeler::Vertex(rng() % rand_n),
                             wheeler::Label(1 + rng() % rand_sigma)});
          cases.push_back({"random-" + std::to_string(i + 1),
                           wheeler::LabeledDigraph(rand_n, rand_sigma, std::move(edges))});
        }
      } else if (!report_dir.empty()) {
        std::vector<fs::path> files;
        for (const auto &entry : fs::directory_iterator(report_dir))
          if (entry.is_regular_file() && entry.path().extension() == ".wg")
            files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto &f : files)
          cases.push_back({f.stem().string(), wheeler::parse_graph(read_file(f.string()))});
      } else {
        err << "report needs a directory or --random\n";
        return Usage;
      }

      wheeler::WgvOptions w;
      w.max_edges = max_edges;
      w.recognizer = ropts;
      json rows = json::array();
      if (!o.as_json) out << "case vertices edges approx exact ratio\n";
      for (const auto &c : cases) {
        auto rep = wheeler::approx_report(c.graph, w);
        if (!o.timing) rep.approx_ms = rep.exact_ms = 0;
        json row = {{"case", c.name},
                    {"vertices", rep.vertices},
                    {"edges", rep.edges},
                    {"edges_kept", rep.approx_kept},
                    {"exact_kept", rep.exact_kept ? json(*rep.exact_kept) : json(nullptr)},
                    {"ratio", rep.ratio ? json(*rep.ratio) : json(nullptr)},
                    {"wheeler_input", rep.wheeler_input},
                    {"runtime_ms", rep.approx_ms + rep.exact_ms}};
        if (!out_dir.empty()) {
          fs::create_directories(out_dir);
          write_file((fs::path(out_dir) / (c.name + ".json")).string(), row.dump() + "\n");
        }
        rows.push_back(row);
        if (!o.as_json) {
          std::ostringstream ratio;
          if (rep.ratio) ratio << std::fixed << std::setprecision(3) << *rep.ratio;
          else ratio << '-';
          out << c.name << ' ' << rep.vertices << ' ' << rep.edges << ' ' << rep.approx_kept << ' '
              << (rep.exact_kept ? std::to_string(*rep.exact_kept) : "-") << ' ' << ratio.str()
              << '\n';
        }
      }
      if (o.as_json) o.emit({{"verdict", "ok"}, {"cases", rows}});
      return Ok;
    }
  } catch (const wheeler::GuardExceeded &e) {
    err << "guard exceeded: " << e.what() << '\n';
    return Guard;
  } catch (const wheeler::Error &e) {
    err << "error: " << e.what() << '\n';
    return Usage;
  } catch (const fs::filesystem_error &e) {
    err << "error: " << e.what() << '\n';
    return Usage;
  }
  return Usage;
}

} // namespace wgtool
