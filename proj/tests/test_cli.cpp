#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace rainbow;
using nlohmann::json;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "rainbow");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "rainbow-cli-test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto p = temp_path(name);
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

json result_of(const RunResult& r) { return json::parse(r.out).at("result"); }

}  // namespace

TEST(Cli, GenHypercubeWritesColouredDocument) {
  const auto r = run({"gen", "hypercube", "--m", "4", "--no-timestamp"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::size_t edge_lines = 0, header_lines = 0;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) {
      ++header_lines;
    } else if (line.find(' ') != std::string::npos) {
      ++edge_lines;
    }
  }
  EXPECT_EQ(edge_lines, 32u);
  EXPECT_GE(header_lines, 4u);
  const auto cg = load_coloured_graph(r.out);
  EXPECT_EQ(cg.graph.num_vertices(), 16u);
  EXPECT_TRUE(is_proper(cg.graph, cg.colouring));
  EXPECT_NE(r.out.find("rainbow 1.0.0"), std::string::npos);
  EXPECT_NE(r.out.find("guards:"), std::string::npos);
}

TEST(Cli, HypercubeSearchIsCertifiedAbsent) {
  const auto q4 = write_temp("q4.cg", run({"gen", "hypercube", "--m", "4"}).out);
  const auto r = run({"search", "rainbow-cycle", "--in", q4, "--no-timestamp"});
  EXPECT_EQ(r.code, 1) << r.err;
  EXPECT_EQ(result_of(r).at("outcome"), "absent");
}

TEST(Cli, PositiveSearchesExitZero) {
  const auto k50 = write_temp("k50.cg", run({"gen", "complete", "--n", "50", "--seed", "4"}).out);
  const auto r = run({"search", "rainbow-cycle", "--in", k50, "--k", "2", "--no-timestamp"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto w = result_of(r).at("witness").get<std::vector<Vertex>>();
  const auto cg = load_coloured_graph(read_text_file(k50));
  EXPECT_TRUE(is_rainbow_cycle(cg.graph, cg.colouring, w));

  const auto th = run({"search", "theta", "--in", k50, "--k", "2", "--t", "3", "--no-timestamp"});
  EXPECT_EQ(th.code, 0) << th.err;

  const auto k10 = write_temp("k10.g", write_graph(complete_graph(10)));
  const auto bl = run({"search", "blowup", "--in", k10, "--r", "2", "--k", "2", "--no-timestamp"});
  EXPECT_EQ(bl.code, 0) << bl.err;
  EXPECT_EQ(result_of(bl).at("witness").size(), 4u);

  const auto k8 = write_temp("k8.cg", run({"gen", "complete", "--n", "8", "--seed", "0"}).out);
  const auto ci = run({"search", "colour-iso", "--in", k8, "--r", "1", "--k", "2", "--no-timestamp"});
  EXPECT_EQ(ci.code, 0) << ci.err;
}

TEST(Cli, InconclusiveExitsTwo) {
  EdgeColouring c;
  c.set(0, 1, 0);
  c.set(2, 3, 0);
  c.set(0, 2, 1);
  c.set(1, 3, 1);
  c.set(0, 3, 2);
  c.set(1, 2, 2);
  const auto k4 = write_temp("k4.cg", write_coloured_graph(complete_graph(4), c));
  const auto r = run({"search", "rainbow-cycle", "--in", k4, "--k", "2", "--budget", "40", "--exact-max-n", "0"});
  EXPECT_EQ(r.code, 2) << r.err;
  EXPECT_EQ(run({"search", "rainbow-cycle", "--in", k4, "--k", "2"}).code, 1);
}

TEST(Cli, UsageAndInputErrorsExitThree) {
  EXPECT_EQ(run({}).code, 3);
  EXPECT_EQ(run({"bogus"}).code, 3);
  EXPECT_EQ(run({"gen", "nonsense"}).code, 3);
  EXPECT_EQ(run({"verify", "ratio", "--in", temp_path("missing-file")}).code, 3);
  EXPECT_EQ(run({"verify", "ratio"}).code, 3);
  const auto bad = write_temp("bad.g", "3\n0 0\n");
  const auto r = run({"verify", "ratio", "--in", bad});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("self-loop"), std::string::npos);
  EXPECT_EQ(run({"sweep", "keylemma", "--format", "xml"}).code, 3);
  const auto plain = write_temp("plain.g", write_graph(complete_graph(5)));
  EXPECT_EQ(run({"search", "theta", "--in", plain}).code, 3);
}

TEST(Cli, SweepCsvSchemaAndPasses) {
  const auto r = run({"sweep", "keylemma", "--nmax", "5", "--k", "2", "--format", "csv", "--no-timestamp"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::vector<std::string> ids;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) continue;
    if (!saw_header) {
      EXPECT_EQ(line, "instance-id,n,e,k,bad-count,bound,margin,pass");
      saw_header = true;
      continue;
    }
    EXPECT_EQ(line.substr(line.rfind(',') + 1), "true") << line;
    ids.push_back(line.substr(0, line.find(',')));
  }
  // 52 graphs on 1..5 vertices, 5 of them edgeless; 4 rows each.
  EXPECT_EQ(ids.size(), 47u * 4u);
  EXPECT_TRUE(std::is_sorted(ids.begin(), ids.end()));

  const auto threaded =
      run({"sweep", "keylemma", "--nmax", "5", "--k", "2", "--format", "csv", "--no-timestamp", "--threads", "3"});
  // Only the echoed thread count differs.
  auto strip = [](const std::string& s) { return s.substr(s.find("instance-id")); };
  EXPECT_EQ(strip(threaded.out), strip(r.out));
}

TEST(Cli, SweepJsonMirrorsCsv) {
  const auto r = run({"sweep", "keylemma", "--nmax", "4", "--k", "3", "--format", "json", "--no-timestamp"});
  ASSERT_EQ(r.code, 0);
  const auto res = result_of(r);
  EXPECT_TRUE(res.at("all_pass").get<bool>());
  const auto& row = res.at("rows").at(0);
  for (const char* key : {"instance-id", "n", "e", "k", "bad-count", "bound", "margin", "pass"}) {
    EXPECT_TRUE(row.contains(key)) << key;
  }
}

TEST(Cli, VerifyCertificates) {
  const auto g = write_temp("g30.g", run({"gen", "random", "--n", "30", "--p", "0.3", "--seed", "2"}).out);
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"verify", "ratio", "--in", g, "--k", "4"},
        {"verify", "sidorenko", "--in", g, "--k", "3"},
        {"verify", "interpolation", "--in", g, "--k", "3", "--l", "1"},
        {"verify", "keylemma", "--in", g, "--k", "2", "--relation", "both"},
        {"verify", "dyadic", "--in", g, "--k", "2"},
        {"verify", "hom", "--in", g, "--k", "3"}}) {
    const auto r = run(args);
    EXPECT_EQ(r.code, 0) << args[1] << " " << r.err;
    EXPECT_TRUE(result_of(r).at("passed").get<bool>()) << args[1];
  }
  const auto big = write_temp("g300.g", run({"gen", "random", "--n", "300", "--p", "0.5", "--seed", "3"}).out);
  EXPECT_EQ(run({"verify", "step2", "--in", big}).code, 0);
  const auto step1 = run({"verify", "step1", "--in", big});
  EXPECT_EQ(step1.code, 0);
  EXPECT_TRUE(result_of(step1).at("remeasured").get<bool>());

  const auto k8 = write_temp("k8b.cg", run({"gen", "complete", "--n", "8", "--seed", "1"}).out);
  EXPECT_EQ(run({"verify", "proper", "--in", k8}).code, 0);
  EXPECT_EQ(run({"verify", "tuple-bound", "--in", k8, "--r", "2"}).code, 0);
  EXPECT_EQ(run({"verify", "subset-bound", "--in", k8, "--r", "3"}).code, 0);
  EXPECT_EQ(run({"verify", "blowup", "--in", k8, "--r", "2"}).code, 0);

  const auto c6 = write_temp("c6.g", write_graph(cycle_graph(6)));
  EXPECT_EQ(run({"verify", "bipartite-min-degree", "--in", c6, "--k", "3"}).code, 0);
  const auto c5 = write_temp("c5.g", write_graph(cycle_graph(5)));
  EXPECT_EQ(run({"verify", "bipartite-min-degree", "--in", c5}).code, 3);

  EdgeColouring bad;
  bad.set(0, 1, 0);
  bad.set(1, 2, 0);
  const auto p3 = write_temp("p3.cg", write_coloured_graph(path_graph(3), bad));
  const auto pr = run({"verify", "proper", "--in", p3});
  EXPECT_EQ(pr.code, 1);
  EXPECT_EQ(result_of(pr).at("violations").size(), 1u);
}

TEST(Cli, ReportsCarryMetadata) {
  const auto k8 = write_temp("k8c.cg", run({"gen", "complete", "--n", "8"}).out);
  const auto r = run({"search", "theta", "--in", k8, "--seed", "9"});
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc.at("version"), cli::kVersion);
  EXPECT_EQ(doc.at("config").at("seed"), 9u);
  EXPECT_EQ(doc.at("config").at("kind"), "theta");
  EXPECT_TRUE(doc.at("guards").contains("exact_max_n"));
  EXPECT_TRUE(doc.contains("timestamp"));
  const auto quiet = run({"search", "theta", "--in", k8, "--seed", "9", "--no-timestamp"});
  EXPECT_FALSE(json::parse(quiet.out).contains("timestamp"));
}

TEST(Cli, SeededCommandsAreByteIdentical) {
  const auto g = write_temp("rep.cg", run({"gen", "random-coloured", "--n", "40", "--p", "0.3", "--seed", "5"}).out);
  const auto k8 = write_temp("rep-k8.cg", run({"gen", "complete", "--n", "8", "--seed", "5"}).out);
  const std::vector<std::vector<std::string>> commands{
      {"gen", "random", "--n", "30", "--p", "0.2", "--seed", "7"},
      {"gen", "complete", "--n", "12", "--seed", "7"},
      {"gen", "subset", "--in", k8, "--r", "2"},
      {"gen", "tuple", "--in", k8, "--r", "2"},
      {"search", "rainbow-cycle", "--in", g, "--k", "3", "--seed", "7"},
      {"search", "rainbow-cycle", "--in", g, "--seed", "7"},
      {"search", "theta", "--in", g, "--k", "2", "--t", "2", "--seed", "7"},
      {"search", "blowup", "--in", g, "--r", "2", "--seed", "7"},
      {"search", "colour-iso", "--in", k8, "--r", "2", "--k", "2", "--seed", "7"},
      {"verify", "keylemma", "--in", g, "--k", "2", "--seed", "7"},
      {"verify", "blowup", "--in", g, "--r", "2", "--seed", "7"},
      {"sweep", "keylemma", "--nmax", "5", "--k", "2", "--seed", "7", "--format", "csv"},
  };
  for (auto args : commands) {
    args.push_back("--no-timestamp");
    const auto a = run(args);
    const auto b = run(args);
    EXPECT_EQ(a.code, b.code) << args[1];
    EXPECT_EQ(a.out, b.out) << args[1];
    EXPECT_FALSE(a.out.empty()) << args[1];
  }
}

TEST(Cli, OutFileMatchesStdout) {
  const auto path = temp_path("out.g");
  const auto to_stdout = run({"gen", "random", "--n", "20", "--seed", "1", "--no-timestamp"});
  // The echoed config differs in the --out field only.
  run({"gen", "random", "--n", "20", "--seed", "1", "--no-timestamp", "--out", path});
  EXPECT_EQ(load_graph(read_text_file(path)), load_graph(to_stdout.out));
}
