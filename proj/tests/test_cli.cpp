#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "lgk/report.hpp"

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = lgk::cli::run(std::move(args), out, err);
  return {status, out.str(), err.str()};
}

std::string sample(char const* name) { return std::string(LGK_SAMPLES_DIR "/") + name; }

nlohmann::json structured(std::vector<std::string> args) {
  args.push_back("--emit=structured");
  auto r = run(args);
  EXPECT_EQ(r.status, 0) << r.err;
  return nlohmann::json::parse(r.out);
}

TEST(Cli, EvenShiftKTheory) {
  auto doc = structured({"ktheory", sample("even_shift.graph")});
  EXPECT_EQ(doc["k0"], "0");
  EXPECT_EQ(doc["k1"], "0");
  EXPECT_EQ(doc["mode"], "stabilized");
  EXPECT_EQ(doc["stabilized_at"], "1");
  auto text = run({"ktheory", sample("even_shift.graph")});
  EXPECT_EQ(text.status, 0);
  EXPECT_NE(text.out.find("K0: 0\n"), std::string::npos);
  EXPECT_NE(text.out.find("K1: 0\n"), std::string::npos);
}

TEST(Cli, IntLineGenerator) {
  auto doc = structured({"levels", "--generator", "int_line", "--horizon", "10"});
  EXPECT_EQ(doc["k0"], "Z^2");
  EXPECT_EQ(doc["k1"], "0");
  EXPECT_EQ(doc["k0_limit"]["classification"], "Stabilized");
  EXPECT_EQ(doc["levels"].size(), 10u);
}

TEST(Cli, DyckGenerator) {
  auto doc = structured({"levels", "--generator=dyck2", "--horizon=3"});
  EXPECT_EQ(doc["k0"], "Z^inf + Z/2");
  EXPECT_EQ(doc["k0_limit"]["classification"], "SplitPattern");
  EXPECT_EQ(doc["k0_limit"]["beyond_horizon"], true);
  EXPECT_EQ(doc["k1"], "0");
}

TEST(Cli, LevelFile) {
  auto doc = structured({"levels", sample("o2_levels.json")});
  EXPECT_EQ(doc["k0"], "0");
  EXPECT_EQ(doc["k1"], "0");
}

TEST(Cli, ValidateWitness) {
  auto r = run({"validate", sample("not_left_resolving.graph")});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("left_resolving: false  witness (2, a)"), std::string::npos) << r.out;
  auto s = run({"validate", sample("not_left_resolving.graph"), "--emit", "structured"});
  EXPECT_EQ(s.status, 1);
  auto doc = nlohmann::json::parse(s.out);
  EXPECT_EQ(doc["ok"], false);
  EXPECT_EQ(doc["flags"][0]["name"], "left_resolving");
  EXPECT_EQ(doc["flags"][0]["witness"], "(2, a)");
  EXPECT_EQ(run({"validate", sample("even_shift.graph")}).status, 0);
}

TEST(Cli, ValidateFamily) {
  auto ok = run({"validate", sample("three_vertex.graph"), "--family",
                 sample("three_vertex.family")});
  EXPECT_EQ(ok.status, 0) << ok.out;
  EXPECT_NE(ok.out.find("accommodating: true"), std::string::npos);
  EXPECT_EQ(ok.out.find("left_resolving: false"), std::string::npos);
  EXPECT_EQ(run({"validate", sample("even_shift.graph"), "--family=e0minus"}).status, 0);
}

TEST(Cli, PreconditionFailuresExitOne) {
  auto r = run({"ktheory", sample("not_left_resolving.graph")});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("(2, a)"), std::string::npos) << r.err;
  EXPECT_EQ(run({"ktheory", sample("sink_pair.graph")}).status, 1);
  EXPECT_EQ(run({"partitions", sample("sink_pair.graph")}).status, 1);
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(run({"ktheory", sample("missing.graph")}).status, 2);
  EXPECT_EQ(run({"ktheory", sample("malformed.graph")}).status, 2);
  EXPECT_EQ(run({"levels", sample("even_shift.graph")}).status, 2);
  EXPECT_EQ(run({"family", sample("three_vertex.graph"), "--family",
                 sample("sink_pair.family")}).status,
            2);
  EXPECT_EQ(run({}).status, 2);
  EXPECT_EQ(run({"frobnicate"}).status, 2);
  EXPECT_EQ(run({"ktheory"}).status, 2);
  EXPECT_EQ(run({"ktheory", sample("even_shift.graph"), "--emit=xml"}).status, 2);
  EXPECT_EQ(run({"ktheory", sample("even_shift.graph"), "--max-level=0"}).status, 2);
  EXPECT_EQ(run({"levels"}).status, 2);
  EXPECT_EQ(run({"levels", "--generator", "dyck3"}).status, 2);
  EXPECT_EQ(run({"levels", sample("o2_levels.json"), "--generator", "dyck2"}).status, 2);
}

TEST(Cli, Help) {
  auto r = run({"--help"});
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("cover"), std::string::npos);
  auto k = run({"ktheory", "--help"});
  EXPECT_EQ(k.status, 0);
  EXPECT_NE(k.out.find("[32]"), std::string::npos);
  auto l = run({"levels", "--help"});
  EXPECT_NE(l.out.find("[8]"), std::string::npos);
}

std::vector<std::vector<std::string>> every_subcommand() {
  return {{"validate", sample("even_shift.graph")},
          {"partitions", sample("even_shift.graph")},
          {"ktheory", sample("even_shift.graph")},
          {"graph", sample("o2.graph")},
          {"family", sample("three_vertex.graph"), "--family", sample("three_vertex.family")},
          {"family", sample("even_shift.graph")},
          {"levels", "--generator", "dyck2", "--horizon", "3"},
          {"cover", sample("even_shift.graph")}};
}

TEST(Cli, Deterministic) {
  for (auto args : every_subcommand()) {
    for (char const* emit : {"--emit=text", "--emit=structured"}) {
      auto a = args;
      a.push_back(emit);
      auto first = run(a);
      auto second = run(a);
      EXPECT_EQ(first.status, 0) << args[0] << " " << first.err;
      EXPECT_FALSE(first.out.empty());
      EXPECT_EQ(first.out, second.out) << args[0];
    }
  }
}

std::string capture(std::string const& cmd) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  pclose(p);
  return out;
}

TEST(Cli, BinaryMatchesInProcess) {
  for (auto args : every_subcommand()) {
    args.push_back("--emit=structured");
    std::string cmd = LGK_CLI_PATH;
    for (auto const& a : args) cmd += " '" + a + "'";
    auto first = capture(cmd);
    EXPECT_EQ(first, capture(cmd));
    EXPECT_EQ(first, run(args).out) << cmd;
  }
  std::string cmd = std::string(LGK_CLI_PATH) + " validate '" +
                    sample("not_left_resolving.graph") + "' >/dev/null";
  int status = std::system(cmd.c_str());
  EXPECT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), 1);
}

TEST(Cli, StructuredReportsRoundTrip) {
  for (auto args : every_subcommand()) {
    if (args[0] == "validate" || args[0] == "partitions" || args[0] == "cover") continue;
    auto doc = structured(args);
    auto back = lgk::ktheory_to_json(lgk::ktheory_from_json(doc));
    EXPECT_EQ(back, doc) << args[0];
  }
}

TEST(Cli, CoverDocumentIsAGraphDocument) {
  auto doc = structured({"cover", sample("even_shift.graph")});
  ASSERT_TRUE(doc.contains("state_map"));
  EXPECT_EQ(doc["state_map"]["{A,B}"], (nlohmann::json{"A", "B"}));
  auto g = lgk::graph_from_json(nlohmann::json{{"vertices", doc["vertices"]},
                                               {"edges", doc["edges"]}});
  EXPECT_EQ(g.vertex_count(), 3u);
  EXPECT_EQ(g.edge_count(), 5u);
  EXPECT_EQ(lgk::graph_to_json(g)["edges"], doc["edges"]);
}

TEST(Cli, CoverOutputFeedsBackIn) {
  auto doc = run({"cover", sample("even_shift.graph"), "--emit=structured"});
  std::string path = ::testing::TempDir() + "lgk_cover.json";
  {
    std::ofstream f(path);
    f << doc.out;
  }
  auto k = structured({"ktheory", path});
  EXPECT_EQ(k["k0"], "Z");
  EXPECT_EQ(k["k1"], "Z");
  EXPECT_EQ(k["stabilized_at"], "2");
  EXPECT_EQ(run({"validate", path}).status, 0);
}

TEST(Cli, PartitionDocument) {
  auto doc = structured({"partitions", sample("even_shift.graph")});
  EXPECT_EQ(doc["stabilized_at"], "1");
  EXPECT_EQ(doc["levels"][0]["classes"], (nlohmann::json{{"A"}, {"B"}}));
  auto text = run({"partitions", sample("even_shift.graph")}).out;
  EXPECT_EQ(text.substr(0, 15), "level 1: {A}\nle");
}

TEST(Report, GroupStringsRoundTrip) {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> rank(0, 5), count(0, 3), factor(2, 6);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<lgk::Integer> torsion;
    lgk::Integer d = 1;
    for (int k = count(rng); k > 0; --k) {
      d *= factor(rng);
      torsion.push_back(d);
    }
    auto g = lgk::make_group(rank(rng), torsion);
    EXPECT_EQ(lgk::parse_group(lgk::to_string(g)), g);
  }
  EXPECT_EQ(lgk::parse_group("Z/123456789012345678901234567890"),
            lgk::make_group(0, {lgk::Integer("123456789012345678901234567890")}));
}

TEST(Report, MalformedGroupStrings) {
  for (char const* bad : {"", "Z^1", "Z^0", "Z + Z", "Z/2 + Z", "Z/3 + Z/2", "Z/1", "Z/0",
                          "Q", "Z^", "Z/", "Z^2+Z/2", "0 + Z", "Z^x"}) {
    EXPECT_THROW(lgk::parse_group(bad), lgk::ParseError) << bad;
  }
}

TEST(Report, MalformedReportDocuments) {
  auto doc = structured({"ktheory", sample("even_shift.graph")});
  for (char const* key : {"mode", "k0", "k1", "stabilized_at", "levels", "checks"}) {
    auto broken = doc;
    broken.erase(key);
    EXPECT_THROW(lgk::ktheory_from_json(broken), lgk::ParseError) << key;
  }
  auto numeric = doc;
  numeric["stabilized_at"] = 1;
  EXPECT_THROW(lgk::ktheory_from_json(numeric), lgk::ParseError);
  auto mode = doc;
  mode["mode"] = "magic";
  EXPECT_THROW(lgk::ktheory_from_json(mode), lgk::ParseError);
}

TEST(Cli, FamilyReportSkipsGraphFlags) {
  auto doc = structured({"validate", sample("sink_pair.graph"), "--family",
                         sample("sink_pair.family")});
  std::vector<std::string> names;
  for (auto const& f : doc["flags"]) names.push_back(f["name"]);
  EXPECT_EQ(names, (std::vector<std::string>{"weakly_left_resolving", "regular",
                                             "accommodating", "set_finite_at_horizon",
                                             "receiver_set_finite_at_horizon"}));
}

}  // namespace
