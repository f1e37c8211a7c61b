#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "relaylab/bounds.hpp"
#include "relaylab/cli.hpp"

using namespace relaylab;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  const Run r = run(args);
  REQUIRE(r.code == kExitOk);
  return json::parse(r.out);
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / ("relaylab_test_" + name);
  std::ofstream(path) << contents;
  return path;
}

std::vector<json> json_lines(const std::string& text) {
  std::vector<json> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(json::parse(line));
  return lines;
}

const std::string kCorpus = RELAYLAB_CORPUS_DIR;

}  // namespace

TEST_CASE("bounds command") {
  const Run table = run({"bounds", "--snr", "1e6", "--r0", "0.5"});
  CHECK(table.code == kExitOk);
  CHECK(table.out.find("0.05351") != std::string::npos);

  const json big = run_json({"bounds", "--snr", "1e6", "--r0", "0.5"});
  CHECK(std::abs(big.at("gap").get<double>() - 0.05350) <= 1e-4);

  CHECK(run_json({"bounds", "--snr", "1", "--r0", "0"}).at("gap").get<double>() == 0.0);
  const json tight = run_json({"bounds", "--snr", "1", "--r0", "1"});
  CHECK(tight.at("gap").get<double>() == 0.0);
  CHECK(tight.at("cutset_binding") == "broadcast");
  CHECK(tight.at("new_binding") == "broadcast");

  const json asym = run_json({"bounds", "--snr1", "1", "--snr2", "3", "--r0", "0.2"});
  CHECK(asym.contains("cutset"));
  CHECK(!asym.contains("new_bound"));
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({"bounds", "--snr", "-1", "--r0", "0"}).code == kExitUsage);
  CHECK(run({"bounds", "--r0", "0"}).code == kExitUsage);
  CHECK(run({"bounds", "--snr", "1", "--r0", "0", "--format", "csv"}).code == kExitUsage);
  CHECK(run({"nonsense"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"astar"}).code == kExitUsage);
  CHECK(run({"sweep", "--grid", "snr=1:2"}).code == kExitUsage);
  CHECK(run({"sweep", "--snr-min", "5", "--snr-max", "1"}).code == kExitUsage);
  const Run bad = run({"bounds", "--snr", "abc", "--r0", "0"});
  CHECK(bad.code == kExitUsage);
  CHECK(!bad.err.empty());
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("gap and astar commands") {
  CHECK(std::abs(run_json({"gap", "--snr", "1e6", "--r0", "0.5"}).at("gap").get<double>() - 0.0535) <= 1e-4);
  CHECK(std::abs(run_json({"astar", "0.5"}).at("a_star").get<double>() - 0.053517) <= 2e-6);
  CHECK(run_json({"astar", "0"}).at("a_star").get<double>() == 0.0);
  CHECK(std::abs(run_json({"astar", "--r0", "1"}).at("a_star").get<double>() - 0.160131) <= 1e-6);
  CHECK(run({"astar", "0.5"}).out.find("0.0535181") != std::string::npos);
}

TEST_CASE("sweep and maximize commands") {
  const json best = run_json({"maximize"});
  CHECK(best.at("snr").get<double>() == 1e6);
  CHECK(std::abs(best.at("r0").get<double>() - 0.5) <= 0.01);
  CHECK(std::abs(best.at("gap").get<double>() - 0.0535) <= 2e-4);

  const json surface = run_json({"sweep"});
  CHECK(surface.at("rows").size() == 50 * 81);
  CHECK(std::abs(surface.at("maximizer").at("gap").get<double>() - 0.0535) <= 2e-4);

  const json single = run_json({"sweep", "--grid", "snr=1:1:1,r0=1:1:1"});
  REQUIRE(single.at("rows").size() == 1);
  CHECK(single.at("rows")[0].at("gap").get<double>() == 0.0);

  const json flat = run_json({"sweep", "--r0-min", "0", "--r0-max", "0", "--r0-count", "1"});
  for (const auto& row : flat.at("rows")) CHECK(row.at("gap").get<double>() == 0.0);

  const Run csv = run({"sweep", "--grid", "snr=1:1:1,r0=1:1:1", "--format", "csv"});
  CHECK(csv.code == kExitOk);
  CHECK(csv.out ==
        "snr,r0,cutset,new_bound,gap\n"
        "1.0000000000000000e+00,1.0000000000000000e+00,7.9248125036057804e-01,"
        "7.9248125036057804e-01,0.0000000000000000e+00\n");

  const json pinned = run_json({"maximize", "--snr", "1"});
  CHECK(pinned.at("snr").get<double>() == 1.0);
  CHECK(std::abs(pinned.at("r0").get<double>() - 0.29248125036057809) <= 1e-7);
}

TEST_CASE("--out writes to a file") {
  const auto path = std::filesystem::temp_directory_path() / "relaylab_test_out.csv";
  const Run r = run({"sweep", "--grid", "snr=1:10:3,r0=0:1:3", "--format", "csv", "--out", path.string()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "snr,r0,cutset,new_bound,gap");
  std::filesystem::remove(path);
}

TEST_CASE("preconstant command") {
  const json defaults = run_json({"preconstant"});
  CHECK(std::abs(defaults.at("preconstant").get<double>() - 0.013379) <= 1e-6);
  CHECK(run_json({"preconstant", "--delta", "0"}).at("preconstant").get<double>() == 0.0);
  CHECK(run_json({"preconstant", "--delta", "0.5", "--antennas", "2"}).at("preconstant").get<double>() == 0.25);
  CHECK(run({"preconstant", "--antennas", "0"}).code == kExitUsage);
}

TEST_CASE("concentration command") {
  const Run suite = run({"concentration", kCorpus + "/concentration_exact.json"});
  CHECK(suite.code == kExitOk);
  const auto reports = json_lines(suite.out);
  CHECK(!reports.empty());
  for (const auto& r : reports) CHECK(r.at("passed").get<bool>());

  const auto config = temp_file("degenerate.json", R"([
    {"experiment":"halfspace-exact","n":3,"a":0,"r":0.5,"noise":1},
    {"experiment":"monte-carlo","set":{"shape":"ball","n":2,"noise":1,"radius":null},"a":0,"r":0.2,"trials":10000}
  ])");
  const Run degenerate = run({"concentration", config.string()});
  CHECK(degenerate.code == kExitOk);
  for (const auto& r : json_lines(degenerate.out)) CHECK(r.at("measured").get<double>() == 1.0);

  const auto violating = temp_file("violating.json", R"([
    {"experiment":"halfspace-exact","n":1,"a":1,"r":1,"noise":1},
    {"experiment":"monte-carlo","set":{"shape":"slab","n":2,"noise":1,"lower":0,"upper":0.001},"a":0.1,"r":0.5}
  ])");
  const Run rejected = run({"concentration", violating.string()});
  CHECK(rejected.code == kExitUsage);
  const auto lines = json_lines(rejected.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].at("passed").get<bool>());
  CHECK(lines[1].contains("error"));

  const auto broken = temp_file("broken.json", "[{\"experiment\":");
  CHECK(run({"concentration", broken.string()}).code == kExitUsage);
  CHECK(run({"concentration", "/nonexistent/config.json"}).code == kExitUsage);
}

TEST_CASE("concentration output is deterministic under a seed") {
  const auto config = temp_file("mc.json", R"([
    {"experiment":"monte-carlo","set":{"shape":"rectangle","noise":1,"lower":[-1,-1],"upper":[1,1]},"a":0.6,"r":0.3,"trials":20000},
    {"experiment":"noise-norm","n":50,"noise":2,"eps":0.2,"trials":20000,"stream":1}
  ])");
  const Run a = run({"concentration", config.string(), "--seed", "11"});
  const Run b = run({"concentration", config.string(), "--seed", "11"});
  const Run c = run({"concentration", config.string(), "--seed", "12"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);

  ::setenv("RELAYLAB_SEED", "11", 1);
  const Run env = run({"concentration", config.string()});
  ::setenv("RELAYLAB_SEED", "not-a-number", 1);
  const Run bad_env = run({"concentration", config.string()});
  ::unsetenv("RELAYLAB_SEED");
  CHECK(env.out == a.out);
  CHECK(bad_env.code == kExitUsage);
}

TEST_CASE("verify-relay command") {
  const auto constant = temp_file("constant.jsonl", R"({"codebook":[-1,1],"thresholds":[],"noise":1})" "\n");
  const Run tight = run({"verify-relay", constant.string(), "--format", "json"});
  CHECK(tight.code == kExitOk);
  const auto reports = json_lines(tight.out);
  REQUIRE(reports.size() == 1);
  CHECK(std::abs(reports[0].at("slack").get<double>()) <= 1e-6);
  CHECK(reports[0].at("passed").get<bool>());

  const Run corpus = run({"verify-relay", kCorpus + "/relay_codes.jsonl", "--format", "json"});
  CHECK(corpus.code == kExitOk);
  const auto rows = json_lines(corpus.out);
  CHECK(rows.size() == 200);
  for (const auto& row : rows) CHECK(row.at("passed").get<bool>());

  const auto malformed = temp_file("malformed.jsonl",
                                   R"({"codebook":[0],"thresholds":[],"noise":1})" "\n"
                                   R"({"codebook":[0],"thresholds":)" "\n");
  const Run bad = run({"verify-relay", malformed.string()});
  CHECK(bad.code == kExitUsage);
  CHECK(bad.err.find(":2:") != std::string::npos);

  const Run table = run({"verify-relay", constant.string()});
  CHECK(table.code == kExitOk);
  CHECK(table.out.find("pass") != std::string::npos);
}
