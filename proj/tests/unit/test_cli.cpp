#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gw/cli.hpp"
#include "gw/errors.hpp"

using namespace gw;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "gw");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json parsed(const Run& r) { return nlohmann::json::parse(r.out); }

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("gw-cli-" + name + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("exact values are written p/q") {
  CHECK(exact_string(Rational(3)) == "3/1");
  CHECK(exact_string(Rational(-6, 4)) == "-3/2");
  CHECK(parse_exact("-6/4") == Rational(-3) / 2);
  CHECK_THROWS(parse_exact("3"));
  CHECK_THROWS(parse_exact("/2"));
}

TEST_CASE("partition parsing") {
  CHECK(parse_partition("2,1", 4) == Partition2::make(2, 1, 4));
  CHECK_THROWS_AS(parse_partition("3,0", 4), InvalidPartition);
  CHECK_THROWS_AS(parse_partition("21", 4), ConfigError);
  CHECK_THROWS_AS(parse_partition("2,x", 4), ConfigError);
}

TEST_CASE("records round-trip through JSON") {
  ResultRecord r;
  r.kind = "correspondence";
  r.n = 5;
  r.degree = {2, 1};
  r.m = 2;
  r.insertions = {Partition2::make(3, 1, 5), Partition2::make(0, 0, 5)};
  r.seed = 0xFFFFFFFFFFFFFFFFULL;
  r.values["gr"] = Rational(Integer("123456789012345678901234567890")) / 7;
  r.values["pp"] = Rational(-1) / 2;
  r.counts["graphs"] = 1234;
  r.flags["equal"] = false;
  r.text["note"] = "x";
  r.pass = false;
  CHECK(record_from_json(to_json(r)) == r);

  Report rep;
  rep.config.command = "gr";
  rep.config.d = 1;
  rep.config.m = 2;
  rep.config.n = 5;
  rep.config.explicit_insertions = true;
  rep.config.insertions = r.insertions;
  rep.results = {r, r};
  rep.checks = {{"gr", false, "1 of 2"}};
  rep.runtime_ms = 17;
  const Report back = report_from_json(nlohmann::json::parse(serialize_json(rep)));
  CHECK(back.config == rep.config);
  CHECK(back.results == rep.results);
  CHECK(back.checks == rep.checks);
  CHECK(back.runtime_ms == rep.runtime_ms);
  CHECK(serialize_json(back) == serialize_json(rep));
}

TEST_CASE("insertion sweeps") {
  CHECK(insertion_multisets(4, 3).size() == 56);
  CHECK(insertion_multisets(4, 0).size() == 1);
  const auto matched = matched_multisets(4, 1, 3);
  CHECK(matched.size() == 7);
  for (const auto& t : matched) {
    int c = 0;
    for (const auto& p : t) c += p.codimension();
    CHECK(c == 8);
  }
}

TEST_CASE("gw gr") {
  auto r = run({"gr", "--n", "4", "--d", "1", "--insert", "1,0", "2,1", "2,2"});
  REQUIRE(r.code == 0);
  auto j = parsed(r);
  CHECK(j["results"][0]["values"]["gr"] == "1/1");
  CHECK(j["results"][0]["values"]["oracle"] == "1/1");
  CHECK(j["results"][0]["flags"]["oracle_equal"] == true);
  CHECK_FALSE(j["meta"].contains("runtime_ms"));

  r = run({"gr", "--n", "4", "--d", "1", "--insert", "1,0", "1,0", "1,0"});
  REQUIRE(r.code == 0);
  j = parsed(r);
  CHECK(j["results"][0]["values"]["gr"] == "0/1");
  CHECK(j["results"][0]["pass"] == true);

  CHECK(run({"gr", "--n", "4", "--d", "1", "--insert", "3,0", "1,1", "1,1"}).code == kExitInvalidConfig);
  CHECK(run({"gr", "--n", "4", "--insert", "1,0"}).code == kExitInvalidConfig);
  CHECK(run({"gr", "--n", "4", "--d", "1", "--m", "2", "--insert", "1,0"}).code == kExitInvalidConfig);
  CHECK(run({"gr", "--n", "2", "--d", "1"}).code == kExitInvalidConfig);
  CHECK(run({"gr", "--n", "4", "--d", "1", "--format", "xml"}).code == kExitInvalidConfig);
  CHECK(run({"gr", "--n", "4", "--d", "1", "--bogus"}).code == kExitInvalidConfig);
  CHECK(run({"frobnicate"}).code == kExitInvalidConfig);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("output is deterministic and timing is opt-in") {
  const std::vector<std::string> args{"correspondence", "--n", "3", "--d", "1"};
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto timed = args;
  timed.push_back("--timing");
  CHECK(parsed(run(timed))["meta"].contains("runtime_ms"));
  auto jobs = args;
  jobs.insert(jobs.end(), {"--jobs", "4"});
  CHECK(parsed(run(jobs))["results"] == parsed(a)["results"]);
}

TEST_CASE("gw correspondence") {
  auto r = run({"correspondence", "--n", "4", "--d", "1", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.find("false") == std::string::npos);
  // 7 matched triples plus the header.
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 8);
  r = run({"correspondence", "--n", "3", "--d", "1", "--disable-twist"});
  CHECK(r.code == kExitCorrespondence);
  CHECK(r.err.find("correspondence") != std::string::npos);
}

TEST_CASE("gw twisted") {
  auto r = run({"twisted", "--n", "4", "--d1", "1", "--d2", "0", "--insert", "1,0", "2,1", "2,2", "--t-report"});
  REQUIRE(r.code == 0);
  const auto j = parsed(r);
  CHECK(j["results"][0]["values"]["value"] == "1/1");
  CHECK(j["results"][0]["values"]["diagonal_at_zero"] == "0/1");
  CHECK(j["results"][0]["text"].contains("total"));
  CHECK(run({"twisted", "--n", "4", "--d", "1"}).code == kExitInvalidConfig);
}

TEST_CASE("gw verify") {
  CHECK(run({"verify", "martin", "--n", "4"}).code == 0);
  auto r = run({"verify", "vanishing", "--n", "4", "--d", "1", "--m", "3", "--insert", "1,0", "2,1", "2,2"});
  REQUIRE(r.code == 0);
  auto j = parsed(r);
  CHECK(j["results"][0]["counts"]["nonvanishing"] == 0);
  CHECK(j["results"][0]["counts"]["diagonal_classes"] == 96);
  CHECK(j["results"][0]["counts"].contains("valuation.2"));
  CHECK(run({"verify", "census", "--n", "4", "--d", "1", "--m", "2"}).code == 0);
  r = run({"verify", "lambda-independence", "--n", "3", "--d", "1", "--seeds", "2"});
  CHECK(r.code == 0);
  CHECK(parsed(r)["results"][0]["flags"]["identical"] == true);
  CHECK(run({"verify", "edge-lemma"}).code == 0);
  CHECK(run({"verify", "nonsense"}).code == kExitInvalidConfig);
  CHECK(run({"verify"}).code == kExitInvalidConfig);
}

TEST_CASE("gw enumerate and the cache") {
  const auto dir = fresh_dir("enum");
  auto r = run({"enumerate", "--target", "gr", "--n", "4", "--d", "1", "--cache-dir", dir.string()});
  REQUIRE(r.code == 0);
  auto j = parsed(r);
  CHECK(j["results"][0]["counts"]["graphs"] == 12);
  CHECK(j["results"][0]["flags"]["cache_hit"] == false);
  r = run({"enumerate", "--target", "gr", "--n", "4", "--d", "1", "--cache-dir", dir.string()});
  j = parsed(r);
  CHECK(j["results"][0]["counts"]["graphs"] == 12);
  CHECK(j["results"][0]["flags"]["cache_hit"] == true);

  ::setenv("GW_CACHE_DIR", dir.string().c_str(), 1);
  r = run({"enumerate", "--target", "gr", "--n", "4", "--d", "1"});
  ::unsetenv("GW_CACHE_DIR");
  CHECK(parsed(r)["results"][0]["flags"]["cache_hit"] == true);

  r = run({"enumerate", "--target", "pp", "--n", "4", "--d1", "1", "--d2", "0"});
  CHECK(parsed(r)["results"][0]["counts"]["graphs"] == 24);

  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    std::fstream f(entry.path(), std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(20);
    f.put('\x7f');
  }
  r = run({"enumerate", "--target", "gr", "--n", "4", "--d", "1", "--cache-dir", dir.string()});
  CHECK(r.code == kExitCacheCorruption);
  std::filesystem::remove_all(dir);
}
