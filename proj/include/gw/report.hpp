#pragma once

// Job configuration and machine-readable results.
//
// Exact values are written as decimal "p/q" strings (q always present) so a
// record survives a JSON round trip unchanged. Timing is kept out of records
// and only reaches meta when requested, which keeps default output
// byte-identical across runs.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gw/graph.hpp"
#include "gw/schubert.hpp"

namespace gw {

inline constexpr const char* kVersion = "0.1.0";

struct JobConfig {
  std::string command;     // gr | twisted | correspondence | verify | enumerate
  std::string subcommand;  // verify suite name; empty otherwise
  std::string target = "gr";  // enumerate only: gr | pp | proj
  int n = 4;
  std::optional<int> d;
  std::optional<int> d1;
  std::optional<int> d2;
  std::optional<int> m;
  /// Explicit insertion tuple; empty together with !explicit_insertions means sweep.
  std::vector<Partition2> insertions;
  bool explicit_insertions = false;
  std::uint64_t seed = 1;
  int seeds = 2;
  std::string cache_dir;
  std::string format = "json";
  int jobs = 1;
  bool t_report = false;
  bool disable_twist = false;
  bool timing = false;

  friend bool operator==(const JobConfig&, const JobConfig&) = default;
};

/// Parses "a,b" into a partition in the 2 x (n-2) box; throws ConfigError or
/// InvalidPartition.
Partition2 parse_partition(const std::string& text, int n);

struct ResultRecord {
  std::string kind;
  int n = 0;
  Degree degree;
  int m = 0;
  std::vector<Partition2> insertions;
  std::uint64_t seed = 0;
  std::map<std::string, Rational> values;
  std::map<std::string, std::int64_t> counts;
  std::map<std::string, bool> flags;
  std::map<std::string, std::string> text;  // diagnostics such as the full t-function
  bool pass = true;

  friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

struct CheckRecord {
  std::string name;
  bool pass = true;
  std::string detail;

  friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

struct Report {
  JobConfig config;
  std::vector<ResultRecord> results;
  std::vector<CheckRecord> checks;
  std::optional<std::int64_t> runtime_ms;

  bool all_pass() const;
};

/// "p/q" with the denominator always written.
std::string exact_string(const Rational& r);
Rational parse_exact(const std::string& text);

nlohmann::json to_json(const JobConfig& c);
JobConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ResultRecord& r);
ResultRecord record_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);

std::string serialize_json(const Report& r);
/// One row per result; columns are the fixed fields followed by the union of
/// value, count and flag keys in sorted order.
std::string serialize_csv(const Report& r);

}  // namespace gw
