#include "gw/report.hpp"

#include <set>
#include <sstream>

#include "gw/errors.hpp"

namespace gw {

using nlohmann::json;

namespace {

std::string partition_string(const Partition2& p) {
  return std::to_string(p.mu1) + "," + std::to_string(p.mu2);
}

json partitions_json(const std::vector<Partition2>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(partition_string(p));
  return a;
}

std::vector<Partition2> partitions_from_json(const json& a, int n) {
  std::vector<Partition2> out;
  for (const auto& s : a) out.push_back(parse_partition(s.get<std::string>(), n));
  return out;
}

template <class T>
void put_optional(json& j, const char* key, const std::optional<T>& v) {
  j[key] = v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> get_optional(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Partition2 parse_partition(const std::string& text, int n) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ConfigError("partition must be written a,b: " + text);
  int a = 0;
  int b = 0;
  try {
    std::size_t used_a = 0;
    std::size_t used_b = 0;
    a = std::stoi(text.substr(0, comma), &used_a);
    b = std::stoi(text.substr(comma + 1), &used_b);
    if (used_a != comma || used_b != text.size() - comma - 1) throw std::invalid_argument(text);
  } catch (const std::logic_error&) {
    throw ConfigError("partition must be written a,b: " + text);
  }
  return Partition2::make(a, b, n);
}

bool Report::all_pass() const {
  for (const auto& r : results) {
    if (!r.pass) return false;
  }
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

std::string exact_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_num().get_str(10) + "/" + c.get_den().get_str(10);
}

Rational parse_exact(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == text.size()) {
    throw std::invalid_argument("exact value must be written p/q: " + text);
  }
  return parse_rational(text);
}

json to_json(const JobConfig& c) {
  json j;
  j["command"] = c.command;
  j["subcommand"] = c.subcommand;
  j["target"] = c.target;
  j["n"] = c.n;
  put_optional(j, "d", c.d);
  put_optional(j, "d1", c.d1);
  put_optional(j, "d2", c.d2);
  put_optional(j, "m", c.m);
  j["insertions"] = c.explicit_insertions ? partitions_json(c.insertions) : json(nullptr);
  j["seed"] = c.seed;
  j["seeds"] = c.seeds;
  j["cache_dir"] = c.cache_dir;
  j["format"] = c.format;
  j["jobs"] = c.jobs;
  j["t_report"] = c.t_report;
  j["disable_twist"] = c.disable_twist;
  j["timing"] = c.timing;
  return j;
}

JobConfig config_from_json(const json& j) {
  JobConfig c;
  c.command = j.at("command").get<std::string>();
  c.subcommand = j.at("subcommand").get<std::string>();
  c.target = j.at("target").get<std::string>();
  c.n = j.at("n").get<int>();
  c.d = get_optional<int>(j, "d");
  c.d1 = get_optional<int>(j, "d1");
  c.d2 = get_optional<int>(j, "d2");
  c.m = get_optional<int>(j, "m");
  c.explicit_insertions = !j.at("insertions").is_null();
  if (c.explicit_insertions) c.insertions = partitions_from_json(j.at("insertions"), c.n);
  c.seed = j.at("seed").get<std::uint64_t>();
  c.seeds = j.at("seeds").get<int>();
  c.cache_dir = j.at("cache_dir").get<std::string>();
  c.format = j.at("format").get<std::string>();
  c.jobs = j.at("jobs").get<int>();
  c.t_report = j.at("t_report").get<bool>();
  c.disable_twist = j.at("disable_twist").get<bool>();
  c.timing = j.at("timing").get<bool>();
  return c;
}

json to_json(const ResultRecord& r) {
  json j;
  j["kind"] = r.kind;
  j["n"] = r.n;
  j["degree"] = json::array({r.degree.d1, r.degree.d2});
  j["m"] = r.m;
  j["insertions"] = partitions_json(r.insertions);
  j["seed"] = r.seed;
  json values = json::object();
  for (const auto& [k, v] : r.values) values[k] = exact_string(v);
  j["values"] = values;
  j["counts"] = r.counts.empty() ? json::object() : json(r.counts);
  j["flags"] = r.flags.empty() ? json::object() : json(r.flags);
  j["text"] = r.text.empty() ? json::object() : json(r.text);
  j["pass"] = r.pass;
  return j;
}

ResultRecord record_from_json(const json& j) {
  ResultRecord r;
  r.kind = j.at("kind").get<std::string>();
  r.n = j.at("n").get<int>();
  r.degree = Degree{j.at("degree").at(0).get<int>(), j.at("degree").at(1).get<int>()};
  r.m = j.at("m").get<int>();
  r.insertions = partitions_from_json(j.at("insertions"), r.n);
  r.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& [k, v] : j.at("values").items()) r.values[k] = parse_exact(v.get<std::string>());
  r.counts = j.at("counts").get<std::map<std::string, std::int64_t>>();
  r.flags = j.at("flags").get<std::map<std::string, bool>>();
  r.text = j.at("text").get<std::map<std::string, std::string>>();
  r.pass = j.at("pass").get<bool>();
  return r;
}

json to_json(const Report& r) {
  json j;
  j["config"] = to_json(r.config);
  j["results"] = json::array();
  for (const auto& rec : r.results) j["results"].push_back(to_json(rec));
  j["checks"] = json::array();
  for (const auto& c : r.checks) j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  json meta;
  meta["seed"] = r.config.seed;
  meta["version"] = kVersion;
  if (r.runtime_ms) meta["runtime_ms"] = *r.runtime_ms;
  j["meta"] = meta;
  return j;
}

Report report_from_json(const json& j) {
  Report r;
  r.config = config_from_json(j.at("config"));
  for (const auto& rec : j.at("results")) r.results.push_back(record_from_json(rec));
  for (const auto& c : j.at("checks")) {
    r.checks.push_back({c.at("name").get<std::string>(), c.at("pass").get<bool>(), c.at("detail").get<std::string>()});
  }
  if (j.at("meta").contains("runtime_ms")) r.runtime_ms = j.at("meta").at("runtime_ms").get<std::int64_t>();
  return r;
}

std::string serialize_json(const Report& r) { return to_json(r).dump(2) + "\n"; }

std::string serialize_csv(const Report& r) {
  std::set<std::string> value_keys;
  std::set<std::string> count_keys;
  std::set<std::string> flag_keys;
  for (const auto& rec : r.results) {
    for (const auto& [k, v] : rec.values) value_keys.insert(k);
    for (const auto& [k, v] : rec.counts) count_keys.insert(k);
    for (const auto& [k, v] : rec.flags) flag_keys.insert(k);
  }
  std::ostringstream out;
  out << "kind,n,d1,d2,m,insertions,seed,pass";
  for (const auto& k : value_keys) out << ',' << csv_field("value." + k);
  for (const auto& k : count_keys) out << ',' << csv_field("count." + k);
  for (const auto& k : flag_keys) out << ',' << csv_field("flag." + k);
  out << "\n";
  for (const auto& rec : r.results) {
    std::string ins;
    for (const auto& p : rec.insertions) ins += (ins.empty() ? "" : " ") + partition_string(p);
    out << csv_field(rec.kind) << ',' << rec.n << ',' << rec.degree.d1 << ',' << rec.degree.d2 << ',' << rec.m
        << ',' << csv_field(ins) << ',' << rec.seed << ',' << (rec.pass ? "true" : "false");
    for (const auto& k : value_keys) {
      out << ',';
      if (auto it = rec.values.find(k); it != rec.values.end()) out << exact_string(it->second);
    }
    for (const auto& k : count_keys) {
      out << ',';
      if (auto it = rec.counts.find(k); it != rec.counts.end()) out << it->second;
    }
    for (const auto& k : flag_keys) {
      out << ',';
      if (auto it = rec.flags.find(k); it != rec.flags.end()) out << (it->second ? "true" : "false");
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace gw
