#include "gw/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>

#include <CLI11.hpp>

#include "gw/errors.hpp"
#include "gw/localization.hpp"
#include "gw/weyl.hpp"

namespace gw {

namespace {

const std::set<std::string> kCommands{"gr", "twisted", "correspondence", "verify", "enumerate"};
const std::map<std::string, std::string> kCommandHelp{
    {"gr", "Gr(2,n) invariants by localization, checked against quantum Pieri for three points"},
    {"twisted", "twisted invariants of (P^{n-1})^2 in one bidegree"},
    {"correspondence", "compare Gr(2,n) with the bidegree sum of twisted invariants"},
    {"verify", "run a property suite"},
    {"enumerate", "count and cache fixed-point graphs"},
};
const std::set<std::string> kSuites{"martin", "vanishing", "census", "lambda-independence", "edge-lemma"};

int need_d(const JobConfig& c) {
  if (!c.d) throw ConfigError(c.command + " needs --d");
  return *c.d;
}

LocalizationOptions options(const JobConfig& c) {
  LocalizationOptions o;
  o.disable_twist = c.disable_twist;
  o.jobs = c.jobs;
  return o;
}

GraphStore make_store(const JobConfig& c) {
  if (c.cache_dir.empty()) return GraphStore();
  return GraphStore(std::filesystem::path(c.cache_dir));
}

/// Explicit insertions, or the matched multisets for a sweep.
std::vector<std::vector<Partition2>> sweep(const JobConfig& c, int d) {
  if (c.explicit_insertions) return {c.insertions};
  return matched_multisets(c.n, d, *c.m);
}

ResultRecord base_record(const std::string& kind, const JobConfig& c, Degree degree,
                         const std::vector<Partition2>& ins) {
  ResultRecord r;
  r.kind = kind;
  r.n = c.n;
  r.degree = degree;
  r.m = static_cast<int>(ins.size());
  r.insertions = ins;
  r.seed = c.seed;
  return r;
}

std::optional<Rational> value_at_zero(const TFunction& f) {
  if (f.is_zero()) return Rational(0);
  if (f.valuation_at_zero() < 0) return std::nullopt;
  return f.eval_at_zero();
}

std::string summary(std::size_t good, std::size_t total, const std::string& what) {
  return std::to_string(good) + " of " + std::to_string(total) + " " + what;
}

CheckRecord aggregate(const std::string& name, const std::vector<ResultRecord>& results, const std::string& what) {
  std::size_t good = 0;
  for (const auto& r : results) good += r.pass;
  return {name, good == results.size(), summary(good, results.size(), what)};
}

/// Runs body; an internal-consistency exception marks the record failed.
void guarded(ResultRecord& r, const std::function<void()>& body) {
  try {
    body();
  } catch (const InvarianceViolation& e) {
    r.pass = false;
    r.text["error"] = e.what();
  } catch (const FactorizationMismatch& e) {
    r.pass = false;
    r.text["error"] = e.what();
  } catch (const CensusViolation& e) {
    r.pass = false;
    r.text["error"] = e.what();
  } catch (const OracleMismatch& e) {
    r.pass = false;
    r.text["error"] = e.what();
  }
}

// ---------------------------------------------------------------------------
// Commands

void cmd_gr(const JobConfig& c, Report& out) {
  const int d = need_d(c);
  GraphStore store = make_store(c);
  std::optional<QuantumOracle> oracle;
  if (*c.m == 3) oracle.emplace(c.n, d);
  for (const auto& ins : sweep(c, d)) {
    auto rec = base_record("gr", c, {d, 0}, ins);
    const auto res = gr_invariant(c.n, d, ins, c.seed, store, options(c));
    rec.values["gr"] = res.value;
    rec.values["equivariant_sum"] = res.equivariant_sum;
    rec.counts["graphs"] = static_cast<std::int64_t>(res.graph_count);
    rec.counts["codim"] = res.codim;
    rec.counts["vdim"] = res.vdim;
    rec.flags["codim_matches"] = res.codim == res.vdim;
    if (oracle) {
      const Rational expected(oracle->invariant(ins[0], ins[1], ins[2], d));
      rec.values["oracle"] = expected;
      rec.flags["oracle_equal"] = expected == res.value;
      if (expected != res.value) {
        throw OracleMismatch("localization gives " + to_string(res.value) + ", quantum Pieri gives " +
                             to_string(expected));
      }
    }
    out.results.push_back(std::move(rec));
  }
  out.checks.push_back(aggregate("gr", out.results, "tuples evaluated"));
}

void cmd_twisted(const JobConfig& c, Report& out) {
  if (!c.d1 || !c.d2) throw ConfigError("twisted needs --d1 and --d2");
  const Degree deg{*c.d1, *c.d2};
  GraphStore store = make_store(c);
  for (const auto& ins : sweep(c, deg.total())) {
    auto rec = base_record("twisted", c, deg, ins);
    const auto res = twisted_pp_invariant(c.n, deg, ins, c.seed, store, TorusMode::Small, options(c));
    rec.values["value"] = res.value;
    rec.values["raw_at_zero"] = res.raw_at_zero;
    if (auto u = value_at_zero(res.u_total)) rec.values["u_at_zero"] = *u;
    if (auto dv = value_at_zero(res.diagonal_total)) rec.values["diagonal_at_zero"] = *dv;
    rec.counts["graphs"] = static_cast<std::int64_t>(res.graph_count);
    rec.counts["diagonal_graphs"] = static_cast<std::int64_t>(res.diagonal_graph_count);
    rec.counts["degenerate_graphs"] = static_cast<std::int64_t>(res.degenerate_graph_count);
    if (c.t_report) {
      rec.text["total"] = res.total.to_string();
      rec.text["u_total"] = res.u_total.to_string();
      rec.text["diagonal_total"] = res.diagonal_total.to_string();
    }
    out.results.push_back(std::move(rec));
  }
  out.checks.push_back(aggregate("twisted", out.results, "tuples evaluated"));
}

void cmd_correspondence(const JobConfig& c, Report& out) {
  const int d = need_d(c);
  GraphStore store = make_store(c);
  for (const auto& ins : sweep(c, d)) {
    auto rec = base_record("correspondence", c, {d, 0}, ins);
    const auto res = correspondence_check(c.n, d, ins, c.seed, store, options(c));
    rec.values["gr"] = res.gr_value;
    rec.values["pp"] = res.pp_value;
    for (const auto& [deg, v] : res.per_bidegree) {
      rec.values["pp(" + std::to_string(deg.d1) + "," + std::to_string(deg.d2) + ")"] = v;
    }
    rec.counts["gr_graphs"] = static_cast<std::int64_t>(res.gr_graphs);
    rec.counts["pp_graphs"] = static_cast<std::int64_t>(res.pp_graphs);
    rec.flags["equal"] = res.equal;
    rec.pass = res.equal;
    out.results.push_back(std::move(rec));
  }
  out.checks.push_back(aggregate("correspondence", out.results, "tuples equal"));
}

void verify_martin(const JobConfig& c, Report& out) {
  const int target = 2 * (c.n - 2);
  for (int factors = 1; factors <= 4; ++factors) {
    for (const auto& ins : insertion_multisets(c.n, factors)) {
      int codim = 0;
      for (const auto& p : ins) codim += p.codimension();
      if (codim != target) continue;
      auto rec = base_record("martin", c, {0, 0}, ins);
      const auto res = martin_check(ins, c.n);
      rec.values["gr"] = Rational(res.lhs);
      rec.values["pp_half"] = res.rhs;
      rec.flags["equal"] = res.equal;
      rec.pass = res.equal;
      out.results.push_back(std::move(rec));
    }
  }
  out.checks.push_back(aggregate("martin", out.results, "tuples equal"));
}

void verify_vanishing(const JobConfig& c, Report& out) {
  const int d = c.d.value_or(1);
  GraphStore store = make_store(c);
  const auto classes = weyl_classes(c.n, d, *c.m, store);
  const auto big = WeightAssignment::random(c.n, c.seed, TorusMode::Big, d);
  const auto pw = PerturbedWeights::from_big(big, d);
  const auto tuples = c.explicit_insertions ? std::vector<std::vector<Partition2>>{c.insertions}
                                            : insertion_multisets(c.n, *c.m);
  for (const auto& ins : tuples) {
    auto rec = base_record("vanishing", c, {d, 0}, ins);
    rec.counts["classes"] = static_cast<std::int64_t>(classes.size());
    guarded(rec, [&] {
      std::int64_t diagonal = 0;
      std::int64_t nonvanishing = 0;
      std::int64_t degenerate = 0;
      std::int64_t factorized = 0;
      int min_net = kZeroValuation;
      for (const auto& w : classes) {
        if (!w.touches_diagonal) continue;
        ++diagonal;
        class_invariance_check(w, ins, pw.small);
        const auto s = class_sum(w, ins, pw, options(c));
        if (!s.regular_at_zero || s.value_at_zero != 0) ++nonvanishing;
        degenerate += s.degenerate_members > 0;
        factorized += s.factorization_checked;
        min_net = std::min(min_net, s.numerator_valuation - s.diagonal_pole_order);
        ++rec.counts[s.valuation == kZeroValuation ? "valuation.zero" : "valuation." + std::to_string(s.valuation)];
      }
      rec.counts["diagonal_classes"] = diagonal;
      rec.counts["nonvanishing"] = nonvanishing;
      rec.counts["degenerate_classes"] = degenerate;
      rec.counts["factorization_checked"] = factorized;
      if (diagonal > 0) rec.counts["min_net_valuation"] = min_net;
      rec.pass = nonvanishing == 0;
    });
    out.results.push_back(std::move(rec));
  }
  out.checks.push_back(aggregate("vanishing", out.results, "tuples with every diagonal class vanishing"));
}

void verify_census(const JobConfig& c, Report& out) {
  const int d = c.d.value_or(1);
  GraphStore store = make_store(c);
  auto rec = base_record("census", c, {d, 0}, {});
  rec.m = *c.m;
  guarded(rec, [&] {
    const auto classes = weyl_classes(c.n, d, *c.m, store);
    std::int64_t diagonal = 0;
    std::int64_t failures = 0;
    for (const auto& w : classes) {
      if (!w.touches_diagonal) continue;
      ++diagonal;
      const auto census = halfedge_census(w);
      failures += !census.inequality_holds;
      ++rec.counts["bound." + std::to_string(census.bound)];
    }
    rec.counts["classes"] = static_cast<std::int64_t>(classes.size());
    rec.counts["diagonal_classes"] = diagonal;
    rec.counts["inequality_failures"] = failures;
    rec.pass = failures == 0;
  });
  out.results.push_back(std::move(rec));
  out.checks.push_back(aggregate("census", out.results, "runs with the inequality holding"));
}

void verify_lambda(const JobConfig& c, Report& out) {
  const int d = c.d.value_or(1);
  GraphStore store = make_store(c);
  for (const auto& ins : sweep(c, d)) {
    auto rec = base_record("lambda-independence", c, {d, 0}, ins);
    std::optional<std::vector<Rational>> first;
    bool identical = true;
    for (int k = 0; k < c.seeds; ++k) {
      const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(k);
      const auto corr = correspondence_check(c.n, d, ins, seed, store, options(c));
      const auto split = split_sum_check(c.n, d, ins, seed, store, options(c));
      std::vector<Rational> values{corr.gr_value, corr.pp_value, split.u_half, split.diagonal_value};
      for (const auto& [deg, v] : corr.per_bidegree) values.push_back(v);
      if (!first) {
        first = values;
        rec.values["gr"] = corr.gr_value;
        rec.values["pp"] = corr.pp_value;
        rec.values["u_half"] = split.u_half;
        rec.values["diagonal"] = split.diagonal_value;
      } else if (values != *first) {
        identical = false;
      }
    }
    rec.counts["seeds"] = c.seeds;
    rec.flags["identical"] = identical;
    rec.pass = identical;
    out.results.push_back(std::move(rec));
  }
  out.checks.push_back(aggregate("lambda-independence", out.results, "tuples identical across seeds"));
}

void verify_edge_lemma(const JobConfig& c, Report& out) {
  const int dmax = c.d.value_or(6);
  const int trials = 100;
  std::mt19937_64 rng(c.seed);
  std::uniform_int_distribution<long> dist(-1000, 1000);
  for (int d = 0; d <= dmax; ++d) {
    auto rec = base_record("edge-lemma", c, {d, 0}, {});
    std::int64_t mismatches = 0;
    for (int k = 0; k < trials; ++k) {
      for (;;) {
        const Rational c0(dist(rng));
        const Rational cinf = d == 0 ? c0 : Rational(dist(rng));
        EdgeBundleSides sides;
        try {
          sides = edge_bundle_sides(d, c0, cinf);
        } catch (const DegenerateWeights&) {
          continue;
        }
        mismatches += sides.weight_ratio != sides.closed_form;
        break;
      }
    }
    rec.counts["trials"] = trials;
    rec.counts["mismatches"] = mismatches;
    rec.pass = mismatches == 0;
    out.results.push_back(std::move(rec));
  }
  out.checks.push_back(aggregate("edge-lemma", out.results, "degrees matching the closed form"));
}

void cmd_enumerate(const JobConfig& c, Report& out) {
  const Target target = parse_target(c.target);
  Degree deg;
  if (target == Target::ProductPP) {
    if (!c.d1 || !c.d2) throw ConfigError("enumerate --target pp needs --d1 and --d2");
    deg = {*c.d1, *c.d2};
  } else {
    deg = {need_d(c), 0};
  }
  auto rec = base_record("enumerate", c, deg, {});
  rec.m = *c.m;
  rec.text["target"] = c.target;
  std::size_t count = 0;
  if (!c.cache_dir.empty()) {
    const auto res = enumerate_graphs_cached(c.cache_dir, target, c.n, deg, *c.m);
    count = res.graphs.size();
    rec.flags["cache_hit"] = res.cache_hit;
  } else {
    count = enumerate_graphs(target, c.n, deg, *c.m).size();
  }
  rec.counts["graphs"] = static_cast<std::int64_t>(count);
  out.results.push_back(std::move(rec));
}

}  // namespace

std::vector<std::vector<Partition2>> insertion_multisets(int n, int m) {
  const auto parts = partitions_in_box(n);
  std::vector<std::vector<Partition2>> out;
  std::vector<Partition2> current;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (static_cast<int>(current.size()) == m) {
      out.push_back(current);
      return;
    }
    for (std::size_t i = start; i < parts.size(); ++i) {
      current.push_back(parts[i]);
      rec(i);
      current.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<std::vector<Partition2>> matched_multisets(int n, int d, int m) {
  const int vdim = 2 * (n - 2) + n * d + m - 3;
  std::vector<std::vector<Partition2>> out;
  for (auto& ins : insertion_multisets(n, m)) {
    int codim = 0;
    for (const auto& p : ins) codim += p.codimension();
    if (codim == vdim) out.push_back(std::move(ins));
  }
  return out;
}

JobConfig normalized(JobConfig c) {
  if (!kCommands.contains(c.command)) throw ConfigError("unknown command '" + c.command + "'");
  if (c.command == "verify") {
    if (!kSuites.contains(c.subcommand)) throw ConfigError("unknown verify suite '" + c.subcommand + "'");
  } else if (!c.subcommand.empty()) {
    throw ConfigError(c.command + " takes no suite name");
  }
  if (c.format != "json" && c.format != "csv") throw ConfigError("--format must be json or csv");
  if (c.target != "gr" && c.target != "pp" && c.target != "proj") throw ConfigError("--target must be gr, pp or proj");
  if (c.n < 3) throw InvalidDimension("n must be at least 3");
  if (c.n > 16) throw ConfigError("n above 16 is not supported");
  if (c.jobs < 1) throw ConfigError("--jobs must be positive");
  if (c.seeds < 1) throw ConfigError("--seeds must be positive");
  for (const auto* deg : {&c.d, &c.d1, &c.d2}) {
    if (*deg && **deg < 0) throw ConfigError("degrees must be nonnegative");
  }
  if (c.m && *c.m < 0) throw ConfigError("--m must be nonnegative");
  if (c.explicit_insertions) {
    for (const auto& p : c.insertions) {
      if (p.box_width != c.n - 2) throw InvalidPartition(p.to_string() + " does not belong to the box of n");
    }
    const int k = static_cast<int>(c.insertions.size());
    if (c.m && *c.m != k) throw ConfigError("--m disagrees with the number of --insert values");
    c.m = k;
  }
  if (!c.m) c.m = c.command == "enumerate" ? 0 : 3;
  if (c.cache_dir.empty()) {
    if (const char* env = std::getenv("GW_CACHE_DIR")) c.cache_dir = env;
  }
  return c;
}

Report run_job(const JobConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  Report out;
  out.config = normalized(config);
  const JobConfig& c = out.config;
  if (c.command == "gr") {
    cmd_gr(c, out);
  } else if (c.command == "twisted") {
    cmd_twisted(c, out);
  } else if (c.command == "correspondence") {
    cmd_correspondence(c, out);
  } else if (c.command == "enumerate") {
    cmd_enumerate(c, out);
  } else if (c.subcommand == "martin") {
    verify_martin(c, out);
  } else if (c.subcommand == "vanishing") {
    verify_vanishing(c, out);
  } else if (c.subcommand == "census") {
    verify_census(c, out);
  } else if (c.subcommand == "lambda-independence") {
    verify_lambda(c, out);
  } else {
    verify_edge_lemma(c, out);
  }
  if (c.timing) {
    out.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  }
  return out;
}

int exit_code(const Report& report) {
  if (report.all_pass()) return kExitOk;
  return report.config.command == "correspondence" ? kExitCorrespondence : kExitProperty;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Genus-zero Gromov-Witten invariants of Gr(2,n) and twisted invariants of (P^{n-1})^2"};
  app.require_subcommand(1);
  JobConfig c;
  std::optional<int> d;
  std::optional<int> d1;
  std::optional<int> d2;
  std::optional<int> m;
  std::vector<std::string> inserts;
  app.add_option("--n", c.n, "Grassmannian Gr(2,n) / projective space P^{n-1}");
  app.add_option("--d", d, "curve degree");
  app.add_option("--d1", d1, "first bidegree component");
  app.add_option("--d2", d2, "second bidegree component");
  app.add_option("--m", m, "number of marked points");
  app.add_option("--insert", inserts, "insertion partitions written a,b")->expected(1, CLI::detail::expected_max_vector_size);
  app.add_option("--seed", c.seed, "torus weight seed");
  app.add_option("--seeds", c.seeds, "number of seeds for lambda-independence");
  app.add_option("--cache-dir", c.cache_dir, "graph cache directory (default: $GW_CACHE_DIR)");
  app.add_option("--format", c.format, "json or csv");
  app.add_option("--jobs", c.jobs, "worker threads");
  app.add_option("--target", c.target, "enumerate target: gr, pp or proj");
  app.add_flag("--t-report", c.t_report, "emit full t-functions of the twisted totals");
  app.add_flag("--timing", c.timing, "add meta.runtime_ms (output is then not reproducible)");
  app.add_flag("--disable-twist", c.disable_twist)->group("");

  std::string suite;
  for (const auto& name : kCommands) {
    auto* sub = app.add_subcommand(name, kCommandHelp.at(name));
    sub->fallthrough();
    if (name == "verify") sub->add_option("suite", suite, "martin | vanishing | census | lambda-independence | edge-lemma")->required();
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "gw: " << e.what() << "\n";
    return kExitInvalidConfig;
  }
  c.command = app.get_subcommands().front()->get_name();
  c.subcommand = suite;
  c.d = d;
  c.d1 = d1;
  c.d2 = d2;
  c.m = m;

  try {
    if (!inserts.empty()) {
      if (c.n < 3) throw InvalidDimension("n must be at least 3");
      c.explicit_insertions = true;
      for (const auto& s : inserts) c.insertions.push_back(parse_partition(s, c.n));
    }
    const Report report = run_job(c);
    out << (report.config.format == "csv" ? serialize_csv(report) : serialize_json(report));
    const int code = exit_code(report);
    if (code != kExitOk) {
      for (const auto& check : report.checks) {
        if (!check.pass) err << "gw: check failed: " << check.name << " (" << check.detail << ")\n";
      }
    }
    return code;
  } catch (const ConfigError& e) {
    err << "gw: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const InvalidDimension& e) {
    err << "gw: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const InvalidPartition& e) {
    err << "gw: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const InvalidDegree& e) {
    err << "gw: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const CacheCorruption& e) {
    err << "gw: " << e.what() << "\n";
    return kExitCacheCorruption;
  } catch (const std::exception& e) {
    err << "gw: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace gw
