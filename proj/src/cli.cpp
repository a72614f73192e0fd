#include "essval/cli.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "essval/cf_engine.hpp"
#include "essval/cocycle.hpp"
#include "essval/detail/parallel.hpp"
#include "essval/errors.hpp"
#include "essval/essential_values.hpp"
#include "essval/parse.hpp"
#include "essval/partition.hpp"
#include "essval/serialize.hpp"

namespace essval {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string alpha_spec;
  std::string t_spec;
  std::size_t depth{kDefaultDepth};
  std::string delta_spec{"1/128"};
  std::int64_t window{10};
  std::int64_t search_bound{kDefaultSearchBound};
  std::string format{"json"};
  bool no_verify{false};
  std::uint64_t seed{0};
  unsigned threads{0};
  std::int64_t max_q{2'000'000};

  std::int64_t n{1};
  std::string x_spec{"0"};
  std::int64_t q{0};
  std::int64_t grid{0};
  bool jitter{false};
  bool include_even{false};
  std::int64_t samples{200};
};

constexpr const char* kApproximateWarning =
    "alpha is a rational truncation of a transcendental constant; results are approximate";

struct Inputs {
  RealValue alpha;
  bool approximate{false};
  std::optional<RealValue> t;
};

Inputs read_inputs(const RunConfig& cfg, bool need_t) {
  if (cfg.alpha_spec.empty()) {
    throw UsageError("--alpha is required");
  }
  Inputs in;
  try {
    const ParsedValue alpha = parse_real(cfg.alpha_spec);
    in.alpha = alpha.value;
    in.approximate = alpha.approximate;
  } catch (const Error& e) {
    throw UsageError(std::string("--alpha: ") + e.what());
  }
  if (cfg.t_spec.empty()) {
    if (need_t) {
      throw UsageError("--t is required");
    }
    return in;
  }
  try {
    const ParsedValue t = parse_real(cfg.t_spec, in.alpha);
    in.t = t.value;
    in.approximate = in.approximate || t.approximate;
  } catch (const Error& e) {
    throw UsageError(std::string("--t: ") + e.what());
  }
  return in;
}

CocycleContext make_context(const RunConfig& cfg, const Inputs& in, const RealValue& t) {
  try {
    return CocycleContext(in.alpha, t, cfg.search_bound);
  } catch (const IncomparableRepresentations& e) {
    throw UsageError(std::string("--t: ") + e.what());
  } catch (const PreconditionUnmet& e) {
    throw UsageError(std::string("--alpha: ") + e.what());
  }
}

RealValue read_delta(const RunConfig& cfg) {
  RealValue delta;
  try {
    delta = parse_real(cfg.delta_spec).value;
  } catch (const Error& e) {
    throw UsageError(std::string("--delta: ") + e.what());
  }
  if (!(delta.sign() > 0)) {
    throw UsageError("--delta must be positive");
  }
  return delta;
}

bool csv(const RunConfig& cfg) { return cfg.format == "csv"; }

PartitionOptions partition_options(const RunConfig& cfg) {
  PartitionOptions options;
  options.verify = cfg.no_verify ? VerifyMode::Off : VerifyMode::Auto;
  options.seed = cfg.seed;
  return options;
}

ClassifyOptions classify_options(const RunConfig& cfg, unsigned threads) {
  if (cfg.window < 2) {
    throw UsageError("--window must be at least 2");
  }
  ClassifyOptions options;
  options.depth = cfg.depth;
  options.max_q = cfg.max_q;
  options.include_even = cfg.include_even;
  options.detect.delta = read_delta(cfg);
  options.detect.window = cfg.window;
  options.detect.partition = partition_options(cfg);
  options.detect.threads = threads;
  return options;
}

std::vector<BigInt> capped_denominators(const ConvergentTable& table, std::int64_t max_q) {
  auto qs = denominator_set(table);
  if (max_q > 0) {
    std::erase_if(qs, [&](const BigInt& q) { return q > max_q; });
  }
  return qs;
}

int cmd_cf(const RunConfig& cfg, std::ostream& out) {
  const Inputs in = read_inputs(cfg, false);
  ExpandOptions options;
  options.allow_finite = true;
  options.approximate = in.approximate;
  const ConvergentTable table = expand(in.alpha, cfg.depth, options);
  if (csv(cfg)) {
    out << "k,a_k,p,q\n";
    for (const auto& c : table.convergents) {
      const BigInt& a = c.k == 0 ? table.a0 : table.quotients[static_cast<std::size_t>(c.k - 1)];
      out << c.k << ',' << a << ',' << c.p << ',' << c.q << '\n';
    }
    return kExitOk;
  }
  Json j = to_json(table);
  if (in.approximate) {
    j["warning"] = kApproximateWarning;
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_cocycle(const RunConfig& cfg, std::ostream& out) {
  const Inputs in = read_inputs(cfg, false);
  const CocycleContext ctx = make_context(cfg, in, in.t.value_or(RealValue(0)));
  CirclePoint x;
  try {
    x = reduce_mod_1(parse_real(cfg.x_spec, in.alpha).value);
  } catch (const Error& e) {
    throw UsageError(std::string("--x: ") + e.what());
  }
  const PairValue value = pair(cfg.n, x, ctx);
  if (csv(cfg)) {
    out << "n,x,a_n(x),a_n(x+t)\n"
        << cfg.n << ',' << x.value().to_string() << ',' << value.first << ',' << value.second
        << '\n';
    return kExitOk;
  }
  Json j{{"alpha", real_json(ctx.alpha())},
         {"t", real_json(ctx.t().value())},
         {"n", cfg.n},
         {"x", real_json(x.value())},
         {"a_n(x)", value.first},
         {"a_n(x+t)", value.second}};
  if (cfg.n >= 0) {
    j["S_n(x)"] = count_s(cfg.n, x, ctx);
  }
  if (in.approximate) {
    j["warning"] = kApproximateWarning;
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_partition(const RunConfig& cfg, std::ostream& out) {
  const Inputs in = read_inputs(cfg, false);
  if (cfg.q < 1) {
    throw UsageError("--q must be a positive integer");
  }
  const CocycleContext ctx = make_context(cfg, in, in.t.value_or(RealValue(0)));
  PartitionOptions options = partition_options(cfg);
  options.include_t_families = in.t.has_value();
  const ConstancyPartition partition = build_partition(cfg.q, ctx, options);
  if (csv(cfg)) {
    write_csv(out, partition);
    return kExitOk;
  }
  Json j{{"alpha", real_json(ctx.alpha())}, {"t", real_json(ctx.t().value())}};
  j.update(to_json(partition));
  if (in.approximate) {
    j["warning"] = kApproximateWarning;
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_epsilon_theta(const RunConfig& cfg, std::ostream& out) {
  const Inputs in = read_inputs(cfg, true);
  const CocycleContext ctx = make_context(cfg, in, *in.t);
  std::vector<EpsilonTheta> table;
  if (cfg.q > 0) {
    table.push_back(epsilon_theta(cfg.q, ctx));
  } else {
    ExpandOptions options;
    options.allow_finite = true;
    options.approximate = in.approximate;
    table = epsilon_theta_table(ctx, capped_denominators(expand(ctx.alpha(), cfg.depth, options),
                                                         cfg.max_q),
                                cfg.threads);
  }
  if (csv(cfg)) {
    write_csv(out, table);
    return kExitOk;
  }
  Json rows = Json::array();
  for (const auto& et : table) {
    rows.push_back(to_json(et));
  }
  Json j{{"alpha", real_json(ctx.alpha())}, {"t", real_json(ctx.t().value())}, {"table", rows}};
  if (in.approximate) {
    j["warning"] = kApproximateWarning;
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  const Inputs in = read_inputs(cfg, true);
  const CocycleContext ctx = make_context(cfg, in, *in.t);
  const ClassificationReport report =
      classify(ctx, classify_options(cfg, cfg.threads), in.approximate);
  if (csv(cfg)) {
    out << "t,classification,expected,agreement\n"
        << report.t.value().to_string() << ',' << to_string(report.subgroup.classification())
        << ',' << to_string(report.expected) << ',' << (report.agreement ? "true" : "false")
        << '\n';
  } else {
    out << to_json(report).dump(2) << '\n';
  }
  return report.agreement ? kExitOk : kExitDisagreement;
}

struct ScanRow {
  RealValue t;
  SubgroupClass detected{SubgroupClass::Other};
  SubgroupClass expected{SubgroupClass::Other};
  bool agreement{false};
  RealValue min_epsilon;
  RealValue min_theta;
};

int cmd_scan(const RunConfig& cfg, std::ostream& out) {
  const Inputs in = read_inputs(cfg, false);
  if (cfg.grid < 1) {
    throw UsageError("--grid must be a positive integer");
  }
  const auto n = static_cast<std::size_t>(cfg.grid);
  std::vector<RealValue> ts(n);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<std::int64_t> offset(1, 999);
  for (std::size_t k = 0; k < n; ++k) {
    ts[k] = RealValue::rational(static_cast<std::int64_t>(k), cfg.grid);
    if (cfg.jitter) {
      ts[k] += RealValue::rational(offset(rng), 1000 * cfg.grid) * in.alpha;
    }
  }
  const ClassifyOptions options = classify_options(cfg, 1);
  std::vector<ScanRow> rows(n);
  detail::parallel_for(n, cfg.threads, [&](std::size_t k) {
    const CocycleContext ctx(in.alpha, ts[k], cfg.search_bound);
    const ClassificationReport report = classify(ctx, options, in.approximate);
    ScanRow& row = rows[k];
    row.t = ctx.t().value();
    row.detected = report.subgroup.classification();
    row.expected = report.expected;
    row.agreement = report.agreement;
    row.min_epsilon = report.epsilon_theta_table.front().epsilon;
    row.min_theta = report.epsilon_theta_table.front().theta;
    for (const auto& et : report.epsilon_theta_table) {
      row.min_epsilon = std::min(row.min_epsilon, et.epsilon);
      row.min_theta = std::min(row.min_theta, et.theta);
    }
  });
  bool all_agree = true;
  if (cfg.format == "json") {
    Json j = Json::array();
    for (const auto& row : rows) {
      j.push_back({{"t", real_json(row.t)},
                   {"classification", to_string(row.detected)},
                   {"expected", to_string(row.expected)},
                   {"agreement", row.agreement},
                   {"min_epsilon", real_json(row.min_epsilon)},
                   {"min_theta", real_json(row.min_theta)}});
      all_agree = all_agree && row.agreement;
    }
    out << j.dump(2) << '\n';
  } else {
    out << "t,t_decimal,classification,expected,agreement,min_epsilon,min_epsilon_decimal,"
           "min_theta,min_theta_decimal\n";
    for (const auto& row : rows) {
      out << row.t.to_string() << ',' << row.t.to_decimal() << ',' << to_string(row.detected)
          << ',' << to_string(row.expected) << ',' << (row.agreement ? "true" : "false") << ','
          << row.min_epsilon.to_string() << ',' << row.min_epsilon.to_decimal() << ','
          << row.min_theta.to_string() << ',' << row.min_theta.to_decimal() << '\n';
      all_agree = all_agree && row.agreement;
    }
  }
  return all_agree ? kExitOk : kExitDisagreement;
}

struct CheckResult {
  std::string name;
  bool pass{true};
  std::string witness;
};

// Runs body(), which returns a witness; InvariantViolation turns into a failure.
CheckResult run_check(const std::string& name, const std::function<std::string()>& body) {
  CheckResult r{name, true, {}};
  try {
    r.witness = body();
  } catch (const InvariantViolation& e) {
    r.pass = false;
    r.witness = e.what();
  }
  return r;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  RunConfig with_t = cfg;
  if (with_t.t_spec.empty()) {
    with_t.t_spec = "1/3";
  }
  const Inputs in = read_inputs(with_t, true);
  const CocycleContext ctx = make_context(cfg, in, *in.t);
  ExpandOptions expand_options;
  expand_options.allow_finite = true;
  expand_options.approximate = in.approximate;
  const ConvergentTable table = expand(ctx.alpha(), cfg.depth, expand_options);
  const std::vector<BigInt> all_qs = denominator_set(table);
  const std::vector<BigInt> qs = capped_denominators(table, cfg.max_q);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<std::int64_t> small(-200, 200);
  std::uniform_int_distribution<std::int64_t> grid(0, 4095);
  std::uniform_int_distribution<std::int64_t> shift(-50, 50);
  auto random_x = [&] {
    return reduce_mod_1(RealValue::rational(grid(rng), 4096) + RealValue(shift(rng)) * ctx.alpha());
  };

  std::vector<CheckResult> checks;
  checks.push_back(run_check("convergent-identities", [&] {
    const ConvergentIdentities ids = check_convergent_identities(table);
    if (!ids.all()) {
      throw ViolationFound(ids.failure);
    }
    return std::to_string(table.convergents.size()) + " convergents";
  }));
  checks.push_back(run_check("best-approximation", [&] {
    std::size_t checked = 0;
    for (std::size_t i = 0; i + 1 < all_qs.size() && all_qs[i + 1] <= cfg.max_q; ++i) {
      verify_best_approx(table, i);
      ++checked;
    }
    return std::to_string(checked) + " denominators";
  }));
  checks.push_back(run_check("half-distance-1/(24q)", [&] {
    std::optional<RealValue> worst;
    for (const auto& q : qs) {
      const HalfDistanceRecord rec = half_distance_lemma_check(table, q);
      const RealValue ratio = rec.minimum / rec.bound;
      if (!worst || ratio < *worst) {
        worst = ratio;
      }
    }
    return worst ? "min ratio to bound " + worst->to_decimal(6) : std::string("no denominators");
  }));
  checks.push_back(run_check("denjoy-koksma", [&] {
    std::int64_t worst = 0;
    for (const auto& q : qs) {
      worst = std::max(worst, denjoy_koksma_check(q.convert_to<std::int64_t>(), ctx).max_abs);
    }
    return "max |a_q| = " + std::to_string(worst);
  }));
  checks.push_back(run_check("uniform-distribution", [&] {
    for (const auto& q : qs) {
      if (!uniform_distribution_check(q.convert_to<std::int64_t>(), ctx, all_qs)) {
        throw ViolationFound("q = " + q.str() + " has an arc without exactly one point");
      }
    }
    return std::to_string(qs.size()) + " denominators";
  }));
  checks.push_back(run_check("parity", [&] {
    for (std::int64_t s = 0; s < cfg.samples; ++s) {
      const std::int64_t n = small(rng);
      const CirclePoint x = random_x();
      if ((birkhoff_a(n, x, ctx) - n) % 2 != 0) {
        throw ViolationFound("n = " + std::to_string(n) + ", x = " + x.value().to_string());
      }
    }
    return std::to_string(cfg.samples) + " samples";
  }));
  checks.push_back(run_check("half-shift-antisymmetry", [&] {
    for (std::int64_t s = 0; s < cfg.samples; ++s) {
      const std::int64_t n = small(rng);
      const CirclePoint x = random_x();
      if (birkhoff_a(n, x + CirclePoint(one_half()), ctx) != -birkhoff_a(n, x, ctx)) {
        throw ViolationFound("n = " + std::to_string(n) + ", x = " + x.value().to_string());
      }
    }
    return std::to_string(cfg.samples) + " samples";
  }));
  checks.push_back(run_check("cocycle-identity", [&] {
    for (std::int64_t s = 0; s < cfg.samples; ++s) {
      const std::int64_t m = small(rng);
      const std::int64_t n = small(rng);
      const CirclePoint x = random_x();
      if (!check_cocycle_identity(m, n, x, ctx)) {
        throw ViolationFound("m = " + std::to_string(m) + ", n = " + std::to_string(n)
                             + ", x = " + x.value().to_string());
      }
    }
    return std::to_string(cfg.samples) + " samples";
  }));
  checks.push_back(run_check("shift-bound", [&] {
    std::uniform_int_distribution<std::int64_t> ms(0, 20);
    for (std::int64_t s = 0; s < cfg.samples; ++s) {
      const std::int64_t m = ms(rng);
      const std::int64_t n = std::uniform_int_distribution<std::int64_t>(m + 1, 500)(rng);
      const CirclePoint x = random_x();
      if (!check_shift_bound(m, n, x, ctx)) {
        throw ViolationFound("m = " + std::to_string(m) + ", n = " + std::to_string(n)
                             + ", x = " + x.value().to_string());
      }
    }
    return std::to_string(cfg.samples) + " samples";
  }));
  checks.push_back(run_check("partition-measure", [&] {
    std::size_t built = 0;
    PartitionOptions options = partition_options(cfg);
    for (const auto& big_q : qs) {
      const auto q = big_q.convert_to<std::int64_t>();
      if (q > 10'000) {
        break;
      }
      const ConstancyPartition p = build_partition(q, ctx, options);
      RealValue total(0);
      for (const auto& iv : p.intervals) {
        total += iv.length;
        if (!(iv.length < RealValue::rational(2, q))) {
          throw BoundViolated("interval of length " + iv.length.to_string() + " for q = "
                              + std::to_string(q));
        }
      }
      if (total != RealValue(1)) {
        throw InvariantViolation("lengths sum to " + total.to_string() + " for q = "
                                 + std::to_string(q));
      }
      ++built;
    }
    return std::to_string(built) + " partitions";
  }));

  bool all_pass = true;
  for (const auto& c : checks) {
    all_pass = all_pass && c.pass;
  }
  if (csv(cfg)) {
    out << "check,pass,witness\n";
    for (const auto& c : checks) {
      out << c.name << ',' << (c.pass ? "pass" : "FAIL") << ',' << c.witness << '\n';
    }
  } else {
    Json rows = Json::array();
    for (const auto& c : checks) {
      rows.push_back({{"check", c.name}, {"pass", c.pass}, {"witness", c.witness}});
    }
    Json j{{"alpha", real_json(ctx.alpha())},
           {"t", real_json(ctx.t().value())},
           {"depth", cfg.depth},
           {"max_q", cfg.max_q},
           {"checks", rows},
           {"all_pass", all_pass}};
    if (in.approximate) {
      j["warning"] = kApproximateWarning;
    }
    out << j.dump(2) << '\n';
  }
  return all_pass ? kExitOk : kExitDisagreement;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Exact continued fractions, cocycle partitions and essential-value detection "
               "for irrational rotations."};
  app.name("essval");
  app.set_config("--config", "", "key=value file; command-line flags override it");
  app.require_subcommand(1, 1);
  app.fallthrough();

  app.add_option("--alpha", cfg.alpha_spec,
                 "rotation number: p/q, (a+b*sqrt(d))/c, sqrt(...), pi, e");
  app.add_option("--t", cfg.t_spec, "shift; `a` denotes alpha, e.g. 3a or 1/2+2a");
  app.add_option("--depth", cfg.depth, "number of distinct convergent denominators")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--delta", cfg.delta_spec, "detector measure threshold")->capture_default_str();
  app.add_option("--window", cfg.window, "consecutive denominators needed for a candidate")
      ->capture_default_str();
  app.add_option("--search-bound", cfg.search_bound, "|j| bound for exact t = <j alpha> search")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  app.add_option("--format", cfg.format, "json or csv")
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--no-verify", cfg.no_verify, "skip midpoint re-evaluation of partitions");
  app.add_option("--seed", cfg.seed, "seed for sampled verification and scan offsets")
      ->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads (0: available parallelism)")
      ->capture_default_str();
  app.add_option("--max-q", cfg.max_q, "skip denominators above this bound (0: none)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);

  auto* cf = app.add_subcommand("cf", "continued fraction, convergents and D(alpha)");
  auto* cocycle = app.add_subcommand("cocycle", "a_n(x) and a_n(x+t)");
  cocycle->add_option("--n", cfg.n, "number of steps (any sign)")->capture_default_str();
  cocycle->add_option("--x", cfg.x_spec, "base point")->capture_default_str();
  auto* partition = app.add_subcommand("partition", "intervals of constancy of a_q");
  partition->add_option("--q", cfg.q, "number of steps")->required();
  auto* et = app.add_subcommand("epsilon-theta", "epsilon(q) and theta(q) along D(alpha)");
  et->add_option("--q", cfg.q, "a single q instead of D(alpha)");
  auto* cls = app.add_subcommand("classify", "detect essential values and compare with the "
                                             "predicted subgroup");
  cls->add_flag("--include-even", cfg.include_even, "also run the detector on even q");
  auto* scan = app.add_subcommand("scan", "classify t = k/N for k = 0..N-1");
  scan->add_option("--grid", cfg.grid, "grid size N")->required();
  scan->add_flag("--jitter", cfg.jitter, "add a seeded irrational offset to each t");
  scan->add_flag("--include-even", cfg.include_even, "also run the detector on even q");
  auto* verify = app.add_subcommand("verify", "run the exact invariant suite");
  verify->add_option("--samples", cfg.samples, "random samples per identity")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (cf->parsed()) {
      return cmd_cf(cfg, out);
    }
    if (cocycle->parsed()) {
      return cmd_cocycle(cfg, out);
    }
    if (partition->parsed()) {
      return cmd_partition(cfg, out);
    }
    if (et->parsed()) {
      return cmd_epsilon_theta(cfg, out);
    }
    if (cls->parsed()) {
      return cmd_classify(cfg, out);
    }
    if (scan->parsed()) {
      return cmd_scan(cfg, out);
    }
    if (verify->parsed()) {
      return cmd_verify(cfg, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvariantViolation& e) {
    err << "check failed: " << e.what() << '\n';
    return kExitDisagreement;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDisagreement;
  }
  err << "error: no subcommand\n";
  return kExitUsage;
}

}  // namespace essval
