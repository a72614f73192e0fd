#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "essval/cf_engine.hpp"
#include "essval/cli.hpp"
#include "essval/cocycle.hpp"
#include "essval/errors.hpp"
#include "essval/essential_values.hpp"
#include "essval/parse.hpp"
#include "essval/partition.hpp"
#include "essval/subgroup.hpp"

using namespace essval;

namespace {

struct Outcome {
  bool pass{false};
  std::string detail;
};

RealValue golden() { return RealValue::surd(-1, 1, 5, 2); }

const std::vector<std::pair<std::string, RealValue>>& alphas() {
  static const std::vector<std::pair<std::string, RealValue>> all{
      {"(-1+sqrt(5))/2", golden()},
      {"sqrt(2)-1", RealValue::surd(-1, 1, 2, 1)},
      {"(-1+sqrt(13))/2", RealValue::surd(-1, 1, 13, 2)},
  };
  return all;
}

std::vector<BigInt> denominators_up_to(const RealValue& alpha, std::int64_t bound) {
  std::vector<BigInt> out;
  for (const BigInt& q : denominator_set(expand(alpha, 60))) {
    if (q <= bound) {
      out.push_back(q);
    }
  }
  return out;
}

Outcome convergent_identities() {
  std::size_t checked = 0;
  for (const auto& [name, alpha] : alphas()) {
    const ConvergentTable t = expand(alpha, 40);
    if (denominator_set(t).size() != 40) {
      return {false, name + ": depth 40 not reached"};
    }
    const ConvergentIdentities ids = check_convergent_identities(t);
    if (!ids.all()) {
      return {false, name + ": " + ids.failure};
    }
    checked += t.convergents.size();
  }
  return {true, std::to_string(checked) + " convergents over 3 alphas"};
}

Outcome denjoy_koksma() {
  std::size_t count = 0;
  std::int64_t worst = 0;
  for (const auto& [name, alpha] : alphas()) {
    const CocycleContext ctx(alpha, RealValue::rational(1, 3));
    for (const BigInt& q : denominators_up_to(alpha, 100'000)) {
      const auto r = denjoy_koksma_check(static_cast<std::int64_t>(q), ctx);
      if (r.max_abs > 3) {
        return {false, name + " q=" + q.str() + " max|a_q|=" + std::to_string(r.max_abs)};
      }
      worst = std::max(worst, r.max_abs);
      ++count;
    }
  }
  return {true, std::to_string(count) + " denominators, max |a_q| = " + std::to_string(worst)};
}

Outcome half_distance() {
  std::size_t count = 0;
  for (const auto& [name, alpha] : alphas()) {
    const ConvergentTable table = expand(alpha, 60);
    for (const BigInt& q : denominators_up_to(alpha, 100'000)) {
      const auto r = half_distance_lemma_check(table, q);
      if (r.minimum < r.bound) {
        return {false, name + " q=" + q.str()};
      }
      ++count;
    }
  }
  return {true, std::to_string(count) + " denominators, exhaustive over |j| < q"};
}

Outcome uniform_distribution() {
  std::size_t count = 0;
  for (const auto& [name, alpha] : alphas()) {
    const CocycleContext ctx(alpha, RealValue::rational(1, 3));
    const auto d = denominators_up_to(alpha, 10'000);
    for (const BigInt& q : d) {
      if (!uniform_distribution_check(static_cast<std::int64_t>(q), ctx, d)) {
        return {false, name + " q=" + q.str()};
      }
      ++count;
    }
  }
  return {true, std::to_string(count) + " denominators"};
}

CirclePoint random_point(std::mt19937_64& rng, const RealValue& alpha) {
  std::uniform_int_distribution<std::int64_t> num(0, 9972);
  std::uniform_int_distribution<std::int64_t> shift(-60, 60);
  return reduce_mod_1(RealValue::rational(num(rng), 9973) + RealValue(shift(rng)) * alpha);
}

Outcome identity_suite() {
  constexpr int kSamples = 10'000;
  std::mt19937_64 rng(20240501);
  std::uniform_int_distribution<std::int64_t> ns(-200, 200);
  std::uniform_int_distribution<std::int64_t> ms(0, 20);
  std::uniform_int_distribution<std::size_t> pick(0, 2);
  const CirclePoint half(RealValue::rational(1, 2));
  std::int64_t parity = 0, antisym = 0, cocycle = 0, shift = 0;
  for (int i = 0; i < kSamples; ++i) {
    const RealValue& alpha = alphas()[pick(rng)].second;
    const CocycleContext ctx(alpha, random_point(rng, alpha).value());
    const CirclePoint x = random_point(rng, alpha);
    const std::int64_t n = ns(rng);
    const std::int64_t a = birkhoff_a(n, x, ctx);
    parity += ((a - n) % 2 != 0);
    antisym += (birkhoff_a(n, x + half, ctx) != -a);
    cocycle += !check_cocycle_identity(ns(rng), n, x, ctx);
    const std::int64_t m = ms(rng);
    const std::int64_t len = std::uniform_int_distribution<std::int64_t>(m + 1, 500)(rng);
    shift += !check_shift_bound(m, len, x, ctx);
  }
  const std::int64_t failures = parity + antisym + cocycle + shift;
  std::ostringstream s;
  s << kSamples << " samples each; failures parity=" << parity << " antisymmetry=" << antisym
    << " cocycle=" << cocycle << " shift=" << shift;
  return {failures == 0, s.str()};
}

Outcome partition_soundness() {
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<std::int64_t> qs(1, 1000);
  std::uniform_int_distribution<std::size_t> pick(0, 2);
  std::size_t in_d = 0;
  std::size_t intervals = 0;
  for (int i = 0; i < 100; ++i) {
    const auto& [name, alpha] = alphas()[pick(rng)];
    const auto d = denominators_up_to(alpha, 1000);
    std::int64_t q = qs(rng);
    // Every other pair draws q from D(alpha) so the length bound is exercised.
    if (i % 2 == 1) {
      q = static_cast<std::int64_t>(
          d[std::uniform_int_distribution<std::size_t>(0, d.size() - 1)(rng)]);
    }
    const CocycleContext ctx(alpha, random_point(rng, alpha).value());
    PartitionOptions options;
    options.verify = VerifyMode::Off;
    const ConstancyPartition p = build_partition(q, ctx, options);
    RealValue sum(0);
    RealValue longest(0);
    for (const auto& iv : p.intervals) {
      sum += iv.length;
      longest = std::max(longest, iv.length);
      if (pair(q, midpoint(iv), ctx) != iv.value) {
        return {false, name + " q=" + std::to_string(q) + ": propagated value differs"};
      }
    }
    if (sum != RealValue(1)) {
      return {false, name + " q=" + std::to_string(q) + ": lengths sum to " + sum.to_string()};
    }
    if (std::find(d.begin(), d.end(), BigInt(q)) != d.end()) {
      ++in_d;
      if (!(longest < RealValue::rational(2, q))) {
        return {false, name + " q=" + std::to_string(q) + ": interval of length >= 2/q"};
      }
    }
    intervals += p.intervals.size();
  }
  return {true, "100 pairs, " + std::to_string(intervals) + " intervals checked directly, " +
                    std::to_string(in_d) + " with q in D"};
}

Outcome trichotomy() {
  const RealValue alpha = golden();
  struct Case {
    std::string t;
    SubgroupClass expected;
  };
  const std::vector<Case> cases{
      {"1/3", SubgroupClass::FullG},          {"2/7", SubgroupClass::FullG},
      {"(-1+sqrt(5))/4", SubgroupClass::FullG}, {"0", SubgroupClass::Diagonal},
      {"3a", SubgroupClass::Diagonal},        {"-5a", SubgroupClass::Diagonal},
      {"1/2", SubgroupClass::AntiDiagonal},   {"1/2+2a", SubgroupClass::AntiDiagonal},
  };
  ClassifyOptions options;
  options.depth = 30;
  options.detect.delta = RealValue::rational(1, 128);
  options.detect.window = 10;
  options.detect.threads = 0;
  std::ostringstream s;
  bool all = true;
  for (const Case& c : cases) {
    const RealValue t = parse_real(c.t, alpha).value;
    const ClassificationReport r = classify(CocycleContext(alpha, t), options);
    bool ok = r.agreement && r.expected == c.expected &&
              r.subgroup.classification() == c.expected;
    if (c.expected == SubgroupClass::FullG) {
      ok = ok && r.subgroup.basis() == std::vector<Vec2>{{1, 1}, {0, 2}};
    }
    all = all && ok;
    s << " " << c.t << "->" << to_string(r.subgroup.classification()) << (ok ? "" : "(!)");
  }
  return {all, "8 cases:" + s.str()};
}

Outcome epsilon_theta_exactness() {
  const RealValue alpha = golden();
  const auto d = denominator_set(expand(alpha, 30));
  std::size_t zeros = 0;
  for (const auto& [text, witness] :
       std::vector<std::pair<std::string, std::int64_t>>{{"3a", 3}, {"-5a", 5}, {"7a", 7}}) {
    const CocycleContext ctx(alpha, parse_real(text, alpha).value);
    for (const EpsilonTheta& e : epsilon_theta_table(ctx, d, 0)) {
      if (e.q > witness) {
        if (!e.epsilon.is_zero()) {
          return {false, "t=" + text + " q=" + std::to_string(e.q) + ": epsilon nonzero"};
        }
        ++zeros;
      }
    }
  }
  for (const auto& [text, witness] :
       std::vector<std::pair<std::string, std::int64_t>>{{"1/2+2a", 2}, {"1/2-4a", 4}}) {
    const CocycleContext ctx(alpha, parse_real(text, alpha).value);
    for (const EpsilonTheta& e : epsilon_theta_table(ctx, d, 0)) {
      if (e.q > witness) {
        if (!e.theta.is_zero()) {
          return {false, "t=" + text + " q=" + std::to_string(e.q) + ": theta nonzero"};
        }
        ++zeros;
      }
    }
  }
  const LimsupReport l = limsup_criterion(CocycleContext(alpha, RealValue::rational(1, 3)), 30);
  if (!l.holds_empirically || !(l.best_delta.sign() > 0)) {
    return {false, "limsup criterion fails for t = 1/3"};
  }
  return {true, std::to_string(zeros) + " exact zeros; t=1/3 delta = " + l.best_delta.to_string() +
                    " ~ " + l.best_delta.to_decimal(6)};
}

std::set<Vec2> span_box(const std::vector<Vec2>& gens, int box) {
  std::set<Vec2> reached{{0, 0}};
  std::vector<Vec2> frontier{{0, 0}};
  while (!frontier.empty()) {
    std::vector<Vec2> next;
    for (const Vec2& v : frontier) {
      for (const Vec2& g : gens) {
        for (int s : {1, -1}) {
          const Vec2 w{v.x + s * g.x, v.y + s * g.y};
          if (std::abs(w.x) <= box && std::abs(w.y) <= box && reached.insert(w).second) {
            next.push_back(w);
          }
        }
      }
    }
    frontier = std::move(next);
  }
  return reached;
}

Outcome subgroup_algebra() {
  std::mt19937_64 rng(9090);
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<int> small(-2, 2);
  std::uniform_int_distribution<int> rank(0, 2);
  std::uniform_int_distribution<int> extra(0, 2);
  for (int trial = 0; trial < 1000; ++trial) {
    // A random subgroup by basis, then two independent generating sets of it.
    std::vector<Vec2> basis(static_cast<std::size_t>(rank(rng)));
    for (auto& v : basis) {
      v = {coef(rng), coef(rng)};
    }
    auto generating_set = [&] {
      std::vector<Vec2> gens = basis;
      if (gens.size() == 2) {
        const int k = small(rng);
        gens[0] = {gens[0].x + k * gens[1].x, gens[0].y + k * gens[1].y};
      }
      for (auto& g : gens) {
        if (rng() % 2 == 0) {
          g = {-g.x, -g.y};
        }
      }
      for (int e = extra(rng); e > 0 && !basis.empty(); --e) {
        Vec2 v{0, 0};
        for (const Vec2& b : basis) {
          const int c = small(rng);
          v = {v.x + c * b.x, v.y + c * b.y};
        }
        gens.push_back(v);
      }
      std::shuffle(gens.begin(), gens.end(), rng);
      return gens;
    };
    const std::vector<Vec2> g1 = generating_set();
    const std::vector<Vec2> g2 = generating_set();
    const SubgroupZ2 h1 = SubgroupZ2::generated_by(g1);
    const SubgroupZ2 h2 = SubgroupZ2::generated_by(g2);
    std::vector<Vec2> reversed(g1.rbegin(), g1.rend());
    if (!(h1 == h2) || !(SubgroupZ2::generated_by(reversed) == h1) ||
        !(SubgroupZ2::generated_by(h1.basis()) == h1)) {
      return {false, "trial " + std::to_string(trial) + ": basis depends on the generating set"};
    }
    const std::set<Vec2> reached = span_box(g1, 40);
    for (int x = -10; x <= 10; ++x) {
      for (int y = -10; y <= 10; ++y) {
        if (h1.contains({x, y}) != reached.contains(Vec2{x, y})) {
          return {false, "trial " + std::to_string(trial) + ": membership differs at (" +
                             std::to_string(x) + "," + std::to_string(y) + ")"};
        }
      }
    }
  }
  return {true, "1000 subgroups, 2 generating sets each, 441 lattice points per subgroup"};
}

Outcome scan_determinism() {
  const std::vector<std::string> base{"--alpha", "(-1+sqrt(5))/2", "--depth", "24",
                                      "--format", "csv", "--seed", "5",
                                      "scan", "--grid", "8", "--jitter"};
  std::string outputs[2];
  int codes[2];
  const char* threads[2] = {"1", "4"};
  for (int i = 0; i < 2; ++i) {
    std::vector<std::string> args{"--threads", threads[i]};
    args.insert(args.end(), base.begin(), base.end());
    std::ostringstream out;
    std::ostringstream err;
    codes[i] = run_cli(args, out, err);
    outputs[i] = out.str();
  }
  if (outputs[0].empty() || codes[0] == kExitUsage) {
    return {false, "scan did not run"};
  }
  const bool same = outputs[0] == outputs[1] && codes[0] == codes[1];
  return {same, std::to_string(outputs[0].size()) + " bytes, " +
                    (same ? "identical" : "different") + " for threads 1 and 4"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"convergent identities", convergent_identities},
      {"Denjoy-Koksma bound", denjoy_koksma},
      {"1/(24q) half-distance bound", half_distance},
      {"uniform distribution", uniform_distribution},
      {"cocycle identity suite", identity_suite},
      {"partition soundness", partition_soundness},
      {"trichotomy at depth 30", trichotomy},
      {"epsilon/theta exactness", epsilon_theta_exactness},
      {"subgroup algebra", subgroup_algebra},
      {"scan determinism", scan_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %2zu. %s (%.1fs): %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
