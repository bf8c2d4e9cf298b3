// Acceptance suite: one line per criterion, exit code = number of failures.
//
// The grids below are fixed contracts, not tunables: exact value equality
// against the naive oracle, exact structural-count reproduction of the
// closed forms, optimal-depth and asymptotic-interval containment, batch
// sharing, round trips, and byte-stable CLI output.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "frobeval/cli.hpp"
#include "frobeval/costmodel.hpp"
#include "frobeval/evaluator.hpp"
#include "frobeval/rng.hpp"

using namespace frobeval;

namespace {

constexpr u32 kPrimes[] = {2, 3, 5};
constexpr u32 kVars[] = {1, 2, 3};
constexpr u32 kMaxN = 10;
constexpr u32 kPairs = 100;

struct FieldKey {
  u32 p, m;
  bool operator<(const FieldKey& o) const { return p != o.p ? p < o.p : m < o.m; }
};

std::map<FieldKey, ExtField> g_fields;
std::map<FieldKey, SubfieldEmbedding> g_embeddings;  // keyed by (p, m) with s=2

const ExtField& field_of(u32 p, u32 m) { return g_fields.at({p, m}); }

void build_fields() {
  for (u32 p : kPrimes)
    for (u32 m : {1u, 2u, 4u}) g_fields.emplace(FieldKey{p, m}, ExtField(p, m));
  for (u32 p : kPrimes)
    for (u32 m : {2u, 4u})
      g_embeddings.emplace(FieldKey{p, m}, SubfieldEmbedding(field_of(p, m), 2));
}

u64 pair_seed(u32 p, u32 r, u32 n, u32 m, u32 s, u32 pair) {
  SplitMix64 g((u64(p) << 40) ^ (u64(r) << 36) ^ (u64(n) << 28) ^ (u64(m) << 20) ^
               (u64(s) << 12) ^ pair);
  return g.next();
}

Point random_point(const ExtField& field, u32 r, SplitMix64& rng) {
  Point a;
  for (u32 j = 0; j < r; ++j) {
    std::vector<u32> c(field.m());
    for (u32& v : c) v = rng.below(field.p());
    a.push_back(field.from_coeffs(std::move(c)));
  }
  return a;
}

void parallel_run(std::vector<std::function<void()>>& tasks) {
  std::atomic<std::size_t> next{0};
  const unsigned workers =
      std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= tasks.size()) return;
        tasks[i]();
      }
    });
  for (std::thread& t : pool) t.join();
}

struct Failures {
  std::mutex mu;
  u64 count = 0;
  std::vector<std::string> samples;

  void add(const std::string& what) {
    std::lock_guard<std::mutex> lock(mu);
    ++count;
    if (samples.size() < 3) samples.push_back(what);
  }
};

struct Outcome {
  bool pass = false;
  std::string detail;
};

// --- criterion 1: exact oracle equivalence over the full grid ---------------

Outcome criterion_oracle_equivalence() {
  Failures failures;
  std::atomic<u64> checks{0};
  std::vector<std::function<void()>> tasks;
  for (u32 p : kPrimes)
    for (u32 r : kVars)
      for (u32 n = 0; n <= kMaxN; ++n)
        for (auto [m, s] : {std::pair<u32, u32>{1, 1}, {2, 1}, {4, 1}, {2, 2}, {4, 2}})
          tasks.push_back([=, &failures, &checks] {
            const ExtField& F = field_of(p, m);
            const SubfieldEmbedding* emb = s > 1 ? &g_embeddings.at({p, m}) : nullptr;
            const u32 lmax = max_depth(p, n);
            u64 local = 0;
            for (u32 pair = 0; pair < kPairs; ++pair) {
              SplitMix64 rng(pair_seed(p, r, n, m, s, pair));
              const DensePoly poly = random_poly(rng.next(), p, s, r, n);
              const Point a = random_point(F, r, rng);
              const Element want =
                  s == 1 ? eval_naive(F, poly, a) : eval_naive(F, poly, a, *emb);
              for (u32 L = 0; L <= lmax; ++L) {
                Element got;
                if (s == 1) {
                  MulLedger led;
                  got = eval_frobenius(F, poly, a, L, led);
                } else {
                  got = eval_extension(F, poly, a, *emb, L).value;
                }
                ++local;
                if (!(got == want)) {
                  std::ostringstream os;
                  os << "p=" << p << " r=" << r << " n=" << n << " m=" << m
                     << " s=" << s << " L=" << L << " pair=" << pair;
                  failures.add(os.str());
                }
              }
            }
            checks += local;
          });
  parallel_run(tasks);
  Outcome out;
  out.pass = failures.count == 0;
  std::ostringstream os;
  os << checks.load() << " evaluations compared exactly against the oracle";
  if (failures.count) os << "; " << failures.count << " mismatches, e.g. " << failures.samples[0];
  out.detail = os.str();
  return out;
}

// --- criterion 2: p=2, r=2 closed-form count reproduction -------------------

Outcome criterion_count_p2r2() {
  const ExtField& F = field_of(2, 4);
  u64 checks = 0, bad = 0;
  SplitMix64 rng(2024);
  for (u32 n = 4; n <= 64; ++n) {
    const DensePoly poly = random_poly(rng.next(), 2, 1, 2, n);
    const Point a = random_point(F, 2, rng);
    for (u32 L = 0; (n >> L) >= 2; ++L) {
      const u64 d = n >> L;
      const u64 expect = 7 * (checked_pow(4, L) - 1) / 3 + (d + 1) * (d + 2) / 2 - 3;
      MulLedger led;
      eval_frobenius(F, poly, a, L, led);
      ++checks;
      if (led.total() != expect) ++bad;
    }
  }
  std::ostringstream os;
  os << checks << " (n, L) cells, measured structural total == (7/3)(4^L-1) + M_2(d) - 3";
  if (bad) os << "; " << bad << " mismatches";
  return {bad == 0, os.str()};
}

// --- criterion 3: general count contract and closed-form bracket ------------

Outcome criterion_count_general() {
  u64 checks = 0, bad = 0;
  std::ostringstream first;
  SplitMix64 rng(3030);
  for (u32 p : kPrimes) {
    const ExtField& F = field_of(p, 2);
    for (u32 r : kVars)
      for (u32 n = 0; n <= kMaxN; ++n) {
        const DensePoly poly = random_poly(rng.next(), p, 1, r, n);
        const Point a = random_point(F, r, rng);
        for (u32 L = 0; L <= max_depth(p, n); ++L) {
          MulLedger led;
          eval_frobenius(F, poly, a, L, led);
          const CostBreakdown want = implemented_cost(p, n, r, L);
          const u64 predicted = predicted_cost(p, n, r, L).total;
          const u64 gap_cap = u64(p - 2) * r + checked_pow(p, r);
          ++checks;
          const bool exact = led.p_powers == want.p_powers &&
                             led.reconstruction_mults == want.reconstruction &&
                             led.table_mults == want.table &&
                             led.scalar_premults == want.scalar_pre &&
                             led.total() == want.total;
          const bool bracket =
              led.total() >= predicted && led.total() - predicted <= gap_cap;
          if (!exact || !bracket) {
            ++bad;
            if (bad == 1)
              first << " first at p=" << p << " r=" << r << " n=" << n << " L=" << L;
          }
        }
      }
  }
  std::ostringstream os;
  os << checks
     << " cells: ledger == implemented-cost contract per category and "
        "0 <= measured - predicted <= (p-2)r + p^r"
     << first.str();
  return {bad == 0, os.str()};
}

// --- criteria 4-7: closed-form sweeps over n up to 10^4 ---------------------

struct SweepOutcome {
  Outcome depth_interval;   // criterion 4
  Outcome asymptotic;       // criterion 5
  Outcome constant_bound;   // criterion 6
  Outcome unimodality;      // criterion 7
};

SweepOutcome criterion_sweeps() {
  u64 depth_checks = 0, depth_bad = 0;
  u64 asym_checks = 0, asym_bad = 0;
  u64 c5_checks = 0, c5_bad = 0;
  u64 uni_checks = 0, uni_bad = 0;
  double worst_depth_gap = 0, worst_c = 0;
  for (u32 p : kPrimes)
    for (u32 r : kVars)
      for (u64 n = 16; n <= 10000; ++n) {
        const OptimalDepth opt = optimal_depth(p, n, r);
        const DepthInterval iv = optimal_depth_interval(p, n, r);
        ++depth_checks;
        const double gap = std::fabs(double(opt.depth) - iv.center);
        worst_depth_gap = std::max(worst_depth_gap, gap);
        if (gap > 1.5) ++depth_bad;

        if (n >= 64) {
          const CostInterval civ = asymptotic_cost_interval(p, n, r);
          ++asym_checks;
          if (double(opt.cost) < civ.lower || double(opt.cost) > civ.upper) ++asym_bad;
        }

        if (p == 2 && r == 2) {
          ++c5_checks;
          const double bound = 5.0 * std::sqrt(7.0 / 6.0) * double(n);
          worst_c = std::max(worst_c, double(opt.cost) / (std::sqrt(7.0 / 6.0) * double(n)));
          if (double(opt.cost) > bound) ++c5_bad;
        }

        ++uni_checks;
        bool rising = false, ok = true;
        u64 prev = predicted_cost(p, n, r, 0).total;
        for (u32 L = 1; L <= max_depth(p, n); ++L) {
          const u64 cur = predicted_cost(p, n, r, L).total;
          if (cur > prev) rising = true;
          if (rising && cur < prev) ok = false;
          prev = cur;
        }
        if (!ok) ++uni_bad;
      }

  SweepOutcome out;
  {
    std::ostringstream os;
    os << depth_checks << " (p, r, n) points, |L_opt - center| <= 1.5, worst gap "
       << std::fixed;
    os.precision(3);
    os << worst_depth_gap;
    out.depth_interval = {depth_bad == 0, os.str()};
  }
  {
    std::ostringstream os;
    os << asym_checks << " points, optimal predicted cost inside [lower, p^r * lower]";
    if (asym_bad) os << "; " << asym_bad << " escapes";
    out.asymptotic = {asym_bad == 0, os.str()};
  }
  {
    std::ostringstream os;
    os << c5_checks << " points, optimal cost <= 5 sqrt(7/6) n, worst c " << std::fixed;
    os.precision(3);
    os << worst_c;
    out.constant_bound = {c5_bad == 0, os.str()};
  }
  {
    std::ostringstream os;
    os << uni_checks << " depth profiles non-strictly unimodal";
    if (uni_bad) os << "; " << uni_bad << " violations";
    out.unimodality = {uni_bad == 0, os.str()};
  }
  return out;
}

// --- criterion 8: batch sharing ----------------------------------------------

Outcome criterion_batch() {
  Failures failures;
  std::atomic<u64> checks{0};
  std::vector<std::function<void()>> tasks;
  for (u32 p : kPrimes)
    for (u32 r : kVars)
      for (u32 n = 0; n <= kMaxN; ++n)
        tasks.push_back([=, &failures, &checks] {
          const ExtField& F = field_of(p, 2);
          SplitMix64 rng(pair_seed(p, r, n, 2, 9, 0));
          const Point a = random_point(F, r, rng);
          for (u32 sc : {2u, 3u, 4u}) {
            std::vector<DensePoly> qs;
            for (u32 i = 0; i < sc; ++i)
              qs.push_back(random_poly(rng.next(), p, 1, r, n));
            for (u32 L = 0; L <= max_depth(p, n); ++L) {
              MulLedger batch;
              const std::vector<Element> vals = eval_batch_shared(F, qs, a, L, batch);
              u64 separate = 0;
              bool values_ok = true;
              for (u32 i = 0; i < sc; ++i) {
                MulLedger one;
                const Element v = eval_frobenius(F, qs[i], a, L, one);
                separate += one.total();
                values_ok &= vals[i] == v && v == eval_naive(F, qs[i], a);
              }
              const CostBreakdown want = batch_implemented_cost(p, sc, n, r, L);
              const u64 d = n / checked_pow(p, L);
              bool ok = values_ok && batch.total() == want.total &&
                        batch.p_powers == want.p_powers &&
                        batch.reconstruction_mults == want.reconstruction &&
                        batch.table_mults == want.table &&
                        batch.scalar_premults == want.scalar_pre &&
                        batch.total() <= separate;
              if (d >= 2) ok = ok && batch.total() < separate;
              if (p == 2 && r == 2 && d >= 2)
                ok = ok && batch.total() == shared_cost(p, sc, n, r, L);
              ++checks;
              if (!ok) {
                std::ostringstream os;
                os << "p=" << p << " r=" << r << " n=" << n << " s=" << sc << " L=" << L;
                failures.add(os.str());
              }
            }
          }
        });
  parallel_run(tasks);
  std::ostringstream os;
  os << checks.load()
     << " batches: ledger == s * recursion + table-once terms, strict saving at d >= 2";
  if (failures.count) os << "; " << failures.count << " failures, e.g. " << failures.samples[0];
  return {failures.count == 0, os.str()};
}

// --- criterion 9: decompose/recompose round trip ------------------------------

Outcome criterion_roundtrip() {
  std::atomic<u64> checks{0};
  Failures failures;
  std::vector<std::function<void()>> tasks;
  for (u32 p : kPrimes)
    for (u32 r : kVars)
      for (u32 n = 0; n <= kMaxN; ++n)
        tasks.push_back([=, &failures, &checks] {
          SplitMix64 rng(pair_seed(p, r, n, 0, 0, 1));
          for (u32 trial = 0; trial < 500; ++trial) {
            const DensePoly poly = random_poly(rng.next(), p, 1, r, n);
            if (!(recompose(frobenius_decompose(poly)) == poly)) {
              std::ostringstream os;
              os << "p=" << p << " r=" << r << " n=" << n << " trial=" << trial;
              failures.add(os.str());
            }
            ++checks;
          }
        });
  parallel_run(tasks);
  std::ostringstream os;
  os << checks.load() << " random polynomials recomposed exactly";
  if (failures.count) os << "; " << failures.count << " failures, e.g. " << failures.samples[0];
  return {failures.count == 0, os.str()};
}

// --- criterion 10: CLI byte determinism ---------------------------------------

Outcome criterion_cli_determinism() {
  const std::vector<std::vector<const char*>> cases = {
      {"cost", "--p", "2", "--r", "2", "--n", "16"},
      {"cost", "--p", "5", "--r", "3", "--n", "500", "--format", "json"},
      {"bench", "--p", "2", "--r", "2", "--n-range", "4:64:4", "--seed", "7"},
      {"bench", "--p", "3", "--r", "1", "--n-range", "10:100:10", "--seed", "42"},
  };
  u64 bad = 0;
  for (const auto& argv : cases) {
    std::vector<const char*> full = {"frobeval"};
    full.insert(full.end(), argv.begin(), argv.end());
    std::ostringstream o1, e1, o2, e2;
    run_cli(static_cast<int>(full.size()), full.data(), o1, e1);
    run_cli(static_cast<int>(full.size()), full.data(), o2, e2);
    if (o1.str() != o2.str() || o1.str().empty()) ++bad;
  }
  std::ostringstream os;
  os << cases.size() << " command pairs byte-identical";
  if (bad) os << "; " << bad << " diverged";
  return {bad == 0, os.str()};
}

int report(int id, const char* name, const Outcome& out, double seconds) {
  std::printf("criterion %2d: %s — %s — %s (%.1fs)\n", id, out.pass ? "PASS" : "FAIL",
              name, out.detail.c_str(), seconds);
  std::fflush(stdout);
  return out.pass ? 0 : 1;
}

template <class Fn>
int timed(int id, const char* name, Fn fn) {
  const auto start = std::chrono::steady_clock::now();
  const Outcome out = fn();
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report(id, name, out, secs);
}

}  // namespace

int main() {
  build_fields();
  int failures = 0;

  failures += timed(1, "oracle equivalence (exact, full grid)", criterion_oracle_equivalence);
  failures += timed(2, "count reproduction p=2 r=2", criterion_count_p2r2);
  failures += timed(3, "count contract and predicted-cost bracket", criterion_count_general);

  const auto sweep_start = std::chrono::steady_clock::now();
  const SweepOutcome sweeps = criterion_sweeps();
  const double sweep_secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - sweep_start).count();
  failures += report(4, "optimal depth near B + log_p(n)/2", sweeps.depth_interval, sweep_secs);
  failures += report(5, "asymptotic cost containment", sweeps.asymptotic, 0.0);
  failures += report(6, "p=2 r=2 constant below 5", sweeps.constant_bound, 0.0);
  failures += report(7, "depth profile unimodality", sweeps.unimodality, 0.0);

  failures += timed(8, "batch sharing counts and savings", criterion_batch);
  failures += timed(9, "decompose/recompose round trip", criterion_roundtrip);
  failures += timed(10, "CLI byte determinism", criterion_cli_determinism);

  if (failures == 0)
    std::printf("acceptance: all 10 criteria passed\n");
  else
    std::printf("acceptance: %d criteria FAILED\n", failures);
  return failures;
}
