#include "frobeval/cli.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "frobeval/costmodel.hpp"
#include "frobeval/evaluator.hpp"
#include "frobeval/io.hpp"
#include "frobeval/rng.hpp"

namespace frobeval {

namespace {

constexpr u64 kCoeffCeiling = u64{1} << 24;  // dense storage cap for eval paths

struct RunConfig {
  u32 p = 2;
  u32 s = 1;
  u32 r = 2;
  u32 n = 8;
  u32 m = 1;
  std::string L = "auto";
  u32 trials = 100;
  u64 seed = 1;
  std::string count_mode = "structural";
  std::string format = "csv";
  std::string n_range;
  std::string input;
  std::string point;
};

void validate_core(const RunConfig& cfg, bool needs_field) {
  if (!is_prime(cfg.p) || cfg.p > 65521)
    throw std::invalid_argument("p must be prime (2 <= p < 2^16)");
  if (cfg.r < 1 || cfg.r > 8) throw std::invalid_argument("r must be in [1, 8]");
  if (cfg.n > 1000000) throw std::invalid_argument("n must be at most 10^6");
  if (needs_field) {
    if (cfg.m < 1 || cfg.m > 32) throw std::invalid_argument("m must be in [1, 32]");
    if (checked_pow(cfg.p, cfg.m) > (u64{1} << 32))
      throw std::invalid_argument("field order p^m must be at most 2^32");
    if (cfg.s < 1) throw std::invalid_argument("s must be >= 1");
    if (cfg.s > 1 && cfg.m % cfg.s != 0)
      throw std::invalid_argument("s must divide m");
  }
}

void validate_dense_size(u32 p, u32 s, u32 r, u32 n) {
  (void)p;
  if (checked_mul(monomial_count(n, r), s) > kCoeffCeiling)
    throw std::invalid_argument(
        "dense polynomial too large for evaluation (monomial count ceiling 2^24)");
}

CountMode parse_count_mode(const std::string& s) {
  if (s == "structural") return CountMode::structural;
  if (s == "value-aware" || s == "value_aware") return CountMode::value_aware;
  throw std::invalid_argument("count-mode must be 'structural' or 'value-aware'");
}

void check_format(const std::string& s) {
  if (s != "csv" && s != "json")
    throw std::invalid_argument("format must be 'csv' or 'json'");
}

// Floats are rounded to six decimals before they reach either output format,
// so the CSV text and the JSON number carry identical values.
double round6(double x) { return std::nearbyint(x * 1e6) / 1e6; }

std::string fmt6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", round6(x));
  return buf;
}

Point random_point(const ExtField& field, u32 r, SplitMix64& rng) {
  Point a;
  a.reserve(r);
  for (u32 j = 0; j < r; ++j) {
    std::vector<u32> c(field.m());
    for (u32& v : c) v = rng.below(field.p());
    a.push_back(field.from_coeffs(std::move(c)));
  }
  return a;
}

nlohmann::ordered_json ledger_to_json(const MulLedger& led) {
  nlohmann::ordered_json j;
  j["table_mults"] = led.table_mults;
  j["p_powers"] = led.p_powers;
  j["reconstruction_mults"] = led.reconstruction_mults;
  j["scalar_premults"] = led.scalar_premults;
  j["combination_mults"] = led.combination_mults;
  j["free_mults"] = led.free_mults;
  j["total"] = led.total();
  return j;
}

// --- verify ------------------------------------------------------------

bool ledger_matches(const MulLedger& led, const CostBreakdown& want, u64 combination) {
  return led.p_powers == want.p_powers && led.reconstruction_mults == want.reconstruction &&
         led.table_mults == want.table && led.scalar_premults == want.scalar_pre &&
         led.combination_mults == combination;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  validate_core(cfg, true);
  validate_dense_size(cfg.p, cfg.s, cfg.r, cfg.n);
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");

  const ExtField field(cfg.p, cfg.m);
  std::optional<SubfieldEmbedding> embedding;
  if (cfg.s > 1) embedding.emplace(field, cfg.s);

  const u32 lmax = max_depth(cfg.p, cfg.n);
  SplitMix64 rng(cfg.seed);
  u64 checks = 0, failures = 0;
  for (u32 trial = 0; trial < cfg.trials; ++trial) {
    const DensePoly poly = random_poly(rng.next(), cfg.p, cfg.s, cfg.r, cfg.n);
    const Point a = random_point(field, cfg.r, rng);
    const Element expected = cfg.s == 1 ? eval_naive(field, poly, a)
                                        : eval_naive(field, poly, a, *embedding);
    for (u32 L = 0; L <= lmax; ++L) {
      if (cfg.s == 1) {
        MulLedger led(CountMode::structural);
        const Element got = eval_frobenius(field, poly, a, L, led);
        ++checks;
        if (!(got == expected)) {
          ++failures;
          if (failures <= 5)
            err << "FAIL value trial=" << trial << " L=" << L << "\n";
        }
        ++checks;
        if (!ledger_matches(led, implemented_cost(cfg.p, cfg.n, cfg.r, L), 0)) {
          ++failures;
          if (failures <= 5)
            err << "FAIL count trial=" << trial << " L=" << L
                << " measured=" << led.total() << "\n";
        }
      } else {
        const EvalResult res =
            eval_extension(field, poly, a, *embedding, L, CountMode::structural);
        ++checks;
        if (!(res.value == expected)) {
          ++failures;
          if (failures <= 5)
            err << "FAIL extension value trial=" << trial << " L=" << L << "\n";
        }
        ++checks;
        const u64 combo = cfg.s >= 2 ? 2 * u64(cfg.s) - 3 : 0;
        if (!ledger_matches(res.ledger,
                            batch_implemented_cost(cfg.p, cfg.s, cfg.n, cfg.r, L), combo)) {
          ++failures;
          if (failures <= 5)
            err << "FAIL extension count trial=" << trial << " L=" << L << "\n";
        }
      }
    }
  }
  out << "verify p=" << cfg.p << " s=" << cfg.s << " r=" << cfg.r << " n=" << cfg.n
      << " m=" << cfg.m << " trials=" << cfg.trials << " L=0.." << lmax << ": "
      << (checks - failures) << "/" << checks << " checks passed\n";
  return failures == 0 ? 0 : 1;
}

// --- cost ---------------------------------------------------------------

int cmd_cost(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  validate_core(cfg, false);
  check_format(cfg.format);
  if (cfg.n < 1) throw std::invalid_argument("n must be >= 1 for cost tables");

  const u32 lmax = max_depth(cfg.p, cfg.n);
  std::vector<CostBreakdown> predicted, implemented;
  for (u32 L = 0; L <= lmax; ++L) {
    predicted.push_back(predicted_cost(cfg.p, cfg.n, cfg.r, L));
    implemented.push_back(implemented_cost(cfg.p, cfg.n, cfg.r, L));
  }
  const OptimalDepth opt = optimal_depth(cfg.p, cfg.n, cfg.r, CostFn::predicted);
  const OptimalDepth opt_impl = optimal_depth(cfg.p, cfg.n, cfg.r, CostFn::implemented);
  const DepthInterval div = optimal_depth_interval(cfg.p, cfg.n, cfg.r);
  const CostInterval civ = asymptotic_cost_interval(cfg.p, cfg.n, cfg.r);

  if (cfg.format == "csv") {
    out << "L,predicted,implemented,p_powers,reconstruction,table,scalar_pre\n";
    for (u32 L = 0; L <= lmax; ++L) {
      const CostBreakdown& imp = implemented[L];
      out << L << ',' << predicted[L].total << ',' << imp.total << ',' << imp.p_powers
          << ',' << imp.reconstruction << ',' << imp.table << ',' << imp.scalar_pre
          << "\n";
    }
    out << "L_opt," << opt.depth << "\n";
    out << "L_opt_implemented," << opt_impl.depth << "\n";
    out << "center," << fmt6(div.center) << "\n";
    out << "offset," << fmt6(div.offset) << "\n";
    out << "asym_lower," << fmt6(civ.lower) << "\n";
    out << "asym_upper," << fmt6(civ.upper) << "\n";
    return 0;
  }
  nlohmann::ordered_json j;
  j["p"] = cfg.p;
  j["r"] = cfg.r;
  j["n"] = cfg.n;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (u32 L = 0; L <= lmax; ++L) {
    nlohmann::ordered_json row;
    row["L"] = L;
    row["predicted"] = predicted[L].total;
    row["implemented"] = implemented[L].total;
    row["p_powers"] = implemented[L].p_powers;
    row["reconstruction"] = implemented[L].reconstruction;
    row["table"] = implemented[L].table;
    row["scalar_pre"] = implemented[L].scalar_pre;
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  j["L_opt"] = opt.depth;
  j["L_opt_implemented"] = opt_impl.depth;
  j["center"] = round6(div.center);
  j["offset"] = round6(div.offset);
  j["asym_lower"] = round6(civ.lower);
  j["asym_upper"] = round6(civ.upper);
  out << j.dump() << "\n";
  return 0;
}

// --- eval ---------------------------------------------------------------

int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  check_format(cfg.format);
  const CountMode mode = parse_count_mode(cfg.count_mode);
  const DensePoly poly = [&] {
    try {
      return poly_from_json(load_json_file(cfg.input));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(cfg.input + ": " + e.what());
    }
  }();
  validate_dense_size(poly.p, poly.s, poly.r, poly.n);

  const nlohmann::json pj = load_json_file(cfg.point);
  u64 m = 0;
  try {
    if (!pj.contains("m") || !pj.at("m").is_number_unsigned())
      throw std::invalid_argument("missing field 'm'");
    m = pj.at("m").get<u64>();
    if (m < 1 || m > 32 || checked_pow(poly.p, static_cast<u32>(m)) > (u64{1} << 32))
      throw std::invalid_argument("field 'm' out of range");
    if (poly.s > 1 && m % poly.s != 0)
      throw std::invalid_argument("field 'm' must be divisible by the coefficient degree s");
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(cfg.point + ": " + e.what());
  }
  const ExtField field(poly.p, static_cast<u32>(m));
  const Point a = [&] {
    try {
      Point pt = point_from_json(field, pj);
      if (pt.size() != poly.r)
        throw std::invalid_argument("coords must have exactly " +
                                    std::to_string(poly.r) + " vectors");
      return pt;
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(cfg.point + ": " + e.what());
    }
  }();

  EvalResult res;
  if (poly.s == 1) {
    if (cfg.L == "auto") {
      res = eval_auto(field, poly, a, mode);
    } else {
      res.L_used = static_cast<u32>(std::stoul(cfg.L));
      res.ledger = MulLedger(mode);
      res.value = eval_frobenius(field, poly, a, res.L_used, res.ledger);
    }
  } else {
    const SubfieldEmbedding embedding(field, poly.s);
    res = cfg.L == "auto"
              ? eval_extension_auto(field, poly, a, embedding, mode)
              : eval_extension(field, poly, a, embedding,
                               static_cast<u32>(std::stoul(cfg.L)), mode);
  }

  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["value"] = res.value.coeffs;
    j["L_used"] = res.L_used;
    j["count_mode"] = cfg.count_mode;
    j["ledger"] = ledger_to_json(res.ledger);
    out << j.dump() << "\n";
  } else {
    out << "value,";
    for (u32 i = 0; i < res.value.coeffs.size(); ++i)
      out << (i ? " " : "") << res.value.coeffs[i];
    out << "\n";
    out << "L_used," << res.L_used << "\n";
    out << "count_mode," << cfg.count_mode << "\n";
    const MulLedger& led = res.ledger;
    out << "table_mults," << led.table_mults << "\n";
    out << "p_powers," << led.p_powers << "\n";
    out << "reconstruction_mults," << led.reconstruction_mults << "\n";
    out << "scalar_premults," << led.scalar_premults << "\n";
    out << "combination_mults," << led.combination_mults << "\n";
    out << "free_mults," << led.free_mults << "\n";
    out << "total," << led.total() << "\n";
  }
  return 0;
}

// --- bench ----------------------------------------------------------------

struct Range {
  u64 lo = 0, hi = 0, step = 1;
};

Range parse_range(const std::string& text) {
  Range range;
  std::vector<u64> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(':', pos);
    std::string piece = text.substr(pos, next == std::string::npos ? next : next - pos);
    if (piece.empty() || piece.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("n-range must be lo:hi[:step] with decimal integers");
    parts.push_back(std::stoull(piece));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (parts.size() < 2 || parts.size() > 3)
    throw std::invalid_argument("n-range must be lo:hi[:step]");
  range.lo = parts[0];
  range.hi = parts[1];
  range.step = parts.size() == 3 ? parts[2] : 1;
  if (range.step < 1) throw std::invalid_argument("n-range step must be >= 1");
  if (range.lo > range.hi) throw std::invalid_argument("empty n-range");
  if (range.lo < 2) throw std::invalid_argument("n-range must start at 2 or higher");
  return range;
}

int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  validate_core(cfg, true);
  if (cfg.n_range.empty()) throw std::invalid_argument("bench requires --n-range");
  const Range range = parse_range(cfg.n_range);
  if (range.hi > 1000000) throw std::invalid_argument("n must be at most 10^6");

  validate_dense_size(cfg.p, 1, cfg.r, static_cast<u32>(range.hi));
  const ExtField field(cfg.p, cfg.m);
  SplitMix64 rng(cfg.seed);
  out << "n,direct,predicted_opt,measured,L_opt,ratio\n";
  for (u64 n = range.lo; n <= range.hi; n += range.step) {
    const u64 direct = predicted_cost(cfg.p, n, cfg.r, 0).total;
    const OptimalDepth opt = optimal_depth(cfg.p, n, cfg.r, CostFn::predicted);
    const DensePoly poly = random_poly(rng.next(), cfg.p, 1, cfg.r, static_cast<u32>(n));
    const Point a = random_point(field, cfg.r, rng);
    MulLedger led(CountMode::structural);
    eval_frobenius(field, poly, a, opt.depth, led);
    const u64 measured = led.total();
    out << n << ',' << direct << ',' << opt.cost << ',' << measured << ','
        << opt.depth << ',' << fmt6(double(measured) / double(direct)) << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Instrumented evaluation of dense multivariate polynomials over finite fields"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "field characteristic (prime)");
    sub->add_option("--s", cfg.s, "coefficient field degree: coefficients in F_{p^s}");
    sub->add_option("--r", cfg.r, "number of variables");
    sub->add_option("--n", cfg.n, "total degree bound");
    sub->add_option("--m", cfg.m, "evaluation field degree: points in F_{p^m}");
    sub->add_option("--L", cfg.L, "recursion depth, or 'auto'");
    sub->add_option("--trials", cfg.trials, "number of random trials");
    sub->add_option("--seed", cfg.seed, "PRNG seed");
    sub->add_option("--count-mode", cfg.count_mode, "structural | value-aware");
    sub->add_option("--format", cfg.format, "csv | json");
  };

  CLI::App* verify = app.add_subcommand("verify", "check evaluator against the naive oracle");
  add_common(verify);
  CLI::App* cost = app.add_subcommand("cost", "closed-form cost table over all depths");
  add_common(cost);
  CLI::App* eval = app.add_subcommand("eval", "evaluate a polynomial file at a point file");
  add_common(eval);
  eval->add_option("--input", cfg.input, "polynomial JSON file")->required();
  eval->add_option("--point", cfg.point, "point JSON file")->required();
  CLI::App* bench = app.add_subcommand("bench", "cost sweep over an n range");
  add_common(bench);
  bench->add_option("--n-range", cfg.n_range, "sweep range lo:hi[:step]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(verify)) return cmd_verify(cfg, out, err);
    if (app.got_subcommand(cost)) return cmd_cost(cfg, out, err);
    if (app.got_subcommand(eval)) return cmd_eval(cfg, out, err);
    if (app.got_subcommand(bench)) return cmd_bench(cfg, out, err);
  } catch (const std::overflow_error& e) {
    err << "overflow: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace frobeval
