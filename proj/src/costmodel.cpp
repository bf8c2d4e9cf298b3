#include "frobeval/costmodel.hpp"

#include <cmath>
#include <stdexcept>

namespace frobeval {

namespace {

u64 clamp0(u64 a, u64 b) { return a > b ? a - b : 0; }

u64 factorial(u32 r) {
  u64 f = 1;
  for (u32 i = 2; i <= r; ++i) f = checked_mul(f, i);
  return f;
}

void check_params(u32 p, u32 r) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (r < 1) throw std::invalid_argument("variable count must be >= 1");
}

// floor(n / p^L), saturating at 0 once the divisor passes n.
u64 leaf_degree(u32 p, u64 n, u32 L) {
  u64 d = n;
  for (u32 i = 0; i < L && d; ++i) d /= p;
  return d;
}

struct RecursionTerms {
  u64 p_powers;        // p^r + p^{2r} + ... + p^{rL}
  u64 reconstruction;  // p^{rL} - 1
};

RecursionTerms recursion_terms(u32 p, u32 r, u32 L) {
  u64 pr = checked_pow(p, r);
  u64 powers = 0, level = 1;
  for (u32 l = 1; l <= L; ++l) {
    level = checked_mul(level, pr);
    powers = checked_add(powers, level);
  }
  return {powers, level - 1};
}

}  // namespace

u64 monomial_eval_cost(u64 n, u32 r) {
  return clamp0(monomial_count(n, r), u64(r) + 1);
}

u64 direct_eval_cost(u64 n, u32 r) {
  return clamp0(checked_mul(2, monomial_count(n, r)), u64(r) + 2);
}

u32 max_depth(u32 p, u64 n) {
  u32 k = 0;
  u64 v = 1;
  while (v < n) {
    v = checked_mul(v, p);
    ++k;
  }
  return k + 1;
}

u64 extra_reconstruction_mults(u32 p, u32 r, u64 d, u32 L) {
  if (L == 0) return 0;
  const u64 box_total = checked_pow(p, r);
  const u64 threshold = d > 1 ? d : 1;  // degrees <= max(d,1) are free or in table
  if (threshold >= u64(r) * (p - 1)) return 0;
  // Count tuples in [0,p)^r with sum <= threshold by a capped digit DP,
  // then take the complement.
  std::vector<u64> ways(threshold + 1, 0);
  ways[0] = 1;
  for (u32 digit = 0; digit < r; ++digit) {
    std::vector<u64> prefix(threshold + 2, 0);
    for (u64 t = 0; t <= threshold; ++t)
      prefix[t + 1] = checked_add(prefix[t], ways[t]);
    for (u64 t = 0; t <= threshold; ++t) {
      u64 lo = t + 1 >= p ? t + 1 - p : 0;
      ways[t] = prefix[t + 1] - prefix[lo];
    }
  }
  u64 within = 0;
  for (u64 w : ways) within = checked_add(within, w);
  return box_total - within;
}

CostBreakdown predicted_cost(u32 p, u64 n, u32 r, u32 L) {
  check_params(p, r);
  CostBreakdown c;
  c.L = L;
  const RecursionTerms rec = recursion_terms(p, r, L);
  c.p_powers = rec.p_powers;
  c.reconstruction = rec.reconstruction;
  const u64 d = leaf_degree(p, n, L);
  c.table = monomial_eval_cost(d, r);
  c.scalar_pre = checked_mul(p - 2, c.table);
  c.total = checked_add(checked_add(c.p_powers, c.reconstruction),
                        checked_add(c.table, c.scalar_pre));
  return c;
}

CostBreakdown implemented_cost(u32 p, u64 n, u32 r, u32 L) {
  check_params(p, r);
  CostBreakdown c;
  c.L = L;
  const RecursionTerms rec = recursion_terms(p, r, L);
  const u64 d = leaf_degree(p, n, L);
  c.p_powers = rec.p_powers;
  c.reconstruction =
      checked_add(rec.reconstruction, extra_reconstruction_mults(p, r, d, L));
  c.table = monomial_eval_cost(d, r);
  c.scalar_pre = checked_mul(p - 2, clamp0(monomial_count(d, r), 1));
  c.total = checked_add(checked_add(c.p_powers, c.reconstruction),
                        checked_add(c.table, c.scalar_pre));
  return c;
}

CostBreakdown batch_implemented_cost(u32 p, u64 s_count, u64 n, u32 r, u32 L) {
  if (s_count < 1) throw std::invalid_argument("batch size must be >= 1");
  CostBreakdown c = implemented_cost(p, n, r, L);
  const u64 extra = extra_reconstruction_mults(p, r, leaf_degree(p, n, L), L);
  c.p_powers = checked_mul(c.p_powers, s_count);
  c.reconstruction = checked_add(checked_mul(c.reconstruction - extra, s_count), extra);
  c.total = checked_add(checked_add(c.p_powers, c.reconstruction),
                        checked_add(c.table, c.scalar_pre));
  return c;
}

u64 shared_cost(u32 p, u64 s_count, u64 n, u32 r, u32 L) {
  check_params(p, r);
  if (s_count < 1) throw std::invalid_argument("batch size must be >= 1");
  // s * (2p^r - 1)(p^{rL} - 1)/(p^r - 1) via the geometric sum, so the
  // division never happens.
  const u64 pr = checked_pow(p, r);
  u64 geo = 0, term = 1;
  for (u32 l = 0; l < L; ++l) {
    geo = checked_add(geo, term);
    term = checked_mul(term, pr);
  }
  const u64 rec = checked_mul(checked_mul(s_count, checked_mul(2, pr) - 1), geo);
  const u64 d = leaf_degree(p, n, L);
  return checked_add(rec, checked_mul(p - 1, monomial_eval_cost(d, r)));
}

OptimalDepth optimal_depth(u32 p, u64 n, u32 r, CostFn fn) {
  check_params(p, r);
  const u32 lmax = max_depth(p, n);
  OptimalDepth best;
  bool have = false;
  for (u32 L = 0; L <= lmax; ++L) {
    u64 cost;
    try {
      cost = fn == CostFn::predicted ? predicted_cost(p, n, r, L).total
                                     : implemented_cost(p, n, r, L).total;
    } catch (const std::overflow_error&) {
      continue;  // beyond 64-bit range, certainly not the minimum
    }
    if (!have || cost < best.cost) {
      best = {L, cost};
      have = true;
    }
  }
  if (!have) throw std::overflow_error("every depth overflows the cost range");
  return best;
}

DepthInterval optimal_depth_interval(u32 p, u64 n, u32 r) {
  check_params(p, r);
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const double pr = std::pow(double(p), double(r));
  const double num = double(p - 1) * (pr - 1.0);
  const double den = double(factorial(r)) * (2.0 * pr - 1.0);
  const double logp = std::log(double(p));
  DepthInterval iv;
  iv.offset = std::log(num / den) / logp / (2.0 * r);
  iv.center = iv.offset + std::log(double(n)) / logp / 2.0;
  iv.lower = iv.center - 0.5;
  iv.upper = iv.center + 0.5;
  return iv;
}

CostInterval asymptotic_cost_interval(u32 p, u64 n, u32 r) {
  check_params(p, r);
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const double pr = std::pow(double(p), double(r));
  const double coeff =
      2.0 / std::sqrt(pr) *
      std::sqrt(double(p - 1) * (2.0 * pr - 1.0) / ((pr - 1.0) * double(factorial(r))));
  CostInterval iv;
  iv.lower = coeff * std::pow(double(n), double(r) / 2.0);
  iv.upper = pr * iv.lower;
  return iv;
}

u64 box_dim(u64 n, u32 r) { return checked_pow(checked_add(n, 1), r); }

double box_bound(u32 p, u64 n, u32 r) {
  return 2.0 * std::sqrt(2.0 * std::pow(double(p), double(r) + 1.0)) *
         std::pow(double(n), double(r) / 2.0);
}

}  // namespace frobeval
