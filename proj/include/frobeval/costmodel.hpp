#ifndef FROBEVAL_COSTMODEL_HPP
#define FROBEVAL_COSTMODEL_HPP

#include <cstdint>

#include "frobeval/checked.hpp"
#include "frobeval/mpoly.hpp"

namespace frobeval {

/// Per-category multiplication count of one depth-L evaluation. Everything is
/// an exact integer; total is always the sum of the parts.
struct CostBreakdown {
  u32 L = 0;
  u64 p_powers = 0;
  u64 reconstruction = 0;
  u64 table = 0;
  u64 scalar_pre = 0;
  u64 combination = 0;
  u64 total = 0;

  bool operator==(const CostBreakdown&) const = default;
};

struct DepthInterval {
  double lower = 0;   // center - 1/2
  double upper = 0;   // center + 1/2
  double center = 0;  // offset + log_p(n)/2
  double offset = 0;  // the (p, r)-dependent constant in the center
};

struct CostInterval {
  double lower = 0;
  double upper = 0;  // p^r * lower
};

/// Multiplications of a direct table evaluation when coefficients are 0/1:
/// monomial_count(n, r) - r - 1, clamped at zero.
u64 monomial_eval_cost(u64 n, u32 r);

/// Direct evaluation including one coefficient product per monomial:
/// 2*monomial_count(n, r) - r - 2, clamped at zero.
u64 direct_eval_cost(u64 n, u32 r);

/// Largest useful recursion depth, ceil(log_p(max(n, 1))) + 1. Beyond it the
/// leaf degree stays 0 and the cost is strictly increasing.
u32 max_depth(u32 p, u64 n);

/// Closed-form count of the depth-L scheme: the p-power and reconstruction
/// geometric sums plus (p-1) * (monomial_count(d) - r - 1) table work at leaf
/// degree d = floor(n / p^L). Exact integers throughout (the geometric sums
/// are accumulated termwise, never via a rational prefactor).
CostBreakdown predicted_cost(u32 p, u64 n, u32 r, u32 L);

/// Exact contract for the evaluator's structural ledger. Differs from
/// predicted_cost in two implementation truths: scalar premultiples cover
/// every table entry except rank 0 ((p-2)*(M-1) instead of (p-2)*(M-r-1)),
/// and reconstruction monomials that do not fit in the table are computed
/// once and charged to reconstruction. The gap is bounded by (p-2)*r + p^r.
CostBreakdown implemented_cost(u32 p, u64 n, u32 r, u32 L);

/// implemented_cost for a batch of `s_count` polynomials sharing one table:
/// p-powers and reconstruction scale by s_count, table terms stay single.
CostBreakdown batch_implemented_cost(u32 p, u64 s_count, u64 n, u32 r, u32 L);

/// Closed-form batch count: s_count copies of the recursion term plus the
/// table term counted once. Reduces to predicted_cost(...).total at s=1.
u64 shared_cost(u32 p, u64 s_count, u64 n, u32 r, u32 L);

/// Reconstruction monomials x^i, i in [0,p)^r, of degree above
/// max(leaf degree, 1): absent from the shared table, computed once each.
/// Zero when L == 0 (no reconstruction happens at all).
u64 extra_reconstruction_mults(u32 p, u32 r, u64 d, u32 L);

enum class CostFn { predicted, implemented };

struct OptimalDepth {
  u32 depth = 0;
  u64 cost = 0;
};

/// Exhaustive argmin of the chosen cost function over L in [0, max_depth];
/// smallest L wins ties.
OptimalDepth optimal_depth(u32 p, u64 n, u32 r, CostFn fn = CostFn::predicted);

/// The unit interval of depths around center = offset + log_p(n)/2 that
/// contains the optimal depth asymptotically, where
/// offset = log_p((p-1)(p^r-1) / (r! (2 p^r - 1))) / (2r).
DepthInterval optimal_depth_interval(u32 p, u64 n, u32 r);

/// Asymptotic bracket of the optimal cost:
/// lower = 2 p^{-r/2} sqrt((p-1)(2p^r-1) / ((p^r-1) r!)) n^{r/2},
/// upper = p^r * lower.
CostInterval asymptotic_cost_interval(u32 p, u64 n, u32 r);

/// Dimension (n+1)^r of the space of polynomials with per-variable degree
/// at most n, and the matching cost bound 2 sqrt(2 p^{r+1}) n^{r/2}.
u64 box_dim(u64 n, u32 r);
double box_bound(u32 p, u64 n, u32 r);

}  // namespace frobeval

#endif
