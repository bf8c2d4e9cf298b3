#ifndef FROBEVAL_MPOLY_HPP
#define FROBEVAL_MPOLY_HPP

#include <cstdint>
#include <vector>

#include "frobeval/checked.hpp"
#include "frobeval/gf.hpp"

namespace frobeval {

/// Exponent tuple (e_1, ..., e_r) of the monomial x_1^{e_1} ... x_r^{e_r}.
using ExponentVec = std::vector<u32>;

/// Number of monomials of total degree <= n in r variables:
/// binomial(n + r, r). Throws std::overflow_error past the exact 64-bit range.
u64 monomial_count(u64 n, u32 r);

// ---------------------------------------------------------------------------
// Degree-lexicographic monomial order
// ---------------------------------------------------------------------------
// Rank 0 is the constant monomial. Ranks ascend first by total degree; inside
// a degree block tuples are ordered lexicographically on (e_1, ..., e_r) with
// e_1 most significant and LARGER entries first, so for r = 2 the degree-1
// block is x_1, x_2 and the degree-2 block is x_1^2, x_1 x_2, x_2^2. This is
// the ordering of the coeffs array in the polynomial JSON format.

u64 deglex_rank(const ExponentVec& e);
ExponentVec deglex_unrank(u64 k, u32 r);

/// Advance e to the next exponent vector in deglex order (amortized O(r),
/// used to stream all monomials of a dense polynomial without unranking).
void deglex_next(ExponentVec& e);

/// Dense polynomial of total degree <= n in r variables over F_{p^s}.
/// coeffs holds monomial_count(n, r) scalars in deglex rank order; each
/// scalar is s residues in [0, p) (the power-basis coordinates over the
/// canonical modulus of F_{p^s}), stored contiguously, so the residue j of
/// the rank-k coefficient lives at coeffs[k*s + j].
struct DensePoly {
  u32 p = 2;
  u32 s = 1;
  u32 r = 1;
  u32 n = 0;
  std::vector<u32> coeffs;

  u64 coeff_count() const { return coeffs.size() / s; }
  u32* coeff(u64 rank) { return coeffs.data() + rank * s; }
  const u32* coeff(u64 rank) const { return coeffs.data() + rank * s; }

  bool operator==(const DensePoly&) const = default;
};

DensePoly make_zero_poly(u32 p, u32 s, u32 r, u32 n);

/// Residue components of the p-th power decomposition
///   P(x) = sum over i in [0,p)^r of x^i * Q_i(x_1, ..., x_r)^p.
/// parts[t] is Q_i where t is the mixed-radix index of i with i_1 most
/// significant. All parts share the uniform storage bound floor(n/p); the
/// per-part tight bound floor((n - |i|)/p) is only used for cost accounting.
struct DecomposedPoly {
  u32 p = 2;
  u32 r = 1;
  u32 source_degree = 0;
  u32 part_degree = 0;
  std::vector<DensePoly> parts;

  bool operator==(const DecomposedPoly&) const = default;
};

/// Mixed-radix index of a residue tuple, i_1 most significant.
u64 residue_index(const ExponentVec& i, u32 p);

/// Tight degree bound floor((n - |i|)/p) of one part (0 if |i| > n).
u32 tight_part_degree(const DecomposedPoly& d, u64 part);

/// Splits a prime-field polynomial into its p^r residue components. Pure
/// reindexing of coefficients; no field multiplications. Requires s == 1.
DecomposedPoly frobenius_decompose(const DensePoly& poly);

/// Inverse of frobenius_decompose: symbolically expands
/// sum_i x^i * parts[i](x_1^p, ..., x_r^p). Test oracle for the evaluator's
/// leaf decomposition; not used on any evaluation path.
DensePoly recompose(const DecomposedPoly& d);

/// Writes P over F_{p^s} as sum of beta^i * q_i with q_i over F_p, expanding
/// every coefficient (embedded along the given map) on the basis
/// {1, beta, ..., beta^{s-1}}. No ledger activity.
std::vector<DensePoly> split_base_field(const DensePoly& poly,
                                        const SubfieldEmbedding& embedding);

/// Deterministic pseudo-random dense polynomial: a SplitMix64 stream seeded
/// with `seed`, one draw per residue in coeffs order, each reduced mod p.
DensePoly random_poly(u64 seed, u32 p, u32 s, u32 r, u32 n);

}  // namespace frobeval

#endif
