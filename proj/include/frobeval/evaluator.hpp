#ifndef FROBEVAL_EVALUATOR_HPP
#define FROBEVAL_EVALUATOR_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "frobeval/costmodel.hpp"
#include "frobeval/gf.hpp"
#include "frobeval/mpoly.hpp"

namespace frobeval {

/// Evaluation point (alpha_1, ..., alpha_r) in F_{p^m}^r.
using Point = std::vector<Element>;

/// Values at the point of every monomial of total degree <= degree, indexed
/// by deglex rank. scaled (filled by premultiply_scalars for p >= 3) holds
/// c * values[k] at scaled[(c-2)*M + k] for c in 2..p-1.
struct MonomialTable {
  u32 vars = 1;
  u32 degree = 0;
  std::vector<Element> values;
  std::vector<Element> scaled;

  bool premultiplied() const { return !scaled.empty(); }
};

struct EvalResult {
  Element value;
  u32 L_used = 0;
  MulLedger ledger;
};

/// Independent correctness oracle: every monomial is evaluated by fresh
/// repeated multiplication on the schoolbook path. Shares nothing with the
/// table/decomposition machinery and never touches a ledger.
Element eval_naive(const ExtField& field, const DensePoly& poly, const Point& a);
Element eval_naive(const ExtField& field, const DensePoly& poly, const Point& a,
                   const SubfieldEmbedding& embedding);

/// Iterates degree block by degree block: every monomial of degree >= 2 is
/// one coordinate times an already-stored lower monomial, so structural
/// table_mults grows by exactly monomial_count(degree, r) - r - 1 (zero for
/// degree <= 1; the constant and the coordinates are free reads).
MonomialTable build_monomial_table(const ExtField& field, const Point& a,
                                   u32 degree, MulLedger& ledger);

/// Fills the c-fold multiples of every table entry except rank 0 for
/// c in 2..p-1: (p-2)*(M-1) structural scalar_premults. No-op for p = 2.
void premultiply_scalars(const ExtField& field, MonomialTable& table,
                         MulLedger& ledger);

/// Q(a) as a pure sum of (premultiplied) table entries; contributes zero to
/// every multiplication counter. Q must be a prime-field polynomial of
/// degree at most table.degree.
Element eval_with_table(const ExtField& field, const DensePoly& q,
                        const MonomialTable& table, MulLedger& ledger);

/// Depth-L evaluation: decompose into the p^{rL} residue components of depth
/// L, evaluate every leaf against one shared monomial table of degree
/// floor(n/p^L), then fold the tree back up, each node combining its p^r
/// children as sum_i x^i(a) * frobenius(child_i) with the i = 0 product
/// skipped. Structural ledger totals match implemented_cost(p, n, r, L)
/// category by category.
Element eval_frobenius(const ExtField& field, const DensePoly& poly,
                       const Point& a, u32 L, MulLedger& ledger);

/// eval_frobenius at the depth minimizing predicted_cost (smallest on ties).
EvalResult eval_auto(const ExtField& field, const DensePoly& poly,
                     const Point& a, CountMode mode = CountMode::structural);

/// Evaluates several polynomials with identical (p, r, n) at one point,
/// building the table (and scalar premultiples and out-of-table
/// reconstruction monomials) once; only the per-polynomial decomposition and
/// reconstruction repeat.
std::vector<Element> eval_batch_shared(const ExtField& field,
                                       std::span<const DensePoly> polys,
                                       const Point& a, u32 L, MulLedger& ledger);

/// Extension-coefficient evaluation: split into s prime-field polynomials,
/// evaluate them as one shared batch, then combine sum beta^i v_i. The
/// combination costs s-2 power products plus s-1 value products
/// (combination_mults = 2s-3 structurally) for s >= 2, nothing for s = 1.
EvalResult eval_extension(const ExtField& field, const DensePoly& poly,
                          const Point& a, const SubfieldEmbedding& embedding,
                          u32 L, CountMode mode = CountMode::structural);

/// eval_extension at the depth minimizing shared_cost(p, s, n, r, L).
EvalResult eval_extension_auto(const ExtField& field, const DensePoly& poly,
                               const Point& a, const SubfieldEmbedding& embedding,
                               CountMode mode = CountMode::structural);

}  // namespace frobeval

#endif
