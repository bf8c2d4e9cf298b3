#include "frobeval/evaluator.hpp"

#include <algorithm>
#include <stdexcept>

namespace frobeval {

namespace {

// Cap on the flat leaf coefficient array; p^{rL} grows much faster than the
// polynomial itself.
constexpr u64 kLeafCoeffCeiling = u64{1} << 27;

void check_point(const ExtField& field, u32 r, const Point& a) {
  if (a.size() != r) throw std::invalid_argument("point dimension mismatch");
  for (const Element& c : a)
    if (c.field_tag != field.tag()) throw std::invalid_argument("field mismatch");
}

u32 leaf_degree(u32 p, u32 n, u32 L) {
  u64 d = n;
  for (u32 i = 0; i < L && d; ++i) d /= p;
  return static_cast<u32>(d);
}

// --- value-space policies ---------------------------------------------------
// The evaluation core is written once and instantiated over the index form
// (small tabled fields; the hot configuration) and over plain elements
// (arbitrary fields).

struct IndexOps {
  const ExtField& F;
  using Val = u32;
  Val zero() const { return 0; }
  Val add(Val x, Val y) const { return F.idx_add(x, y); }
  Val mul(Val x, Val y, MulLedger& led, MulCategory cat) const {
    return F.idx_mul(x, y, led, cat);
  }
  Val frob(Val x, MulLedger& led) const { return F.idx_frobenius(x, led); }
  Val from_element(const Element& e) const { return static_cast<u32>(F.to_index(e)); }
  Element to_element(Val v) const { return F.from_index(v); }
};

struct ElementOps {
  const ExtField& F;
  using Val = Element;
  Val zero() const { return F.zero(); }
  Val add(const Val& x, const Val& y) const { return F.add(x, y); }
  Val mul(const Val& x, const Val& y, MulLedger& led, MulCategory cat) const {
    return F.mul(x, y, led, cat);
  }
  Val frob(const Val& x, MulLedger& led) const { return F.frobenius(x, led); }
  Val from_element(const Element& e) const { return e; }
  Element to_element(const Val& v) const { return v; }
};

template <class Ops>
struct EvalContext {
  Ops ops;
  const ExtField& F;
  u32 r, n, L;

  EvalContext(Ops o, const ExtField& f, u32 vars, u32 degree, u32 depth)
      : ops(o), F(f), r(vars), n(degree), L(depth) {}

  u32 d = 0;
  u64 box = 0;         // p^r
  u64 leaves = 0;      // p^{rL}
  u64 table_size = 0;  // monomial_count(d, r)
  std::vector<typename Ops::Val> table_vals;
  std::vector<typename Ops::Val> scaled_vals;
  std::vector<typename Ops::Val> recon_monos;  // box values, built when L >= 1
  // scratch reused across evaluations of one batch
  std::vector<u32> leaf_coeffs;
  std::vector<typename Ops::Val> vals;
};

template <class Ops>
EvalContext<Ops> make_context(Ops ops, const ExtField& F, const Point& a, u32 r,
                              u32 n, u32 L, MulLedger& ledger) {
  check_point(F, r, a);
  if (L > max_depth(F.p(), n)) throw std::invalid_argument("L out of range");
  EvalContext<Ops> ctx{ops, F, r, n, L};
  const u32 p = F.p();
  ctx.d = leaf_degree(p, n, L);
  ctx.box = checked_pow(p, r);
  ctx.leaves = checked_pow(ctx.box, L);
  ctx.table_size = monomial_count(ctx.d, r);
  if (checked_mul(ctx.leaves, ctx.table_size) > kLeafCoeffCeiling)
    throw std::invalid_argument("depth-L decomposition exceeds the evaluation size ceiling");

  MonomialTable table = build_monomial_table(F, a, ctx.d, ledger);
  premultiply_scalars(F, table, ledger);
  ctx.table_vals.reserve(table.values.size());
  for (const Element& e : table.values) ctx.table_vals.push_back(ops.from_element(e));
  ctx.scaled_vals.reserve(table.scaled.size());
  for (const Element& e : table.scaled) ctx.scaled_vals.push_back(ops.from_element(e));

  if (L >= 1) {
    ctx.recon_monos.assign(ctx.box, ops.zero());
    std::vector<typename Ops::Val> coords;
    coords.reserve(r);
    for (const Element& c : a) coords.push_back(ops.from_element(c));
    std::vector<u32> digits(r);
    for (u64 t = 0; t < ctx.box; ++t) {
      u64 rest = t;
      u64 degree = 0;
      for (u32 j = r; j-- > 0;) {
        digits[j] = static_cast<u32>(rest % p);
        degree += digits[j];
        rest /= p;
      }
      if (degree == 0) {
        ctx.recon_monos[t] = ops.from_element(F.one());
      } else if (degree == 1) {
        u32 j = 0;
        while (digits[j] == 0) ++j;
        ctx.recon_monos[t] = coords[j];  // free read of the point
      } else if (degree <= ctx.d) {
        ExponentVec e(digits.begin(), digits.end());
        ctx.recon_monos[t] = ctx.table_vals[deglex_rank(e)];
      } else {
        // Not in the shared table: one multiplication from the neighbor with
        // the first nonzero digit lowered, charged as reconstruction work.
        u32 j = 0;
        while (digits[j] == 0) ++j;
        u64 place = 1;
        for (u32 k = j + 1; k < r; ++k) place *= p;
        ctx.recon_monos[t] =
            ops.mul(coords[j], ctx.recon_monos[t - place], ledger, MulCategory::reconstruction);
      }
    }
  }
  return ctx;
}

// One depth-L evaluation against a prepared context. The decomposition is a
// pure coefficient scatter: exponent e lands in the leaf addressed by its
// base-p residue digits (first split most significant) at the exponent
// (e - residues)/p^L.
template <class Ops>
typename Ops::Val eval_one(EvalContext<Ops>& ctx, const DensePoly& poly,
                           MulLedger& ledger) {
  const u32 p = ctx.F.p();
  const u32 r = ctx.r;
  const u64 M = ctx.table_size;

  const u32* leafc = nullptr;
  if (ctx.L == 0) {
    leafc = poly.coeffs.data();
  } else {
    ctx.leaf_coeffs.assign(ctx.leaves * M, 0);
    ExponentVec e(r, 0), q(r);
    const u64 total = poly.coeff_count();
    for (u64 k = 0; k < total; ++k, deglex_next(e)) {
      u32 c = poly.coeffs[k];
      if (!c) continue;
      u64 leaf = 0;
      q = e;
      for (u32 step = 0; step < ctx.L; ++step) {
        u64 t = 0;
        for (u32 j = 0; j < r; ++j) {
          u32 res = q[j] % p;
          t = t * p + res;
          q[j] = (q[j] - res) / p;
        }
        leaf = leaf * ctx.box + t;
      }
      ctx.leaf_coeffs[leaf * M + deglex_rank(q)] = c;
    }
    leafc = ctx.leaf_coeffs.data();
  }

  // Leaf evaluation: sums of (premultiplied) table entries, no counted work.
  ctx.vals.assign(ctx.leaves, ctx.ops.zero());
  for (u64 leaf = 0; leaf < ctx.leaves; ++leaf) {
    auto acc = ctx.ops.zero();
    const u32* row = leafc + leaf * M;
    for (u64 k = 0; k < M; ++k) {
      u32 c = row[k];
      if (!c) continue;
      acc = ctx.ops.add(acc, c == 1 ? ctx.table_vals[k]
                                    : ctx.scaled_vals[u64(c - 2) * M + k]);
    }
    ctx.vals[leaf] = acc;
  }

  // Fold the tree: parent = sum_i mono_i * frobenius(child_i), the i = 0
  // term taken bare. In-place from the front; parents precede children.
  u64 level_count = ctx.leaves;
  for (u32 level = ctx.L; level >= 1; --level) {
    level_count /= ctx.box;
    for (u64 k = 0; k < level_count; ++k) {
      const u64 base = k * ctx.box;
      auto acc = ctx.ops.frob(ctx.vals[base], ledger);
      for (u64 t = 1; t < ctx.box; ++t) {
        auto f = ctx.ops.frob(ctx.vals[base + t], ledger);
        acc = ctx.ops.add(acc, ctx.ops.mul(ctx.recon_monos[t], f, ledger,
                                           MulCategory::reconstruction));
      }
      ctx.vals[k] = acc;
    }
  }
  return ctx.vals[0];
}

void check_prime_field_poly(const ExtField& field, const DensePoly& poly) {
  if (poly.s != 1)
    throw std::invalid_argument("operation requires prime-field coefficients (s = 1)");
  if (poly.p != field.p()) throw std::invalid_argument("characteristic mismatch");
  if (poly.coeffs.size() != monomial_count(poly.n, poly.r))
    throw std::invalid_argument("coefficient vector length mismatch");
  for (u32 c : poly.coeffs)
    if (c >= poly.p) throw std::invalid_argument("coefficient out of range");
}

template <class Ops>
std::vector<Element> run_batch(Ops ops, const ExtField& field,
                               std::span<const DensePoly> polys, const Point& a,
                               u32 L, MulLedger& ledger) {
  const DensePoly& head = polys.front();
  auto ctx = make_context(ops, field, a, head.r, head.n, L, ledger);
  std::vector<Element> out;
  out.reserve(polys.size());
  for (const DensePoly& q : polys) out.push_back(ops.to_element(eval_one(ctx, q, ledger)));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

Element eval_naive(const ExtField& field, const DensePoly& poly, const Point& a) {
  check_prime_field_poly(field, poly);
  check_point(field, poly.r, a);
  Element acc = field.zero();
  ExponentVec e(poly.r, 0);
  const u64 total = poly.coeff_count();
  for (u64 k = 0; k < total; ++k, deglex_next(e)) {
    u32 c = poly.coeffs[k];
    if (!c) continue;
    Element term = field.scalar(c);
    for (u32 j = 0; j < poly.r; ++j)
      for (u32 i = 0; i < e[j]; ++i) term = field.mul_raw(term, a[j]);
    acc = field.add(acc, term);
  }
  return acc;
}

Element eval_naive(const ExtField& field, const DensePoly& poly, const Point& a,
                   const SubfieldEmbedding& embedding) {
  if (poly.s == 1) return eval_naive(field, poly, a);
  if (embedding.big->tag() != field.tag() || embedding.s() != poly.s)
    throw std::invalid_argument("embedding does not match polynomial and field");
  check_point(field, poly.r, a);
  Element acc = field.zero();
  ExponentVec e(poly.r, 0);
  const u64 total = poly.coeff_count();
  std::vector<u32> sub(poly.s);
  for (u64 k = 0; k < total; ++k, deglex_next(e)) {
    const u32* c = poly.coeff(k);
    sub.assign(c, c + poly.s);
    if (std::all_of(sub.begin(), sub.end(), [](u32 v) { return v == 0; })) continue;
    Element term = embedding.embed(sub);
    for (u32 j = 0; j < poly.r; ++j)
      for (u32 i = 0; i < e[j]; ++i) term = field.mul_raw(term, a[j]);
    acc = field.add(acc, term);
  }
  return acc;
}

MonomialTable build_monomial_table(const ExtField& field, const Point& a,
                                   u32 degree, MulLedger& ledger) {
  const u32 r = static_cast<u32>(a.size());
  if (r < 1) throw std::invalid_argument("point must have at least one coordinate");
  check_point(field, r, a);
  MonomialTable table;
  table.vars = r;
  table.degree = degree;
  const u64 M = monomial_count(degree, r);
  table.values.reserve(M);
  table.values.push_back(field.one());
  if (degree >= 1)
    for (u32 j = 0; j < r; ++j) table.values.push_back(a[j]);  // free reads
  ExponentVec e(r, 0);
  for (u64 k = 0; k < r + 1 && k < M; ++k) deglex_next(e);
  for (u64 k = r + 1; k < M; ++k, deglex_next(e)) {
    u32 j = 0;
    while (e[j] == 0) ++j;
    ExponentVec pred = e;
    pred[j] -= 1;
    table.values.push_back(
        field.mul(a[j], table.values[deglex_rank(pred)], ledger, MulCategory::table));
  }
  return table;
}

void premultiply_scalars(const ExtField& field, MonomialTable& table,
                         MulLedger& ledger) {
  const u32 p = field.p();
  if (p == 2) return;
  const u64 M = table.values.size();
  table.scaled.clear();
  table.scaled.reserve(u64(p - 2) * M);
  for (u32 c = 2; c < p; ++c) {
    table.scaled.push_back(field.scalar(c));  // c * 1 is a free constant read
    for (u64 k = 1; k < M; ++k)
      table.scaled.push_back(
          field.mul(field.scalar(c), table.values[k], ledger, MulCategory::scalar_pre));
  }
}

Element eval_with_table(const ExtField& field, const DensePoly& q,
                        const MonomialTable& table,
                        [[maybe_unused]] MulLedger& ledger) {
  check_prime_field_poly(field, q);
  if (q.r != table.vars) throw std::invalid_argument("variable count mismatch");
  if (q.n > table.degree) throw std::invalid_argument("degree exceeds table");
  const u64 M = table.values.size();
  Element acc = field.zero();
  const u64 total = q.coeff_count();
  for (u64 k = 0; k < total; ++k) {
    u32 c = q.coeffs[k];
    if (!c) continue;
    if (c == 1) {
      acc = field.add(acc, table.values[k]);
    } else {
      if (!table.premultiplied())
        throw std::invalid_argument("table has no scalar premultiples");
      acc = field.add(acc, table.scaled[u64(c - 2) * M + k]);
    }
  }
  return acc;
}

Element eval_frobenius(const ExtField& field, const DensePoly& poly,
                       const Point& a, u32 L, MulLedger& ledger) {
  check_prime_field_poly(field, poly);
  if (field.tabled()) {
    IndexOps ops{field};
    auto ctx = make_context(ops, field, a, poly.r, poly.n, L, ledger);
    return ops.to_element(eval_one(ctx, poly, ledger));
  }
  ElementOps ops{field};
  auto ctx = make_context(ops, field, a, poly.r, poly.n, L, ledger);
  return ops.to_element(eval_one(ctx, poly, ledger));
}

EvalResult eval_auto(const ExtField& field, const DensePoly& poly, const Point& a,
                     CountMode mode) {
  const OptimalDepth best = optimal_depth(field.p(), poly.n, poly.r, CostFn::predicted);
  EvalResult res;
  res.ledger = MulLedger(mode);
  res.L_used = best.depth;
  res.value = eval_frobenius(field, poly, a, best.depth, res.ledger);
  return res;
}

std::vector<Element> eval_batch_shared(const ExtField& field,
                                       std::span<const DensePoly> polys,
                                       const Point& a, u32 L, MulLedger& ledger) {
  if (polys.empty()) throw std::invalid_argument("empty batch");
  const DensePoly& head = polys.front();
  for (const DensePoly& q : polys) {
    check_prime_field_poly(field, q);
    if (q.p != head.p || q.r != head.r || q.n != head.n)
      throw std::invalid_argument("heterogeneous batch parameters");
  }
  if (field.tabled()) return run_batch(IndexOps{field}, field, polys, a, L, ledger);
  return run_batch(ElementOps{field}, field, polys, a, L, ledger);
}

EvalResult eval_extension(const ExtField& field, const DensePoly& poly,
                          const Point& a, const SubfieldEmbedding& embedding,
                          u32 L, CountMode mode) {
  EvalResult res;
  res.ledger = MulLedger(mode);
  res.L_used = L;
  if (poly.s == 1) {
    res.value = eval_frobenius(field, poly, a, L, res.ledger);
    return res;
  }
  if (embedding.big->tag() != field.tag() || embedding.s() != poly.s)
    throw std::invalid_argument("embedding does not match polynomial and field");
  const std::vector<DensePoly> parts = split_base_field(poly, embedding);
  const std::vector<Element> values = eval_batch_shared(field, parts, a, L, res.ledger);
  const u32 s = poly.s;
  // Combine sum beta^i v_i: beta^2..beta^{s-1} cost s-2 products, the i >= 1
  // value products cost s-1 more.
  std::vector<Element> beta_pow(s, field.one());
  if (s >= 2) beta_pow[1] = embedding.beta;
  for (u32 i = 2; i < s; ++i)
    beta_pow[i] =
        field.mul(beta_pow[i - 1], embedding.beta, res.ledger, MulCategory::combination);
  Element acc = values[0];
  for (u32 i = 1; i < s; ++i)
    acc = field.add(
        acc, field.mul(beta_pow[i], values[i], res.ledger, MulCategory::combination));
  res.value = acc;
  return res;
}

EvalResult eval_extension_auto(const ExtField& field, const DensePoly& poly,
                               const Point& a, const SubfieldEmbedding& embedding,
                               CountMode mode) {
  const u32 lmax = max_depth(field.p(), poly.n);
  u32 best_L = 0;
  u64 best_cost = 0;
  bool have = false;
  for (u32 L = 0; L <= lmax; ++L) {
    u64 cost;
    try {
      cost = shared_cost(field.p(), poly.s, poly.n, poly.r, L);
    } catch (const std::overflow_error&) {
      continue;
    }
    if (!have || cost < best_cost) {
      best_L = L;
      best_cost = cost;
      have = true;
    }
  }
  return eval_extension(field, poly, a, embedding, best_L, mode);
}

}  // namespace frobeval
