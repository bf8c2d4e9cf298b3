#include "frobeval/mpoly.hpp"

#include <numeric>
#include <stdexcept>

#include "frobeval/rng.hpp"

namespace frobeval {

u64 monomial_count(u64 n, u32 r) {
  if (r < 1) throw std::invalid_argument("variable count must be >= 1");
  // binomial(n+r, r) accumulated as binomial(n+i, i); each step is exact.
  u64 acc = 1;
  for (u32 i = 1; i <= r; ++i) acc = checked_mul_div(acc, checked_add(n, i), i);
  return acc;
}

namespace {

u64 total_degree(const ExponentVec& e) {
  return std::accumulate(e.begin(), e.end(), u64{0});
}

// Tuples of length k summing to exactly t: binomial(t + k - 1, k - 1).
u64 compositions(u64 t, u32 k) {
  if (k == 1) return 1;
  return monomial_count(t, k - 1);
}

}  // namespace

u64 deglex_rank(const ExponentVec& e) {
  const u32 r = static_cast<u32>(e.size());
  if (r < 1) throw std::invalid_argument("empty exponent vector");
  const u64 t = total_degree(e);
  // Offset of the degree-t block.
  u64 rank = t == 0 ? 0 : monomial_count(t - 1, r);
  // Within the block all tuples with a larger entry at `pos` come first:
  // sum_{v > e[pos]} compositions(remaining - v, k) telescopes to
  // binomial(remaining - e[pos] - 1 + k, k).
  u64 remaining = t;
  for (u32 pos = 0; pos + 1 < r; ++pos) {
    const u32 k = r - pos - 1;  // suffix length
    if (remaining > e[pos])
      rank = checked_add(rank, monomial_count(remaining - e[pos] - 1, k));
    remaining -= e[pos];
  }
  return rank;
}

ExponentVec deglex_unrank(u64 k, u32 r) {
  if (r < 1) throw std::invalid_argument("variable count must be >= 1");
  u64 t = 0;
  while (monomial_count(t, r) <= k) ++t;
  u64 in_block = k - (t == 0 ? 0 : monomial_count(t - 1, r));
  ExponentVec e(r, 0);
  u64 remaining = t;
  for (u32 pos = 0; pos + 1 < r; ++pos) {
    const u32 kk = r - pos - 1;
    u64 v = remaining;
    while (true) {
      u64 block = compositions(remaining - v, kk);
      if (in_block < block) break;
      in_block -= block;
      --v;
    }
    e[pos] = static_cast<u32>(v);
    remaining -= v;
  }
  e[r - 1] = static_cast<u32>(remaining);
  return e;
}

void deglex_next(ExponentVec& e) {
  const u32 r = static_cast<u32>(e.size());
  // Within a block: move one unit from the rightmost positive entry among
  // e_1..e_{r-1} into its right neighbor, sweeping everything to its right
  // back onto that neighbor. When only e_r is positive the block is done.
  for (u32 j = r - 1; j-- > 0;) {
    if (e[j] == 0) continue;
    u64 rest = 0;
    for (u32 k = j + 1; k < r; ++k) {
      rest += e[k];
      e[k] = 0;
    }
    e[j] -= 1;
    e[j + 1] = static_cast<u32>(rest + 1);
    return;
  }
  // First tuple of the next degree block: (t+1, 0, ..., 0).
  u64 t = e[r - 1];
  e.assign(r, 0);
  e[0] = static_cast<u32>(t + 1);
}

DensePoly make_zero_poly(u32 p, u32 s, u32 r, u32 n) {
  if (s < 1) throw std::invalid_argument("s must be >= 1");
  DensePoly poly;
  poly.p = p;
  poly.s = s;
  poly.r = r;
  poly.n = n;
  poly.coeffs.assign(checked_mul(monomial_count(n, r), s), 0);
  return poly;
}

u64 residue_index(const ExponentVec& i, u32 p) {
  u64 t = 0;
  for (u32 v : i) t = t * p + v;
  return t;
}

u32 tight_part_degree(const DecomposedPoly& d, u64 part) {
  u64 digits_sum = 0;
  for (u32 j = d.r; j-- > 0;) {
    digits_sum += part % d.p;
    part /= d.p;
  }
  if (digits_sum > d.source_degree) return 0;
  return static_cast<u32>((d.source_degree - digits_sum) / d.p);
}

DecomposedPoly frobenius_decompose(const DensePoly& poly) {
  if (poly.s != 1)
    throw std::invalid_argument("frobenius_decompose requires prime-field coefficients");
  DecomposedPoly d;
  d.p = poly.p;
  d.r = poly.r;
  d.source_degree = poly.n;
  d.part_degree = poly.n / poly.p;
  const u64 count = checked_pow(poly.p, poly.r);
  d.parts.reserve(count);
  for (u64 t = 0; t < count; ++t)
    d.parts.push_back(make_zero_poly(poly.p, 1, poly.r, d.part_degree));

  ExponentVec e(poly.r, 0);
  ExponentVec q(poly.r, 0);
  const u64 total = poly.coeff_count();
  for (u64 k = 0; k < total; ++k, deglex_next(e)) {
    u32 c = poly.coeffs[k];
    if (!c) continue;
    u64 part = 0;
    for (u32 j = 0; j < poly.r; ++j) {
      u32 res = e[j] % poly.p;
      part = part * poly.p + res;
      q[j] = (e[j] - res) / poly.p;
    }
    d.parts[part].coeffs[deglex_rank(q)] = c;
  }
  return d;
}

DensePoly recompose(const DecomposedPoly& d) {
  DensePoly out = make_zero_poly(d.p, 1, d.r, d.source_degree);
  ExponentVec i(d.r, 0);
  for (u64 part = 0; part < d.parts.size(); ++part) {
    // digits of the part index, i_1 most significant
    u64 t = part;
    for (u32 j = d.r; j-- > 0;) {
      i[j] = static_cast<u32>(t % d.p);
      t /= d.p;
    }
    const DensePoly& q = d.parts[part];
    ExponentVec e(d.r, 0);
    const u64 total = q.coeff_count();
    for (u64 k = 0; k < total; ++k, deglex_next(e)) {
      u32 c = q.coeffs[k];
      if (!c) continue;
      ExponentVec target(d.r);
      for (u32 j = 0; j < d.r; ++j) target[j] = e[j] * d.p + i[j];
      if (total_degree(target) > out.n)
        throw std::invalid_argument("component coefficient exceeds the source degree bound");
      u64 rank = deglex_rank(target);
      out.coeffs[rank] = (out.coeffs[rank] + c) % d.p;
    }
  }
  return out;
}

std::vector<DensePoly> split_base_field(const DensePoly& poly,
                                        const SubfieldEmbedding& embedding) {
  if (poly.s == 1) return {poly};
  if (embedding.s() != poly.s)
    throw std::invalid_argument("embedding degree does not match the coefficient field");
  if (embedding.big->p() != poly.p) throw std::invalid_argument("field characteristic mismatch");
  std::vector<DensePoly> out(poly.s, make_zero_poly(poly.p, 1, poly.r, poly.n));
  const u64 total = poly.coeff_count();
  std::vector<u32> sub(poly.s);
  for (u64 k = 0; k < total; ++k) {
    const u32* c = poly.coeff(k);
    sub.assign(c, c + poly.s);
    std::vector<u32> expanded = embedding.expand(embedding.embed(sub));
    for (u32 i = 0; i < poly.s; ++i) out[i].coeffs[k] = expanded[i];
  }
  return out;
}

DensePoly random_poly(u64 seed, u32 p, u32 s, u32 r, u32 n) {
  DensePoly poly = make_zero_poly(p, s, r, n);
  SplitMix64 rng(seed);
  for (u32& c : poly.coeffs) c = rng.below(p);
  return poly;
}

}  // namespace frobeval
