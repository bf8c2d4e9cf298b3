#include "frobeval/gf.hpp"

#include <algorithm>
#include <stdexcept>

namespace frobeval {

namespace {

constexpr u32 kMaxPrime = 65521;  // largest 16-bit prime
constexpr u64 kMaxOrder = u64{1} << 32;

u64 fnv1a(u64 h, u64 v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= 0x100000001b3ULL;
  }
  return h;
}

u32 add_mod(u32 a, u32 b, u32 p) {
  u32 s = a + b;
  return s >= p ? s - p : s;
}

u32 sub_mod(u32 a, u32 b, u32 p) { return a >= b ? a - b : a + p - b; }

u32 pow_mod(u64 base, u64 e, u64 mod) {
  u64 r = 1 % mod;
  base %= mod;
  while (e) {
    if (e & 1) r = r * base % mod;
    base = base * base % mod;
    e >>= 1;
  }
  return static_cast<u32>(r);
}

u32 inv_mod(u32 a, u32 p) { return pow_mod(a, p - 2, p); }

// --- dense polynomial helpers over F_p (coefficient vectors, low-to-high) ---

u32 poly_deg(const std::vector<u32>& f) {
  for (std::size_t i = f.size(); i-- > 0;)
    if (f[i]) return static_cast<u32>(i);
  return 0;
}

// Remainder of f modulo the monic divisor g.
std::vector<u32> poly_rem(std::vector<u32> f, const std::vector<u32>& g, u32 p) {
  const u32 dg = poly_deg(g);
  for (std::size_t i = f.size(); i-- > dg;) {
    u32 c = f[i] % p;
    if (!c) continue;
    for (u32 j = 0; j <= dg; ++j)
      f[i - dg + j] = sub_mod(f[i - dg + j], static_cast<u32>(u64(c) * g[j] % p), p);
  }
  f.resize(dg);
  return f;
}

bool poly_is_zero(const std::vector<u32>& f) {
  return std::all_of(f.begin(), f.end(), [](u32 c) { return c == 0; });
}

// Trial division against every monic polynomial of degree 1..deg(f)/2.
bool poly_irreducible(const std::vector<u32>& f, u32 p) {
  const u32 m = poly_deg(f);
  if (m == 0) return false;
  if (m == 1) return true;
  for (u32 d = 1; d <= m / 2; ++d) {
    std::vector<u32> g(d + 1, 0);
    g[d] = 1;
    while (true) {
      if (poly_is_zero(poly_rem(f, g, p))) return false;
      // next divisor candidate: count up through the low coefficients
      u32 i = 0;
      while (i < d && ++g[i] == p) g[i++] = 0;
      if (i == d) break;
    }
  }
  return true;
}

}  // namespace

bool is_prime(u32 p) {
  if (p < 2) return false;
  for (u32 d = 2; u64(d) * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<u32> find_irreducible(u32 p, u32 m) {
  if (!is_prime(p) || p > kMaxPrime) throw std::invalid_argument("p must be prime and < 2^16");
  if (m < 1) throw std::invalid_argument("extension degree must be >= 1");
  std::vector<u32> f(m + 1, 0);
  f[m] = 1;
  // Candidates in lexicographic order of (c_0, ..., c_{m-1}), c_0 most
  // significant, so the last tuple position cycles fastest.
  while (true) {
    if (poly_irreducible(f, p)) return f;
    std::size_t i = m;
    while (i-- > 0) {
      if (++f[i] < p) break;
      f[i] = 0;
      if (i == 0) throw std::logic_error("no irreducible polynomial found");
    }
  }
}

// ---------------------------------------------------------------------------
// ExtField
// ---------------------------------------------------------------------------

ExtField::ExtField(u32 p, u32 m) : p_(p), m_(m), modulus_(find_irreducible(p, m)) {
  init();
}

ExtField::ExtField(u32 p, std::vector<u32> modulus)
    : p_(p), m_(modulus.empty() ? 0 : static_cast<u32>(modulus.size() - 1)),
      modulus_(std::move(modulus)) {
  if (!is_prime(p_) || p_ > kMaxPrime)
    throw std::invalid_argument("p must be prime and < 2^16");
  if (m_ < 1 || modulus_[m_] != 1)
    throw std::invalid_argument("modulus must be monic of degree >= 1");
  for (u32 c : modulus_)
    if (c >= p_) throw std::invalid_argument("modulus coefficient out of range");
  if (!poly_irreducible(modulus_, p_))
    throw std::invalid_argument("modulus is reducible");
  init();
}

void ExtField::init() {
  q_ = checked_pow(p_, m_);
  if (q_ > kMaxOrder) throw std::invalid_argument("field order exceeds 2^32");
  tag_ = fnv1a(0xcbf29ce484222325ULL, p_);
  for (u32 c : modulus_) tag_ = fnv1a(tag_, c);

  // Images x^(p*i) mod modulus: a^p = sum a_i x^(p*i) since coefficients are
  // fixed by x -> x^p and the map is F_p-linear.
  std::vector<u32> xp(m_, 0);  // x^p reduced
  {
    std::vector<u32> acc(m_, 0);
    acc[0] = 1;
    for (u32 k = 0; k < p_; ++k) {
      // multiply by x
      std::vector<u32> shifted(m_ + 1, 0);
      for (u32 i = 0; i < m_; ++i) shifted[i + 1] = acc[i];
      u32 top = shifted[m_];
      shifted.resize(m_);
      if (top)
        for (u32 j = 0; j < m_; ++j)
          shifted[j] = sub_mod(shifted[j], static_cast<u32>(u64(top) * modulus_[j] % p_), p_);
      acc = shifted;
    }
    xp = acc;
  }
  frob_basis_.assign(m_, std::vector<u32>(m_, 0));
  frob_basis_[0][0] = 1;
  for (u32 i = 1; i < m_; ++i) {
    // frob_basis_[i] = frob_basis_[i-1] * x^p
    std::vector<u32> conv(2 * m_ - 1, 0);
    for (u32 a = 0; a < m_; ++a) {
      if (!frob_basis_[i - 1][a]) continue;
      for (u32 b = 0; b < m_; ++b)
        conv[a + b] = static_cast<u32>((conv[a + b] + u64(frob_basis_[i - 1][a]) * xp[b]) % p_);
    }
    frob_basis_[i] = reduce(std::move(conv));
  }

  if (q_ <= kTableLimit) build_tables();
}

std::vector<u32> ExtField::reduce(std::vector<u32> conv) const {
  conv.resize(std::max<std::size_t>(conv.size(), m_), 0);
  for (std::size_t i = conv.size(); i-- > m_;) {
    u32 c = conv[i] % p_;
    if (!c) continue;
    for (u32 j = 0; j < m_; ++j)
      conv[i - m_ + j] = sub_mod(conv[i - m_ + j] % p_, static_cast<u32>(u64(c) * modulus_[j] % p_), p_);
  }
  conv.resize(m_);
  for (u32& c : conv) c %= p_;
  return conv;
}

void ExtField::build_tables() {
  const u32 q = static_cast<u32>(q_);
  // Find a primitive element: smallest index whose order is exactly q-1.
  std::vector<u32> prime_factors;
  {
    u32 t = q - 1;
    for (u32 d = 2; u64(d) * d <= t; ++d)
      while (t % d == 0) {
        if (prime_factors.empty() || prime_factors.back() != d) prime_factors.push_back(d);
        t /= d;
      }
    if (t > 1) prime_factors.push_back(t);
  }
  auto idx_pow = [&](u32 base, u32 e) {
    Element b = from_index(base), acc = one();
    while (e) {
      if (e & 1) acc = mul_raw(acc, b);
      b = mul_raw(b, b);
      e >>= 1;
    }
    return static_cast<u32>(to_index(acc));
  };
  u32 gen = 0;
  for (u32 cand = 2; cand < q || q == 2; ++cand) {
    if (q == 2) { gen = 1; break; }
    bool primitive = true;
    for (u32 f : prime_factors)
      if (idx_pow(cand, (q - 1) / f) == 1) { primitive = false; break; }
    if (primitive) { gen = cand; break; }
  }

  exp_.assign(2 * (q - 1), 0);
  log_.assign(q, 0);
  Element g = from_index(gen), acc = one();
  for (u32 k = 0; k < q - 1; ++k) {
    u32 idx = static_cast<u32>(to_index(acc));
    exp_[k] = idx;
    exp_[k + (q - 1)] = idx;
    log_[idx] = k;
    acc = mul_raw(acc, g);
  }

  frob_tab_.assign(q, 0);
  for (u32 v = 0; v < q; ++v)
    frob_tab_[v] = static_cast<u32>(to_index(frobenius_raw(from_index(v))));

  if (p_ > 2) {
    add_tab_.assign(u64(q) * q, 0);
    for (u32 a = 0; a < q; ++a) {
      Element ea = from_index(a);
      for (u32 b = 0; b < q; ++b)
        add_tab_[u64(a) * q + b] = static_cast<u32>(to_index(add(ea, from_index(b))));
    }
  }
}

void ExtField::check_element(const Element& a) const {
  if (a.field_tag != tag_ || a.coeffs.size() != m_)
    throw std::invalid_argument("field mismatch");
}

Element ExtField::zero() const { return Element{std::vector<u32>(m_, 0), tag_}; }

Element ExtField::one() const { return scalar(1 % p_); }

Element ExtField::scalar(u32 c) const {
  if (c >= p_) throw std::invalid_argument("scalar out of range");
  Element e{std::vector<u32>(m_, 0), tag_};
  e.coeffs[0] = c;
  return e;
}

Element ExtField::from_coeffs(std::vector<u32> c) const {
  if (c.size() != m_) throw std::invalid_argument("coefficient vector has wrong length");
  for (u32 v : c)
    if (v >= p_) throw std::invalid_argument("coefficient out of range");
  return Element{std::move(c), tag_};
}

Element ExtField::from_index(u64 idx) const {
  Element e{std::vector<u32>(m_, 0), tag_};
  for (u32 i = 0; i < m_; ++i) {
    e.coeffs[i] = static_cast<u32>(idx % p_);
    idx /= p_;
  }
  if (idx) throw std::invalid_argument("index out of range");
  return e;
}

u64 ExtField::to_index(const Element& a) const {
  check_element(a);
  u64 idx = 0;
  for (u32 i = m_; i-- > 0;) idx = idx * p_ + a.coeffs[i];
  return idx;
}

bool ExtField::is_zero(const Element& a) const {
  check_element(a);
  return std::all_of(a.coeffs.begin(), a.coeffs.end(), [](u32 c) { return c == 0; });
}

bool ExtField::is_one(const Element& a) const {
  check_element(a);
  if (a.coeffs[0] != 1 % p_) return false;
  return std::all_of(a.coeffs.begin() + 1, a.coeffs.end(), [](u32 c) { return c == 0; });
}

Element ExtField::add(const Element& a, const Element& b) const {
  check_element(a);
  check_element(b);
  Element r{std::vector<u32>(m_), tag_};
  for (u32 i = 0; i < m_; ++i) r.coeffs[i] = add_mod(a.coeffs[i], b.coeffs[i], p_);
  return r;
}

Element ExtField::sub(const Element& a, const Element& b) const {
  check_element(a);
  check_element(b);
  Element r{std::vector<u32>(m_), tag_};
  for (u32 i = 0; i < m_; ++i) r.coeffs[i] = sub_mod(a.coeffs[i], b.coeffs[i], p_);
  return r;
}

Element ExtField::mul_raw(const Element& a, const Element& b) const {
  check_element(a);
  check_element(b);
  std::vector<u32> conv(2 * m_ - 1, 0);
  for (u32 i = 0; i < m_; ++i) {
    if (!a.coeffs[i]) continue;
    for (u32 j = 0; j < m_; ++j)
      conv[i + j] = static_cast<u32>((conv[i + j] + u64(a.coeffs[i]) * b.coeffs[j]) % p_);
  }
  return Element{reduce(std::move(conv)), tag_};
}

Element ExtField::mul(const Element& a, const Element& b, MulLedger& ledger,
                      MulCategory cat) const {
  check_element(a);
  check_element(b);
  if (ledger.mode == CountMode::value_aware &&
      (is_zero(a) || is_one(a) || is_zero(b) || is_one(b)))
    ++ledger.free_mults;
  else
    ++ledger.counter(cat);
  if (tabled()) {
    u32 ia = static_cast<u32>(to_index(a)), ib = static_cast<u32>(to_index(b));
    return from_index(idx_mul_raw(ia, ib));
  }
  return mul_raw(a, b);
}

Element ExtField::frobenius_raw(const Element& a) const {
  check_element(a);
  std::vector<u32> out(m_, 0);
  for (u32 i = 0; i < m_; ++i) {
    u32 c = a.coeffs[i];
    if (!c) continue;
    for (u32 j = 0; j < m_; ++j)
      out[j] = static_cast<u32>((out[j] + u64(c) * frob_basis_[i][j]) % p_);
  }
  return Element{std::move(out), tag_};
}

Element ExtField::frobenius(const Element& a, MulLedger& ledger) const {
  check_element(a);
  if (ledger.mode == CountMode::value_aware && (is_zero(a) || is_one(a)))
    ++ledger.free_mults;
  else
    ++ledger.p_powers;
  return frobenius_raw(a);
}

Element ExtField::pow_raw(const Element& a, u64 e) const {
  Element base = a, acc = one();
  while (e) {
    if (e & 1) acc = mul_raw(acc, base);
    base = mul_raw(base, base);
    e >>= 1;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Subfield embedding
// ---------------------------------------------------------------------------

namespace {

// Degree of a over F_p: smallest d >= 1 with a^(p^d) == a.
u32 element_degree(const ExtField& F, const Element& a) {
  Element b = F.frobenius_raw(a);
  u32 d = 1;
  while (!(b == a)) {
    b = F.frobenius_raw(b);
    ++d;
  }
  return d;
}

// Enumerate coordinate vectors in increasing lexicographic order (index 0
// most significant, so the last coordinate cycles fastest). Returns false
// when the enumeration wraps.
bool next_vector(std::vector<u32>& v, u32 p) {
  std::size_t i = v.size();
  while (i-- > 0) {
    if (++v[i] < p) return true;
    v[i] = 0;
    if (i == 0) return false;
  }
  return false;
}

// Coordinate-vector order used by the scans: index 0 most significant.
bool lex_less(const Element& a, const Element& b) {
  return std::lexicographical_compare(a.coeffs.begin(), a.coeffs.end(),
                                      b.coeffs.begin(), b.coeffs.end());
}

// All p^s elements of the subfield of order p^s inside F_{p^m} (requires
// s < m): the kernel of Frobenius^s - identity as an F_p-linear map.
// Enumerating the kernel instead of the whole field keeps the scans bounded
// for large m; the lexicographic minima are the same either way because
// every element of degree dividing s lies in this kernel.
std::vector<Element> subfield_elements(const ExtField& big, u32 s) {
  const u32 p = big.p();
  const u32 m = big.m();
  // Column i of A: coordinates of Frobenius^s applied to the basis vector x^i.
  std::vector<std::vector<u32>> cols(m);
  for (u32 i = 0; i < m; ++i) {
    std::vector<u32> unit(m, 0);
    unit[i] = 1;
    Element e = big.from_coeffs(std::move(unit));
    for (u32 k = 0; k < s; ++k) e = big.frobenius_raw(e);
    cols[i] = e.coeffs;
  }
  // Row reduce A - I and read off a null-space basis from the free columns.
  std::vector<std::vector<u32>> rows(m, std::vector<u32>(m));
  for (u32 rr = 0; rr < m; ++rr)
    for (u32 cc = 0; cc < m; ++cc)
      rows[rr][cc] = sub_mod(cols[cc][rr], rr == cc ? 1u : 0u, p);
  std::vector<i64> pivot_col_of_row(m, -1);
  std::vector<i64> pivot_row_of_col(m, -1);
  u32 rank = 0;
  for (u32 col = 0; col < m; ++col) {
    u32 pr = rank;
    while (pr < m && rows[pr][col] == 0) ++pr;
    if (pr == m) continue;
    std::swap(rows[pr], rows[rank]);
    u32 inv = inv_mod(rows[rank][col], p);
    for (u32 cc = 0; cc < m; ++cc)
      rows[rank][cc] = static_cast<u32>(u64(rows[rank][cc]) * inv % p);
    for (u32 rr = 0; rr < m; ++rr) {
      if (rr == rank || rows[rr][col] == 0) continue;
      u32 f = rows[rr][col];
      for (u32 cc = 0; cc < m; ++cc)
        rows[rr][cc] = sub_mod(rows[rr][cc], static_cast<u32>(u64(f) * rows[rank][cc] % p), p);
    }
    pivot_col_of_row[rank] = col;
    pivot_row_of_col[col] = rank;
    ++rank;
  }
  std::vector<std::vector<u32>> basis;
  for (u32 col = 0; col < m; ++col) {
    if (pivot_row_of_col[col] >= 0) continue;
    std::vector<u32> v(m, 0);
    v[col] = 1;
    for (u32 rr = 0; rr < rank; ++rr) {
      u32 pc = static_cast<u32>(pivot_col_of_row[rr]);
      v[pc] = rows[rr][col] ? p - rows[rr][col] : 0;
    }
    basis.push_back(std::move(v));
  }
  if (basis.size() != s) throw std::logic_error("subfield kernel has unexpected dimension");

  std::vector<Element> out;
  out.reserve(checked_pow(p, s));
  std::vector<u32> combo(s, 0);
  while (true) {
    std::vector<u32> v(m, 0);
    for (u32 i = 0; i < s; ++i) {
      if (!combo[i]) continue;
      for (u32 j = 0; j < m; ++j)
        v[j] = static_cast<u32>((v[j] + u64(combo[i]) * basis[i][j]) % p);
    }
    out.push_back(big.from_coeffs(std::move(v)));
    u32 i = 0;
    while (i < s && ++combo[i] == p) combo[i++] = 0;
    if (i == s) break;
  }
  return out;
}

}  // namespace

SubfieldEmbedding::SubfieldEmbedding(const ExtField& big_field, u32 s)
    : big(&big_field), subfield(big_field.p(), s) {
  const u32 p = big_field.p();
  const u32 m = big_field.m();
  if (s < 1 || m % s != 0) throw std::invalid_argument("s must divide m");

  auto eval_subfield_modulus = [&](const Element& cand) {
    const std::vector<u32>& g = subfield.modulus();
    Element acc = big->scalar(g[s]);
    for (u32 i = s; i-- > 0;) acc = big->add(big->mul_raw(acc, cand), big->scalar(g[i]));
    return acc;
  };

  if (s == m) {
    // rho: lexicographically first root of the modulus, i.e. the smallest
    // Frobenius conjugate of the class of x.
    Element x = big->zero();
    if (m == 1)
      x.coeffs[0] = (p - big->modulus()[0] % p) % p;
    else
      x.coeffs[1] = 1;
    rho = x;
    Element conj = big->frobenius_raw(x);
    while (!(conj == x)) {
      if (lex_less(conj, rho)) rho = conj;
      conj = big->frobenius_raw(conj);
    }
    if (!big->is_zero(eval_subfield_modulus(rho)))
      throw std::logic_error("conjugate of x is not a root of the modulus");
    // beta: first nonzero element of degree exactly m in scan order. The
    // scan stops after at most (number of proper-subfield elements) + 1
    // candidates, so it is bounded even for large fields.
    std::vector<u32> v(m, 0);
    bool found = false;
    while (next_vector(v, p)) {
      Element cand = big->from_coeffs(v);
      if (element_degree(*big, cand) == s) {
        beta = cand;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("no element of degree s found");
  } else {
    // Both rho and beta live in the order-p^s subfield; scanning its p^s
    // elements gives the same lexicographic minima as scanning the field.
    const std::vector<Element> sub_elems = subfield_elements(*big, s);
    bool have_rho = false, have_beta = false;
    for (const Element& cand : sub_elems) {
      if (big->is_zero(eval_subfield_modulus(cand)) && (!have_rho || lex_less(cand, rho))) {
        rho = cand;
        have_rho = true;
      }
      if (!big->is_zero(cand) && element_degree(*big, cand) == s &&
          (!have_beta || lex_less(cand, beta))) {
        beta = cand;
        have_beta = true;
      }
    }
    if (!have_rho) throw std::logic_error("no root of subfield modulus found");
    if (!have_beta) throw std::logic_error("no element of degree s found");
  }

  std::vector<std::vector<u32>> beta_powers(s);
  {
    Element acc = big->one();
    for (u32 i = 0; i < s; ++i) {
      beta_powers[i] = acc.coeffs;
      acc = big->mul_raw(acc, beta);
    }
  }
  rho_powers_.resize(s);
  {
    Element acc = big->one();
    for (u32 i = 0; i < s; ++i) {
      rho_powers_[i] = acc.coeffs;
      acc = big->mul_raw(acc, rho);
    }
  }

  // Row-reduce [A | I_m] where the columns of A are the beta powers; the
  // augmented rows at the pivot of column j give x_j as a linear form in the
  // target vector.
  std::vector<std::vector<u32>> aug(m, std::vector<u32>(s + m, 0));
  for (u32 row = 0; row < m; ++row) {
    for (u32 col = 0; col < s; ++col) aug[row][col] = beta_powers[col][row];
    aug[row][s + row] = 1;
  }
  std::vector<u32> pivot_row_of_col(s, 0);
  u32 rank = 0;
  for (u32 col = 0; col < s; ++col) {
    u32 pr = rank;
    while (pr < m && aug[pr][col] == 0) ++pr;
    if (pr == m) throw std::logic_error("beta powers are linearly dependent");
    std::swap(aug[pr], aug[rank]);
    u32 inv = inv_mod(aug[rank][col], p);
    for (u32 j = 0; j < s + m; ++j)
      aug[rank][j] = static_cast<u32>(u64(aug[rank][j]) * inv % p);
    for (u32 row = 0; row < m; ++row) {
      if (row == rank || aug[row][col] == 0) continue;
      u32 f = aug[row][col];
      for (u32 j = 0; j < s + m; ++j)
        aug[row][j] = sub_mod(aug[row][j], static_cast<u32>(u64(f) * aug[rank][j] % p), p);
    }
    pivot_row_of_col[col] = rank;
    ++rank;
  }
  expand_matrix_.assign(s, std::vector<u32>(m, 0));
  for (u32 col = 0; col < s; ++col)
    for (u32 j = 0; j < m; ++j)
      expand_matrix_[col][j] = aug[pivot_row_of_col[col]][s + j];
}

Element SubfieldEmbedding::embed(const std::vector<u32>& subcoeffs) const {
  const u32 s_ = s();
  if (subcoeffs.size() != s_) throw std::invalid_argument("subfield coefficient length mismatch");
  const u32 p = big->p();
  std::vector<u32> out(big->m(), 0);
  for (u32 i = 0; i < s_; ++i) {
    u32 c = subcoeffs[i];
    if (c >= p) throw std::invalid_argument("subfield coefficient out of range");
    if (!c) continue;
    for (u32 j = 0; j < big->m(); ++j)
      out[j] = static_cast<u32>((out[j] + u64(c) * rho_powers_[i][j]) % p);
  }
  return big->from_coeffs(std::move(out));
}

std::vector<u32> SubfieldEmbedding::expand(const Element& k) const {
  const u32 p = big->p();
  const u32 m = big->m();
  if (k.field_tag != big->tag()) throw std::invalid_argument("field mismatch");
  std::vector<u32> out(s(), 0);
  for (u32 i = 0; i < s(); ++i) {
    u64 acc = 0;
    for (u32 j = 0; j < m; ++j) acc += u64(expand_matrix_[i][j]) * k.coeffs[j];
    out[i] = static_cast<u32>(acc % p);
  }
  return out;
}

SubfieldEmbedding subfield_embed(const ExtField& big_field, u32 s) {
  return SubfieldEmbedding(big_field, s);
}

}  // namespace frobeval
