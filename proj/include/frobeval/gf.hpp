#ifndef FROBEVAL_GF_HPP
#define FROBEVAL_GF_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "frobeval/checked.hpp"

namespace frobeval {

// ---------------------------------------------------------------------------
// Multiplication ledger
// ---------------------------------------------------------------------------

enum class CountMode { structural, value_aware };

/// Categories a counted multiplication can be charged to. Frobenius p-powers
/// have their own counter and are charged through ExtField::frobenius, never
/// through mul().
enum class MulCategory { table, reconstruction, scalar_pre, combination };

/// Categorized multiplication counters. In structural mode every scheduled
/// multiplication is charged to its category (the dense worst case the
/// closed-form counts describe). In value_aware mode a multiplication whose
/// operand is 0 or 1 is charged to free_mults instead and does not appear in
/// total(). Counters only ever increase.
struct MulLedger {
  CountMode mode = CountMode::structural;

  u64 table_mults = 0;
  u64 p_powers = 0;
  u64 reconstruction_mults = 0;
  u64 scalar_premults = 0;
  u64 combination_mults = 0;
  u64 free_mults = 0;

  explicit MulLedger(CountMode m = CountMode::structural) : mode(m) {}

  u64 total() const {
    return table_mults + p_powers + reconstruction_mults + scalar_premults +
           combination_mults;
  }

  u64& counter(MulCategory cat) {
    switch (cat) {
      case MulCategory::table: return table_mults;
      case MulCategory::reconstruction: return reconstruction_mults;
      case MulCategory::scalar_pre: return scalar_premults;
      case MulCategory::combination: return combination_mults;
    }
    __builtin_unreachable();
  }

  bool operator==(const MulLedger&) const = default;
};

// ---------------------------------------------------------------------------
// Fields
// ---------------------------------------------------------------------------

bool is_prime(u32 p);

/// Lexicographically smallest monic irreducible polynomial of degree m over
/// F_p. Coefficients are returned low-to-high (constant term first, leading 1
/// last) and candidates are compared on the tuple (c_0, ..., c_{m-1}), c_0
/// most significant, so the result is the same on every platform.
/// Irreducibility is established by trial division against every monic
/// polynomial of degree 1..m/2.
std::vector<u32> find_irreducible(u32 p, u32 m);

/// Element of F_{p^m}: the length-m coordinate vector over F_p in the power
/// basis of the modulus root. Always fully reduced. The tag ties an element
/// to the field that created it so cross-field operations fail loudly.
struct Element {
  std::vector<u32> coeffs;
  u64 field_tag = 0;

  bool operator==(const Element&) const = default;
};

/// F_{p^m} with a fixed monic irreducible modulus. Immutable after
/// construction and safe to share between threads; every mutation of counting
/// state goes through the MulLedger the caller passes in.
///
/// For small fields (order <= kTableLimit) construction also builds log/exp
/// tables over a primitive element plus index-form addition and Frobenius
/// tables. Elements in index form are the integer sum(c_i * p^i); the
/// evaluator's bulk loops run on that representation. The schoolbook vector
/// path is kept fully functional for all fields and is what the naive oracle
/// uses, so the two multiplication engines cross-check each other in tests.
class ExtField {
 public:
  static constexpr u64 kTableLimit = 1024;

  ExtField(u32 p, u32 m);                       // canonical (lex-smallest) modulus
  ExtField(u32 p, std::vector<u32> modulus);    // explicit modulus, verified

  u32 p() const { return p_; }
  u32 m() const { return m_; }
  u64 order() const { return q_; }
  u64 tag() const { return tag_; }
  const std::vector<u32>& modulus() const { return modulus_; }
  bool tabled() const { return !exp_.empty(); }

  Element zero() const;
  Element one() const;
  Element scalar(u32 c) const;                  // c * 1, c in [0, p)
  Element from_coeffs(std::vector<u32> c) const;
  Element from_index(u64 idx) const;            // digits of idx in base p
  u64 to_index(const Element& a) const;

  bool is_zero(const Element& a) const;
  bool is_one(const Element& a) const;

  /// Componentwise sum mod p. Additions are not counted in the cost model.
  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;

  /// a*b reduced by the modulus, charged to `cat` (or to free_mults in
  /// value_aware mode when an operand is 0 or 1).
  Element mul(const Element& a, const Element& b, MulLedger& ledger,
              MulCategory cat) const;

  /// a^p, charged as exactly one p-power no matter how it is computed
  /// internally (the cost model prices one multiplication per p-power).
  Element frobenius(const Element& a, MulLedger& ledger) const;

  // Unledgered arithmetic: construction-time work, the naive oracle, and
  // tests. mul_raw always takes the schoolbook path.
  Element mul_raw(const Element& a, const Element& b) const;
  Element frobenius_raw(const Element& a) const;
  Element pow_raw(const Element& a, u64 e) const;

  // Index-form arithmetic (tabled fields only). Inline: these are the inner
  // loop of the evaluator.
  u32 idx_add(u32 a, u32 b) const {
    return p_ == 2 ? (a ^ b) : add_tab_[u64(a) * q_ + b];
  }
  u32 idx_mul_raw(u32 a, u32 b) const {
    return (a == 0 || b == 0) ? 0 : exp_[log_[a] + log_[b]];
  }
  u32 idx_mul(u32 a, u32 b, MulLedger& ledger, MulCategory cat) const {
    if (ledger.mode == CountMode::value_aware && (a <= 1 || b <= 1))
      ++ledger.free_mults;
    else
      ++ledger.counter(cat);
    return idx_mul_raw(a, b);
  }
  u32 idx_frobenius(u32 a, MulLedger& ledger) const {
    if (ledger.mode == CountMode::value_aware && a <= 1)
      ++ledger.free_mults;
    else
      ++ledger.p_powers;
    return frob_tab_[a];
  }

 private:
  void init();
  void build_tables();
  void check_element(const Element& a) const;
  std::vector<u32> reduce(std::vector<u32> conv) const;

  u32 p_ = 0;
  u32 m_ = 0;
  u64 q_ = 0;
  u64 tag_ = 0;
  std::vector<u32> modulus_;            // size m+1, low-to-high, monic
  std::vector<std::vector<u32>> frob_basis_;  // x^(p*i) mod modulus, i < m

  // tabled engine (empty when order > kTableLimit)
  std::vector<u32> exp_;                // size 2(q-1): g^k, wrapped
  std::vector<u32> log_;                // size q; log_[0] unused
  std::vector<u32> frob_tab_;           // size q
  std::vector<u32> add_tab_;            // q*q for p > 2; empty for p == 2 (XOR)
};

// ---------------------------------------------------------------------------
// Subfield embedding F_{p^s} -> F_{p^m}, s | m
// ---------------------------------------------------------------------------

/// Deterministic embedding data used by the base-field split:
///   * subfield is F_{p^s} with its canonical modulus g,
///   * rho is the first root of g in F_{p^m} (coordinate vectors scanned in
///     increasing lexicographic order, index 0 most significant); the map
///     c -> sum c_i rho^i is an injective F_p-algebra homomorphism,
///   * beta is the first nonzero element of degree exactly s over F_p in the
///     same scan order; {1, beta, ..., beta^{s-1}} spans the image subfield
///     and is the basis the split expands coefficients on.
struct SubfieldEmbedding {
  const ExtField* big = nullptr;
  ExtField subfield;
  Element beta;
  Element rho;

  u32 s() const { return subfield.m(); }

  /// Image in F_{p^m} of the subfield element with the given coordinates.
  Element embed(const std::vector<u32>& subcoeffs) const;

  /// Coordinates of k (an element of the image subfield) over the basis
  /// {1, beta, ..., beta^{s-1}}.
  std::vector<u32> expand(const Element& k) const;

  SubfieldEmbedding(const ExtField& big_field, u32 s);

 private:
  std::vector<std::vector<u32>> rho_powers_;   // coords of rho^i, i < s
  // s x m matrix E with expand(t) = E*t; valid for t in the image subfield.
  std::vector<std::vector<u32>> expand_matrix_;
};

SubfieldEmbedding subfield_embed(const ExtField& big_field, u32 s);

}  // namespace frobeval

#endif
