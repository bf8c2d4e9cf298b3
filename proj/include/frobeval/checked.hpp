#ifndef FROBEVAL_CHECKED_HPP
#define FROBEVAL_CHECKED_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace frobeval {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

// Exact unsigned arithmetic that refuses to wrap: every closed-form count in
// this project is an exact integer, and overflow raises std::overflow_error.

inline u64 checked_add(u64 a, u64 b) {
  u64 r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("integer overflow in addition");
  return r;
}

inline u64 checked_mul(u64 a, u64 b) {
  u64 r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("integer overflow in multiplication");
  return r;
}

inline u64 checked_pow(u64 base, u32 exp) {
  u64 r = 1;
  for (u32 i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

// binomial(n+k, k) style quotients stay exact when accumulated in order;
// the intermediate product is widened to 128 bits before the division.
inline u64 checked_mul_div(u64 acc, u64 num, u64 den) {
  unsigned __int128 wide = static_cast<unsigned __int128>(acc) * num;
  wide /= den;
  if (wide > static_cast<unsigned __int128>(UINT64_MAX))
    throw std::overflow_error("integer overflow in binomial coefficient");
  return static_cast<u64>(wide);
}

}  // namespace frobeval

#endif
