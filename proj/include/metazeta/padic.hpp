#pragma once

// Exact modular and p-adic integer arithmetic.

#include <compare>
#include <cstdint>
#include <string>

#include "metazeta/bigint.hpp"

namespace metazeta::padic {

// p-adic valuation value; Infinity is reserved for the valuation of 0.
class Valuation {
 public:
  constexpr Valuation() = default;
  constexpr explicit Valuation(unsigned value) : value_(value), infinite_(false) {}

  static constexpr Valuation infinity() {
    Valuation v;
    v.infinite_ = true;
    return v;
  }

  constexpr bool is_infinite() const { return infinite_; }
  // Throws InvalidArgument when infinite.
  unsigned value() const;

  friend constexpr bool operator==(const Valuation&, const Valuation&) = default;
  friend constexpr std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }
  friend constexpr Valuation operator+(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return Valuation(a.value_ + b.value_);
  }

  std::string to_string() const;

 private:
  unsigned value_ = 0;
  bool infinite_ = false;
};

inline constexpr std::uint64_t kMaxPrime = std::uint64_t{1} << 32;

// Trial division; p above kMaxPrime is rejected as out of range.
bool is_prime(std::uint64_t p);
void require_prime(std::uint64_t p);

// Exact valuation of |d|; Infinity iff d == 0.
Valuation vp(std::uint64_t p, const BigInt& d);

// base^exponent reduced into [0, modulus). Negative bases are reduced first.
BigInt mod_pow(const BigInt& base, const BigInt& exponent, const BigInt& modulus);
// Fixed-width path for moduli below 2^64; uses 128-bit intermediates.
std::uint64_t mod_pow_u64(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus);

// Least e >= 1 with u^e == 1 (mod modulus).
BigInt mult_order(const BigInt& u, const BigInt& modulus);

// v_p(x^n - y^n) by the lifting-the-exponent identities, never by expansion.
// Throws PreconditionError when the identity's hypotheses fail.
Valuation lte_valuation(std::uint64_t p, const BigInt& x, const BigInt& y, const BigInt& n);

// base^exp, throwing ResourceLimit if the result does not fit in 64 bits.
std::uint64_t checked_pow(std::uint64_t base, unsigned exp);

// Canonical representative of value modulo modulus, in [0, modulus).
std::uint64_t canonical_residue(const BigInt& value, std::uint64_t modulus);

}  // namespace metazeta::padic
