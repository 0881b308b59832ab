#include "metazeta/padic.hpp"

#include "metazeta/errors.hpp"

namespace metazeta::padic {

unsigned Valuation::value() const {
  if (infinite_) throw InvalidArgument("valuation is infinite");
  return value_;
}

std::string Valuation::to_string() const {
  return infinite_ ? std::string("inf") : std::to_string(value_);
}

bool is_prime(std::uint64_t p) {
  if (p < 2 || p > kMaxPrime) return false;
  if (p % 2 == 0) return p == 2;
  for (std::uint64_t d = 3; d * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) throw InvalidArgument("p = " + std::to_string(p) + " is not a prime");
}

Valuation vp(std::uint64_t p, const BigInt& d) {
  require_prime(p);
  if (d == 0) return Valuation::infinity();
  BigInt a = abs(d);
  if (p == 2) return Valuation(static_cast<unsigned>(boost::multiprecision::lsb(a)));
  unsigned v = 0;
  BigInt q, r;
  const BigInt bp(p);
  for (;;) {
    divide_qr(a, bp, q, r);
    if (r != 0) break;
    a = q;
    ++v;
  }
  return Valuation(v);
}

BigInt mod_pow(const BigInt& base, const BigInt& exponent, const BigInt& modulus) {
  if (modulus <= 0) throw InvalidArgument("mod_pow: modulus must be positive");
  if (exponent < 0) throw InvalidArgument("mod_pow: exponent must be non-negative");
  if (modulus == 1) return 0;
  BigInt b = base % modulus;
  if (b < 0) b += modulus;
  BigInt result = 1;
  BigInt e = exponent;
  while (e > 0) {
    if (bit_test(e, 0)) result = (result * b) % modulus;
    b = (b * b) % modulus;
    e >>= 1;
  }
  return result;
}

std::uint64_t mod_pow_u64(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus) {
  if (modulus == 0) throw InvalidArgument("mod_pow: modulus must be positive");
  if (modulus == 1) return 0;
  using u128 = unsigned __int128;
  u128 b = base % modulus;
  u128 result = 1;
  while (exponent > 0) {
    if (exponent & 1U) result = result * b % modulus;
    b = b * b % modulus;
    exponent >>= 1;
  }
  return static_cast<std::uint64_t>(result);
}

BigInt mult_order(const BigInt& u, const BigInt& modulus) {
  if (modulus <= 0) throw InvalidArgument("mult_order: modulus must be positive");
  BigInt r = u % modulus;
  if (r < 0) r += modulus;
  if (boost::multiprecision::gcd(r, modulus) != 1 && modulus != 1) {
    throw InvalidArgument("mult_order: " + u.str() + " is not a unit modulo " + modulus.str());
  }
  if (modulus == 1) return 1;
  // The order is at most the modulus; cap the walk so huge moduli fail loudly.
  constexpr unsigned long long kStepCap = 1ULL << 32;
  BigInt acc = r;
  BigInt e = 1;
  while (acc != 1) {
    acc = (acc * r) % modulus;
    ++e;
    if (e > kStepCap) throw ResourceLimit("mult_order: modulus too large for direct powering");
  }
  return e;
}

Valuation lte_valuation(std::uint64_t p, const BigInt& x, const BigInt& y, const BigInt& n) {
  require_prime(p);
  if (n < 1) throw PreconditionError("lte_valuation: n must be positive");
  const BigInt bp(p);
  if (p != 2) {
    if ((x - y) % bp != 0 || x % bp == 0 || y % bp == 0) {
      throw PreconditionError("lte_valuation: need p | x - y with p not dividing x, y");
    }
    return vp(p, x - y) + vp(p, n);
  }
  if (!bit_test(abs(x), 0) || !bit_test(abs(y), 0)) {
    throw PreconditionError("lte_valuation: p = 2 needs x, y odd");
  }
  if (bit_test(n, 0)) return vp(2, x - y);
  const Valuation sum = vp(2, x - y) + vp(2, x + y) + vp(2, n);
  if (sum.is_infinite()) return sum;
  return Valuation(sum.value() - 1);
}

std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && result > UINT64_MAX / base) {
      throw ResourceLimit("power " + std::to_string(base) + "^" + std::to_string(exp) +
                          " exceeds 64 bits");
    }
    result *= base;
  }
  return result;
}

std::uint64_t canonical_residue(const BigInt& value, std::uint64_t modulus) {
  if (modulus == 0) throw InvalidArgument("canonical_residue: modulus must be positive");
  BigInt r = value % BigInt(modulus);
  if (r < 0) r += modulus;
  return static_cast<std::uint64_t>(r);
}

}  // namespace metazeta::padic
