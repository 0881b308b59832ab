#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "metazeta/errors.hpp"
#include "metazeta/padic.hpp"

using namespace metazeta;
using namespace metazeta::padic;
using boost::multiprecision::pow;

namespace {

// Plain repeated division; independent of vp().
unsigned naive_valuation(std::uint64_t p, BigInt d) {
  if (d < 0) d = -d;
  unsigned v = 0;
  while (d % p == 0) {
    d /= p;
    ++v;
  }
  return v;
}

BigInt exact_difference(const BigInt& x, const BigInt& y, unsigned n) {
  return pow(x, n) - pow(y, n);
}

}  // namespace

TEST_CASE("vp basics") {
  CHECK(vp(2, 48) == Valuation(4));
  CHECK(vp(3, -54) == Valuation(3));
  CHECK(vp(5, 7) == Valuation(0));
  CHECK(vp(7, 0).is_infinite());
  BigInt big = pow(BigInt(3), 200) * 11;
  CHECK(vp(3, big) == Valuation(200));
}

TEST_CASE("vp is additive on products") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> dist(-100000, 100000);
  for (std::uint64_t p : {2u, 3u, 5u, 7u}) {
    for (int trial = 0; trial < 200; ++trial) {
      BigInt a = dist(rng), b = dist(rng);
      if (a == 0 || b == 0) continue;
      CHECK(vp(p, a * b) == vp(p, a) + vp(p, b));
      CHECK(vp(p, a).value() == naive_valuation(p, a));
    }
  }
  CHECK((vp(2, 0) + vp(2, 4)).is_infinite());
}

TEST_CASE("Valuation ordering and errors") {
  CHECK(Valuation(3) < Valuation::infinity());
  CHECK(Valuation(2) < Valuation(5));
  CHECK(Valuation::infinity().to_string() == "inf");
  CHECK_THROWS_AS(Valuation::infinity().value(), InvalidArgument);
}

TEST_CASE("primality") {
  CHECK(is_prime(2));
  CHECK(is_prime(97));
  CHECK(is_prime(4294967291ULL));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK_THROWS_AS(require_prime(4), InvalidArgument);
  CHECK_THROWS_AS(require_prime(0), InvalidArgument);
}

TEST_CASE("mod_pow") {
  CHECK(mod_pow(3, 8, 32) == 1);
  CHECK(mod_pow(7, 2, 32) == 17);
  CHECK(mod_pow(-1, 3, 10) == 9);
  CHECK(mod_pow(5, 0, 7) == 1);
  CHECK(mod_pow_u64(3, 8, 32) == 1);
  std::uint64_t big_mod = (std::uint64_t{1} << 62) + 57;
  CHECK(BigInt(mod_pow_u64(123456789, 987654, big_mod)) ==
        mod_pow(123456789, 987654, BigInt(big_mod)));
  CHECK_THROWS_AS(mod_pow(3, 2, 0), InvalidArgument);
}

TEST_CASE("mult_order is the least period") {
  CHECK(mult_order(3, 32) == 8);
  CHECK(mult_order(7, 32) == 4);
  CHECK(mult_order(1, 32) == 1);
  CHECK(mult_order(2, 9) == 6);
  for (std::uint64_t mod : {27u, 32u, 125u, 128u}) {
    for (std::uint64_t u = 1; u < mod; ++u) {
      if (std::gcd(u, mod) != 1) continue;
      auto e = static_cast<std::uint64_t>(mult_order(u, mod));
      CHECK(mod_pow_u64(u, e, mod) == 1);
      for (std::uint64_t d = 1; d < e; ++d) REQUIRE(mod_pow_u64(u, d, mod) != 1);
    }
  }
  CHECK_THROWS_AS(mult_order(2, 32), InvalidArgument);
}

TEST_CASE("lte examples") {
  CHECK(lte_valuation(3, 4, 1, 9) == Valuation(3));    // v_3(4^9 - 1) = 1 + 2
  CHECK(lte_valuation(2, 3, 1, 8) == Valuation(5));    // v_2(3^8 - 1) = 1 + 2 + 3 - 1
  CHECK(lte_valuation(2, 3, 1, 1) == Valuation(1));
  CHECK(lte_valuation(2, 7, 3, 2) == Valuation(3));    // 49 - 9 = 40
  CHECK(lte_valuation(5, 6, 1, 25) == Valuation(3));
  CHECK(lte_valuation(2, 5, -5, 2).is_infinite());
}

TEST_CASE("lte hypotheses are enforced") {
  CHECK_THROWS_AS(lte_valuation(3, 5, 1, 2), PreconditionError);   // 3 does not divide 4
  CHECK_THROWS_AS(lte_valuation(3, 3, 0, 2), PreconditionError);   // p | x
  CHECK_THROWS_AS(lte_valuation(2, 4, 2, 3), PreconditionError);   // even arguments
  CHECK_THROWS_AS(lte_valuation(3, 4, 1, 0), PreconditionError);
}

TEST_CASE("lte agrees with exact expansion on random instances") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::int64_t> coord(-200000, 200000);
  std::uniform_int_distribution<unsigned> exps(1, 60);
  const std::uint64_t primes[] = {2, 3, 5, 7, 11, 13};
  int done = 0;
  while (done < 1000) {
    std::uint64_t p = primes[rng() % 6];
    BigInt x = coord(rng), y = coord(rng);
    if (p == 2) {
      x = 2 * x + 1;
      y = 2 * y + 1;
    } else {
      y = x - BigInt(p) * (coord(rng) % 50 + 1);
      if (x % p == 0 || y % p == 0) continue;
    }
    if (x == y) continue;
    unsigned n = exps(rng);
    BigInt diff = exact_difference(x, y, n);
    Valuation got = lte_valuation(p, x, y, n);
    if (diff == 0) {
      CHECK(got.is_infinite());
    } else {
      INFO("p=", p, " x=", x.str(), " y=", y.str(), " n=", n);
      CHECK(got == Valuation(naive_valuation(p, diff)));
    }
    ++done;
  }
}

TEST_CASE("checked_pow and canonical_residue") {
  CHECK(checked_pow(2, 10) == 1024);
  CHECK(checked_pow(3, 0) == 1);
  CHECK(checked_pow(2, 63) == (std::uint64_t{1} << 63));
  CHECK_THROWS_AS(checked_pow(2, 64), ResourceLimit);
  CHECK_THROWS_AS(checked_pow(10, 20), ResourceLimit);
  CHECK(canonical_residue(-1, 32) == 31);
  CHECK(canonical_residue(65, 32) == 1);
  CHECK(canonical_residue(pow(BigInt(10), 30), 7) == static_cast<std::uint64_t>(pow(BigInt(10), 30) % 7));
}
