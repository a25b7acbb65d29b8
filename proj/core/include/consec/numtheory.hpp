#pragma once

// Exact integer number theory: deterministic factorization, primality and
// prime-power testing, primorials, and the multiplicative functions
// omega/W/theta/Rad/mu/phi.
//
// All verdicts are deterministic: fixed Miller-Rabin witness sets below
// 2^64, a strong base-2 test plus a strong Lucas test above, and a
// Pollard-Brent splitter with a fixed parameter schedule.  Repeated runs
// produce identical factor orderings on every platform.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace consec {

using Int = mpz_class;  // arbitrary-precision integer
using Rat = mpq_class;  // exact rational, kept canonical

// factorize() accepts inputs up to 2^96; larger values raise std::range_error.
inline constexpr unsigned kFactorizeMaxBits = 96;

// --- prime table -----------------------------------------------------------
//
// One process-wide table of small primes, built on first use and immutable
// afterwards.  set_prime_table_limit() is the single config key; it must be
// called before the first use and can only grow the default.

void set_prime_table_limit(uint64_t limit);
const std::vector<uint32_t>& prime_table();
uint64_t nth_prime(unsigned i);  // 1-based: nth_prime(1) == 2

struct Factorization {
  Int value;
  std::vector<std::pair<Int, unsigned>> factors;  // primes strictly ascending

  unsigned omega() const { return static_cast<unsigned>(factors.size()); }
};

Factorization factorize(const Int& m);
Factorization factorize(uint64_t m);

bool is_prime(uint64_t n);
bool is_prime(const Int& n);

struct PrimePower {
  uint64_t p;
  unsigned k;
};

// Returns (p, k) with p^k == m iff m >= 2 is a prime power.
std::optional<PrimePower> is_prime_power(uint64_t m);

// Product of the first m primes.
Int primorial(unsigned m);

struct MultiplicativeStats {
  unsigned omega;   // distinct prime factors
  uint64_t big_w;   // 2^omega, the number of squarefree divisors
  Rat theta;        // prod (1 - 1/p) over primes p | m
  Int radical;      // prod p
  int mu;           // Moebius: 0 iff any exponent > 1
  Int phi;          // Euler totient
};

MultiplicativeStats multiplicative_stats(const Factorization& f);

// 1.38402 ln q / ln ln q, evaluated in doubles and padded upward by a
// 1e-12 relative slack so the returned bound is never an understatement.
// Requires q >= 3.
double robin_omega_bound(uint64_t q);

// --- 64-bit modular helpers -------------------------------------------------

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t n);
uint64_t powmod(uint64_t base, uint64_t exp, uint64_t n);

}  // namespace consec
