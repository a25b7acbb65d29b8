#include "consec/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

namespace consec {

// --- prime table -----------------------------------------------------------

namespace {

constexpr uint64_t kDefaultPrimeLimit = 10'000'000;

struct PrimeTableState {
  std::once_flag built;
  uint64_t limit = kDefaultPrimeLimit;
  std::vector<uint32_t> primes;
};

PrimeTableState& table_state() {
  static PrimeTableState s;
  return s;
}

std::vector<uint32_t> sieve_primes(uint64_t limit) {
  std::vector<uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> comp(limit + 1, false);
  for (uint64_t i = 2; i * i <= limit; ++i) {
    if (!comp[i]) {
      for (uint64_t j = i * i; j <= limit; j += i) comp[j] = true;
    }
  }
  primes.reserve(static_cast<size_t>(limit / (std::log(double(limit)) - 1.1)));
  for (uint64_t i = 2; i <= limit; ++i) {
    if (!comp[i]) primes.push_back(static_cast<uint32_t>(i));
  }
  return primes;
}

}  // namespace

void set_prime_table_limit(uint64_t limit) {
  auto& s = table_state();
  if (!s.primes.empty()) {
    if (limit > s.limit) {
      throw std::logic_error("prime table already built; set the limit before first use");
    }
    return;
  }
  if (limit < 1000 || limit > (uint64_t(1) << 32)) {
    throw std::domain_error("prime table limit must be in [1000, 2^32]");
  }
  s.limit = limit;
}

const std::vector<uint32_t>& prime_table() {
  auto& s = table_state();
  std::call_once(s.built, [&s] { s.primes = sieve_primes(s.limit); });
  return s.primes;
}

uint64_t nth_prime(unsigned i) {
  const auto& ps = prime_table();
  if (i == 0 || i > ps.size()) {
    throw std::range_error("nth_prime index outside the configured prime table");
  }
  return ps[i - 1];
}

// --- 64-bit modular arithmetic ----------------------------------------------

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t n) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % n);
}

uint64_t powmod(uint64_t base, uint64_t exp, uint64_t n) {
  if (n == 1) return 0;
  uint64_t r = 1;
  base %= n;
  while (exp > 0) {
    if (exp & 1) r = mulmod(r, base, n);
    base = mulmod(base, base, n);
    exp >>= 1;
  }
  return r;
}

// --- primality ---------------------------------------------------------------

namespace {

// Sufficient witness set for all n < 2^64 (Sinclair's 7-element base set).
constexpr uint64_t kWitnesses64[] = {2,      325,     9375,      28178,
                                     450775, 9780504, 1795265022};

bool strong_probable_prime(uint64_t n, uint64_t a) {
  a %= n;
  if (a == 0) return true;
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  uint64_t x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  for (uint64_t a : kWitnesses64) {
    if (!strong_probable_prime(n, a)) return false;
  }
  return true;
}

bool is_prime(const Int& n) {
  if (n.fits_ulong_p()) return is_prime(n.get_ui());
  if (n < 0) return false;
  // BPSW-style deterministic battery (strong tests plus a Lucas test) as
  // implemented by GMP; no randomized verdicts.
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

// --- factorization ------------------------------------------------------------

namespace {

constexpr uint32_t kTrialDivisionBound = 10'000;

// Trial-division primes are independent of the configured table so the
// factorization trace never varies with configuration.
const std::vector<uint32_t>& trial_primes() {
  static const std::vector<uint32_t> ps = sieve_primes(kTrialDivisionBound);
  return ps;
}

uint64_t brent_rho_u64(uint64_t n) {
  // Pollard-Brent with the fixed schedule c = 1, 2, 3, ...; x0 = 2.
  for (uint64_t c = 1;; ++c) {
    uint64_t x = 2, y = 2, d = 1;
    uint64_t power = 1, lam = 1;
    auto f = [n, c](uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      if (power == lam) {
        x = y;
        power <<= 1;
        lam = 0;
      }
      y = f(y);
      ++lam;
      uint64_t diff = x > y ? x - y : y - x;
      d = std::gcd(diff, n);
    }
    if (d != n) return d;
  }
}

void factor_u64_into(uint64_t n, std::vector<uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  uint64_t d = brent_rho_u64(n);
  factor_u64_into(d, out);
  factor_u64_into(n / d, out);
}

Int rho_split_mpz(const Int& n) {
  for (unsigned long c = 1;; ++c) {
    Int x = 2, y = 2, d = 1, diff;
    auto f = [&n, c](const Int& v) { return Int((v * v + c) % n); };
    uint64_t power = 1, lam = 1;
    while (d == 1) {
      if (power == lam) {
        x = y;
        power <<= 1;
        lam = 0;
      }
      y = f(y);
      ++lam;
      diff = abs(x - y);
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

void factor_mpz_into(const Int& n, std::vector<Int>& out) {
  if (n == 1) return;
  if (n.fits_ulong_p()) {
    std::vector<uint64_t> small;
    factor_u64_into(n.get_ui(), small);
    for (uint64_t p : small) out.emplace_back(Int(static_cast<unsigned long>(p)));
    return;
  }
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  if (mpz_perfect_power_p(n.get_mpz_t())) {
    for (unsigned k = 2; k <= mpz_sizeinbase(n.get_mpz_t(), 2); ++k) {
      Int root;
      if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
        std::vector<Int> base;
        factor_mpz_into(root, base);
        for (unsigned rep = 0; rep < k; ++rep) {
          out.insert(out.end(), base.begin(), base.end());
        }
        return;
      }
    }
  }
  Int d = rho_split_mpz(n);
  factor_mpz_into(d, out);
  factor_mpz_into(n / d, out);
}

Factorization assemble(const Int& value, std::vector<Int>&& primes) {
  std::sort(primes.begin(), primes.end());
  Factorization f;
  f.value = value;
  for (size_t i = 0; i < primes.size();) {
    size_t j = i;
    while (j < primes.size() && primes[j] == primes[i]) ++j;
    f.factors.emplace_back(primes[i], static_cast<unsigned>(j - i));
    i = j;
  }
  Int check = 1;
  for (const auto& [p, e] : f.factors) {
    for (unsigned t = 0; t < e; ++t) check *= p;
  }
  if (check != value) throw std::logic_error("factorization self-check failed");
  return f;
}

}  // namespace

Factorization factorize(const Int& m) {
  if (m == 0) throw std::domain_error("factorize: m must be positive");
  if (m < 0) throw std::domain_error("factorize: m must be positive");
  if (mpz_sizeinbase(m.get_mpz_t(), 2) > kFactorizeMaxBits) {
    throw std::range_error("factorize: input exceeds the 2^96 ceiling");
  }
  Int n = m;
  std::vector<Int> primes;
  for (uint32_t p : trial_primes()) {
    if (Int(p) * p > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      n /= p;
      primes.emplace_back(p);
    }
  }
  factor_mpz_into(n, primes);
  return assemble(m, std::move(primes));
}

Factorization factorize(uint64_t m) {
  if (m == 0) throw std::domain_error("factorize: m must be positive");
  uint64_t n = m;
  std::vector<uint64_t> ps;
  for (uint32_t p : trial_primes()) {
    if (uint64_t(p) * p > n) break;
    while (n % p == 0) {
      n /= p;
      ps.push_back(p);
    }
  }
  factor_u64_into(n, ps);
  std::vector<Int> primes;
  primes.reserve(ps.size());
  for (uint64_t p : ps) primes.emplace_back(static_cast<unsigned long>(p));
  return assemble(Int(static_cast<unsigned long>(m)), std::move(primes));
}

// --- prime powers --------------------------------------------------------------

std::optional<PrimePower> is_prime_power(uint64_t m) {
  if (m < 2) throw std::domain_error("is_prime_power: m must be >= 2");
  if (is_prime(m)) return PrimePower{m, 1};
  for (unsigned k = 2; k < 64; ++k) {
    if ((uint64_t(1) << k) > m) break;
    auto r = static_cast<uint64_t>(std::llround(std::pow(double(m), 1.0 / k)));
    for (uint64_t cand = (r > 1 ? r - 1 : 1); cand <= r + 1; ++cand) {
      unsigned __int128 pk = 1;
      for (unsigned t = 0; t < k && pk <= m; ++t) pk *= cand;
      if (pk == m && is_prime(cand)) return PrimePower{cand, k};
    }
  }
  return std::nullopt;
}

Int primorial(unsigned m) {
  if (m == 0) throw std::domain_error("primorial: m must be >= 1");
  const auto& ps = prime_table();
  if (m > ps.size()) {
    throw std::range_error("primorial: raise the prime table limit for this m");
  }
  Int p;
  mpz_primorial_ui(p.get_mpz_t(), ps[m - 1]);
  return p;
}

// --- multiplicative functions ---------------------------------------------------

MultiplicativeStats multiplicative_stats(const Factorization& f) {
  MultiplicativeStats s;
  s.omega = f.omega();
  s.big_w = uint64_t(1) << s.omega;
  s.theta = 1;
  s.radical = 1;
  s.mu = (s.omega % 2 == 0) ? 1 : -1;
  s.phi = 1;
  for (const auto& [p, e] : f.factors) {
    s.theta *= Rat(p - 1, p);
    s.radical *= p;
    if (e > 1) s.mu = 0;
    Int pe = 1;
    for (unsigned t = 0; t + 1 < e; ++t) pe *= p;
    s.phi *= pe * (p - 1);
  }
  s.theta.canonicalize();
  return s;
}

double robin_omega_bound(uint64_t q) {
  if (q < 3) throw std::domain_error("robin_omega_bound: q must be >= 3");
  double lq = std::log(static_cast<double>(q));
  double v = 1.38402 * lq / std::log(lq);
  return v * (1.0 + 1e-12);
}

}  // namespace consec
