#pragma once

// Exact-arithmetic sufficiency criteria for the existence of n consecutive
// primitive elements in F_q.
//
// Basic:      q >= (n-1)^2 * 2^(2n*omega(q-1)),
//             with the factor 4 saved when q = 3 mod 4 (q >= 7).
// Sieve:      q > ((n-1)((ns-1)/delta + 2) W(e)^n)^2 for a divisor e of q-1
//             keeping omega(q-1)-s primes, delta = 1 - n*sum 1/p_i over the
//             s sieved primes (the largest ones), delta > 0; when q = 3 mod 4
//             and e is even the (n-1) factor halves.
//
// Every comparison is exact: delta and the right-hand sides are rationals,
// sqrt(q) is replaced by a rational upper bound with controlled excess, and
// no verdict ever depends on floating-point rounding.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "consec/numtheory.hpp"

namespace consec {

struct SievePlan {
  int n = 0;
  std::vector<Int> kept_primes;    // Rad(e)
  std::vector<Int> sieved_primes;  // the s largest primes of q-1
  int s = 0;
  Rat delta;                       // 1 - n * sum 1/p over sieved_primes
};

enum class Verdict { Guaranteed, Inconclusive };
enum class TheoremTag { Basic, Basic3mod4, Sieve, Sieve3mod4 };

struct CriterionOutcome {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<TheoremTag> theorem;  // present iff Guaranteed
  std::optional<SievePlan> plan;
  std::optional<Rat> rhs;             // the squared bound compared against q
};

// omega must equal omega(q-1); q_mod4 is q mod 4 (pass 1 to suppress the
// q = 3 mod 4 variants regardless of the true residue).
CriterionOutcome basic_criterion(int n, const Int& q, unsigned omega, int q_mod4);

// Sieve the s largest primes of q-1; 0 <= s <= omega(q-1).
SievePlan make_plan(int n, const Factorization& q_minus_1, int s);

// Tries every s in [0, omega(q-1)]; Guaranteed iff q > rhs for some feasible
// plan, reporting the plan with the smallest rhs (ties to smaller s).
CriterionOutcome sieve_criterion(int n, const Int& q, const Factorization& q_minus_1,
                                 int q_mod4);

// theta(e)^n * (q - (n-1) W(e)^n r) where r is a rational upper bound on
// sqrt(q) with r - sqrt(q) <= 1e-9 sqrt(q); a valid lower bound for the count
// of windows of e-free elements.
Rat lower_bound_Nn(int n, uint64_t q, const std::vector<uint64_t>& kept_primes);

// Generic right-hand side when q-1 is the product of the first w primes and
// the s largest are sieved; absent when delta <= 0.  s may be 0 (then the
// rhs is the basic bound in its strict form).
std::optional<Rat> worst_case_rhs(int n, int w, int s, bool mod4_variant = false);

// min over feasible s in [0, w] of worst_case_rhs(n, w, s); the enumeration
// ceiling for a given omega level.  Absent only if no s is feasible (cannot
// happen: s = 0 always is).
Rat worst_case_min_rhs(int n, int w);

// Rational r with r >= sqrt(q) and r - sqrt(q) <= 1e-9 sqrt(q).
Rat sqrt_upper(uint64_t q);

// {"verdict":..,"theorem":..,"s":..,"delta":"num/den","rhs":".."}
std::string outcome_json(const CriterionOutcome& o);

namespace detail {
// Lean batch form used by the enumeration pipeline: q = m+1 treated as if it
// were a prime power whose q-1 has exactly the given prime set.  Applies the
// basic and sieve criteria with the q = 3 mod 4 variants off by default
// (pass q_mod4 = 3 only when the variants are wanted).
bool criteria_rule_out(int n, uint64_t q, const uint64_t* primes, int w, int q_mod4);
}  // namespace detail

}  // namespace consec
