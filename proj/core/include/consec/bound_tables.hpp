#pragma once

// Reconstruction of the omega(q-1) / q0(n) bound table and the generic
// large-n threshold.
//
// For each n the basic criterion yields a first omega level above which
// every field qualifies; descending from there, a level w is resolved when
// some sieve plan beats the worst case q-1 = product of the first w primes
// (exactly: P_w + 1 > rhs).  The largest unresolved level and the largest
// enumeration ceiling among unresolved levels form one table row.  Level
// certification walks a float log2 filter and falls back to exact big-int
// comparison inside a +-0.75-bit band, so verdicts never hinge on rounding.

#include <cstdint>
#include <string>

#include "consec/numtheory.hpp"

namespace consec {

struct Table1Row {
  int n = 0;
  int omega_bound = 0;
  double q0_mantissa = 0;  // 3 significant digits, rounded up
  long q0_exp10 = 0;
};

struct LogBound {
  double log_value = 0;  // natural log of the bound
  std::string description;
};

// Smallest w* such that P_w + 1 >= (n-1)^2 2^(2nw) for every w >= w*,
// certified in exact integers at the boundary (the margin is V-shaped with
// its minimum where primes cross 2^(2n), so a finite scan suffices).
int initial_omega_bound(int n);

// Descend from w_start - 1, certify resolved levels, and aggregate the
// unresolved ones into a table row.
Table1Row refine_omega_bound(int n, int w_start);

Table1Row table1_row(int n);  // refine_omega_bound(n, initial_omega_bound(n))

// log of max{ (n-1)^(2/d), exp(2^(2.76804 n / (1-d))) }; with d = 0.0001 and
// n >= 11 this stays within exp(2^(2.77 n)).
LogBound generic_q0(int n, double d);

// The rearranged basic condition under the omega(q-1) growth bound:
// log q (1 - 2.76804 n log 2 / log log q) >= 2 log(n-1).
bool check_bitter(int n, double log_q, double d);

std::string table1_csv(int n_lo, int n_hi);
std::string table1_latex(int n_lo, int n_hi);

}  // namespace consec
