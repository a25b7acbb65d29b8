#pragma once

// Brute-force validation on small fields (q <= 4000) of the character-sum
// identities and inequalities the criteria rest on: the character expression
// for window counts, the (n-1)sqrt(q) bound on the mixed sums, the exact
// cancellation of odd-even-count terms when q = 3 mod 4, and the sieve
// inequality.
//
// Characters are realized through one discrete-log table: chi_j(x) is the
// unit-circle point at angle 2*pi*j*index(x)/(q-1), extended by chi(0) = 0.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "consec/finite_field.hpp"

namespace consec {

struct DlogTable {
  FieldSpec spec;
  FieldElement generator;           // first primitive element in odometer order
  std::vector<uint64_t> index;      // element odometer index -> dlog in [0, q-1)
};

DlogTable build_dlog(const FieldSpec& spec);  // q <= 4000

struct CharIndex {
  uint64_t d;  // exact order, a squarefree divisor of q-1
  uint64_t j;  // character number in [0, q-1) with (q-1)/gcd(j, q-1) == d
};

// All phi(d) characters of exact order d (d must divide q-1).
std::vector<CharIndex> characters_of_order(const DlogTable& table, uint64_t d);

// All characters of squarefree exact order, principal (j = 0) first.
std::vector<CharIndex> squarefree_characters(const DlogTable& table);

// sum over g in F_q of chi_1(g) chi_2(g+1) .. chi_n(g+n-1); chars.size() = n <= p.
std::complex<double> s_sum(const DlogTable& table, const std::vector<CharIndex>& chars);

using PrimeSet = std::vector<uint64_t>;  // radical of a divisor of q-1

struct WindowCounts {
  std::vector<PrimeSet> e_sets;
  uint64_t count = 0;
};

// Exhaustive count of g such that g+t is e_{t+1}-free for each slot.
WindowCounts n_direct(const FieldSpec& spec, const std::vector<PrimeSet>& e_sets);

// The same count through the Moebius-weighted character sums (squarefree
// orders only).  Groups the per-slot sums over all characters of one exact
// order first; the product structure over slots makes the grouped total
// identical to the full expansion.  Must land within 1e-6 of n_direct.
double n_via_characters(const DlogTable& table, const std::vector<PrimeSet>& e_sets);

// q = 3 mod 4, e even: the partial sum over order tuples with an odd count
// of even orders must vanish; checked exactly in rationals.
bool verify_parity_cancellation(const DlogTable& table, int n, const PrimeSet& e);

// |N(l at slot j over e) - theta(l) N_n(e)| <= (1 - 1/l) theta(e)^n (n-1) W(e)^n sqrt(q),
// both window counts exhaustive, 1e-6 slack on the sqrt side.
bool verify_lemma4(const DlogTable& table, int n, const PrimeSet& e, uint64_t l, int j);

// N_n(q-1) >= sum_{j,i} N(p_i at slot j over e) - (ns-1) N_n(e), all counts
// exhaustive, exact integers.
bool verify_sieve_inequality(const FieldSpec& spec, int n, const PrimeSet& kept);

struct OracleReport {
  uint64_t q = 0;
  uint64_t checks_run = 0;
  std::vector<std::string> failures;
};

// Runs the full battery for one field at n = 3 (plus every n-independent
// check); any failure entry is a hard error for callers.
OracleReport oracle_field_report(const FieldSpec& spec);

std::string oracle_report_json(const OracleReport& r);

}  // namespace consec
