#pragma once

// Arithmetic in F_q for odd prime powers q = p^k, with primitivity and
// e-freeness testing.
//
// Extension fields are F_p[x]/(f) where f is the lexicographically smallest
// monic irreducible of degree k (coefficients compared constant term first),
// so the same (p, k) always yields the same field on every platform.
// Elements iterate in odometer order on coefficient vectors, constant term
// fastest; "g + 1" adds the multiplicative identity, i.e. bumps the constant
// term mod p.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "consec/numtheory.hpp"

namespace consec {

struct FieldSpec {
  uint64_t p = 0;                 // odd prime characteristic
  unsigned k = 0;                 // extension degree, q = p^k
  uint64_t q = 0;
  std::vector<uint64_t> modulus;  // k+1 coeffs, constant first; empty iff k == 1
  Factorization q_minus_1;
  std::vector<uint64_t> qm1_primes;  // primes of q-1, ascending
};

// Coefficient vector of length k, constant term first, entries in [0, p).
using FieldElement = std::vector<uint64_t>;

// q = p^k must stay below 2^63.
FieldSpec build_field(uint64_t p, unsigned k);

FieldElement element_zero(const FieldSpec& spec);
FieldElement element_one(const FieldSpec& spec);
FieldElement element_from_index(const FieldSpec& spec, uint64_t index);
uint64_t element_index(const FieldSpec& spec, const FieldElement& a);
bool is_zero(const FieldElement& a);

FieldElement add(const FieldSpec& spec, const FieldElement& a, const FieldElement& b);
FieldElement mul(const FieldSpec& spec, const FieldElement& a, const FieldElement& b);
FieldElement pow(const FieldSpec& spec, const FieldElement& a, uint64_t e);
FieldElement add_one(const FieldSpec& spec, const FieldElement& a);

// g != 0 and g^((q-1)/l) != 1 for every prime l in e_primes.  Every listed
// prime must divide q-1.
bool is_e_free(const FieldSpec& spec, const FieldElement& g,
               std::span<const uint64_t> e_primes);

bool is_primitive(const FieldSpec& spec, const FieldElement& g);

// {"p":..,"k":..,"q":..,"modulus":[..]} - records which modulus a run used.
std::string field_spec_json(const FieldSpec& spec);

}  // namespace consec
