#include "consec/finite_field.hpp"

#include <sstream>

namespace consec {

namespace {

void check_element(const FieldSpec& spec, const FieldElement& a) {
  if (a.size() != spec.k) {
    throw std::domain_error("field element has wrong coefficient count for spec");
  }
  for (uint64_t c : a) {
    if (c >= spec.p) throw std::domain_error("field element coefficient out of range");
  }
}

// --- dense polynomial helpers over F_p (constant term first) ---

using Poly = std::vector<uint64_t>;

void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// c = a*b mod f, all degrees < k, f monic of degree k.
Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, uint64_t p) {
  unsigned k = static_cast<unsigned>(f.size()) - 1;
  std::vector<uint64_t> prod(2 * k - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      uint64_t& slot = prod[i + j];
      slot = (slot + mulmod(a[i], b[j], p)) % p;
    }
  }
  // reduce by monic f: eliminate degrees 2k-2 .. k
  for (size_t d = prod.size(); d-- > k;) {
    uint64_t c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (unsigned j = 0; j < k; ++j) {
      uint64_t sub = mulmod(c, f[j], p);
      uint64_t& slot = prod[d - k + j];
      slot = (slot + p - sub) % p;
    }
  }
  prod.resize(k);
  return prod;
}

Poly poly_powmod(Poly base, uint64_t e, const Poly& f, uint64_t p) {
  unsigned k = static_cast<unsigned>(f.size()) - 1;
  Poly r(k, 0);
  r[0] = 1;
  while (e > 0) {
    if (e & 1) r = poly_mulmod(r, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

// gcd of polynomials over F_p (inputs by value, arbitrary degree).
Poly poly_gcd(Poly a, Poly b, uint64_t p) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    // a mod b
    uint64_t inv_lead = powmod(b.back(), p - 2, p);
    while (a.size() >= b.size()) {
      uint64_t c = mulmod(a.back(), inv_lead, p);
      if (c != 0) {
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) {
          a[off + i] = (a[off + i] + p - mulmod(c, b[i], p)) % p;
        }
      }
      a.pop_back();
      poly_trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a;
}

// Frobenius ladder: f (monic, degree k) is irreducible over F_p iff
// x^(p^k) == x mod f and gcd(x^(p^(k/r)) - x, f) = 1 for every prime r | k.
bool is_irreducible(const Poly& f, uint64_t p) {
  unsigned k = static_cast<unsigned>(f.size()) - 1;
  if (k == 1) return true;
  Poly x(k, 0);
  if (k > 1) x[1] = 1;

  std::vector<unsigned> prime_divs;
  unsigned kk = k;
  for (unsigned r = 2; r * r <= kk; ++r) {
    if (kk % r == 0) {
      prime_divs.push_back(r);
      while (kk % r == 0) kk /= r;
    }
  }
  if (kk > 1) prime_divs.push_back(kk);

  Poly frob = x;  // x^(p^j) after j steps
  for (unsigned j = 1; j <= k; ++j) {
    frob = poly_powmod(frob, p, f, p);
    if (j < k) {
      bool checkpoint = false;
      for (unsigned r : prime_divs) {
        if (j == k / r) checkpoint = true;
      }
      if (checkpoint) {
        Poly diff = frob;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        Poly g = poly_gcd(diff, f, p);
        if (g.size() > 1) return false;  // nontrivial common factor
      }
    }
  }
  // frob now holds x^(p^k) mod f; require == x
  Poly diff = frob;
  if (diff.size() < 2) diff.resize(2, 0);
  diff[1] = (diff[1] + p - 1) % p;
  poly_trim(diff);
  return diff.empty();
}

}  // namespace

FieldSpec build_field(uint64_t p, unsigned k) {
  if (p < 3 || p % 2 == 0 || !is_prime(p)) {
    throw std::domain_error("build_field: p must be an odd prime");
  }
  if (k == 0) throw std::domain_error("build_field: k must be >= 1");
  unsigned __int128 q128 = 1;
  for (unsigned i = 0; i < k; ++i) {
    q128 *= p;
    if (q128 > (static_cast<unsigned __int128>(1) << 63)) {
      throw std::range_error("build_field: p^k exceeds 2^63");
    }
  }
  FieldSpec spec;
  spec.p = p;
  spec.k = k;
  spec.q = static_cast<uint64_t>(q128);
  spec.q_minus_1 = factorize(spec.q - 1);
  for (const auto& [pr, e] : spec.q_minus_1.factors) {
    spec.qm1_primes.push_back(pr.get_ui());
  }
  if (k > 1) {
    // lexicographically smallest monic irreducible, (c_0, .., c_{k-1}) compared
    // constant term first; c_{k-1} is the fastest-changing digit here so the
    // vectors are visited in increasing lex order.
    Poly f(k + 1, 0);
    f[k] = 1;
    std::vector<uint64_t> c(k, 0);
    for (;;) {
      for (unsigned i = 0; i < k; ++i) f[i] = c[i];
      if (f[0] != 0 && is_irreducible(f, p)) break;
      int pos = static_cast<int>(k) - 1;
      while (pos >= 0 && ++c[pos] == p) c[pos--] = 0;
      if (pos < 0) throw std::logic_error("no irreducible polynomial found");
    }
    spec.modulus.assign(f.begin(), f.end());
  }
  return spec;
}

FieldElement element_zero(const FieldSpec& spec) { return FieldElement(spec.k, 0); }

FieldElement element_one(const FieldSpec& spec) {
  FieldElement e(spec.k, 0);
  e[0] = 1;
  return e;
}

FieldElement element_from_index(const FieldSpec& spec, uint64_t index) {
  if (index >= spec.q) throw std::domain_error("element index out of range");
  FieldElement e(spec.k, 0);
  for (unsigned i = 0; i < spec.k; ++i) {
    e[i] = index % spec.p;
    index /= spec.p;
  }
  return e;
}

uint64_t element_index(const FieldSpec& spec, const FieldElement& a) {
  check_element(spec, a);
  uint64_t idx = 0;
  for (unsigned i = spec.k; i-- > 0;) idx = idx * spec.p + a[i];
  return idx;
}

bool is_zero(const FieldElement& a) {
  for (uint64_t c : a) {
    if (c != 0) return false;
  }
  return true;
}

FieldElement add(const FieldSpec& spec, const FieldElement& a, const FieldElement& b) {
  check_element(spec, a);
  check_element(spec, b);
  FieldElement r(spec.k);
  for (unsigned i = 0; i < spec.k; ++i) {
    uint64_t s = a[i] + b[i];
    r[i] = s >= spec.p ? s - spec.p : s;
  }
  return r;
}

FieldElement mul(const FieldSpec& spec, const FieldElement& a, const FieldElement& b) {
  check_element(spec, a);
  check_element(spec, b);
  if (spec.k == 1) return {mulmod(a[0], b[0], spec.p)};
  return poly_mulmod(a, b, spec.modulus, spec.p);
}

FieldElement pow(const FieldSpec& spec, const FieldElement& a, uint64_t e) {
  check_element(spec, a);
  if (spec.k == 1) return {powmod(a[0], e, spec.p)};
  return poly_powmod(a, e, spec.modulus, spec.p);
}

FieldElement add_one(const FieldSpec& spec, const FieldElement& a) {
  check_element(spec, a);
  FieldElement r = a;
  r[0] = (r[0] + 1) % spec.p;
  return r;
}

bool is_e_free(const FieldSpec& spec, const FieldElement& g,
               std::span<const uint64_t> e_primes) {
  check_element(spec, g);
  for (uint64_t l : e_primes) {
    if (l == 0 || (spec.q - 1) % l != 0) {
      throw std::domain_error("is_e_free: listed prime does not divide q-1");
    }
  }
  if (is_zero(g)) return false;
  const FieldElement one = element_one(spec);
  for (uint64_t l : e_primes) {
    if (pow(spec, g, (spec.q - 1) / l) == one) return false;
  }
  return true;
}

bool is_primitive(const FieldSpec& spec, const FieldElement& g) {
  return is_e_free(spec, g, spec.qm1_primes);
}

std::string field_spec_json(const FieldSpec& spec) {
  std::ostringstream os;
  os << "{\"p\":" << spec.p << ",\"k\":" << spec.k << ",\"q\":" << spec.q;
  if (spec.k > 1) {
    os << ",\"modulus\":[";
    for (size_t i = 0; i < spec.modulus.size(); ++i) {
      if (i) os << ',';
      os << spec.modulus[i];
    }
    os << ']';
  }
  os << '}';
  return os.str();
}

}  // namespace consec
