#include "consec/sieve_criteria.hpp"

#include <sstream>

namespace consec {

namespace {

Rat rat_pow(Rat base, unsigned e) {
  Rat r = 1;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

Int int_pow2(unsigned e) {
  Int r = 1;
  mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), e);
  return r;
}

// rhs of the sieve inequality for a prepared plan: ((n-1)((ns-1)/d + 2) W^n)^2,
// with the (n-1) halved for the q = 3 mod 4 variant.
Rat plan_rhs(int n, int omega, const SievePlan& plan, bool halved) {
  Rat factor(n - 1, halved ? 2 : 1);
  Rat inner = Rat(n * plan.s - 1) / plan.delta + 2;
  Rat w_pow = Rat(int_pow2(static_cast<unsigned>(n * (omega - plan.s))));
  Rat base = factor * inner * w_pow;
  return base * base;
}

}  // namespace

CriterionOutcome basic_criterion(int n, const Int& q, unsigned omega, int q_mod4) {
  if (n < 3) throw std::domain_error("basic_criterion: n must be >= 3");
  CriterionOutcome out;
  Int rhs = Int(n - 1) * (n - 1) * int_pow2(2u * n * omega);
  if (q >= rhs) {
    out.verdict = Verdict::Guaranteed;
    out.theorem = TheoremTag::Basic;
    out.rhs = Rat(rhs);
    return out;
  }
  if (q_mod4 == 3 && q >= 7) {
    Int rhs4 = rhs / 4;
    if (q >= rhs4) {
      out.verdict = Verdict::Guaranteed;
      out.theorem = TheoremTag::Basic3mod4;
      out.rhs = Rat(rhs4);
      return out;
    }
  }
  out.rhs = Rat(rhs);
  return out;
}

SievePlan make_plan(int n, const Factorization& q_minus_1, int s) {
  int omega = static_cast<int>(q_minus_1.omega());
  if (s < 0 || s > omega) throw std::domain_error("make_plan: s out of range");
  SievePlan plan;
  plan.n = n;
  plan.s = s;
  plan.delta = 1;
  for (int i = 0; i < omega; ++i) {
    const Int& p = q_minus_1.factors[i].first;
    if (i < omega - s) {
      plan.kept_primes.push_back(p);
    } else {
      plan.sieved_primes.push_back(p);
      plan.delta -= Rat(n) / Rat(p);
    }
  }
  plan.delta.canonicalize();
  return plan;
}

CriterionOutcome sieve_criterion(int n, const Int& q, const Factorization& q_minus_1,
                                 int q_mod4) {
  if (n < 3) throw std::domain_error("sieve_criterion: n must be >= 3");
  int omega = static_cast<int>(q_minus_1.omega());
  CriterionOutcome out;
  for (int s = 0; s <= omega; ++s) {
    SievePlan plan = make_plan(n, q_minus_1, s);
    if (plan.delta <= 0) break;  // delta only shrinks as s grows
    Rat rhs = plan_rhs(n, omega, plan, false);
    bool halved = false;
    if (q_mod4 == 3 && q >= 7 && s < omega) {
      // 2 divides e exactly when 2 is not sieved, i.e. s < omega.
      rhs /= 4;
      halved = true;
    }
    if (!out.rhs || rhs < *out.rhs) {
      out.rhs = rhs;
      out.plan = std::move(plan);
      out.theorem = halved ? TheoremTag::Sieve3mod4 : TheoremTag::Sieve;
    }
  }
  if (out.rhs && Rat(q) > *out.rhs) {
    out.verdict = Verdict::Guaranteed;
  } else {
    out.theorem.reset();
  }
  return out;
}

Rat sqrt_upper(uint64_t q) {
  Int qz(static_cast<unsigned long>(q));
  Int s0;
  mpz_sqrt(s0.get_mpz_t(), qz.get_mpz_t());
  if (s0 * s0 == qz) return Rat(s0);
  // Newton from above: r -> (r + q/r)/2 stays >= sqrt(q) and squares the
  // relative error each round; four rounds take the initial <= 0.16 down
  // below 1e-9 for every q >= 3.
  Rat r = Rat(s0 * s0 + qz) / Rat(2 * s0);
  for (int i = 0; i < 4; ++i) r = (r + Rat(qz) / r) / 2;
  return r;
}

Rat lower_bound_Nn(int n, uint64_t q, const std::vector<uint64_t>& kept_primes) {
  Rat theta = 1;
  for (uint64_t p : kept_primes) theta *= Rat(p - 1, p);
  theta.canonicalize();
  Rat w_pow = Rat(int_pow2(static_cast<unsigned>(n * kept_primes.size())));
  Rat bound = rat_pow(theta, n) * (Rat(Int(static_cast<unsigned long>(q))) -
                                   Rat(n - 1) * w_pow * sqrt_upper(q));
  return bound;
}

std::optional<Rat> worst_case_rhs(int n, int w, int s, bool mod4_variant) {
  if (w < 1 || s < 0 || s > w) throw std::domain_error("worst_case_rhs: bad (w, s)");
  const auto& primes = prime_table();
  if (static_cast<size_t>(w) > primes.size()) {
    throw std::range_error("worst_case_rhs: raise the prime table limit");
  }
  SievePlan plan;
  plan.n = n;
  plan.s = s;
  plan.delta = 1;
  for (int i = w - s; i < w; ++i) {
    plan.sieved_primes.emplace_back(primes[i]);
    Rat term(n, primes[i]);
    term.canonicalize();
    plan.delta -= term;
  }
  if (plan.delta <= 0) return std::nullopt;
  return plan_rhs(n, w, plan, mod4_variant);
}

Rat worst_case_min_rhs(int n, int w) {
  std::optional<Rat> best;
  for (int s = 0; s <= w; ++s) {
    auto rhs = worst_case_rhs(n, w, s);
    if (!rhs) break;  // delta <= 0 stays that way as s grows
    if (!best || *rhs < *best) best = std::move(rhs);
  }
  return *best;
}

std::string outcome_json(const CriterionOutcome& o) {
  std::ostringstream os;
  os << "{\"verdict\":\""
     << (o.verdict == Verdict::Guaranteed ? "Guaranteed" : "Inconclusive") << '"';
  if (o.theorem) {
    const char* tag = nullptr;
    switch (*o.theorem) {
      case TheoremTag::Basic: tag = "Basic"; break;
      case TheoremTag::Basic3mod4: tag = "Basic3mod4"; break;
      case TheoremTag::Sieve: tag = "Sieve"; break;
      case TheoremTag::Sieve3mod4: tag = "Sieve3mod4"; break;
    }
    os << ",\"theorem\":\"" << tag << '"';
  }
  if (o.plan) {
    os << ",\"s\":" << o.plan->s << ",\"delta\":\"" << o.plan->delta.get_num()
       << '/' << o.plan->delta.get_den() << '"';
  }
  if (o.rhs) {
    // decimal rendering, 25 significant digits
    mpf_class f(*o.rhs, 256);
    mp_exp_t exp;
    std::string digits = f.get_str(exp, 10, 25);
    bool neg = !digits.empty() && digits[0] == '-';
    std::string mant = neg ? digits.substr(1) : digits;
    if (mant.empty()) mant = "0";
    os << ",\"rhs\":\"" << (neg ? "-" : "") << mant[0];
    if (mant.size() > 1) os << '.' << mant.substr(1);
    os << 'e' << (exp - 1) << '"';
  }
  os << '}';
  return os.str();
}

namespace detail {

bool criteria_rule_out(int n, uint64_t q, const uint64_t* primes, int w, int q_mod4) {
  // Thread-local scratch keeps this allocation-free across millions of calls.
  struct Scratch {
    mpz_t N, D, X, T, Q;
    Scratch() {
      mpz_inits(N, D, X, T, Q, nullptr);
    }
    ~Scratch() { mpz_clears(N, D, X, T, Q, nullptr); }
  };
  thread_local Scratch z;

  const bool mod4 = (q_mod4 == 3) && q >= 7;

  // basic criterion: q >= (n-1)^2 2^(2nw)  (or a quarter of that mod 4)
  {
    unsigned shift = 2u * n * w;
    mpz_set_ui(z.T, (unsigned long)(n - 1) * (n - 1));
    mpz_mul_2exp(z.T, z.T, mod4 ? shift - 2 : shift);
    if (mpz_cmp_ui(z.T, q) <= 0) return true;
  }

  // sieve criterion over all s, delta as the exact fraction N/D.
  mpz_set_ui(z.N, 1);
  mpz_set_ui(z.D, 1);
  mpz_set_ui(z.Q, q);
  for (int s = 0; s <= w; ++s) {
    if (s > 0) {
      unsigned long p = primes[w - s];
      mpz_mul_ui(z.T, z.D, (unsigned long)n);
      mpz_mul_ui(z.N, z.N, p);
      mpz_sub(z.N, z.N, z.T);
      mpz_mul_ui(z.D, z.D, p);
      if (mpz_sgn(z.N) <= 0) break;  // delta <= 0; larger s only worse
    }
    // q > ((n-1)((ns-1)D + 2N) 2^(n(w-s)) / N)^2, cross-multiplied:
    // q*N^2 > X^2 with X = (n-1)((ns-1)D + 2N) 2^(n(w-s))   [plain]
    // 4q*N^2 > X^2                                          [q = 3 mod 4, s < w]
    long c = static_cast<long>(n) * s - 1;  // -1 at s = 0
    if (c >= 0) {
      mpz_mul_ui(z.X, z.D, static_cast<unsigned long>(c));
      mpz_addmul_ui(z.X, z.N, 2);
    } else {
      mpz_mul_ui(z.X, z.N, 2);
      mpz_sub(z.X, z.X, z.D);
    }
    mpz_mul_ui(z.X, z.X, (unsigned long)(n - 1));
    mpz_mul_2exp(z.X, z.X, (unsigned)(n * (w - s)));
    mpz_mul(z.X, z.X, z.X);       // X^2
    mpz_mul(z.T, z.N, z.N);
    mpz_mul(z.T, z.T, z.Q);       // q N^2
    if (mpz_cmp(z.T, z.X) > 0) return true;
    if (mod4 && s < w) {
      mpz_mul_2exp(z.T, z.T, 2);  // 4 q N^2
      if (mpz_cmp(z.T, z.X) > 0) return true;
    }
  }
  return false;
}

}  // namespace detail

}  // namespace consec
