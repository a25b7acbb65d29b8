#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "consec/consecutive_search.hpp"
#include "consec/reference_data.hpp"
#include "consec/sieve_criteria.hpp"

using namespace consec;

TEST_CASE("basic criterion examples") {
  // q = P_50 + 1 with omega(q-1) = 50 clears the n = 3 threshold 4 * 2^300
  Int q = primorial(50) + 1;
  auto out = basic_criterion(3, q, 50, static_cast<int>(mpz_fdiv_ui(q.get_mpz_t(), 4)));
  CHECK(out.verdict == Verdict::Guaranteed);
  CHECK(out.theorem == TheoremTag::Basic);

  auto small = basic_criterion(3, 169, 3, 169 % 4);
  CHECK(small.verdict == Verdict::Inconclusive);
  CHECK_FALSE(small.theorem.has_value());

  // boundary 3 mod 4 variant: passes the halved bound, fails the plain one
  // (omega = 2, n = 3: plain threshold 4*2^12 = 16384, halved 4096)
  Int qb = 4099;  // = 3 mod 4, in [4096, 16384)
  auto plain = basic_criterion(3, qb, 2, 1);
  CHECK(plain.verdict == Verdict::Inconclusive);
  auto variant = basic_criterion(3, qb, 2, 3);
  CHECK(variant.verdict == Verdict::Guaranteed);
  CHECK(variant.theorem == TheoremTag::Basic3mod4);
}

TEST_CASE("make_plan examples") {
  // q-1 = product of the first 14 primes, s = 8
  Int v = 1;
  for (unsigned i = 1; i <= 14; ++i) v *= nth_prime(i);
  auto f = factorize(v);
  auto plan = make_plan(3, f, 8);
  REQUIRE(plan.sieved_primes.size() == 8);
  CHECK(plan.sieved_primes.front() == 17);
  CHECK(plan.sieved_primes.back() == 43);
  CHECK(plan.delta > Rat(1109, 10000));
  CHECK(plan.delta < Rat(111, 1000));

  auto s0 = make_plan(3, f, 0);
  CHECK(s0.delta == 1);
  CHECK(s0.sieved_primes.empty());

  auto f30 = factorize(uint64_t(30));
  auto one = make_plan(3, f30, 1);
  REQUIRE(one.sieved_primes.size() == 1);
  CHECK(one.sieved_primes[0] == 5);
  CHECK(one.delta == Rat(2, 5));

  CHECK_THROWS_AS(make_plan(3, f30, 4), std::domain_error);
}

TEST_CASE("sieve criterion on the first-14-primes worst case") {
  Int v = 1;
  for (unsigned i = 1; i <= 14; ++i) v *= nth_prime(i);
  auto f = factorize(v);
  Int q = v + 1;
  auto out = sieve_criterion(3, q, f, 1);
  CHECK(out.verdict == Verdict::Guaranteed);
  REQUIRE(out.rhs.has_value());
  CHECK(*out.rhs < Rat(q));
  // the winning right side sits just above 1.2039747811e16
  CHECK(*out.rhs > Rat(Int("12039747811000000")));
  CHECK(*out.rhs < Rat(Int("12039747812000000")));
}

TEST_CASE("sieve criterion stays inconclusive on a known exception") {
  auto f = factorize(uint64_t(168));
  auto out = sieve_criterion(3, 169, f, 169 % 4);
  CHECK(out.verdict == Verdict::Inconclusive);
}

TEST_CASE("criterion agrees with direct search at q = 1000003") {
  uint64_t q = 1000003;  // prime, q-1 = 2 * 3 * 166667
  auto f = factorize(q - 1);
  auto out = sieve_criterion(3, Int(static_cast<unsigned long>(q)), f,
                             static_cast<int>(q % 4));
  CHECK(out.verdict == Verdict::Guaranteed);
  auto spec = build_field(q, 1);
  CHECK(find_run(spec, 3).found);
}

TEST_CASE("lower_bound_Nn examples are vacuous below the sign threshold") {
  // q = 13, e with radical {2}: (1/2)^3 (13 - 2 * 8 * r) < 0
  Rat b13 = lower_bound_Nn(3, 13, {2});
  CHECK(b13 < 0);
  // direct count of 3-windows of non-squares mod 13 is 2, consistent
  CHECK(Rat(2) >= b13);

  Rat b7 = lower_bound_Nn(3, 7, {2});
  CHECK(b7 < 0);
  CHECK(Rat(0) >= b7);

  // sign flip at the exact threshold q = ((n-1) W(e)^n)^2: with e = {2},
  // W = 2, the bound turns positive once q > (2*8)^2 = 256
  CHECK(lower_bound_Nn(3, 257, {2}) > 0);
  CHECK(lower_bound_Nn(3, 256, {2}) <= 0);  // r = sqrt(256) exactly
}

TEST_CASE("sqrt_upper is an upper bound within 1e-9 relative") {
  for (uint64_t q : {3ull, 7ull, 13ull, 169ull, 1000003ull, 3037000499ull}) {
    Rat r = sqrt_upper(q);
    CHECK(r * r >= Rat(Int(static_cast<unsigned long>(q))));
    // (r - sqrt(q))/sqrt(q) <= 1e-9  <=>  r^2 <= q (1 + 1e-9)^2
    Rat limit = Rat(Int(static_cast<unsigned long>(q))) *
                Rat(Int("1000000002000000001"), Int("1000000000000000000"));
    CHECK(r * r <= limit);
  }
}

TEST_CASE("worst case right-hand sides reproduce the published enumeration bounds") {
  auto r148 = worst_case_rhs(3, 14, 8);
  REQUIRE(r148.has_value());
  CHECK(*r148 > Rat(Int("12039747811000000")));
  CHECK(*r148 < Rat(Int("12039747812000000")));

  // w = 13: the minimum over s is at s = 7 and floors to the published M
  Rat m13 = worst_case_min_rhs(3, 13);
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), m13.get_num().get_mpz_t(), m13.get_den().get_mpz_t());
  CHECK(fl == Int("3489135957826319"));
  // within 1e-9 relative of the published value
  Rat published(Int("3489135957826319"));
  Rat rel = (m13 - published) / published;
  CHECK(rel >= 0);
  CHECK(rel < Rat(1, 1000000000));

  // s = 8 over the 13 smallest primes drives delta negative
  CHECK_FALSE(worst_case_rhs(3, 13, 8).has_value());

  // all thirteen published ceilings via floor(min rhs)
  for (const auto& row : tables::kPipelineRows) {
    Rat m = worst_case_min_rhs(3, row.w);
    Int flr;
    mpz_fdiv_q(flr.get_mpz_t(), m.get_num().get_mpz_t(), m.get_den().get_mpz_t());
    CAPTURE(row.w);
    CHECK(flr == Int(static_cast<unsigned long>(row.M)));
  }
}

TEST_CASE("s = 0 sieve plan reduces to the basic comparison") {
  for (uint64_t v : {168ull, 30ull, 120ull, 2310ull}) {
    auto f = factorize(v);
    unsigned omega = f.omega();
    SievePlan plan = make_plan(3, f, 0);
    CHECK(plan.delta == 1);
    // rhs with s=0: ((n-1) * 1 * W^n)^2 == (n-1)^2 W^(2n)
    Rat expected = Rat(Int(2) * Int(2));
    Int w_pow = 1;
    mpz_mul_2exp(w_pow.get_mpz_t(), w_pow.get_mpz_t(), 6 * omega);
    expected *= Rat(w_pow);
    // compare via the criterion outcome on the boundary value
    Int q_boundary = Int(4) * w_pow;
    auto basic = basic_criterion(3, q_boundary, omega, 1);
    CHECK(basic.verdict == Verdict::Guaranteed);  // uses >=
    auto sieve = sieve_criterion(3, q_boundary, f, 1);
    REQUIRE(sieve.rhs.has_value());
    // min rhs can only be <= the s=0 value, and q > rhs implies q >= basic rhs
    CHECK(*sieve.rhs <= expected);
    if (sieve.verdict == Verdict::Guaranteed) {
      CHECK(basic.verdict == Verdict::Guaranteed);
    }
  }
}

TEST_CASE("delta increases as the smallest sieved prime is removed") {
  Int v = 1;
  for (unsigned i = 1; i <= 10; ++i) v *= nth_prime(i);
  auto f = factorize(v);
  for (int s = 1; s <= 10; ++s) {
    auto lo = make_plan(3, f, s - 1);
    auto hi = make_plan(3, f, s);
    CHECK(lo.delta > hi.delta);
  }
}

TEST_CASE("worst case dominates every actual q at the same omega and s") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 200; ++trial) {
    // build a random q-1 with 3 distinct primes
    std::vector<uint64_t> ps = {2};
    while (ps.size() < 3) {
      uint64_t c = 3 + 2 * (rng() % 500);
      if (is_prime(c) && std::find(ps.begin(), ps.end(), c) == ps.end()) {
        ps.push_back(c);
      }
    }
    std::sort(ps.begin(), ps.end());
    Int v = 1;
    for (uint64_t p : ps) v *= static_cast<unsigned long>(p);
    auto f = factorize(v);
    for (int s = 0; s <= 3; ++s) {
      auto worst = worst_case_rhs(3, 3, s);
      auto plan = make_plan(3, f, s);
      if (plan.delta <= 0) continue;
      REQUIRE(worst.has_value());  // first-primes delta is the smallest
      Rat actual_inner = Rat(3 * s - 1) / plan.delta + 2;
      Int w_pow = 1;
      mpz_mul_2exp(w_pow.get_mpz_t(), w_pow.get_mpz_t(), 3 * (3 - s));
      Rat actual = Rat(2) * actual_inner * Rat(w_pow);
      actual = actual * actual;
      CHECK(*worst >= actual);
    }
  }
}

TEST_CASE("verdicts ignore the order factors were supplied in") {
  // factorize() canonicalizes, so two routes to the same value must agree
  uint64_t v = 2 * 3 * 29 * 1009;
  auto a = factorize(v);
  auto b = factorize(Int(static_cast<unsigned long>(v)));
  auto oa = sieve_criterion(3, Int(static_cast<unsigned long>(v + 1)), a, 1);
  auto ob = sieve_criterion(3, Int(static_cast<unsigned long>(v + 1)), b, 1);
  CHECK(oa.verdict == ob.verdict);
  CHECK(*oa.rhs == *ob.rhs);
}

TEST_CASE("outcome JSON carries verdict, plan and rhs") {
  auto f = factorize(uint64_t(1000002));
  auto out = sieve_criterion(3, 1000003, f, 3);
  std::string js = outcome_json(out);
  CHECK(js.find("\"verdict\":\"Guaranteed\"") != std::string::npos);
  CHECK(js.find("\"s\":") != std::string::npos);
  CHECK(js.find("\"delta\":\"") != std::string::npos);
  CHECK(js.find("\"rhs\":\"") != std::string::npos);
}
