#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <numeric>
#include <set>

#include "consec/consecutive_search.hpp"
#include "consec/reference_data.hpp"

using namespace consec;

namespace {

// independent primitive-set oracle for prime fields: x is primitive iff its
// discrete log is nonzero and coprime to q-1
std::set<uint64_t> primitive_set_by_dlog(uint64_t q) {
  // find any generator by direct order computation
  auto order = [q](uint64_t g) {
    uint64_t cur = g % q, ord = 1;
    while (cur != 1) {
      cur = (unsigned __int128(cur) * g) % q;
      ++ord;
    }
    return ord;
  };
  uint64_t g0 = 0;
  for (uint64_t g = 2; g < q; ++g) {
    if (order(g) == q - 1) {
      g0 = g;
      break;
    }
  }
  REQUIRE(g0 != 0);
  std::set<uint64_t> prim;
  uint64_t x = 1;
  for (uint64_t j = 0; j < q - 1; ++j) {
    if (j != 0 && std::gcd(j, q - 1) == 1) prim.insert(x);
    x = (unsigned __int128(x) * g0) % q;
  }
  // j = 0 gives x = 1 which is never primitive for q > 2; the generator
  // itself (j = 1) always is
  prim.insert(g0);
  return prim;
}

SearchOptions force_bitmap() {
  SearchOptions o;
  o.prime_bitmap_max = uint64_t(1) << 40;
  return o;
}

SearchOptions force_stream() {
  SearchOptions o;
  o.prime_bitmap_max = 0;
  return o;
}

}  // namespace

TEST_CASE("find_run examples") {
  // primitive roots mod 11 are {2, 6, 7, 8}; first window is {6, 7, 8}
  auto f11 = build_field(11, 1);
  auto r = find_run(f11, 3);
  REQUIRE(r.found);
  CHECK(*r.witness == FieldElement{6});

  auto f13 = build_field(13, 1);
  CHECK_FALSE(find_run(f13, 3).found);

  auto f81 = build_field(3, 4);
  CHECK_FALSE(find_run(f81, 3).found);
}

TEST_CASE("find_run rejects bad window lengths") {
  auto f11 = build_field(11, 1);
  CHECK_THROWS_AS(find_run(f11, 2), std::invalid_argument);
  CHECK_THROWS_AS(find_run(f11, 13), std::invalid_argument);
  auto f3 = build_field(3, 2);
  CHECK_THROWS_AS(find_run(f3, 4), std::invalid_argument);  // n > p
}

TEST_CASE("window monotonicity: a length-n run contains every shorter run") {
  for (uint64_t q : {11ull, 31ull, 1009ull, 243ull, 2401ull}) {
    auto pp = is_prime_power(q);
    auto spec = build_field(pp->p, pp->k);
    for (int n = static_cast<int>(std::min<uint64_t>(pp->p, 6)); n >= 3; --n) {
      if (find_run(spec, n).found) {
        for (int m = 3; m < n; ++m) {
          CAPTURE(q, n, m);
          CHECK(find_run(spec, m).found);
        }
      }
    }
  }
}

TEST_CASE("bitmap and streaming paths agree on witnesses up to 1e4") {
  for (const auto& e : odd_prime_powers(3, 10000)) {
    if (e.p < 3) continue;
    auto spec = build_field(e.p, e.k);
    auto a = find_run(spec, 3, force_bitmap());
    auto b = find_run(spec, 3, force_stream());
    CAPTURE(e.q);
    REQUIRE(a.found == b.found);
    if (a.found) CHECK(*a.witness == *b.witness);
  }
}

TEST_CASE("prime-field primitive set matches the discrete-log oracle") {
  // all primes q <= 2000 plus a spot sample above
  for (const auto& e : odd_prime_powers(3, 2000)) {
    if (e.k != 1) continue;
    auto spec = build_field(e.p, 1);
    auto oracle = primitive_set_by_dlog(e.q);
    for (uint64_t x = 0; x < e.q; ++x) {
      bool expect = oracle.count(x) > 0;
      if (is_primitive(spec, {x}) != expect) {
        CAPTURE(e.q, x);
        REQUIRE(is_primitive(spec, {x}) == expect);
      }
    }
  }
  for (uint64_t q : {4999ull, 7919ull, 9973ull}) {
    auto spec = build_field(q, 1);
    auto oracle = primitive_set_by_dlog(q);
    uint64_t count = 0;
    for (uint64_t x = 0; x < q; ++x) {
      if (is_primitive(spec, {x})) {
        ++count;
        CHECK(oracle.count(x) == 1);
      }
    }
    CHECK(count == oracle.size());
  }
}

TEST_CASE("scan_exceptions reproduces the eleven-field list to 3000") {
  auto summary = scan_exceptions(3, 3, 3000);
  std::vector<uint64_t> expect(tables::kNoTripleRun.begin(), tables::kNoTripleRun.end());
  CHECK(summary.exceptions == expect);
  CHECK(*std::max_element(summary.exceptions.begin(), summary.exceptions.end()) == 169);
}

TEST_CASE("scan_exceptions is independent of worker count and emits ordered records") {
  std::vector<uint64_t> qs_single, qs_multi;
  auto s1 = scan_exceptions(3, 3, 1500, 1,
                            [&](const ScanRecord& r) { qs_single.push_back(r.q); });
  auto s4 = scan_exceptions(3, 3, 1500, 4,
                            [&](const ScanRecord& r) { qs_multi.push_back(r.q); });
  CHECK(s1.exceptions == s4.exceptions);
  CHECK(qs_single == qs_multi);
  CHECK(std::is_sorted(qs_single.begin(), qs_single.end()));
  CHECK(s1.fields_scanned == qs_single.size());
}

TEST_CASE("scan_exceptions skips characteristics below n silently") {
  // n = 5 over [3, 50]: fields with p in {2, 3} never appear
  std::vector<uint64_t> seen;
  scan_exceptions(5, 3, 50, 1, [&](const ScanRecord& r) { seen.push_back(r.p); });
  for (uint64_t p : seen) CHECK(p >= 5);
}

TEST_CASE("conjectured n = 4 exception list matches to 2500") {
  auto summary = scan_exceptions(4, 3, 2500);
  CHECK(summary.exceptions == tables::no_quad_run());
}

TEST_CASE("n = 5 finds the isolated top exception in [15000, 20000]") {
  auto summary = scan_exceptions(5, 15000, 20000);
  CHECK(summary.exceptions == std::vector<uint64_t>{15625});
}

TEST_CASE("scan record JSON") {
  ScanRecord r{11, 11, 1, true, FieldElement{6}};
  CHECK(scan_record_json(r) ==
        "{\"q\":11,\"p\":11,\"k\":1,\"found\":true,\"witness\":[6]}");
  ScanRecord miss{13, 13, 1, false, std::nullopt};
  CHECK(scan_record_json(miss) == "{\"q\":13,\"p\":13,\"k\":1,\"found\":false}");
}

TEST_CASE("odd_prime_powers enumerates complete ascending entries") {
  auto pps = odd_prime_powers(3, 300);
  CHECK(std::is_sorted(pps.begin(), pps.end(),
                       [](auto& a, auto& b) { return a.q < b.q; }));
  std::set<uint64_t> qs;
  for (const auto& e : pps) {
    qs.insert(e.q);
    unsigned __int128 v = 1;
    for (unsigned t = 0; t < e.k; ++t) v *= e.p;
    CHECK(static_cast<uint64_t>(v) == e.q);
  }
  // spot membership
  for (uint64_t q : {3ull, 9ull, 27ull, 81ull, 243ull, 25ull, 125ull, 169ull, 289ull})
    CHECK(qs.count(q) == 1);
  CHECK(qs.count(2) == 0);
  CHECK(qs.count(4) == 0);
  CHECK(qs.count(15) == 0);
  CHECK(qs.count(255) == 0);
}
