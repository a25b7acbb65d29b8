#pragma once

// Published reference values the verification commands compare against.
// Everything the checks need lives here so no test or command hardcodes a
// number in logic.

#include <array>
#include <cstdint>
#include <vector>

namespace consec::tables {

// The eleven odd prime powers whose fields lack three consecutive primitive
// elements; complete for all odd q.
extern const std::array<uint64_t, 11> kNoTripleRun;

// Enumeration ceilings and pipeline counts per omega(q-1) level at n = 3:
// candidates visited, survivors of the criteria, survivors that were prime,
// survivors that were proper prime powers.
struct PipelineRow {
  int w;
  uint64_t M;
  uint64_t candidates;
  uint64_t survivors;
  uint64_t prime_tests;
  uint64_t prime_power_tests;
};
extern const std::array<PipelineRow, 13> kPipelineRows;

// Bound table rows: the largest unresolved omega(q-1) and the matching q
// ceiling (3 significant digits, rounded up) for n = 3..10.
struct OmegaBoundRow {
  int n;
  int omega_bound;
  double q0_mantissa;
  long q0_exp10;
};
extern const std::array<OmegaBoundRow, 8> kOmegaBoundRows;

// Known fields without n consecutive primitive elements among q with
// characteristic >= n (complete up to the verified scan limits: 1e8 for
// the full lists, so any disagreement below that is newsworthy).
extern const std::vector<uint64_t>& no_quad_run();       // n = 4, ends 7^4
extern const std::vector<uint64_t>& no_quint_run();      // n = 5, ends 5^6
inline constexpr uint64_t kLastNoSextupleRun = 65521;    // n = 6
inline constexpr uint64_t kLastNoSeptupleRun = 1037401;  // n = 7
inline constexpr uint64_t kLastNoOctupleRun = 4476781;   // n = 8

}  // namespace consec::tables
