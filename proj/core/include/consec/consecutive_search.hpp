#pragma once

// Direct search for n consecutive distinct primitive elements in F_q, and
// range scans producing exception lists.
//
// Two search paths share one window semantics: iterate elements in odometer
// order; within each aligned block of p consecutive indices the window
// {g, g+1, .., g+n-1} cycles the constant term mod p.  Below a size
// threshold the per-element primitivity verdicts are materialized as a
// bitmap first (prime fields fill it by walking powers of one primitive
// root and sieving exponents); above it verdicts stream through a rolling
// window with early exit.  Both return the first witness in iteration
// order.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "consec/finite_field.hpp"

namespace consec {

struct RunResult {
  uint64_t q = 0;
  int n = 0;
  bool found = false;
  std::optional<FieldElement> witness;  // first g with g..g+n-1 all primitive
};

struct SearchOptions {
  // Prime fields below this size use the root-walk bitmap; above it they
  // stream.  Extension fields always test per element, block by block, which
  // already stops at the first block containing a window.
  uint64_t prime_bitmap_max = uint64_t(1) << 26;
};

// Requires 3 <= n <= p.
RunResult find_run(const FieldSpec& spec, int n, const SearchOptions& opts = {});

struct ScanRecord {
  uint64_t q = 0, p = 0;
  unsigned k = 0;
  bool found = false;
  std::optional<FieldElement> witness;
};

struct ScanSummary {
  uint64_t fields_scanned = 0;
  std::vector<uint64_t> exceptions;  // ascending
};

// Every odd prime power q in [q_min, q_max] with characteristic >= n gets a
// find_run; fields with p < n are skipped silently.  The sink (optional)
// receives one record per field in ascending q order regardless of worker
// count.
ScanSummary scan_exceptions(int n, uint64_t q_min, uint64_t q_max, int workers = 1,
                            const std::function<void(const ScanRecord&)>& sink = {},
                            const SearchOptions& opts = {});

// Odd prime powers in [lo, hi] as (q, p, k), ascending by q.
struct PrimePowerEntry {
  uint64_t q, p;
  unsigned k;
};
std::vector<PrimePowerEntry> odd_prime_powers(uint64_t lo, uint64_t hi);

std::string scan_record_json(const ScanRecord& r);

}  // namespace consec
