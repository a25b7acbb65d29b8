#pragma once

// Backtracking enumeration of all even m < M with omega(m) = w, and the
// verification pipeline built on it: rule candidates m+1 out with the exact
// criteria first (treating them as if they were prime powers), then test the
// survivors for prime-powerness, then search the surviving fields directly.
//
// The enumeration walks tuples (u, v) = (p^k, p) of odd prime powers sorted
// by u, keeps bases pairwise distinct, and prunes a branch as soon as the
// cheapest completion m * u^(remaining) already reaches M.  The outer loop
// over the power of two partitions the work into independent (w, k) units;
// a JSONL journal checkpoints completed units so interrupted runs resume
// without recomputation.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "consec/consecutive_search.hpp"

namespace consec {

struct PrimePowerTuple {
  uint64_t u;  // p^k, or UINT64_MAX for the terminal sentinel
  uint64_t v;  // p, or 0 for the sentinel
};

// All (p^k, p) with p an odd prime and p^k <= L, ascending by u, plus the
// sentinel.  L >= 3.
std::vector<PrimePowerTuple> gen_tuples(uint64_t L);

// Visits every even m < M with omega(m) = w exactly once; returns the count.
uint64_t enumerate_candidates(int w, uint64_t M,
                              const std::function<void(uint64_t)>& visit);

// One (w, k) unit: only m divisible by 2^k exactly.  The visitor also gets
// the omega(m) distinct prime divisors of m, ascending.
uint64_t enumerate_candidates_pow2(
    int w, uint64_t M, int k,
    const std::function<void(uint64_t, const uint64_t*, int)>& visit);

struct EnumRecord {
  int w = 0;
  uint64_t M = 0;
  uint64_t candidates = 0;         // m+1 values visited
  uint64_t survivors = 0;          // not ruled out by the criteria
  uint64_t prime_tests = 0;        // survivors that were prime
  uint64_t prime_power_tests = 0;  // survivors that were proper prime powers
  std::vector<uint64_t> exceptions;  // fields with no run found, ascending
};

struct PipelineOptions {
  int workers = 1;
  std::string journal_path;    // empty = no checkpointing
  bool criteria_first = true;  // false: prime-power test before the criteria;
                               // survivors then counts only tested fields
  SearchOptions search;
};

// Full pipeline for one omega level.  n = 3 reproduces the published counts
// with M = table2_M(w); other n are accepted with a caller-supplied M (fields
// with p < n are skipped).  The record is independent of the worker count.
EnumRecord run_pipeline(int n, int w, uint64_t M, const PipelineOptions& opts = {});

// Enumeration ceiling for omega(q-1) = w at n = 3, from the reference table.
uint64_t table2_M(int w);

// floor of the smallest worst-case right-hand side over feasible s; equals
// the reference M at every w (the strict inequality q > rhs makes floor(rhs)
// the largest q the criteria cannot reach).
uint64_t recompute_M(int n, int w);

// Thrown when a journal line contradicts the requested run (same unit,
// different parameters); callers treat it as an operational error.
struct JournalConflict : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace consec
