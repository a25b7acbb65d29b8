#include "consec/enumerator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "consec/reference_data.hpp"
#include "consec/sieve_criteria.hpp"

namespace consec {

namespace {

using nlohmann::json;

std::vector<uint64_t> primes_up_to(uint64_t limit) {
  const auto& table = prime_table();
  std::vector<uint64_t> out;
  if (!table.empty() && table.back() >= limit) {
    for (uint32_t p : table) {
      if (p > limit) break;
      out.push_back(p);
    }
    return out;
  }
  std::vector<bool> comp(limit + 1, false);
  for (uint64_t i = 2; i * i <= limit; ++i) {
    if (!comp[i]) {
      for (uint64_t j = i * i; j <= limit; j += i) comp[j] = true;
    }
  }
  for (uint64_t i = 2; i <= limit; ++i) {
    if (!comp[i]) out.push_back(i);
  }
  return out;
}

// m_prev * u^copies >= M, evaluated without overflow.
bool completion_reaches(uint64_t m_prev, uint64_t u, int copies, uint64_t M) {
  unsigned __int128 acc = m_prev;
  for (int i = 0; i < copies; ++i) {
    acc *= u;
    if (acc >= M) return true;
  }
  return acc >= M;
}

struct UnitCounts {
  uint64_t candidates = 0, survivors = 0, prime_tests = 0, prime_power_tests = 0;
  std::vector<uint64_t> exceptions;
};

uint64_t fnv1a_hash(const std::vector<uint64_t>& values) {
  uint64_t h = 14695981039346656037ull;
  for (uint64_t v : values) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xff;
      h *= 1099511628211ull;
    }
  }
  return h;
}

std::string hash_hex(uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// DFS over ascending prime-power tuples with pairwise distinct bases;
// index 0 plays "before the first tuple", indices past the list are the
// terminal sentinel.
uint64_t enumerate_unit(int w, uint64_t M, int k,
                        const std::vector<PrimePowerTuple>& tuples,
                        const std::function<void(uint64_t, const uint64_t*, int)>& visit) {
  if (((static_cast<unsigned __int128>(1) << k)) > M - 1) return 0;
  uint64_t count = 0;
  uint64_t m1 = uint64_t(1) << k;
  uint64_t bases[16];
  if (w == 1) {
    bases[0] = 2;
    visit(m1, bases, 1);
    return 1;
  }
  const size_t T = tuples.size() - 1;  // tuples[T] is the sentinel
  std::vector<size_t> idx(w + 1, 0);
  std::vector<uint64_t> m(w + 1, 0);
  std::vector<uint64_t> base_at(w + 1, 0);
  m[1] = m1;
  int d = 2;
  idx[2] = 0;
  while (d > 1) {
    size_t i = idx[d];
    for (;;) {
      ++i;
      if (i > T) break;
      uint64_t v = tuples[i - 1].v;
      bool used = false;
      for (int e = 2; e < d; ++e) used |= base_at[e] == v;
      if (!used) break;
    }
    idx[d] = i;
    if (i > T || completion_reaches(m[d - 1], tuples[i - 1].u, w + 1 - d, M)) {
      --d;
      continue;
    }
    m[d] = m[d - 1] * tuples[i - 1].u;
    base_at[d] = tuples[i - 1].v;
    if (d == w) {
      bases[0] = 2;
      for (int e = 2; e <= w; ++e) bases[e - 1] = base_at[e];
      std::sort(bases, bases + w);
      visit(m[d], bases, w);
      ++count;
    } else {
      ++d;
      idx[d] = idx[d - 1];
    }
  }
  return count;
}

std::vector<PrimePowerTuple> tuples_for(int w, uint64_t M) {
  if (w == 1) return {};
  uint64_t denom = 1;
  for (int i = 0; i + 1 < w; ++i) denom *= nth_prime(i + 1);
  uint64_t L = (M - 1) / denom;
  return gen_tuples(std::max<uint64_t>(L, 3));
}

}  // namespace

std::vector<PrimePowerTuple> gen_tuples(uint64_t L) {
  if (L < 3) throw std::domain_error("gen_tuples: L must be >= 3");
  std::vector<PrimePowerTuple> out;
  for (uint64_t p : primes_up_to(L)) {
    if (p == 2) continue;
    unsigned __int128 u = p;
    while (u <= L) {
      out.push_back({static_cast<uint64_t>(u), p});
      u *= p;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const PrimePowerTuple& a, const PrimePowerTuple& b) { return a.u < b.u; });
  out.push_back({UINT64_MAX, 0});
  return out;
}

uint64_t enumerate_candidates_pow2(
    int w, uint64_t M, int k,
    const std::function<void(uint64_t, const uint64_t*, int)>& visit) {
  if (w < 1 || M < 4 || k < 1) {
    throw std::domain_error("enumerate_candidates_pow2: need w >= 1, M >= 4, k >= 1");
  }
  auto tuples = tuples_for(w, M);
  return enumerate_unit(w, M, k, tuples, visit);
}

uint64_t enumerate_candidates(int w, uint64_t M,
                              const std::function<void(uint64_t)>& visit) {
  if (w < 1 || M < 4) throw std::domain_error("enumerate_candidates: need w >= 1, M >= 4");
  auto tuples = tuples_for(w, M);
  uint64_t total = 0;
  int kmax = 0;
  while (((static_cast<unsigned __int128>(1) << (kmax + 1))) <= M - 1) ++kmax;
  for (int k = 1; k <= kmax; ++k) {
    total += enumerate_unit(w, M, k, tuples,
                            [&](uint64_t m, const uint64_t*, int) { visit(m); });
  }
  return total;
}

uint64_t table2_M(int w) {
  for (const auto& row : tables::kPipelineRows) {
    if (row.w == w) return row.M;
  }
  throw std::domain_error("table2_M: w must be in 1..13");
}

uint64_t recompute_M(int n, int w) {
  Rat rhs = worst_case_min_rhs(n, w);
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), rhs.get_num().get_mpz_t(), rhs.get_den().get_mpz_t());
  if (!fl.fits_ulong_p()) throw std::range_error("recompute_M: ceiling exceeds 2^64");
  return fl.get_ui();
}

EnumRecord run_pipeline(int n, int w, uint64_t M, const PipelineOptions& opts) {
  if (n < 3) throw std::domain_error("run_pipeline: n must be >= 3");
  if (w < 1 || M < 4) throw std::domain_error("run_pipeline: need w >= 1, M >= 4");

  int kmax = 0;
  while (((static_cast<unsigned __int128>(1) << (kmax + 1))) <= M - 1) ++kmax;

  // journal replay
  std::map<int, UnitCounts> done;
  if (!opts.journal_path.empty()) {
    std::ifstream in(opts.journal_path);
    std::string line;
    while (in && std::getline(in, line)) {
      if (line.empty()) continue;
      json rec = json::parse(line, nullptr, false);
      if (rec.is_discarded()) throw JournalConflict("unparseable journal line");
      if (rec.value("w", -1) != w || rec.value("n", -1) != n) continue;
      if (rec.value("M", uint64_t(0)) != M) {
        throw JournalConflict("journal line for this unit used a different M");
      }
      int k = rec.value("k", -1);
      if (k < 1 || k > kmax) throw JournalConflict("journal line has k out of range");
      UnitCounts uc;
      uc.candidates = rec.value("candidates", uint64_t(0));
      uc.survivors = rec.value("survivors", uint64_t(0));
      uc.prime_tests = rec.value("prime_tests", uint64_t(0));
      uc.prime_power_tests = rec.value("prime_power_tests", uint64_t(0));
      uc.exceptions = rec.value("exceptions", std::vector<uint64_t>{});
      if (rec.value("hash", std::string{}) != hash_hex(fnv1a_hash(uc.exceptions))) {
        throw JournalConflict("journal line hash mismatch");
      }
      done[k] = std::move(uc);
    }
  }

  auto tuples = tuples_for(w, M);
  std::vector<int> pending;
  for (int k = 1; k <= kmax; ++k) {
    if (!done.count(k)) pending.push_back(k);
  }

  std::mutex sink_mutex;
  std::ofstream journal;
  if (!opts.journal_path.empty()) {
    journal.open(opts.journal_path, std::ios::app);
    if (!journal) throw std::runtime_error("cannot open journal for append");
  }

  std::atomic<size_t> next{0};
  auto work = [&] {
    for (;;) {
      size_t t = next.fetch_add(1);
      if (t >= pending.size()) return;
      int k = pending[t];
      UnitCounts uc;
      auto handle_survivor = [&](uint64_t q) {
        uint64_t p = 0;
        unsigned deg = 0;
        if (is_prime(q)) {
          ++uc.prime_tests;
          p = q;
          deg = 1;
        } else if (auto pp = is_prime_power(q); pp && pp->k >= 2) {
          ++uc.prime_power_tests;
          p = pp->p;
          deg = pp->k;
        } else {
          return;
        }
        if (p < static_cast<uint64_t>(n)) return;  // cannot carry the window
        FieldSpec spec = build_field(p, deg);
        if (!find_run(spec, n, opts.search).found) uc.exceptions.push_back(q);
      };
      enumerate_unit(w, M, k, tuples, [&](uint64_t m, const uint64_t* bases, int nb) {
        ++uc.candidates;
        uint64_t q = m + 1;
        if (opts.criteria_first) {
          if (detail::criteria_rule_out(n, q, bases, nb, 1)) return;
          ++uc.survivors;
          handle_survivor(q);
        } else {
          // prime-power test first; the criteria then run only on actual
          // fields, so survivors counts only those.
          if (!is_prime(q)) {
            auto pp = is_prime_power(q);
            if (!pp || pp->k < 2) return;
          }
          if (detail::criteria_rule_out(n, q, bases, nb, 1)) return;
          ++uc.survivors;
          handle_survivor(q);
        }
      });
      std::sort(uc.exceptions.begin(), uc.exceptions.end());
      std::lock_guard<std::mutex> lock(sink_mutex);
      if (journal.is_open()) {
        json rec{{"n", n},
                 {"w", w},
                 {"k", k},
                 {"M", M},
                 {"candidates", uc.candidates},
                 {"survivors", uc.survivors},
                 {"prime_tests", uc.prime_tests},
                 {"prime_power_tests", uc.prime_power_tests},
                 {"exceptions", uc.exceptions},
                 {"hash", hash_hex(fnv1a_hash(uc.exceptions))}};
        journal << rec.dump() << '\n' << std::flush;
      }
      done[k] = std::move(uc);
    }
  };

  int nw = std::max(1, opts.workers);
  if (nw == 1 || pending.size() <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nw; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  EnumRecord rec;
  rec.w = w;
  rec.M = M;
  for (auto& [k, uc] : done) {
    rec.candidates += uc.candidates;
    rec.survivors += uc.survivors;
    rec.prime_tests += uc.prime_tests;
    rec.prime_power_tests += uc.prime_power_tests;
    rec.exceptions.insert(rec.exceptions.end(), uc.exceptions.begin(),
                          uc.exceptions.end());
  }
  std::sort(rec.exceptions.begin(), rec.exceptions.end());
  return rec;
}

}  // namespace consec
