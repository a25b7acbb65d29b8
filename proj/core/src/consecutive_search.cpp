#include "consec/consecutive_search.hpp"

#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>

namespace consec {

namespace {

// --- primitivity verdicts, prime fields -------------------------------------

struct PrimeFieldTester {
  uint64_t q;
  std::vector<uint64_t> exps;  // (q-1)/l per prime l | q-1, l ascending

  explicit PrimeFieldTester(const FieldSpec& spec) : q(spec.q) {
    for (uint64_t l : spec.qm1_primes) exps.push_back((spec.q - 1) / l);
  }

  bool operator()(uint64_t x) const {
    if (x == 0) return false;
    for (uint64_t e : exps) {
      if (powmod(x, e, q) == 1) return false;
    }
    return true;
  }
};

// Primitivity bitmap over a prime field: walk powers of one primitive root
// and sieve the exponents; one mulmod per element instead of omega powmods.
std::vector<uint64_t> prime_field_bitmap(const FieldSpec& spec) {
  const uint64_t q = spec.q, m = q - 1;
  PrimeFieldTester tester(spec);
  uint64_t g0 = 0;
  for (uint64_t x = 2; x < q; ++x) {
    if (tester(x)) {
      g0 = x;
      break;
    }
  }
  std::vector<bool> coprime(m, true);
  for (uint64_t l : spec.qm1_primes) {
    for (uint64_t j = 0; j < m; j += l) coprime[j] = false;
  }
  std::vector<uint64_t> bits((q + 63) / 64, 0);
  uint64_t x = 1;
  for (uint64_t j = 0; j < m; ++j) {
    if (coprime[j]) bits[x >> 6] |= uint64_t(1) << (x & 63);
    x = mulmod(x, g0, q);
  }
  return bits;
}

// --- extension-field workspace ------------------------------------------------

// Flat-buffer arithmetic used by the scans; mirrors the public element ops
// without per-operation allocation.
struct ExtOps {
  const FieldSpec& spec;
  unsigned k;
  uint64_t p;
  std::vector<uint64_t> exps;
  mutable std::vector<uint64_t> prod, base, acc;

  explicit ExtOps(const FieldSpec& s)
      : spec(s), k(s.k), p(s.p), prod(2 * s.k - 1), base(s.k), acc(s.k) {
    for (uint64_t l : s.qm1_primes) exps.push_back((s.q - 1) / l);
  }

  void mulmod_into(const uint64_t* a, const uint64_t* b, uint64_t* out) const {
    std::fill(prod.begin(), prod.end(), 0);
    for (unsigned i = 0; i < k; ++i) {
      if (a[i] == 0) continue;
      for (unsigned j = 0; j < k; ++j) {
        if (b[j] == 0) continue;
        prod[i + j] = (prod[i + j] + mulmod(a[i], b[j], p)) % p;
      }
    }
    const auto& f = spec.modulus;
    for (size_t d = prod.size(); d-- > k;) {
      uint64_t c = prod[d];
      if (c == 0) continue;
      prod[d] = 0;
      for (unsigned j = 0; j < k; ++j) {
        prod[d - k + j] = (prod[d - k + j] + p - mulmod(c, f[j], p)) % p;
      }
    }
    std::copy(prod.begin(), prod.begin() + k, out);
  }

  // acc = g^e; returns true iff result == 1
  bool pow_is_one(const uint64_t* g, uint64_t e) const {
    std::copy(g, g + k, base.begin());
    std::fill(acc.begin(), acc.end(), 0);
    acc[0] = 1;
    while (e > 0) {
      if (e & 1) mulmod_into(acc.data(), base.data(), acc.data());
      e >>= 1;
      if (e > 0) mulmod_into(base.data(), base.data(), base.data());
    }
    if (acc[0] != 1) return false;
    for (unsigned i = 1; i < k; ++i) {
      if (acc[i] != 0) return false;
    }
    return true;
  }

  bool primitive(const uint64_t* g) const {
    bool zero = true;
    for (unsigned i = 0; i < k; ++i) {
      if (g[i] != 0) {
        zero = false;
        break;
      }
    }
    if (zero) return false;
    for (uint64_t e : exps) {
      if (pow_is_one(g, e)) return false;
    }
    return true;
  }
};

// --- cyclic window scan ---------------------------------------------------------
//
// verdict(i) for i in [0, len): primitivity of the block element with local
// offset i.  Windows wrap inside the block; the first all-true window start
// (ordered by start offset) is returned, or -1.
template <typename VerdictAt>
int64_t first_cyclic_window(uint64_t len, int n, VerdictAt&& verdict) {
  if (len < static_cast<uint64_t>(n)) return -1;
  int run = 0;
  uint64_t limit = len + static_cast<uint64_t>(n) - 1;
  for (uint64_t i = 0; i < limit; ++i) {
    uint64_t pos = i < len ? i : i - len;
    if (verdict(pos)) {
      if (++run >= n) {
        uint64_t start = i - static_cast<uint64_t>(n) + 1;
        if (start < len) return static_cast<int64_t>(start);
        return -1;  // only wrapped duplicates remain
      }
    } else {
      run = 0;
    }
  }
  return -1;
}

RunResult run_result(const FieldSpec& spec, int n, int64_t idx) {
  RunResult r;
  r.q = spec.q;
  r.n = n;
  if (idx >= 0) {
    r.found = true;
    r.witness = element_from_index(spec, static_cast<uint64_t>(idx));
  }
  return r;
}

}  // namespace

RunResult find_run(const FieldSpec& spec, int n, const SearchOptions& opts) {
  if (n < 3) throw std::invalid_argument("find_run: n < 3 is unsupported");
  if (static_cast<uint64_t>(n) > spec.p) {
    throw std::invalid_argument("find_run: n > p, window elements would repeat");
  }

  if (spec.k == 1) {
    const uint64_t q = spec.q;
    if (q <= opts.prime_bitmap_max) {
      auto bits = prime_field_bitmap(spec);
      auto verdict = [&bits](uint64_t i) {
        return (bits[i >> 6] >> (i & 63)) & 1;
      };
      return run_result(spec, n, first_cyclic_window(q, n, verdict));
    }
    // streaming: verdicts computed on demand; the run counter makes each
    // element get tested at most once.
    PrimeFieldTester tester(spec);
    std::vector<uint8_t> head(n - 1);  // verdicts of elements 0..n-2 for wrap
    for (int i = 0; i + 1 < n; ++i) head[i] = tester(static_cast<uint64_t>(i));
    int run = 0;
    uint64_t limit = q + static_cast<uint64_t>(n) - 1;
    for (uint64_t i = 0; i < limit; ++i) {
      bool v = i < q ? tester(i) : head[i - q] != 0;
      if (v) {
        if (++run >= n) {
          uint64_t start = i - static_cast<uint64_t>(n) + 1;
          if (start < q) return run_result(spec, n, static_cast<int64_t>(start));
          break;
        }
      } else {
        run = 0;
      }
    }
    return run_result(spec, n, -1);
  }

  // extension field: per-block verdicts in odometer order
  ExtOps ops(spec);
  const uint64_t p = spec.p, q = spec.q;
  std::vector<uint64_t> elem(spec.k, 0);
  std::vector<uint8_t> verdicts(p);
  for (uint64_t block = 0; block < q; block += p) {
    // element with index `block` has constant term 0
    {
      uint64_t idx = block;
      for (unsigned i = 0; i < spec.k; ++i) {
        elem[i] = idx % p;
        idx /= p;
      }
    }
    for (uint64_t a = 0; a < p; ++a) {
      elem[0] = a;
      verdicts[a] = ops.primitive(elem.data());
    }
    int64_t local = first_cyclic_window(
        p, n, [&verdicts](uint64_t i) { return verdicts[i] != 0; });
    if (local >= 0) {
      return run_result(spec, n, static_cast<int64_t>(block) + local);
    }
  }
  return run_result(spec, n, -1);
}

std::vector<PrimePowerEntry> odd_prime_powers(uint64_t lo, uint64_t hi) {
  std::vector<PrimePowerEntry> out;
  if (hi < 3) return out;
  const auto& table = prime_table();
  std::vector<uint64_t> primes;
  if (!table.empty() && table.back() >= hi) {
    for (uint32_t p : table) {
      if (p > hi) break;
      if (p > 2) primes.push_back(p);
    }
  } else {
    std::vector<bool> comp(hi + 1, false);
    for (uint64_t i = 3; i * i <= hi; i += 2) {
      if (!comp[i]) {
        for (uint64_t j = i * i; j <= hi; j += 2 * i) comp[j] = true;
      }
    }
    for (uint64_t i = 3; i <= hi; i += 2) {
      if (!comp[i]) primes.push_back(i);
    }
  }
  for (uint64_t p : primes) {
    unsigned k = 1;
    unsigned __int128 q = p;
    while (q <= hi) {
      if (q >= lo) {
        out.push_back({static_cast<uint64_t>(q), p, k});
      }
      q *= p;
      ++k;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const PrimePowerEntry& a, const PrimePowerEntry& b) { return a.q < b.q; });
  return out;
}

ScanSummary scan_exceptions(int n, uint64_t q_min, uint64_t q_max, int workers,
                            const std::function<void(const ScanRecord&)>& sink,
                            const SearchOptions& opts) {
  if (q_max < q_min || q_min < 3) {
    throw std::domain_error("scan_exceptions: need 3 <= q_min <= q_max");
  }
  auto fields = odd_prime_powers(q_min, q_max);
  std::erase_if(fields, [n](const PrimePowerEntry& e) {
    return e.p < static_cast<uint64_t>(n);
  });

  constexpr size_t kChunk = 64;
  const size_t num_chunks = (fields.size() + kChunk - 1) / kChunk;
  std::vector<std::vector<ScanRecord>> results(num_chunks);
  std::atomic<size_t> next{0};

  auto work = [&] {
    for (;;) {
      size_t c = next.fetch_add(1);
      if (c >= num_chunks) return;
      size_t lo = c * kChunk;
      size_t hi = std::min(lo + kChunk, fields.size());
      auto& out = results[c];
      out.reserve(hi - lo);
      for (size_t i = lo; i < hi; ++i) {
        const auto& f = fields[i];
        FieldSpec spec = build_field(f.p, f.k);
        RunResult r = find_run(spec, n, opts);
        out.push_back({f.q, f.p, f.k, r.found, std::move(r.witness)});
      }
    }
  };

  int nw = std::max(1, workers);
  if (nw == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (int i = 0; i < nw; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  ScanSummary summary;
  for (auto& chunk : results) {
    for (auto& rec : chunk) {
      ++summary.fields_scanned;
      if (!rec.found) summary.exceptions.push_back(rec.q);
      if (sink) sink(rec);
    }
  }
  return summary;
}

std::string scan_record_json(const ScanRecord& r) {
  std::ostringstream os;
  os << "{\"q\":" << r.q << ",\"p\":" << r.p << ",\"k\":" << r.k << ",\"found\":"
     << (r.found ? "true" : "false");
  if (r.witness) {
    os << ",\"witness\":[";
    for (size_t i = 0; i < r.witness->size(); ++i) {
      if (i) os << ',';
      os << (*r.witness)[i];
    }
    os << ']';
  }
  os << '}';
  return os.str();
}

}  // namespace consec
