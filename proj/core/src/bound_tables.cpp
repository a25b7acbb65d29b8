#include "consec/bound_tables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <vector>

#include "consec/sieve_criteria.hpp"

namespace consec {

namespace {

// prefix sums over the prime table: log2 of the primorial and the
// reciprocal sum, both in doubles (accumulated error stays far below the
// 0.75-bit exact-fallback band)
struct PrefixSums {
  std::vector<double> log2_primorial;  // [w] = sum_{i<w} log2 p_i
  std::vector<double> inv_sum;         // [w] = sum_{i<w} 1/p_i
};

const PrefixSums& prefixes() {
  static PrefixSums ps;
  static std::once_flag once;
  std::call_once(once, [] {
    const auto& primes = prime_table();
    ps.log2_primorial.resize(primes.size() + 1, 0.0);
    ps.inv_sum.resize(primes.size() + 1, 0.0);
    for (size_t i = 0; i < primes.size(); ++i) {
      ps.log2_primorial[i + 1] = ps.log2_primorial[i] + std::log2(double(primes[i]));
      ps.inv_sum[i + 1] = ps.inv_sum[i] + 1.0 / double(primes[i]);
    }
  });
  return ps;
}

Int primorial_exact(int w) {
  Int p;
  mpz_primorial_ui(p.get_mpz_t(), nth_prime(static_cast<unsigned>(w)));
  return p;
}

// exact check: P_w + 1 >= (n-1)^2 2^(2nw)
bool basic_holds_exact(int n, int w) {
  Int lhs = primorial_exact(w) + 1;
  Int rhs = Int(n - 1) * (n - 1);
  mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), 2u * n * w);
  return lhs >= rhs;
}

// float log2 of the sieve rhs for the worst case at (w, s); NaN if delta
// is too close to zero to trust (caller falls back to exact arithmetic).
double log2_rhs(int n, int w, int s, const PrefixSums& ps) {
  double delta = 1.0 - n * (ps.inv_sum[w] - ps.inv_sum[w - s]);
  if (delta < 1e-9) return std::numeric_limits<double>::quiet_NaN();
  double inner = (double(n) * s - 1.0) / delta + 2.0;
  return 2.0 * (std::log2(double(n - 1)) + std::log2(inner) + double(n) * (w - s));
}

// hill-descent on s from a warm hint; the rhs is unimodal in s in practice,
// and a wrong local minimum can only under-certify (caught by the exact
// table checks), never falsely resolve a level.
std::pair<double, int> local_min_s(int n, int w, int hint, const PrefixSums& ps) {
  int s = std::clamp(hint, 1, w);
  double cur = log2_rhs(n, w, s, ps);
  while (std::isnan(cur) && s > 1) cur = log2_rhs(n, w, --s, ps);
  if (std::isnan(cur)) return {cur, s};
  for (;;) {
    bool moved = false;
    for (int s2 : {s - 1, s + 1}) {
      if (s2 < 1 || s2 > w) continue;
      double v = log2_rhs(n, w, s2, ps);
      if (!std::isnan(v) && v < cur) {
        s = s2;
        cur = v;
        moved = true;
        break;
      }
    }
    if (!moved) return {cur, s};
  }
}

// exact check: P_w + 1 > rhs(n, w, s)
bool resolves_exact(int n, int w, int s) {
  auto rhs = worst_case_rhs(n, w, s);
  if (!rhs) return false;
  Rat lhs(primorial_exact(w) + 1);
  return lhs > *rhs;
}

struct MantExp {
  double mantissa;
  long exp10;
};

// ceiling to 3 significant digits (the published style for upper bounds)
MantExp to_mantissa_exp10(const Rat& v) {
  // exp10 via a float estimate corrected exactly
  double l2 = (mpz_sizeinbase(v.get_num().get_mpz_t(), 2) -
               mpz_sizeinbase(v.get_den().get_mpz_t(), 2));
  long e10 = std::lround(l2 * 0.30103) ;
  auto pow10 = [](long e) {
    Int p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e));
    return p;
  };
  while (v >= Rat(pow10(e10 + 1))) ++e10;
  while (v < Rat(pow10(e10))) --e10;
  // m100 = ceil(v * 100 / 10^e10) in [100, 1000]
  Int num = v.get_num() * 100;
  Int den = v.get_den() * pow10(e10);
  Int m100;
  mpz_cdiv_q(m100.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (m100 == 1000) return {1.00, e10 + 1};
  return {m100.get_d() / 100.0, e10};
}

}  // namespace

int initial_omega_bound(int n) {
  if (n < 3) throw std::domain_error("initial_omega_bound: n must be >= 3");
  const auto& ps = prefixes();
  const auto& primes = prime_table();
  const double c = 2.0 * std::log2(double(n - 1));
  const double mono_prime = std::pow(2.0, 2.0 * n);

  int last_fail = 0;
  int streak = 0;
  for (int w = 1;; ++w) {
    if (static_cast<size_t>(w) > primes.size()) {
      throw std::range_error("initial_omega_bound: raise the prime table limit");
    }
    double margin = ps.log2_primorial[w] - 2.0 * double(n) * w - c;
    bool ok;
    if (std::abs(margin) <= 0.75) {
      ok = basic_holds_exact(n, w);
    } else {
      ok = margin > 0;
    }
    if (!ok) {
      last_fail = w;
      streak = 0;
    } else {
      ++streak;
    }
    // once primes exceed 2^(2n) the margin only grows; a small pass streak
    // past that point certifies every later level
    if (streak >= 4 && double(primes[w - 1]) > mono_prime) return last_fail + 1;
  }
}

Table1Row refine_omega_bound(int n, int w_start) {
  if (n < 3 || w_start < 2) throw std::domain_error("refine_omega_bound: bad inputs");
  const auto& ps = prefixes();
  std::vector<int> unresolved;
  int hint = 1;
  for (int w = w_start - 1; w >= 1; --w) {
    double lp = ps.log2_primorial[w];
    auto [lr, s] = local_min_s(n, w, hint, ps);
    bool resolved = false;
    if (!std::isnan(lr)) {
      hint = s;
      if (lp > lr + 0.75) {
        resolved = true;
      } else if (lp > lr - 0.75) {
        resolved = resolves_exact(n, w, s);
      }
    }
    if (!resolved) unresolved.push_back(w);
  }
  if (unresolved.empty()) {
    throw std::logic_error("refine_omega_bound: every level resolved; w_start too low?");
  }
  Table1Row row;
  row.n = n;
  row.omega_bound = *std::max_element(unresolved.begin(), unresolved.end());
  Rat q0 = 0;
  for (int w : unresolved) {
    Rat m = worst_case_min_rhs(n, w);
    if (m > q0) q0 = m;
  }
  auto me = to_mantissa_exp10(q0);
  row.q0_mantissa = me.mantissa;
  row.q0_exp10 = me.exp10;
  return row;
}

Table1Row table1_row(int n) { return refine_omega_bound(n, initial_omega_bound(n)); }

LogBound generic_q0(int n, double d) {
  if (n < 3) throw std::domain_error("generic_q0: n must be >= 3");
  if (!(d > 0.0 && d < 1.0)) throw std::domain_error("generic_q0: d must be in (0,1)");
  double log_first = (2.0 / d) * std::log(double(n - 1));
  double log_second = std::pow(2.0, 2.76804 * double(n) / (1.0 - d));
  LogBound lb;
  if (log_first >= log_second) {
    lb.log_value = log_first;
    lb.description = "power term (n-1)^(2/d)";
  } else {
    lb.log_value = log_second;
    lb.description = "double-exponential term exp(2^(2.76804 n/(1-d)))";
  }
  return lb;
}

bool check_bitter(int n, double log_q, double d) {
  if (!(d > 0.0 && d < 1.0)) throw std::domain_error("check_bitter: d must be in (0,1)");
  if (!(log_q > std::numbers::e)) {
    throw std::domain_error("check_bitter: log q must exceed e");
  }
  double braces = 1.0 - 2.76804 * double(n) * std::log(2.0) / std::log(log_q);
  return log_q * braces >= 2.0 * std::log(double(n - 1));
}

std::string table1_csv(int n_lo, int n_hi) {
  std::ostringstream os;
  os << "n,omega_bound,q0\n";
  for (int n = n_lo; n <= n_hi; ++n) {
    Table1Row r = table1_row(n);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", r.q0_mantissa);
    os << r.n << ',' << r.omega_bound << ',' << buf << "e" << r.q0_exp10 << '\n';
  }
  return os.str();
}

std::string table1_latex(int n_lo, int n_hi) {
  std::ostringstream os;
  for (int n = n_lo; n <= n_hi; ++n) {
    Table1Row r = table1_row(n);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", r.q0_mantissa);
    os << '$' << r.n << "$ & $" << r.omega_bound << "$ & $" << buf << R"( \times 10^{)"
       << r.q0_exp10 << "}$ \\\\\n";
  }
  return os.str();
}

}  // namespace consec
