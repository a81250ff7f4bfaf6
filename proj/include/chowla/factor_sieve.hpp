#pragma once

// Factorizations of form values over S ∩ L by sieving along grid rows with
// the roots of f mod p, plus resolution of the large cofactor. Also the
// arithmetic functions μ, λ and (-1)^ω on ordinary integers.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <functional>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "chowla/arith.hpp"
#include "chowla/cubic_form.hpp"
#include "chowla/error.hpp"
#include "chowla/poly_mod.hpp"
#include "chowla/region_lattice.hpp"

namespace chowla {

struct PrimePower {
  std::uint64_t p;
  std::uint32_t e;
  bool operator==(const PrimePower&) const = default;
};

struct Factorization {
  std::vector<PrimePower> factors;  // strictly increasing primes
  int sign = 1;
  bool complete = true;

  std::uint32_t omega() const { return static_cast<std::uint32_t>(factors.size()); }
  std::uint32_t big_omega() const {
    std::uint32_t s = 0;
    for (const auto& f : factors) s += f.e;
    return s;
  }
  bool squarefree() const {
    return std::all_of(factors.begin(), factors.end(), [](const PrimePower& f) { return f.e == 1; });
  }
  i128 value() const {
    i128 v = sign;
    for (const auto& f : factors)
      for (std::uint32_t i = 0; i < f.e; ++i) v = checked_mul(v, i128(f.p));
    return v;
  }
  std::uint32_t valuation(std::uint64_t p) const {
    for (const auto& f : factors)
      if (f.p == p) return f.e;
    return 0;
  }
  bool operator==(const Factorization&) const = default;
};

enum class Alpha { mu, liouville, omega_sign };

struct ParityValues {
  int mu = 0;
  int liouville = 0;
  int omega_sign = 0;

  int get(Alpha a) const {
    switch (a) {
      case Alpha::mu: return mu;
      case Alpha::liouville: return liouville;
      case Alpha::omega_sign: return omega_sign;
    }
    return 0;
  }
};

inline ParityValues parity_from_counts(std::uint32_t omega, std::uint32_t big_omega, bool squarefree) {
  ParityValues v;
  v.liouville = (big_omega % 2) ? -1 : 1;
  v.omega_sign = (omega % 2) ? -1 : 1;
  v.mu = squarefree ? v.omega_sign : 0;
  return v;
}

inline ParityValues parity_of(const Factorization& f) {
  return parity_from_counts(f.omega(), f.big_omega(), f.squarefree());
}

// ---------------------------------------------------------------------------
// Cofactor resolution

// Complete factorization of m > 1 whose prime factors all exceed z, with
// m < z^3. Then m is a prime, a prime square, or p*q with z < p < q.
inline std::vector<PrimePower> cofactor_resolve(std::uint64_t m, std::uint64_t z) {
  if (m < 2) throw invalid_input("cofactor_resolve: m must exceed 1");
  if (u128(m) >= u128(z) * z * z) throw corruption("cofactor_resolve: m >= Z^3");
  auto check = [&](std::uint64_t p) {
    if (p <= z) throw corruption("cofactor_resolve: factor " + std::to_string(p) + " <= Z");
  };
  if (is_prime(m)) {
    check(m);
    return {{m, 1}};
  }
  const std::uint64_t s = isqrt(m);
  if (s * s == m) {
    if (!is_prime(s)) throw corruption("cofactor_resolve: square of a composite");
    check(s);
    return {{s, 2}};
  }
  const std::uint64_t p = pollard_brent(m);
  std::uint64_t a = std::min(p, m / p), b = std::max(p, m / p);
  if (!is_prime(a) || !is_prime(b)) throw corruption("cofactor_resolve: more than two prime factors");
  check(a);
  return {{a, 1}, {b, 1}};
}

struct CofactorShape {
  std::uint32_t omega = 0, big_omega = 0;
  bool squarefree = true;
};

// Same case analysis as cofactor_resolve without splitting semiprimes.
// Every prime factor of m exceeds z.
inline CofactorShape classify_cofactor(std::uint64_t m, std::uint64_t z) {
  if (m < 2) return {};
  if (u128(m) <= u128(z) * z || is_prime(m)) return {1, 1, true};
  const std::uint64_t s = isqrt(m);
  if (s * s == m) {
    if (!is_prime(s)) throw corruption("classify_cofactor: square of a composite");
    return {1, 2, false};
  }
  return {2, 2, true};
}

// ---------------------------------------------------------------------------
// Ordinary integers

// Factorization of |n|, n != 0, |n| < 2^63.
inline Factorization factorize(i128 n) {
  if (n == 0) throw invalid_input("factorize: n = 0");
  Factorization f;
  f.sign = n < 0 ? -1 : 1;
  const u128 an = static_cast<u128>(abs128(n));
  if (an >> 63) throw range_error("factorize: |n| >= 2^63");
  std::uint64_t m = static_cast<std::uint64_t>(an);
  const std::uint64_t z = std::max<std::uint64_t>(icbrt_ceil(m), 2);
  std::uint64_t p = 2;
  for (; p <= z && p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p) continue;
    std::uint32_t e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    f.factors.push_back({p, e});
  }
  if (m > 1) {
    if (p * p > m) {
      f.factors.push_back({m, 1});  // no factor up to sqrt(m)
    } else {
      for (auto pe : cofactor_resolve(m, z)) f.factors.push_back(pe);
    }
  }
  return f;
}

inline int mu(i128 n) { return parity_of(factorize(n)).mu; }
inline int liouville(i128 n) { return parity_of(factorize(n)).liouville; }
inline int omega_sign(i128 n) { return parity_of(factorize(n)).omega_sign; }

// Factorizations of every integer in [lo, hi] (lo >= 1) by a segmented
// sieve over primes up to sqrt(hi).
inline std::vector<Factorization> factor_range(std::uint64_t lo, std::uint64_t hi,
                                               std::uint64_t segment = 1u << 16) {
  if (lo == 0) throw invalid_input("factor_range: lo must be >= 1");
  std::vector<Factorization> out;
  if (hi < lo) return out;
  out.resize(hi - lo + 1);
  const auto primes = primes_up_to(isqrt(hi));
  std::vector<std::uint64_t> rem;
  for (std::uint64_t s = lo; s <= hi; s += segment) {
    const std::uint64_t e = std::min(hi, s + segment - 1);
    rem.resize(e - s + 1);
    for (std::uint64_t n = s; n <= e; ++n) rem[n - s] = n;
    for (std::uint64_t p : primes) {
      for (std::uint64_t n = (s + p - 1) / p * p; n <= e; n += p) {
        std::uint32_t k = 0;
        while (rem[n - s] % p == 0) {
          rem[n - s] /= p;
          ++k;
        }
        out[n - lo].factors.push_back({p, k});
      }
    }
    for (std::uint64_t n = s; n <= e; ++n)
      if (rem[n - s] > 1) out[n - lo].factors.push_back({rem[n - s], 1});
    if (e == hi) break;
  }
  return out;
}

inline std::vector<ParityValues> parity_range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<ParityValues> out;
  for (const auto& f : factor_range(lo, hi)) out.push_back(parity_of(f));
  return out;
}

// ---------------------------------------------------------------------------
// Grid sieve

struct SieveConfig {
  bool coprime_only = false;
  bool full_factorizations = false;  // keep prime lists, not only counts
  unsigned threads = 1;
};

// One row of S ∩ L after sieving. Points are x = first + k*step.
struct SievedRow {
  std::int64_t y = 0, first = 0, step = 1;
  std::int64_t count = 0;
  std::vector<std::uint8_t> included;  // enumerated and value != 0
  std::vector<i128> value;
  std::vector<std::uint8_t> omega, big_omega, squarefree;
  std::vector<std::vector<PrimePower>> factors;  // only with full_factorizations

  std::int64_t x(std::int64_t k) const { return first + k * step; }
  ParityValues parity(std::int64_t k) const { return parity_from_counts(omega[k], big_omega[k], squarefree[k] != 0); }
  Factorization factorization(std::int64_t k) const {
    Factorization f;
    f.sign = value[k] < 0 ? -1 : 1;
    f.factors = factors.at(k);
    return f;
  }
};

namespace detail {

struct SievePrime {
  std::uint64_t p;
  std::vector<std::uint64_t> roots;  // roots of f(t,1) mod p
  bool all_roots;                    // f(t,1) vanishes identically mod p
  bool lead_zero;                    // p | a
  std::int64_t inv_step;             // step^{-1} mod p, or -1 when p | step
};

inline void run_parallel(std::size_t n, unsigned threads, const std::function<void(std::size_t, unsigned)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i, 0);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) body(i, t);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n);
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

class GridSieve {
 public:
  GridSieve(const BinaryCubicForm& f, const ConvexRegion& S, const LatticeCoset& L, SieveConfig cfg)
      : f_(f), S_(S), L_(L), cfg_(cfg) {
    compute_max();
    if (max_abs_ >> 62) throw range_error("form values exceed the 62-bit sieve range");
    for_each_row(S_, L_, [&](const RowSpan& r) { rows_.push_back(r); });
    z_ = std::max<std::uint64_t>(icbrt_ceil(max_abs_), 1);
    build_primes();
  }

  const std::vector<RowSpan>& rows() const { return rows_; }
  std::uint64_t value_bound() const { return static_cast<std::uint64_t>(max_abs_); }
  std::uint64_t bound() const { return z_; }

  // consumer(row_index, const SievedRow&, worker) runs once per row; rows
  // may be handled concurrently by different workers.
  template <class Consumer>
  void run(Consumer&& consumer) const {
    const unsigned threads = cfg_.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg_.threads;
    std::vector<SievedRow> scratch(std::max(1u, threads));
    detail::run_parallel(rows_.size(), threads, [&](std::size_t i, unsigned w) {
      SievedRow& row = scratch[w];
      sieve_row(rows_[i], row);
      consumer(i, static_cast<const SievedRow&>(row), w);
    });
  }

 private:
  bool enumerated(std::int64_t x, std::int64_t y) const {
    if (x == 0 && y == 0) return false;
    return !cfg_.coprime_only || coprime_point(x, y);
  }

  // Upper bound for |f| on the bounding box of S.
  void compute_max() {
    if (S_.is_empty()) return;
    const auto b = S_.bounds();
    const double hx = std::max(std::abs(b[0]), std::abs(b[1])), hy = std::max(std::abs(b[2]), std::abs(b[3]));
    if (!(hx < 4e18 && hy < 4e18)) throw range_error("region too large for the sieve");
    const u128 X = static_cast<u128>(std::floor(hx)), Y = static_cast<u128>(std::floor(hy));
    const auto& c = f_.coefficients();
    u128 m = 0;
    u128 mono[4] = {X * X, X * Y, Y * Y, 0};
    try {
      mono[0] = checked_mul(mono[0], X);
      mono[1] = checked_mul(X, checked_mul(X, Y));
      mono[2] = checked_mul(X, checked_mul(Y, Y));
      mono[3] = checked_mul(Y, checked_mul(Y, Y));
      for (int i = 0; i < 4; ++i) {
        const u128 t = checked_mul(u128(c[i] < 0 ? -c[i] : c[i]), mono[i]);
        if (t >> 126 || m >> 126) throw range_error("");
        m += t;
      }
    } catch (const range_error&) {
      throw range_error("form values exceed the 62-bit sieve range");
    }
    max_abs_ = m;
  }

  void build_primes() {
    const std::int64_t step = L_.period_x();
    for (std::uint64_t p : primes_up_to(z_)) {
      detail::SievePrime sp;
      sp.p = p;
      const auto poly = fp::reduce({f_.d(), f_.c(), f_.b(), f_.a()}, p);
      sp.all_roots = poly.empty();
      if (!sp.all_roots) sp.roots = fp::roots(poly, p);
      sp.lead_zero = pos_mod(f_.a(), static_cast<std::int64_t>(p)) == 0;
      sp.inv_step = step % static_cast<std::int64_t>(p) == 0 ? -1 : inv_mod(step, static_cast<std::int64_t>(p));
      primes_.push_back(std::move(sp));
    }
  }

  void sieve_row(const RowSpan& r, SievedRow& row) const {
    const std::int64_t n = r.count;
    row.y = r.y;
    row.first = r.first;
    row.step = r.step;
    row.count = n;
    row.included.assign(n, 0);
    row.value.assign(n, 0);
    row.omega.assign(n, 0);
    row.big_omega.assign(n, 0);
    row.squarefree.assign(n, 1);
    if (cfg_.full_factorizations) {
      row.factors.resize(n);
      for (auto& v : row.factors) v.clear();
    }
    rem_.resize(n);
    for (std::int64_t k = 0; k < n; ++k) {
      const std::int64_t x = r.first + k * r.step;
      rem_[k] = 0;
      if (!enumerated(x, r.y)) continue;
      const i128 v = f_(x, r.y);
      row.value[k] = v;
      if (v == 0) continue;
      row.included[k] = 1;
      rem_[k] = static_cast<std::uint64_t>(abs128(v));
    }

    auto strike = [&](std::int64_t k, std::uint64_t p) {
      std::uint64_t& m = rem_[k];
      if (m == 0 || m % p) return;
      std::uint32_t e = 0;
      do {
        m /= p;
        ++e;
      } while (m % p == 0);
      row.omega[k] += 1;
      row.big_omega[k] += static_cast<std::uint8_t>(e);
      if (e > 1) row.squarefree[k] = 0;
      if (cfg_.full_factorizations) row.factors[k].push_back({p, e});
    };
    auto strike_residue = [&](const detail::SievePrime& sp, std::int64_t t) {
      const auto p = static_cast<std::int64_t>(sp.p);
      if (sp.inv_step < 0) {
        if (pos_mod(r.first - t, p) != 0) return;
        for (std::int64_t k = 0; k < n; ++k) strike(k, sp.p);
        return;
      }
      const std::int64_t k0 = static_cast<std::int64_t>(
          static_cast<i128>(pos_mod(t - r.first, p)) * sp.inv_step % p);
      for (std::int64_t k = k0; k < n; k += p) strike(k, sp.p);
    };

    for (const auto& sp : primes_) {
      const auto p = static_cast<std::int64_t>(sp.p);
      const std::int64_t yp = pos_mod(r.y, p);
      if (yp == 0) {
        // f(x, 0) = a x^3 mod p
        if (sp.lead_zero) {
          for (std::int64_t k = 0; k < n; ++k) strike(k, sp.p);
        } else {
          strike_residue(sp, 0);
        }
      } else if (sp.all_roots) {
        for (std::int64_t k = 0; k < n; ++k) strike(k, sp.p);
      } else {
        for (auto root : sp.roots) strike_residue(sp, static_cast<std::int64_t>(static_cast<i128>(root) * yp % p));
      }
    }

    for (std::int64_t k = 0; k < n; ++k) {
      if (!row.included[k]) continue;
      const std::uint64_t m = rem_[k];
      if (cfg_.full_factorizations) {
        if (m > 1)
          for (auto pe : cofactor_resolve(m, z_)) {
            row.factors[k].push_back(pe);
            row.omega[k] += 1;
            row.big_omega[k] += static_cast<std::uint8_t>(pe.e);
            if (pe.e > 1) row.squarefree[k] = 0;
          }
        Factorization fz;
        fz.sign = row.value[k] < 0 ? -1 : 1;
        fz.factors = row.factors[k];
        if (fz.value() != row.value[k]) throw corruption("sieve: factor product differs from value");
      } else {
        const auto s = classify_cofactor(m, z_);
        row.omega[k] += static_cast<std::uint8_t>(s.omega);
        row.big_omega[k] += static_cast<std::uint8_t>(s.big_omega);
        if (!s.squarefree) row.squarefree[k] = 0;
      }
    }
  }

  BinaryCubicForm f_;
  ConvexRegion S_;
  LatticeCoset L_;
  SieveConfig cfg_;
  std::vector<RowSpan> rows_;
  u128 max_abs_ = 0;
  std::uint64_t z_ = 1;
  std::vector<detail::SievePrime> primes_;
  static thread_local inline std::vector<std::uint64_t> rem_;
};

struct GridEntry {
  std::int64_t x, y;
  i128 value;
  Factorization factorization;
};

// Complete factorization of f at every enumerated point of S ∩ L, in row
// order (y ascending, then x ascending). (0,0) is never enumerated.
inline std::vector<GridEntry> sieve_grid(const BinaryCubicForm& f, const ConvexRegion& S, const LatticeCoset& L,
                                         bool coprime_only, unsigned threads = 1) {
  SieveConfig cfg{coprime_only, true, threads};
  GridSieve sieve(f, S, L, cfg);
  std::vector<std::vector<GridEntry>> per_row(sieve.rows().size());
  sieve.run([&](std::size_t i, const SievedRow& row, unsigned) {
    auto& out = per_row[i];
    for (std::int64_t k = 0; k < row.count; ++k) {
      const std::int64_t x = row.x(k);
      if (x == 0 && row.y == 0) continue;
      if (coprime_only && !coprime_point(x, row.y)) continue;
      GridEntry e{x, row.y, row.value[k], {}};
      if (row.value[k] == 0) {
        e.factorization.sign = 0;
        e.factorization.complete = false;
      } else {
        e.factorization = row.factorization(k);
      }
      out.push_back(std::move(e));
    }
  });
  std::vector<GridEntry> out;
  for (auto& r : per_row)
    for (auto& e : r) out.push_back(std::move(e));
  return out;
}

struct ParityTotals {
  std::uint64_t points = 0;  // enumerated points with f != 0
  std::int64_t sum_mu = 0, sum_liouville = 0, sum_omega = 0;
  std::uint64_t non_squarefree = 0;

  std::int64_t sum(Alpha a) const {
    switch (a) {
      case Alpha::mu: return sum_mu;
      case Alpha::liouville: return sum_liouville;
      case Alpha::omega_sign: return sum_omega;
    }
    return 0;
  }
  void add(const ParityTotals& o) {
    points += o.points;
    sum_mu += o.sum_mu;
    sum_liouville += o.sum_liouville;
    sum_omega += o.sum_omega;
    non_squarefree += o.non_squarefree;
  }
};

inline ParityTotals sieve_parity_totals(const BinaryCubicForm& f, const ConvexRegion& S, const LatticeCoset& L,
                                        bool coprime_only, unsigned threads = 1) {
  SieveConfig cfg{coprime_only, false, threads};
  GridSieve sieve(f, S, L, cfg);
  std::vector<ParityTotals> per_row(sieve.rows().size());
  sieve.run([&](std::size_t i, const SievedRow& row, unsigned) {
    ParityTotals t;
    for (std::int64_t k = 0; k < row.count; ++k) {
      if (!row.included[k]) continue;
      const auto pv = row.parity(k);
      ++t.points;
      t.sum_mu += pv.mu;
      t.sum_liouville += pv.liouville;
      t.sum_omega += pv.omega_sign;
      if (!row.squarefree[k]) ++t.non_squarefree;
    }
    per_row[i] = t;
  });
  ParityTotals total;
  for (const auto& t : per_row) total.add(t);
  return total;
}

// ---------------------------------------------------------------------------
// Parity grid dump
//
// Little-endian layout:
//   "CHW1"
//   int64 a, b, c, d
//   uint8 alpha (0 = mu, 1 = liouville, 2 = omega_sign), uint8 coprime_only
//   int64 x_min, x_max, y_min, y_max
//   uint32 descriptor length, descriptor bytes ("<region>|<coset>")
//   (x_max - x_min + 1) * (y_max - y_min + 1) int8 values, row-major with y
//   outer; 0 for points outside the enumerated set.

struct ParityGrid {
  std::array<std::int64_t, 4> form{};
  Alpha alpha = Alpha::mu;
  bool coprime_only = false;
  std::int64_t x_min = 0, x_max = -1, y_min = 0, y_max = -1;
  std::string descriptor;
  std::vector<std::int8_t> cells;

  std::int64_t width() const { return x_max - x_min + 1; }
  std::int8_t at(std::int64_t x, std::int64_t y) const { return cells[(y - y_min) * width() + (x - x_min)]; }
  bool operator==(const ParityGrid&) const = default;
};

inline ParityGrid sieve_parity_grid(const BinaryCubicForm& f, const ConvexRegion& S, const LatticeCoset& L,
                                    Alpha alpha, bool coprime_only, unsigned threads = 1) {
  ParityGrid g;
  g.form = f.coefficients();
  g.alpha = alpha;
  g.coprime_only = coprime_only;
  g.descriptor = S.literal() + "|" + L.literal();
  if (S.is_empty()) return g;
  const auto b = S.bounds();
  g.x_min = static_cast<std::int64_t>(std::ceil(b[0]));
  g.x_max = static_cast<std::int64_t>(std::floor(b[1]));
  g.y_min = static_cast<std::int64_t>(std::ceil(b[2]));
  g.y_max = static_cast<std::int64_t>(std::floor(b[3]));
  if (g.x_min > g.x_max || g.y_min > g.y_max) {
    g.x_max = g.x_min - 1;
    g.y_max = g.y_min - 1;
    return g;
  }
  g.cells.assign(static_cast<std::size_t>(g.width() * (g.y_max - g.y_min + 1)), 0);
  GridSieve sieve(f, S, L, SieveConfig{coprime_only, false, threads});
  sieve.run([&](std::size_t, const SievedRow& row, unsigned) {
    for (std::int64_t k = 0; k < row.count; ++k)
      if (row.included[k])
        g.cells[(row.y - g.y_min) * g.width() + (row.x(k) - g.x_min)] =
            static_cast<std::int8_t>(row.parity(k).get(alpha));
  });
  return g;
}

namespace detail {

inline void put_le(std::string& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline std::uint64_t get_le(const std::string& in, std::size_t& pos, int bytes) {
  if (pos + bytes > in.size()) throw invalid_input("parity dump truncated");
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= std::uint64_t(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  pos += bytes;
  return v;
}

}  // namespace detail

inline std::string encode_parity_grid(const ParityGrid& g) {
  std::string out = "CHW1";
  for (auto c : g.form) detail::put_le(out, static_cast<std::uint64_t>(c), 8);
  detail::put_le(out, static_cast<std::uint64_t>(g.alpha), 1);
  detail::put_le(out, g.coprime_only ? 1 : 0, 1);
  for (auto v : {g.x_min, g.x_max, g.y_min, g.y_max}) detail::put_le(out, static_cast<std::uint64_t>(v), 8);
  detail::put_le(out, g.descriptor.size(), 4);
  out += g.descriptor;
  for (auto c : g.cells) out.push_back(static_cast<char>(c));
  return out;
}

inline ParityGrid decode_parity_grid(const std::string& in) {
  if (in.size() < 4 || in.compare(0, 4, "CHW1") != 0) throw invalid_input("parity dump: bad magic");
  std::size_t pos = 4;
  ParityGrid g;
  for (auto& c : g.form) c = static_cast<std::int64_t>(detail::get_le(in, pos, 8));
  const auto alpha = detail::get_le(in, pos, 1);
  if (alpha > 2) throw invalid_input("parity dump: bad alpha code");
  g.alpha = static_cast<Alpha>(alpha);
  g.coprime_only = detail::get_le(in, pos, 1) != 0;
  for (auto* v : {&g.x_min, &g.x_max, &g.y_min, &g.y_max}) *v = static_cast<std::int64_t>(detail::get_le(in, pos, 8));
  const auto len = detail::get_le(in, pos, 4);
  if (pos + len > in.size()) throw invalid_input("parity dump truncated");
  g.descriptor = in.substr(pos, len);
  pos += len;
  const std::int64_t cells = (g.x_max >= g.x_min && g.y_max >= g.y_min) ? g.width() * (g.y_max - g.y_min + 1) : 0;
  if (in.size() - pos != static_cast<std::size_t>(cells)) throw invalid_input("parity dump: cell count mismatch");
  g.cells.resize(cells);
  for (std::int64_t i = 0; i < cells; ++i) g.cells[i] = static_cast<std::int8_t>(in[pos + i]);
  return g;
}

inline void write_parity_grid(const std::string& path, const ParityGrid& g) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw invalid_input("cannot open " + path);
  const auto bytes = encode_parity_grid(g);
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

inline ParityGrid read_parity_grid(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw invalid_input("cannot open " + path);
  std::string bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  return decode_parity_grid(bytes);
}

}  // namespace chowla
