#pragma once

// Chowla averages of μ, λ and (-1)^ω over form values, convergence tables
// against the decay envelope, and the verification suites driven by the CLI.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "chowla/arith.hpp"
#include "chowla/cubic_form.hpp"
#include "chowla/error.hpp"
#include "chowla/factor_sieve.hpp"
#include "chowla/ideal.hpp"
#include "chowla/postulates.hpp"
#include "chowla/region_lattice.hpp"
#include "chowla/sieve_weights.hpp"
#include "chowla/vaughan.hpp"

namespace chowla {

inline Alpha parse_alpha(const std::string& s) {
  if (s == "mu") return Alpha::mu;
  if (s == "lambda" || s == "liouville") return Alpha::liouville;
  if (s == "omega" || s == "omega_sign") return Alpha::omega_sign;
  throw invalid_input("alpha must be mu, lambda or omega, not '" + s + "'");
}

inline std::string alpha_name(Alpha a) {
  switch (a) {
    case Alpha::mu: return "mu";
    case Alpha::liouville: return "lambda";
    case Alpha::omega_sign: return "omega";
  }
  return "?";
}

// The region is given at unit scale; row N uses it scaled by N.
struct ExperimentConfig {
  BinaryCubicForm form = BinaryCubicForm(1, 0, 0, 2);
  Alpha alpha = Alpha::mu;
  ConvexRegion region = ConvexRegion::square(1);
  LatticeCoset coset = LatticeCoset::whole_plane();
  std::vector<std::uint64_t> N;
  bool coprime_only = false;
  double epsilon = 1;
  std::string out;
  unsigned threads = 1;

  void validate() const {
    for (std::size_t i = 0; i < N.size(); ++i) {
      if (N[i] == 0) throw invalid_input("N must be positive");
      if (i && N[i] <= N[i - 1]) throw invalid_input("N list must be strictly increasing");
    }
    if (!(epsilon > 0)) throw invalid_input("epsilon must be positive");
    if (!is_irreducible(form))
      throw invalid_input("form " + form.literal() + " is reducible; reducible forms are outside this tool's scope");
  }
};

inline std::vector<std::uint64_t> parse_N_list(const std::string& s) {
  std::vector<std::uint64_t> out;
  for (const auto& tok : detail::split(s, ',')) {
    const auto v = detail::parse_int(tok);
    if (v <= 0) throw invalid_input("N must be positive");
    out.push_back(static_cast<std::uint64_t>(v));
  }
  return out;
}

// (log log N)^4 (log log log N)^eps / log N, defined for N > e^e.
inline std::optional<double> envelope(double N, double eps = 1) {
  if (!(N > std::exp(std::numbers::e))) return std::nullopt;
  const double l1 = std::log(N), l2 = std::log(l1), l3 = std::log(l2);
  return std::pow(l2, 4) * std::pow(l3, eps) / l1;
}

struct ConvergenceRow {
  std::uint64_t N = 0;
  std::uint64_t points = 0;
  std::int64_t sum = 0;
  double average = 0;
  std::optional<double> envelope;
  std::optional<double> ratio;  // average / envelope
  std::string error;            // non-empty when the row was aborted

  bool operator==(const ConvergenceRow&) const = default;
};

// Σ α(f(x,y)) over the enumerated points of N·S ∩ L; (0,0) never counts.
inline ConvergenceRow chowla_average(const ExperimentConfig& cfg, std::uint64_t N) {
  if (!is_irreducible(cfg.form))
    throw invalid_input("form " + cfg.form.literal() + " is reducible; reducible forms are outside this tool's scope");
  ConvergenceRow r;
  r.N = N;
  const auto t =
      sieve_parity_totals(cfg.form, cfg.region.scaled(double(N)), cfg.coset, cfg.coprime_only, cfg.threads);
  r.points = t.points;
  r.sum = t.sum(cfg.alpha);
  r.average = t.points ? double(r.sum) / double(t.points) : 0.0;
  r.envelope = envelope(double(N), cfg.epsilon);
  if (r.envelope) r.ratio = r.average / *r.envelope;
  return r;
}

inline std::vector<ConvergenceRow> convergence_table(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<ConvergenceRow> rows;
  for (auto N : cfg.N) {
    try {
      rows.push_back(chowla_average(cfg, N));
    } catch (const error& e) {
      ConvergenceRow r;
      r.N = N;
      r.error = e.what();
      rows.push_back(r);
    }
  }
  return rows;
}

inline std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
  os << "N,points,sum,average,envelope,ratio\n";
  for (const auto& r : rows) {
    if (!r.error.empty()) {
      os << r.N << ",NA,NA,NA,NA,NA\n";
      continue;
    }
    os << r.N << ',' << r.points << ',' << r.sum << ',' << format_real(r.average) << ','
       << (r.envelope ? format_real(*r.envelope) : "NA") << ',' << (r.ratio ? format_real(*r.ratio) : "NA") << '\n';
  }
}

// ---------------------------------------------------------------------------
// Verification suites

namespace suite {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::uint64_t cases = 0;
  std::string counterexample;  // first failing case
  double seconds = 0;

  void fail(const std::string& what) {
    if (passed) counterexample = what;
    passed = false;
  }
};

enum class Fault { none, brun_weight };

struct Options {
  std::uint64_t seed = 1;
  Fault fault = Fault::none;
  unsigned threads = 1;
  std::string out_dir;  // empty: no files
  std::uint64_t postulate_bound = 1000;
};

template <class Body>
CheckResult timed(const std::string& name, Body&& body) {
  CheckResult r;
  r.name = name;
  const auto t0 = std::chrono::steady_clock::now();
  body(r);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// Prime ideals of x^3 + 2y^3 above primes <= max_p.
inline std::vector<PrimeIdeal> field_pool(std::uint64_t max_p) {
  const CubicField K(BinaryCubicForm(1, 0, 0, 2));
  std::vector<PrimeIdeal> pool;
  for (auto p : primes_up_to(max_p))
    for (const auto& P : K.factor_prime(p)) pool.push_back(P);
  return pool;
}

// At most max_primes distinct factors with exponents <= max_exp, τ <= tau_cap
// and norm <= 10^30.
inline Ideal random_ideal(std::mt19937_64& rng, const std::vector<PrimeIdeal>& pool, std::size_t max_primes,
                          std::uint32_t max_exp, std::uint64_t tau_cap) {
  std::vector<Ideal::Factor> fs;
  const std::size_t k = rng() % (max_primes + 1);
  std::uint64_t tau = 1;
  double norm = 1;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& p = pool[rng() % pool.size()];
    bool dup = false;
    for (const auto& f : fs) dup = dup || f.first == p;
    if (dup) continue;
    const auto e = 1 + static_cast<std::uint32_t>(rng() % max_exp);
    const double n = norm * std::pow(double(p.norm()), e);
    if (tau * (e + 1) > tau_cap || n > 1e30) break;
    tau *= e + 1;
    norm = n;
    fs.push_back({p, e});
  }
  return Ideal(std::move(fs));
}

inline std::vector<PrimeIdeal> random_subset(std::mt19937_64& rng, const std::vector<PrimeIdeal>& pool, double prob) {
  std::vector<PrimeIdeal> s;
  std::bernoulli_distribution b(prob);
  for (const auto& p : pool)
    if (b(rng)) s.push_back(p);
  return s;
}

inline std::string rational_literal(const Rational& q) { return std::to_string(q.num) + "/" + std::to_string(q.den); }

// h(a) = Σβ1..4 − Σβ5..7 and the grouped sub-identities for random a, h,
// cut points and 𝒬.
inline CheckResult vaughan_identity(std::uint64_t count, std::uint64_t seed, std::uint64_t tau_cap = 4096) {
  return timed("vaughan_identity", [&](CheckResult& r) {
    std::mt19937_64 rng(seed);
    const auto pool = field_pool(200);
    for (std::uint64_t i = 0; i < count; ++i) {
      const Ideal a = random_ideal(rng, pool, 6, 6, tau_cap);
      std::map<Ideal, std::int64_t> table;
      auto h = [&](const Ideal& b) -> std::int64_t {
        auto [it, fresh] = table.try_emplace(b, 0);
        if (fresh) it->second = static_cast<std::int64_t>(rng() % 2001) - 1000;
        return it->second;
      };
      const auto na = static_cast<std::int64_t>(std::min<u128>(a.norm(), u128(1) << 40));
      const std::int64_t y = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(std::max<std::int64_t>(na, 2)));
      const std::int64_t u = y + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(std::max<std::int64_t>(na, 2)));
      const std::int64_t w = u + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(std::max<std::int64_t>(na, 2)));
      const VaughanParams P(Rational(2 * y - 1, 2), Rational(u), Rational(w), random_subset(rng, pool, 0.1));
      ++r.cases;
      if (!verify_identity(a, h, P).holds())
        r.fail("a=" + a.literal() + " y=" + rational_literal(P.y) + " u=" + rational_literal(P.u) +
               " w=" + rational_literal(P.w));
    }
  });
}

// Brun weights from a random sieving set, optionally with one weight
// corrupted.
inline SieveWeights random_brun(std::mt19937_64& rng, const std::vector<PrimeIdeal>& pool, Fault fault) {
  auto P = random_subset(rng, pool, 0.3);
  if (P.empty()) P.push_back(pool[rng() % pool.size()]);
  const double cut = double(1 + rng() % 200000);
  SieveWeights W = brun_pure_weights(P, cut, 2 * static_cast<int>(1 + rng() % 3));
  if (fault == Fault::brun_weight)
    for (const auto& [d, v] : W.weights())
      if (!d.is_unit()) {
        W.set(d, -v);
        break;
      }
  return W;
}

// 1 = Σ_{d|b} λ_d − Σ_{d|b, lo<Nd<=hi} λ_d
inline CheckResult buchstab(std::uint64_t count, std::uint64_t seed, Fault fault = Fault::none) {
  return timed("buchstab_split", [&](CheckResult& r) {
    std::mt19937_64 rng(seed);
    const auto pool = field_pool(120);
    for (std::uint64_t i = 0; i < count; ++i) {
      const SieveWeights W = random_brun(rng, pool, fault);
      const Ideal b = random_ideal(rng, W.P.empty() ? pool : W.P, 5, 3, 4096) * random_ideal(rng, pool, 2, 2, 64);
      const auto s = buchstab_split(W, b, Rational(static_cast<std::int64_t>(W.lower_gap)),
                                    Rational(static_cast<std::int64_t>(W.upper_cut)));
      ++r.cases;
      if (!s.holds()) r.fail("b=" + b.literal() + " main=" + std::to_string(s.main) + " tail=" + std::to_string(s.tail));
    }
  });
}

// Σ_{d|b} λ_d = [b coprime to P] whenever every squarefree P-part divisor
// of b has norm <= cut and at most depth prime factors.
inline CheckResult brun_inclusion_exclusion(std::uint64_t count, std::uint64_t seed, Fault fault = Fault::none) {
  return timed("brun_inclusion_exclusion", [&](CheckResult& r) {
    std::mt19937_64 rng(seed);
    const auto pool = field_pool(120);
    for (std::uint64_t i = 0; i < count; ++i) {
      const SieveWeights W = random_brun(rng, pool, fault);
      std::vector<Ideal> bs;
      for (const auto& [d, v] : W.weights()) {
        bs.push_back(d);  // every support ideal is tested once
        if (bs.size() > 8) break;
      }
      bs.push_back(random_ideal(rng, W.P, 3, 2, 4096));
      for (const auto& b : bs) {
        const Ideal bp = split_S(b, W.P).first.rad();
        if (static_cast<int>(bp.omega()) > W.depth || double(bp.norm()) > W.upper_cut) continue;
        ++r.cases;
        const auto s = sieve_value(W, b);
        if (s != (coprime_to_set(b, W.P) ? 1 : 0)) r.fail("b=" + b.literal() + " sieve_value=" + std::to_string(s));
      }
    }
  });
}

inline CheckResult window_flip_check(std::uint64_t count, std::uint64_t seed) {
  return timed("window_flip", [&](CheckResult& r) {
    std::mt19937_64 rng(seed);
    const auto pool = field_pool(200);
    for (std::uint64_t i = 0; i < count; ++i) {
      Ideal e;
      while (e.is_unit()) e = random_ideal(rng, pool, 6, 3, 4096);
      const Rational u(static_cast<std::int64_t>(1 + rng() % 100000), static_cast<std::int64_t>(1 + rng() % 7));
      const auto w = window_flip(e, u);
      ++r.cases;
      if (!w.holds()) r.fail("e=" + e.literal() + " u=" + rational_literal(u));
    }
  });
}

inline CheckResult pairing_bound_check(std::uint64_t count, std::uint64_t seed) {
  return timed("pairing_bound", [&](CheckResult& r) {
    std::mt19937_64 rng(seed);
    const auto pool = field_pool(200);
    for (std::uint64_t i = 0; i < count; ++i) {
      Ideal e;
      while (e.is_unit()) e = random_ideal(rng, pool, 6, 3, 4096);
      u128 least = e.factors()[0].first.norm();
      for (const auto& fk : e.factors()) least = std::min(least, fk.first.norm());
      const Rational l(static_cast<std::int64_t>(least) + static_cast<std::int64_t>(rng() % 50));
      const Rational y(static_cast<std::int64_t>(1 + rng() % 1000000));
      const auto b = pairing_bound(e, y, l);
      ++r.cases;
      if (!b.holds()) r.fail("e=" + e.literal() + " y=" + rational_literal(y) + " l=" + rational_literal(l));
    }
  });
}

// Random sparse F on pairs with ab <= x, Brun weights supported above Y^2.
inline CheckResult anti_sieve(std::uint64_t count, std::uint64_t seed, std::uint64_t x_max = 10000) {
  return timed("anti_sieve", [&](CheckResult& r) {
    std::mt19937_64 rng(seed);
    for (std::uint64_t i = 0; i < count; ++i) {
      const std::uint64_t x = 100 + rng() % (x_max - 99);
      const double alpha = 0.2 + 0.6 * double(rng() % 1000) / 1000.0;
      const double Y = 1.0 + double(rng() % 300) / 100.0;
      const auto floor = static_cast<std::uint64_t>(Y * Y);
      const IntegerWeights W = brun_integer_weights(floor, 200, x, 2 * static_cast<int>(1 + rng() % 2));
      PairTable F;
      const std::size_t entries = 20 + rng() % 200;
      for (std::size_t k = 0; k < entries; ++k) {
        const std::uint64_t a = 1 + rng() % x;
        const std::uint64_t b = 1 + rng() % std::max<std::uint64_t>(1, x / a);
        F[{a, b}] = static_cast<std::int64_t>(rng() % 21) - 10;
      }
      const auto s = anti_sieve_split(F, x, alpha, Y, W);
      ++r.cases;
      if (!s.holds())
        r.fail("x=" + std::to_string(x) + " alpha=" + format_real(alpha) + " Y=" + format_real(Y) +
               " total=" + std::to_string(s.total) + " sieved=" + std::to_string(s.sieved) +
               " correction=" + std::to_string(s.correction) + " substituted=" + std::to_string(s.substituted));
    }
  });
}

// Sieved parities of 1..limit against per-integer factorization.
inline CheckResult parity_range_check(std::uint64_t limit) {
  return timed("parity_range", [&](CheckResult& r) {
    const auto pr = parity_range(1, limit);
    for (std::uint64_t n = 1; n <= limit; ++n) {
      const auto a = pr[n - 1], b = parity_of(factorize(static_cast<i128>(n)));
      ++r.cases;
      if (a.mu != b.mu || a.liouville != b.liouville || a.omega_sign != b.omega_sign) r.fail("n=" + std::to_string(n));
    }
  });
}

// Grid factorizations of f over [-N,N]^2 against per-value factorization.
inline CheckResult grid_check(const BinaryCubicForm& f, std::int64_t N, unsigned threads) {
  return timed("grid_factorizations", [&](CheckResult& r) {
    for (const auto& e : sieve_grid(f, ConvexRegion::square(double(N)), LatticeCoset::whole_plane(), false, threads)) {
      ++r.cases;
      if (e.value != f(e.x, e.y)) r.fail("value at (" + std::to_string(e.x) + "," + std::to_string(e.y) + ")");
      if (e.value == 0) continue;
      if (!(e.factorization == factorize(e.value)))
        r.fail("factorization at (" + std::to_string(e.x) + "," + std::to_string(e.y) + ")");
    }
  });
}

struct PostulateConfig {
  std::string name;
  BinaryCubicForm form;
  LatticeCoset coset;
};

// x^3+2y^3 on Z^2 and on y ≡ 1 mod 5; the cyclic cubic t^3 - 3t + 1 on
// x ≡ 7y mod 17 (7 is a root mod 17, so the coset ideal is a prime above 17).
inline std::vector<PostulateConfig> postulate_configs() {
  return {{"x3+2y3_Z2", BinaryCubicForm(1, 0, 0, 2), LatticeCoset::whole_plane()},
          {"x3+2y3_y1mod5", BinaryCubicForm(1, 0, 0, 2), LatticeCoset(1, 0, 0, 5, 0, 1)},
          {"cyclic_x7ymod17", BinaryCubicForm(1, 0, -3, 1), LatticeCoset(17, 0, 7, 1)}};
}

inline CheckResult postulates_check(const PostulateConfig& c, std::uint64_t B, const std::string& out_dir,
                                    unsigned threads, std::int64_t box = 100) {
  return timed("postulates_" + c.name, [&](CheckResult& r) {
    const CubicField K(c.form);
    auto rep = check_postulates_123(K, c.coset, B);
    const auto seq = build_sequence(K, ConvexRegion::square(double(box)), c.coset, threads);
    rep.append(check_remainder_law(seq, std::min<std::uint64_t>(B, 1000), 8.0 * double(2 * box + 1)));
    r.cases = rep.rows.size();
    if (auto f = rep.first_failure()) r.fail(f->postulate + " " + f->parameters + " value=" + format_real(f->value));
    if (!out_dir.empty()) {
      const std::vector<double> kappas = {0, 1, 2, 3};
      rep.append(measure_type1(seq, 0, kappas));
      rep.append(measure_type1(seq, 1, kappas));
      rep.append(measure_square(seq, 1, kappas));
      rep.append(measure_crude(seq, 1, kappas));
      const IdealFunction one = [](const Ideal&) { return 1.0; };
      const IdealFunction mu = [](const Ideal& a) { return double(a.mu()); };
      const double ln = log_n(seq), n = double(seq.n);
      for (double v : {std::sqrt(n) * ln, n / ln})
        rep.append(measure_bilinear(seq, one, mu, seq.D0 * seq.D1, std::pow(n, 0.1), v));
      rep.write_csv(out_dir + "/postulates_" + c.name + ".csv");
    }
  });
}

struct Outcome {
  std::vector<CheckResult> checks;
  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }
  const CheckResult* first_failure() const {
    for (const auto& c : checks)
      if (!c.passed) return &c;
    return nullptr;
  }
  void write_csv(std::ostream& os) const {
    os << "check,cases,status,seconds,counterexample\n";
    for (const auto& c : checks)
      os << c.name << ',' << c.cases << ',' << (c.passed ? "PASS" : "FAIL") << ',' << format_real(c.seconds) << ",\""
         << c.counterexample << "\"\n";
  }
};

// "identities", "postulates", "sieve" or "all".
inline Outcome run_suite(const std::string& name, const Options& opt) {
  if (name != "identities" && name != "postulates" && name != "sieve" && name != "all")
    throw invalid_input("unknown suite '" + name + "'");
  if (!opt.out_dir.empty()) std::filesystem::create_directories(opt.out_dir);
  Outcome out;
  const bool all = name == "all";
  if (all || name == "identities") {
    out.checks.push_back(vaughan_identity(300, opt.seed));
    out.checks.push_back(buchstab(500, opt.seed + 1, opt.fault));
    out.checks.push_back(brun_inclusion_exclusion(200, opt.seed + 2, opt.fault));
    out.checks.push_back(window_flip_check(500, opt.seed + 3));
    out.checks.push_back(pairing_bound_check(500, opt.seed + 4));
    out.checks.push_back(anti_sieve(30, opt.seed + 5));
  }
  if (all || name == "sieve") {
    out.checks.push_back(parity_range_check(200000));
    out.checks.push_back(grid_check(BinaryCubicForm(1, 0, 0, 2), 50, opt.threads));
  }
  if (all || name == "postulates")
    for (const auto& c : postulate_configs())
      out.checks.push_back(postulates_check(c, opt.postulate_bound, opt.out_dir, opt.threads));
  if (!opt.out_dir.empty()) {
    std::ofstream os(opt.out_dir + "/suite_" + name + ".csv");
    if (!os) throw invalid_input("cannot write to " + opt.out_dir);
    out.write_csv(os);
    if (auto f = out.first_failure()) {
      std::ofstream ce(opt.out_dir + "/counterexample.txt");
      ce << f->name << ": " << f->counterexample << '\n';
    }
  }
  return out;
}

}  // namespace suite

}  // namespace chowla
