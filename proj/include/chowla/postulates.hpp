#pragma once

// The sequence a_𝔞 counting coprime points of S ∩ L by the ideal they
// generate, the local density g, remainders, exact checks of the linear
// postulates on g and measured reports for the remaining ones.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "chowla/arith.hpp"
#include "chowla/cubic_form.hpp"
#include "chowla/error.hpp"
#include "chowla/factor_sieve.hpp"
#include "chowla/ideal.hpp"
#include "chowla/region_lattice.hpp"

namespace chowla {

inline u128 gcd_u128(u128 a, u128 b) {
  while (b) {
    const u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// num / den in lowest terms, den > 0.
struct Fraction {
  u128 num = 0, den = 1;

  Fraction() = default;
  Fraction(u128 n, u128 d) : num(n), den(d) {
    if (den == 0) throw invalid_input("fraction with zero denominator");
    const u128 g = gcd_u128(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  double value() const { return double(num) / double(den); }
  bool is_zero() const { return num == 0; }
  friend Fraction operator*(const Fraction& a, const Fraction& b) {
    const Fraction x(a.num, b.den), y(b.num, a.den);
    return Fraction(checked_mul(x.num, y.num), checked_mul(x.den, y.den));
  }
  bool operator==(const Fraction&) const = default;
  std::string literal() const { return to_string(num) + "/" + to_string(den); }
};

// The minimal ideal containing every x - yθ with (x,y) ∈ L: generated by
// the images of the offset and of the two lattice generators.
inline Ideal lattice_ideal(const CubicField& K, const LatticeCoset& L) {
  const std::pair<std::int64_t, std::int64_t> gens[3] = {
      {L.offset_x(), L.offset_y()}, {L.period_x(), 0}, {L.shift(), L.period_y()}};
  const auto& v = (gens[0].first || gens[0].second) ? gens[0] : gens[1];
  const auto fz = factorize(K.form()(v.first, v.second));
  std::vector<Ideal::Factor> out;
  for (const auto& pe : fz.factors) {
    for (const auto& P : K.factor_prime(pe.p)) {
      std::uint32_t m = UINT32_MAX;
      for (const auto& [x, y] : gens)
        if (x || y) m = std::min(m, K.valuation(P, x, y));
      if (m) out.push_back({P, m});
    }
  }
  return Ideal(std::move(out));
}

// ---------------------------------------------------------------------------
// The sequence

struct SequenceAF {
  CubicField field;
  ConvexRegion region;
  LatticeCoset coset;
  Ideal b_L;                                  // lattice_ideal(field, coset)
  std::map<Ideal, std::uint64_t> support;     // a_𝔞 > 0
  std::vector<std::pair<std::int64_t, std::int64_t>> quarantine;  // points above index primes
  std::uint64_t points = 0;                   // Σ a_𝔞
  u128 n = 0;                                 // max |f| over mapped points
  std::uint64_t D0 = 1, D1 = 1;

  SequenceAF(CubicField K, ConvexRegion S, LatticeCoset L)
      : field(std::move(K)), region(std::move(S)), coset(std::move(L)) {}
};

// Quarantined points are those whose value has a prime factor that may
// divide the index; more than 1% of them is an error.
inline SequenceAF build_sequence(const CubicField& K, const ConvexRegion& S, const LatticeCoset& L,
                                 unsigned threads = 1) {
  SequenceAF seq(K, S, L);
  seq.b_L = lattice_ideal(K, L);
  seq.D0 = K.D0();
  seq.D1 = static_cast<std::uint64_t>(L.index());
  const auto grid = sieve_grid(K.form(), S, L, true, threads);
  std::uint64_t total = 0;
  for (const auto& e : grid) {
    if (e.value == 0) continue;
    ++total;
    try {
      const Ideal a = K.ideal_from_point(e.x, e.y, e.factorization).quotient(seq.b_L);
      ++seq.support[a];
      ++seq.points;
      seq.n = std::max(seq.n, static_cast<u128>(abs128(e.value)));
    } catch (const unsupported&) {
      seq.quarantine.emplace_back(e.x, e.y);
    }
  }
  if (seq.quarantine.size() * 100 > total)
    throw invalid_input("build_sequence: " + std::to_string(seq.quarantine.size()) + " of " + std::to_string(total) +
                        " points lie above index primes; unsuitable form/field pair");
  return seq;
}

// Σ_{N𝔞 <= t} a_𝔞
inline std::uint64_t A(const SequenceAF& seq, u128 t) {
  std::uint64_t s = 0;
  for (const auto& [a, c] : seq.support)
    if (a.norm() <= t) s += c;
  return s;
}

// Σ_{𝔡 | 𝔞, N𝔞 <= t} a_𝔞
inline std::uint64_t A_d(const SequenceAF& seq, const Ideal& d, u128 t) {
  std::uint64_t s = 0;
  for (const auto& [a, c] : seq.support)
    if (a.norm() <= t && d.divides(a)) s += c;
  return s;
}

// ---------------------------------------------------------------------------
// Local densities

// The rational prime under an ideal of prime-power norm; 1 for (1).
inline std::uint64_t norm_prime(const Ideal& d) {
  std::uint64_t p = 1;
  for (const auto& fk : d.factors()) {
    if (p != 1 && fk.first.p != p) throw invalid_input("ideal " + d.literal() + " does not have prime-power norm");
    p = fk.first.p;
  }
  return p;
}

// One local condition: points with p ∤ gcd(x,y) and target | x - yθ.
struct LocalCondition {
  std::uint64_t p;
  Ideal target;
  std::uint64_t q = 1;                // N(target)
  std::vector<std::uint64_t> ratios;  // t mod q with target | t - θ
};

class DensityModel {
 public:
  DensityModel(const CubicField& K, const LatticeCoset& L) : K_(K), L_(L), b_L_(lattice_ideal(K, L)) {}

  const LatticeCoset& coset() const { return L_; }
  const Ideal& b_L() const { return b_L_; }

  // g(𝔡) for N𝔡 a prime power: the share of p-primitive points of L whose
  // image is divisible by 𝔡𝔟_L. Zero when L has no p-primitive point.
  Fraction prime_power(const Ideal& d) const {
    if (d.is_unit()) return Fraction(1, 1);
    auto it = cache_.find(d);
    if (it != cache_.end()) return it->second;
    const std::uint64_t p = norm_prime(d);
    Fraction g;
    if (L_.index() % static_cast<std::int64_t>(p) != 0) {
      // L is equidistributed mod p^k, and the p-part of 𝔟_L is (1).
      const auto c = condition(p, d);
      const u128 q = c.q, phi = q / p * (p - 1);
      g = Fraction(checked_mul(checked_mul(u128(c.ratios.size()), phi), u128(p) * p),
                   checked_mul(checked_mul(q, q), u128(p) * p - 1));
    } else {
      g = joint({condition(p, d)});
    }
    cache_.emplace(d, g);
    return g;
  }

  // Multiplicative extension over the rational primes below 𝔞.
  Fraction operator()(const Ideal& a) const {
    Fraction g(1, 1);
    for (const auto& part : by_prime(a)) g = g * prime_power(part);
    return g;
  }

  // Density, counted directly on residues, of the points of L that are
  // primitive at every listed prime and whose image is divisible by every
  // listed target times the matching part of 𝔟_L, relative to the points
  // primitive at the listed primes.
  Fraction joint_direct(const std::vector<Ideal>& parts) const {
    std::vector<LocalCondition> cs;
    for (const auto& d : parts) cs.push_back(condition(norm_prime(d), d));
    return joint(cs);
  }

  static std::vector<Ideal> by_prime(const Ideal& a) {
    std::vector<Ideal> out;
    std::vector<Ideal::Factor> cur;
    for (const auto& fk : a.factors()) {
      if (!cur.empty() && cur.back().first.p != fk.first.p) {
        out.emplace_back(std::move(cur));
        cur.clear();
      }
      cur.push_back(fk);
    }
    if (!cur.empty()) out.emplace_back(std::move(cur));
    return out;
  }

 private:
  const LocalCondition& condition(std::uint64_t p, const Ideal& d) const {
    auto it = cond_cache_.find(d);
    if (it != cond_cache_.end()) return it->second;
    return cond_cache_.emplace(d, make_condition(p, d)).first->second;
  }

  LocalCondition make_condition(std::uint64_t p, const Ideal& d) const {
    LocalCondition c;
    c.p = p;
    std::vector<Ideal::Factor> bp;
    for (const auto& fk : b_L_.factors())
      if (fk.first.p == p) bp.push_back(fk);
    c.target = d * Ideal(std::move(bp));
    if (c.target.is_unit()) {
      c.ratios = {0};
      return c;
    }
    const u128 q = c.target.norm();
    if (q >> 40) throw range_error("density modulus too large");
    c.q = static_cast<std::uint64_t>(q);
    auto divides_at = [&](std::int64_t t, bool exact) {
      for (const auto& [P, k] : c.target.factors())
        if (K_.valuation(P, t, 1) < (exact ? k : 1)) return false;
      return true;
    };
    for (std::uint64_t t0 = 0; t0 < p; ++t0) {
      if (!divides_at(static_cast<std::int64_t>(t0), false)) continue;
      for (std::uint64_t t = t0; t < c.q; t += p)
        if (divides_at(static_cast<std::int64_t>(t), true)) c.ratios.push_back(t);
    }
    return c;
  }

  // Residue count over y mod M and x mod M, M = lcm(index of L, q_i, p_i).
  // A point with p | y and p ∤ x maps outside every prime above p, so it
  // only counts toward conditions with a unit target.
  Fraction joint(const std::vector<LocalCondition>& cs) const {
    const std::int64_t px = L_.period_x(), py = L_.period_y();
    u128 M = static_cast<u128>(px * py);
    for (const auto& c : cs) {
      M = M / gcd_u128(M, c.q) * c.q;
      M = M / gcd_u128(M, c.p) * c.p;
    }
    if (M >> 40) throw range_error("density modulus too large");
    const auto m = static_cast<std::uint64_t>(M);
    u128 num = 0, den = 0;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> congr;
    std::vector<std::uint64_t> avoid;
    for (std::uint64_t y = static_cast<std::uint64_t>(L_.offset_y()); y < m; y += static_cast<std::uint64_t>(py)) {
      const auto a = L_.row_residue(static_cast<std::int64_t>(y));
      if (!a) continue;
      // denominator: x ≡ a mod px and p ∤ x wherever p | y
      congr.assign({{static_cast<std::uint64_t>(px), static_cast<std::uint64_t>(*a)}});
      avoid.clear();
      bool blocked = false;
      for (const auto& c : cs)
        if (y % c.p == 0) {
          avoid.push_back(c.p);
          blocked = blocked || !c.target.is_unit();
        }
      den += count_x(m, congr, avoid);
      if (blocked) continue;
      // numerator: one branch per choice of ratio at each prime with p ∤ y
      std::function<void(std::size_t)> walk = [&](std::size_t i) {
        if (i == cs.size()) {
          num += count_x(m, congr, avoid);
          return;
        }
        const auto& c = cs[i];
        if (y % c.p == 0 || c.q == 1) return walk(i + 1);
        for (auto t : c.ratios) {
          congr.push_back({c.q, static_cast<std::uint64_t>(u128(t) * (y % c.q) % c.q)});
          walk(i + 1);
          congr.pop_back();
        }
      };
      walk(0);
    }
    if (den == 0) return Fraction(0, 1);
    return Fraction(num, den);
  }

  // #{x mod m : x ≡ r_i mod m_i, no listed prime divides x}; m is a
  // multiple of every m_i and every listed prime.
  static u128 count_x(std::uint64_t m, const std::vector<std::pair<std::uint64_t, std::uint64_t>>& congr,
                      const std::vector<std::uint64_t>& avoid) {
    // pairwise coprime moduli: always compatible, residues read per modulus
    std::uint64_t prod = 1;
    bool coprime = true;
    for (const auto& c : congr) {
      if (std::gcd(prod, c.first) != 1) {
        coprime = false;
        break;
      }
      prod *= c.first;
    }
    if (coprime) {
      u128 count = m / prod, keep_num = 1, keep_den = 1;
      for (auto l : avoid) {
        bool fixed = false;
        for (const auto& [mi, ri] : congr)
          if (mi % l == 0) {
            if (ri % l == 0) return 0;
            fixed = true;
          }
        if (!fixed) {
          keep_num *= l - 1;
          keep_den *= l;
        }
      }
      return count / keep_den * keep_num;
    }
    i128 mod = 1, res = 0;
    for (const auto& [mi, ri] : congr) {
      std::int64_t s, t;
      const std::int64_t g = ext_gcd(static_cast<std::int64_t>(mod % static_cast<i128>(mi)), static_cast<std::int64_t>(mi), s, t);
      const i128 diff = (i128(ri) - res) % i128(mi);
      if (diff % g) return 0;
      const i128 step = i128(mi) / g;
      const i128 k = ((diff / g) % step * s % step + step) % step;
      res = res + mod * k;
      mod = mod * step;
      res %= mod;
    }
    u128 count = u128(m) / u128(mod);
    u128 keep_num = 1, keep_den = 1;
    for (auto l : avoid) {
      if (mod % i128(l) == 0) {
        if (res % i128(l) == 0) return 0;
      } else {
        keep_num *= l - 1;
        keep_den *= l;
      }
    }
    return count / keep_den * keep_num;
  }

  const CubicField& K_;
  LatticeCoset L_;
  Ideal b_L_;
  mutable std::map<Ideal, Fraction> cache_;
  mutable std::map<Ideal, LocalCondition> cond_cache_;
};

inline Fraction g_density(const DensityModel& g, const Ideal& d) { return g.prime_power(d); }

// r_𝔡 = A_𝔡(n) - g(𝔡) A(n)
inline double remainder(const SequenceAF& seq, const DensityModel& g, const Ideal& d) {
  return double(A_d(seq, d, seq.n)) - g(d).value() * double(A(seq, seq.n));
}

// Every ideal of prime-power norm <= bound above primes outside the index
// bound, grouped by rational prime. Index primes are listed in skipped.
struct PrimePowerIdeals {
  std::vector<Ideal> ideals;
  std::vector<std::uint64_t> skipped;
};

inline PrimePowerIdeals prime_power_ideals(const CubicField& K, std::uint64_t bound) {
  PrimePowerIdeals out;
  for (std::uint64_t p : primes_up_to(bound)) {
    if (K.in_index_bound(p)) {
      out.skipped.push_back(p);
      continue;
    }
    const auto P = K.factor_prime(p);
    std::vector<Ideal::Factor> cur;
    std::function<void(std::size_t, u128)> walk = [&](std::size_t i, u128 nrm) {
      if (i == P.size()) {
        if (!cur.empty()) out.ideals.emplace_back(cur);
        return;
      }
      walk(i + 1, nrm);
      u128 m = nrm;
      for (std::uint32_t k = 1;; ++k) {
        m *= P[i].norm();
        if (m > bound) break;
        cur.push_back({P[i], k});
        walk(i + 1, m);
        cur.pop_back();
      }
    };
    walk(0, 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reports

struct ReportRow {
  std::string postulate;
  std::string parameters;
  double value = 0;
  std::string status;  // PASS, FAIL or NA
};

struct PostulateReport {
  std::vector<ReportRow> rows;
  std::vector<std::string> notes;

  void add(std::string postulate, std::string params, double value, std::string status) {
    rows.push_back({std::move(postulate), std::move(params), value, std::move(status)});
  }
  bool passed() const {
    return std::none_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.status == "FAIL"; });
  }
  std::size_t count(const std::string& status) const {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [&](const ReportRow& r) { return r.status == status; }));
  }
  std::optional<ReportRow> first_failure() const {
    for (const auto& r : rows)
      if (r.status == "FAIL") return r;
    return std::nullopt;
  }
  void write_csv(std::ostream& os) const {
    os << "postulate,parameters,value,status\n";
    os.precision(12);
    for (const auto& r : rows) os << r.postulate << ",\"" << r.parameters << "\"," << r.value << ',' << r.status << '\n';
  }
  void write_csv(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw invalid_input("cannot write " + path);
    write_csv(os);
  }
  void append(const PostulateReport& o) {
    rows.insert(rows.end(), o.rows.begin(), o.rows.end());
    notes.insert(notes.end(), o.notes.begin(), o.notes.end());
  }
};

// Postulates 1-3 for every ideal of prime-power norm <= B. Pairs for the
// multiplicativity check have norm product <= pair_bound.
inline PostulateReport check_postulates_123(const CubicField& K, const LatticeCoset& L, std::uint64_t B,
                                            std::uint64_t pair_bound = 0) {
  if (B > 10000) throw invalid_input("check_postulates_123: B must be <= 10^4");
  if (pair_bound == 0) pair_bound = B;
  PostulateReport rep;
  const DensityModel g(K, L);
  const std::uint64_t D0 = K.D0(), D1 = static_cast<std::uint64_t>(L.index());
  if (std::gcd(D0, D1) != 1) rep.notes.push_back("gcd(D0, D1) = " + std::to_string(std::gcd(D0, D1)) + " != 1");
  const auto all = prime_power_ideals(K, B);
  for (auto p : all.skipped) rep.notes.push_back("p = " + std::to_string(p) + " may divide the index; skipped");

  // 1: single prime powers
  std::map<std::string, std::string> branch_of;
  for (const auto& d : all.ideals) {
    if (d.factors().size() != 1) continue;
    const auto& [P, alpha] = d.factors()[0];
    const std::uint64_t p = P.p;
    const Fraction gd = g.prime_power(d);
    const std::string params = d.literal() + " g=" + gd.literal();
    if (P.f == 1 && D0 % p && D1 % p) {
      // 1 / (p^(alpha-1) (p+1))
      u128 want = p + 1;
      for (std::uint32_t i = 1; i < alpha; ++i) want *= p;
      rep.add("1-prime", params, gd.value(), gd == Fraction(1, want) ? "PASS" : "FAIL");
    } else if (P.f > 1 && D0 % p) {
      rep.add("1-nonprime-norm", params, gd.value(), gd.is_zero() ? "PASS" : "FAIL");
    } else if (P.f == 1 && D1 % p == 0) {
      u128 pa = 1;
      for (std::uint32_t i = 0; i < alpha; ++i) pa *= p;
      std::string br = gd.is_zero() ? "zero" : (gd == Fraction(1, pa) ? "inverse-norm" : "other");
      auto [it, fresh] = branch_of.emplace(P.literal(), br);
      const bool ok = br != "other" && it->second == br;
      rep.add("1-D1", params + " branch=" + br, gd.value(), ok ? "PASS" : "FAIL");
    }
  }
  for (const auto& [prime, br] : branch_of) rep.notes.push_back(prime + " divides D1: branch " + br);

  // 3: two distinct primes above one p, p ∤ D0
  for (const auto& d : all.ideals) {
    if (d.factors().size() < 2 || D0 % d.factors()[0].first.p == 0) continue;
    const Fraction gd = g.prime_power(d);
    rep.add("3", d.literal() + " g=" + gd.literal(), gd.value(), gd.is_zero() ? "PASS" : "FAIL");
  }

  // 2: coprime norms, joint density counted directly against the product
  std::vector<const Ideal*> small;
  for (const auto& d : all.ideals)
    if (d.norm() * 2 <= pair_bound) small.push_back(&d);
  for (std::size_t i = 0; i < small.size(); ++i)
    for (std::size_t j = i + 1; j < small.size(); ++j) {
      const Ideal &a = *small[i], &b = *small[j];
      if (a.factors()[0].first.p == b.factors()[0].first.p) continue;
      if (a.norm() * b.norm() > pair_bound) continue;
      const Fraction prod = g.prime_power(a) * g.prime_power(b);
      const Fraction direct = g.joint_direct({a, b});
      rep.add("2", a.literal() + "*" + b.literal() + " g=" + direct.literal(), direct.value(),
              direct == prod ? "PASS" : "FAIL");
    }
  return rep;
}

inline PostulateReport check_postulates_123(const SequenceAF& seq, std::uint64_t B, std::uint64_t pair_bound = 0) {
  return check_postulates_123(seq.field, seq.coset, B, pair_bound);
}

// |r_𝔡| <= limit for every 𝔡 of prime-power norm <= bound.
inline PostulateReport check_remainder_law(const SequenceAF& seq, std::uint64_t bound, double limit) {
  PostulateReport rep;
  const DensityModel g(seq.field, seq.coset);
  // A_𝔡 for every divisor of a support ideal with prime-power norm
  std::map<Ideal, std::uint64_t> Ad;
  for (const auto& [a, c] : seq.support)
    for (const auto& part : DensityModel::by_prime(a))
      for_each_divisor(part, [&](const Ideal& d) {
        if (!d.is_unit() && d.norm() <= bound) Ad[d] += c;
      });
  const double An = double(seq.points);
  for (const auto& d : prime_power_ideals(seq.field, bound).ideals) {
    auto it = Ad.find(d);
    const double r = double(it == Ad.end() ? 0 : it->second) - g(d).value() * An;
    rep.add("remainder", d.literal(), r, std::abs(r) <= limit ? "PASS" : "FAIL");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Measured postulates (reported, never asserted)

inline double log_n(const SequenceAF& seq) { return std::log(std::max(3.0, double(seq.n))); }

// Σ_{N𝔞 <= n^(2/3) (log n)^-kappa} τ(𝔞)^C1 |r_𝔞| / A(n), one row per kappa.
inline PostulateReport measure_type1(const SequenceAF& seq, double C1, const std::vector<double>& kappas) {
  PostulateReport rep;
  const double An = double(seq.points);
  if (seq.support.empty()) {
    for (double k : kappas) rep.add("4", "kappa=" + detail::fmt_real(k) + " C1=" + detail::fmt_real(C1), 0, "NA");
    return rep;
  }
  const double L = log_n(seq), top = std::pow(double(seq.n), 2.0 / 3.0);
  double X0 = 0;
  for (double k : kappas) X0 = std::max(X0, top / std::pow(L, k));
  const auto bound = static_cast<std::uint64_t>(std::floor(X0));
  const DensityModel g(seq.field, seq.coset);

  std::map<Ideal, std::uint64_t> Ad;
  for (const auto& [a, c] : seq.support)
    for_each_divisor(a, [&](const Ideal& d) {
      if (d.norm() <= bound) Ad[d] += c;
    });
  // every ideal with g > 0 and norm <= bound
  std::map<std::uint64_t, std::vector<std::pair<Ideal, Fraction>>> local;
  for (const auto& d : prime_power_ideals(seq.field, bound).ideals) {
    const Fraction gd = g.prime_power(d);
    if (!gd.is_zero()) local[d.factors()[0].first.p].push_back({d, gd});
  }
  std::vector<std::uint64_t> ps;
  for (const auto& kv : local) ps.push_back(kv.first);
  std::map<Ideal, double> gval;
  std::function<void(std::size_t, const Ideal&, u128, double)> walk = [&](std::size_t i, const Ideal& a, u128 nrm,
                                                                          double ga) {
    gval[a] = ga;
    for (std::size_t j = i; j < ps.size(); ++j) {
      if (nrm * ps[j] > bound) break;
      for (const auto& [d, gd] : local[ps[j]])
        if (nrm * d.norm() <= bound) walk(j + 1, a * d, nrm * d.norm(), ga * gd.value());
    }
  };
  walk(0, Ideal(), 1, 1.0);
  for (const auto& kv : Ad)
    if (!gval.count(kv.first)) gval[kv.first] = g(kv.first).value();

  for (double k : kappas) {
    const double X = top / std::pow(L, k);
    double s = 0;
    for (const auto& [a, ga] : gval) {
      if (double(a.norm()) > X) continue;
      auto it = Ad.find(a);
      const double r = double(it == Ad.end() ? 0 : it->second) - ga * An;
      s += std::pow(double(a.tau()), C1) * std::abs(r);
    }
    rep.add("4", "kappa=" + detail::fmt_real(k) + " C1=" + detail::fmt_real(C1), s / An, "NA");
  }
  return rep;
}

// Σ_{N𝔡 > threshold} τ(𝔡)^C1 A_{𝔡²}(n) / A(n)
inline double square_sum(const SequenceAF& seq, double C1, double threshold) {
  if (seq.points == 0) return 0;
  double s = 0;
  for (const auto& [a, c] : seq.support) {
    std::vector<Ideal::Factor> half;
    for (const auto& [P, k] : a.factors())
      if (k >= 2) half.push_back({P, k / 2});
    for_each_divisor(Ideal(std::move(half)), [&](const Ideal& d) {
      if (double(d.norm()) > threshold) s += std::pow(double(d.tau()), C1) * double(c);
    });
  }
  return s / double(seq.points);
}

inline PostulateReport measure_square(const SequenceAF& seq, double C1, const std::vector<double>& kappas) {
  PostulateReport rep;
  const double L = log_n(seq);
  for (double k : kappas)
    rep.add("5", "kappa=" + detail::fmt_real(k) + " C1=" + detail::fmt_real(C1), square_sum(seq, C1, std::pow(L, k)),
            "NA");
  return rep;
}

// Σ_{N𝔞 <= n (log n)^-kappa} τ(𝔞)^C1 a_𝔞 / A(n)
inline PostulateReport measure_crude(const SequenceAF& seq, double C1, const std::vector<double>& kappas) {
  PostulateReport rep;
  const double L = log_n(seq);
  for (double k : kappas) {
    const double X = double(seq.n) / std::pow(L, k);
    double s = 0;
    for (const auto& [a, c] : seq.support)
      if (double(a.norm()) <= X) s += std::pow(double(a.tau()), C1) * double(c);
    rep.add("6", "kappa=" + detail::fmt_real(k) + " C1=" + detail::fmt_real(C1),
            seq.points ? s / double(seq.points) : 0, "NA");
  }
  return rep;
}

using IdealFunction = std::function<double(const Ideal&)>;

// d(𝔞) = Σ_{𝔡 | 𝔞, gcd(N𝔡, D) = 1, N𝔡 > ell} c(𝔞/𝔡) μ(𝔡)
inline double bilinear_d(const IdealFunction& c, std::uint64_t D, double ell, const Ideal& a) {
  double s = 0;
  for_each_divisor(a.rad(), [&](const Ideal& d) {
    const u128 nd = d.norm();
    if (!(double(nd) > ell) || gcd_u128(nd, D) != 1) return;
    s += c(a.quotient(d)) * d.mu();
  });
  return s;
}

// Σ_{𝔞𝔟 = 𝔪, v <= N𝔟 < 2v} b(𝔞) d(𝔟) a_𝔪 / A(n)
inline PostulateReport measure_bilinear(const SequenceAF& seq, const IdealFunction& b, const IdealFunction& c,
                                        std::uint64_t D, double ell, double v) {
  if (D == 0 || (seq.D0 * seq.D1) % D) throw invalid_input("measure_bilinear: D must divide D0*D1");
  PostulateReport rep;
  double s = 0;
  std::map<Ideal, double> dcache;
  for (const auto& [m, cnt] : seq.support)
    for_each_divisor(m, [&](const Ideal& bb) {
      const double nb = double(bb.norm());
      if (nb < v || nb >= 2 * v) return;
      auto it = dcache.find(bb);
      if (it == dcache.end()) it = dcache.emplace(bb, bilinear_d(c, D, ell, bb)).first;
      s += b(m.quotient(bb)) * it->second * double(cnt);
    });
  rep.add("7", "D=" + std::to_string(D) + " ell=" + detail::fmt_real(ell) + " v=" + detail::fmt_real(v),
          seq.points ? s / double(seq.points) : 0, "NA");
  return rep;
}

}  // namespace chowla
