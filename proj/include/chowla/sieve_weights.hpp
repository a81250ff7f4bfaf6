#pragma once

// Brun pure-sieve weights on ideals, the splitting identity
// 1 = Σ_{d|b} λ_d − Σ_{d|b, lo<Nd≤hi} λ_d, and the anti-sieving identity on
// ordinary integers.

#include <algorithm>
#include <cmath>
#include <functional>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "chowla/arith.hpp"
#include "chowla/error.hpp"
#include "chowla/ideal.hpp"
#include "chowla/vaughan.hpp"

namespace chowla {

// Weights λ_d on ideals. λ_(1) = 1; any other nonzero λ_d sits on a
// squarefree product of primes of P with lower_gap < Nd <= upper_cut.
class SieveWeights {
 public:
  SieveWeights() { w_[Ideal()] = 1; }

  int weight(const Ideal& d) const {
    auto it = w_.find(d);
    return it == w_.end() ? 0 : it->second;
  }
  void set(const Ideal& d, int v) {
    if (v == 0)
      w_.erase(d);
    else
      w_[d] = v;
  }
  const std::map<Ideal, int>& weights() const { return w_; }

  std::vector<PrimeIdeal> P;
  u128 lower_gap = 0;
  double upper_cut = 0;
  int depth = 0;

  // The declared support holds for every stored weight.
  bool support_ok() const {
    if (weight(Ideal()) != 1) return false;
    for (const auto& [d, v] : w_) {
      if (d.is_unit()) continue;
      if (v < -1 || v > 1 || d.mu() == 0) return false;
      for (const auto& fk : d.factors())
        if (std::find(P.begin(), P.end(), fk.first) == P.end()) return false;
      const u128 n = d.norm();
      if (n <= lower_gap || double(n) > upper_cut) return false;
    }
    return true;
  }

 private:
  std::map<Ideal, int> w_;
};

// Smallest even integer >= 2 log log cut + 2.
inline int default_brun_depth(double cut) {
  if (cut <= std::exp(1.0)) return 2;
  const int d = static_cast<int>(std::ceil(2 * std::log(std::log(cut)) + 2));
  return d % 2 ? d + 1 : d;
}

inline SieveWeights brun_pure_weights(std::vector<PrimeIdeal> P, double cut, int depth) {
  if (depth < 0 || depth % 2) throw invalid_input("Brun depth must be even and >= 0");
  std::sort(P.begin(), P.end());
  P.erase(std::unique(P.begin(), P.end()), P.end());
  SieveWeights W;
  W.P = P;
  W.upper_cut = cut;
  W.depth = depth;
  W.lower_gap = 0;
  if (!P.empty()) {
    u128 least = P[0].norm();
    for (const auto& p : P) least = std::min(least, p.norm());
    W.lower_gap = least - 1;
  }
  // depth-first over increasing prime indices, pruned by norm
  std::vector<Ideal::Factor> cur;
  std::function<void(std::size_t, u128)> walk = [&](std::size_t from, u128 n) {
    if (static_cast<int>(cur.size()) >= depth) return;
    for (std::size_t i = from; i < P.size(); ++i) {
      const u128 m = n * P[i].norm();
      if (double(m) > cut) continue;
      cur.push_back({P[i], 1});
      W.set(Ideal(cur), (cur.size() % 2) ? -1 : 1);
      walk(i + 1, m);
      cur.pop_back();
    }
  };
  walk(0, 1);
  return W;
}

// Σ_{d|b} λ_d
inline std::int64_t sieve_value(const SieveWeights& W, const Ideal& b) {
  std::int64_t s = 0;
  for_each_divisor(b.rad(), [&](const Ideal& d) { s += W.weight(d); });
  return s;
}

inline bool coprime_to_set(const Ideal& b, const std::vector<PrimeIdeal>& P) {
  for (const auto& fk : b.factors())
    if (std::find(P.begin(), P.end(), fk.first) != P.end()) return false;
  return true;
}

struct BuchstabSplit {
  std::int64_t main = 0;  // Σ_{d|b} λ_d
  std::int64_t tail = 0;  // Σ_{d|b, lo<Nd<=hi} λ_d
  bool holds() const { return main - tail == 1; }
};

// Requires λ_d = 0 whenever 1 < Nd <= lo or Nd > hi.
inline BuchstabSplit buchstab_split(const SieveWeights& W, const Ideal& b, const Rational& lo, const Rational& hi) {
  for (const auto& [d, v] : W.weights()) {
    if (d.is_unit() || v == 0) continue;
    const u128 n = d.norm();
    if (norm_le(n, lo) || norm_gt(n, hi))
      throw invalid_input("buchstab_split: weight outside (lo, hi] at " + d.literal());
  }
  if (W.weight(Ideal()) != 1) throw invalid_input("buchstab_split: λ_(1) must be 1");
  BuchstabSplit r;
  for_each_divisor(b.rad(), [&](const Ideal& d) {
    const int v = W.weight(d);
    r.main += v;
    const u128 n = d.norm();
    if (norm_gt(n, lo) && norm_le(n, hi)) r.tail += v;
  });
  return r;
}

// ---------------------------------------------------------------------------
// Anti-sieving on ordinary integers

struct IntegerWeights {
  std::unordered_map<std::uint64_t, int> w;  // λ_d; λ_1 = 1
  int at(std::uint64_t d) const {
    auto it = w.find(d);
    return it == w.end() ? 0 : it->second;
  }
};

// Brun weights on squarefree products of the primes in (floor, limit] with
// at most depth factors and product <= cut.
inline IntegerWeights brun_integer_weights(std::uint64_t floor, std::uint64_t limit, std::uint64_t cut, int depth) {
  if (depth < 0 || depth % 2) throw invalid_input("Brun depth must be even and >= 0");
  IntegerWeights W;
  W.w[1] = 1;
  std::vector<std::uint64_t> ps;
  for (auto p : primes_up_to(limit))
    if (p > floor) ps.push_back(p);
  std::function<void(std::size_t, std::uint64_t, int)> walk = [&](std::size_t from, std::uint64_t n, int k) {
    if (k >= depth) return;
    for (std::size_t i = from; i < ps.size(); ++i) {
      if (u128(n) * ps[i] > cut) break;
      const std::uint64_t m = n * ps[i];
      W.w[m] = (k + 1) % 2 ? -1 : 1;
      walk(i + 1, m, k + 1);
    }
  };
  walk(0, 1, 0);
  return W;
}

struct PairHash {
  std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const {
    return std::hash<std::uint64_t>()(k.first * 0x9E3779B97F4A7C15ULL ^ k.second);
  }
};

using PairTable = std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, std::int64_t, PairHash>;

struct AntiSieveSplit {
  std::int64_t total = 0;       // Σ_window F_ab
  std::int64_t sieved = 0;      // Σ_window (Σ_{d|a} λ_d) F_ab
  std::int64_t correction = 0;  // Σ_window Σ_{d|a, d>Y^2} λ_d F_ab
  std::int64_t substituted = 0;  // correction after a = d a', b' = d b, F re-indexed as F(a'd, b'/d)
  std::int64_t literal = 0;     // the same sum reading F at the pair (a', b')
  bool identity() const { return total == sieved - correction; }
  bool substitution() const { return correction == substituted; }
  bool holds() const { return identity() && substitution(); }
};

// Window x^alpha/Y < a < x^alpha·Y over pairs with ab <= x. Weights must
// have λ_1 = 1 and λ_d = 0 for 1 < d <= Y^2.
inline AntiSieveSplit anti_sieve_split(const PairTable& F, std::uint64_t x, double alpha, double Y,
                                       const IntegerWeights& W) {
  if (!(alpha >= 0 && alpha <= 1)) throw invalid_input("alpha must lie in [0,1]");
  if (!(Y >= 1)) throw invalid_input("Y must be >= 1");
  if (W.at(1) != 1) throw invalid_input("anti_sieve_split: λ_1 must be 1");
  const double Y2 = Y * Y;
  for (const auto& [d, v] : W.w)
    if (d > 1 && v != 0 && double(d) <= Y2) throw invalid_input("anti_sieve_split: weight at d <= Y^2");
  const double xa = std::pow(double(x), alpha);
  const double lo = xa / Y, hi = xa * Y;
  auto in_window = [&](std::uint64_t a) { return double(a) > lo && double(a) < hi; };
  auto Fat = [&](std::uint64_t a, std::uint64_t b) -> std::int64_t {
    auto it = F.find({a, b});
    return it == F.end() ? 0 : it->second;
  };

  AntiSieveSplit r;
  for (const auto& [ab, v] : F) {
    const auto [a, b] = ab;
    if (a == 0 || b == 0 || u128(a) * b > x || !in_window(a)) continue;
    r.total += v;
    std::int64_t all = 0, big = 0;
    auto visit = [&](std::uint64_t e) {
      const int l = W.at(e);
      all += l;
      if (double(e) > Y2) big += l;
    };
    for (std::uint64_t d = 1; d * d <= a; ++d) {
      if (a % d) continue;
      visit(d);
      if (d * d != a) visit(a / d);
    }
    r.sieved += all * v;
    r.correction += big * v;
  }
  // a' < x^alpha / Y; d | b', d > Y^2, lo < a'd < hi
  for (std::uint64_t ap = 1; double(ap) < lo; ++ap) {
    for (std::uint64_t bp = 1; u128(ap) * bp <= x; ++bp) {
      for (std::uint64_t d = 1; d * d <= bp; ++d) {
        if (bp % d) continue;
        const std::uint64_t pair[2] = {d, bp / d};
        for (int k = 0; k < (d * d == bp ? 1 : 2); ++k) {
          const std::uint64_t dd = pair[k];
          if (!(double(dd) > Y2) || !in_window(ap * dd)) continue;
          const int l = W.at(dd);
          if (l == 0) continue;
          r.substituted += l * Fat(ap * dd, bp / dd);
          r.literal += l * Fat(ap, bp);
        }
      }
    }
  }
  return r;
}

}  // namespace chowla
