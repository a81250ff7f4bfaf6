#pragma once

// A variant of Vaughan's identity on ideals: the seven terms β1..β7, the
// divisor-window flip and the pairing bound. Cut points are exact rationals
// so every comparison with an ideal norm is decided without rounding.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "chowla/arith.hpp"
#include "chowla/error.hpp"
#include "chowla/ideal.hpp"

namespace chowla {

// num / den with den > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
    if (den == 0) throw invalid_input("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const auto g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  // Nearest rational with denominator 2^20 (2^0 for huge values).
  static Rational from_double(double v) {
    if (!std::isfinite(v)) throw invalid_input("non-finite cut point");
    const std::int64_t den = std::abs(v) < 1e12 ? (1 << 20) : 1;
    const double n = std::round(v * double(den));
    if (std::abs(n) > 9e18) throw range_error("cut point out of 64-bit range");
    return Rational(static_cast<std::int64_t>(n), den);
  }
  double value() const { return double(num) / double(den); }

  friend bool operator<(const Rational& a, const Rational& b) { return i128(a.num) * b.den < i128(b.num) * a.den; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
};

// Comparisons of an ideal norm with a rational cut.
inline bool norm_le(u128 n, const Rational& q) {
  if (q.num < 0) return false;
  return checked_mul(n, u128(q.den)) <= u128(q.num);
}
inline bool norm_lt(u128 n, const Rational& q) {
  if (q.num <= 0) return false;
  return checked_mul(n, u128(q.den)) < u128(q.num);
}
inline bool norm_gt(u128 n, const Rational& q) { return !norm_le(n, q); }

struct VaughanParams {
  Rational y, u, w;
  std::vector<PrimeIdeal> Q;
  double x_scale = 0;
  double epsilon = 1;

  VaughanParams(Rational y_, Rational u_, Rational w_, std::vector<PrimeIdeal> q = {}, double x = 0, double eps = 1)
      : y(y_), u(u_), w(w_), Q(std::move(q)), x_scale(x), epsilon(eps) {
    if (y.num <= 0) throw invalid_input("cut points must be positive");
    if (!(y <= u && u <= w)) throw invalid_input("cut points must satisfy y <= u <= w");
  }
};

// z = exp(loglog x * (logloglog x)^(eps/2)), y = x^(1/3) z^-2,
// u = x^(1/3) z, w = x^(1/2) z^-1.
struct Schedule {
  double x, epsilon, z, y, u, w;
  bool ordered() const { return y <= u && u <= w; }
  VaughanParams to_params(std::vector<PrimeIdeal> Q = {}) const {
    if (!ordered()) throw invalid_input("schedule violates y <= u <= w at x = " + std::to_string(x));
    return VaughanParams(Rational::from_double(y), Rational::from_double(u), Rational::from_double(w), std::move(Q), x,
                         epsilon);
  }
};

inline Schedule default_params(double x, double epsilon = 1) {
  if (!(x > std::exp(std::numbers::e))) throw invalid_input("parameter schedule undefined for x <= e^e");
  if (!(epsilon > 0)) throw invalid_input("epsilon must be positive");
  const double l2 = std::log(std::log(x)), l3 = std::log(l2);
  Schedule s;
  s.x = x;
  s.epsilon = epsilon;
  s.z = std::exp(l2 * std::pow(l3, epsilon / 2));
  const double c = std::cbrt(x);
  s.y = c / (s.z * s.z);
  s.u = c * s.z;
  s.w = std::sqrt(x) / s.z;
  return s;
}

inline Ideal r_Q(const Ideal& a, const std::vector<PrimeIdeal>& Q) { return split_S(a, Q).first; }

// Pairs (b, c) with bc | a and r_Q(b) = r_Q(a). When squarefree_c is set,
// only squarefree c are produced.
template <class Fn>
void sum_star_pairs(const Ideal& a, const std::vector<PrimeIdeal>& Q, Fn&& fn, bool squarefree_c = false,
                    std::uint64_t cap = default_divisor_cap) {
  const Ideal ra = r_Q(a, Q);
  for_each_divisor(
      a,
      [&](const Ideal& b) {
        if (!(r_Q(b, Q) == ra)) return;
        const Ideal rest = a.quotient(b);
        for_each_divisor(squarefree_c ? rest.rad() : rest, [&](const Ideal& c) { fn(b, c); }, cap);
      },
      cap);
}

template <class T>
struct BetaTerms {
  std::array<T, 7> beta{};  // beta[0] is β1
  T h_a{};
  T lhs() const { return h_a; }
  T rhs() const { return beta[0] + beta[1] + beta[2] + beta[3] - beta[4] - beta[5] - beta[6]; }
  // Σ_* h(b > u) μ(c > u) and Σ_* h(b <= u) μ(c <= u)
  T group_high{}, group_low{};
};

template <class H>
auto beta_terms(const Ideal& a, H&& h, const VaughanParams& P) {
  using T = std::decay_t<decltype(h(a))>;
  BetaTerms<T> out;
  out.h_a = h(a);
  const u128 na = a.norm();
  if (norm_le(na, P.u)) out.beta[0] += out.h_a;
  sum_star_pairs(
      a, P.Q,
      [&](const Ideal& b, const Ideal& c) {
        const int m = c.mu();
        if (m == 0) return;
        const u128 nb = b.norm(), nc = c.norm();
        const T hb = h(b);
        const T t = m > 0 ? hb : T(-hb);
        const bool b_le_y = norm_le(nb, P.y), b_le_u = norm_le(nb, P.u), b_le_w = norm_le(nb, P.w);
        const bool c_le_y = norm_le(nc, P.y), c_le_u = norm_le(nc, P.u), c_le_w = norm_le(nc, P.w);
        if (c_le_u) out.beta[0] += t;
        if (!b_le_u && b_le_w && !c_le_u) out.beta[1] += t;
        if (!b_le_w && !c_le_u && c_le_w) out.beta[2] += t;
        if (!b_le_w && !c_le_w) out.beta[3] += t;
        if (b_le_u && c_le_y) out.beta[4] += t;
        if (b_le_y && !c_le_y && c_le_u) out.beta[5] += t;
        if (!b_le_y && b_le_u && !c_le_y && c_le_u) out.beta[6] += t;
        if (!b_le_u && !c_le_u) out.group_high += t;
        if (b_le_u && c_le_u) out.group_low += t;
      },
      true);
  return out;
}

template <class H>
auto beta(int j, const Ideal& a, H&& h, const VaughanParams& P) {
  if (j < 1 || j > 7) throw invalid_input("beta index must be 1..7");
  return beta_terms(a, std::forward<H>(h), P).beta[j - 1];
}

struct IdentityCheck {
  bool identity = false;  // h(a) = Σβ1..4 − Σβ5..7
  bool grouping = false;  // β2+β3+β4 and β5+β6+β7 equal their grouped sums
  bool holds() const { return identity && grouping; }
};

template <class T>
bool exact_or_close(T a, T b) {
  if constexpr (std::is_floating_point_v<T>)
    return std::abs(a - b) <= 1e-9 * std::max<T>(1, std::max(std::abs(a), std::abs(b)));
  else
    return a == b;
}

template <class H>
IdentityCheck verify_identity(const Ideal& a, H&& h, const VaughanParams& P) {
  const auto t = beta_terms(a, std::forward<H>(h), P);
  IdentityCheck r;
  r.identity = exact_or_close(t.lhs(), t.rhs());
  r.grouping = exact_or_close(t.beta[1] + t.beta[2] + t.beta[3], t.group_high) &&
               exact_or_close(t.beta[4] + t.beta[5] + t.beta[6], t.group_low);
  return r;
}

struct WindowFlip {
  std::int64_t lhs = 0;         // Σ_{c|e} μ(c > u)
  std::int64_t rhs = 0;         // μ(rad e) Σ_{c|e} μ(c < N(rad e)/u)
  std::int64_t mobius_sum = 0;  // Σ_{c|e} μ(c)
  bool holds() const { return lhs == rhs && mobius_sum == 0; }
};

inline WindowFlip window_flip(const Ideal& e, const Rational& u) {
  if (e.is_unit()) throw invalid_input("window_flip needs e != (1)");
  if (u.num <= 0) throw invalid_input("window_flip needs u > 0");
  WindowFlip r;
  const Ideal re = e.rad();
  const u128 nr = re.norm();
  std::int64_t inner = 0;
  for_each_divisor(e, [&](const Ideal& c) {
    const int m = c.mu();
    if (m == 0) return;
    const u128 nc = c.norm();
    r.mobius_sum += m;
    if (norm_gt(nc, u)) r.lhs += m;
    // N c < N(rad e) / u  ⟺  N c · u.num < N(rad e) · u.den
    if (checked_mul(nc, u128(u.num)) < checked_mul(nr, u128(u.den))) inner += m;
  });
  r.rhs = re.mu() * inner;
  return r;
}

struct PairingBound {
  std::int64_t lhs = 0;  // |Σ_{c|e} μ(c ≤ y)|
  std::int64_t rhs = 0;  // #{c | e : y/l < N c ≤ y}
  bool holds() const { return lhs <= rhs; }
};

// Requires a prime divisor of e with norm <= l.
inline PairingBound pairing_bound(const Ideal& e, const Rational& y, const Rational& l) {
  bool small = false;
  for (const auto& fk : e.factors()) small = small || norm_le(fk.first.norm(), l);
  if (!small) throw invalid_input("pairing_bound: no prime divisor of norm <= l");
  PairingBound r;
  std::int64_t s = 0;
  for_each_divisor(e, [&](const Ideal& c) {
    const u128 nc = c.norm();
    if (!norm_le(nc, y)) return;
    s += c.mu();
    // y / l < N c  ⟺  y.num · l.den < N c · y.den · l.num
    if (i128(y.num) * l.den < i128(checked_mul(checked_mul(nc, u128(y.den)), u128(l.num)))) ++r.rhs;
  });
  r.lhs = s < 0 ? -s : s;
  return r;
}

}  // namespace chowla
