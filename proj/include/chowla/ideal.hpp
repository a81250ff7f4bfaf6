#pragma once

// Ideals of the cubic field K = Q(θ) attached to a monic irreducible form g,
// with g(t,1) the minimal polynomial of θ. Ideals are stored as exact
// prime-ideal factorizations. Primes that may divide [O_K : Z[θ]] are refused.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "chowla/arith.hpp"
#include "chowla/cubic_form.hpp"
#include "chowla/error.hpp"
#include "chowla/factor_sieve.hpp"
#include "chowla/poly_mod.hpp"

namespace chowla {

struct PrimeIdeal {
  std::uint64_t p = 0;
  std::int64_t root = -1;  // root of the minimal polynomial mod p; -1 for a nonlinear factor
  int f = 1;               // residue degree
  int e = 1;               // ramification index

  u128 norm() const {
    u128 n = 1;
    for (int i = 0; i < f; ++i) n *= p;
    return n;
  }
  bool operator==(const PrimeIdeal& o) const { return p == o.p && f == o.f && root == o.root; }
  std::strong_ordering operator<=>(const PrimeIdeal& o) const {
    if (auto c = p <=> o.p; c != 0) return c;
    if (auto c = f <=> o.f; c != 0) return c;
    return root <=> o.root;
  }
  std::string literal() const {
    std::string s = "P(" + std::to_string(p) + ",";
    s += root >= 0 ? std::to_string(root) : "deg" + std::to_string(f);
    return s + ")";
  }
};

class Ideal {
 public:
  using Factor = std::pair<PrimeIdeal, std::uint32_t>;

  Ideal() = default;
  explicit Ideal(std::vector<Factor> factors) : f_(std::move(factors)) { normalize(); }
  static Ideal prime(const PrimeIdeal& p, std::uint32_t k = 1) { return Ideal({{p, k}}); }

  const std::vector<Factor>& factors() const { return f_; }
  bool is_unit() const { return f_.empty(); }

  std::uint32_t valuation(const PrimeIdeal& p) const {
    for (const auto& [q, k] : f_)
      if (q == p) return k;
    return 0;
  }

  u128 norm() const {
    u128 n = 1;
    for (const auto& [p, k] : f_)
      for (std::uint32_t i = 0; i < k; ++i) n = checked_mul(n, p.norm());
    return n;
  }
  std::uint64_t tau() const {
    std::uint64_t t = 1;
    for (const auto& fk : f_) t *= fk.second + 1;
    return t;
  }
  std::uint32_t omega() const { return static_cast<std::uint32_t>(f_.size()); }
  int mu() const {
    for (const auto& fk : f_)
      if (fk.second > 1) return 0;
    return (f_.size() % 2) ? -1 : 1;
  }
  Ideal rad() const {
    std::vector<Factor> r;
    for (const auto& fk : f_) r.push_back({fk.first, 1});
    return Ideal(std::move(r));
  }

  bool divides(const Ideal& other) const {
    for (const auto& [p, k] : f_)
      if (other.valuation(p) < k) return false;
    return true;
  }
  // this / d; d must divide this.
  Ideal quotient(const Ideal& d) const {
    if (!d.divides(*this)) throw invalid_input("ideal quotient: not a divisor");
    std::vector<Factor> r;
    for (const auto& [p, k] : f_) r.push_back({p, k - d.valuation(p)});
    return Ideal(std::move(r));
  }
  bool coprime_to(const Ideal& o) const {
    for (const auto& fk : f_)
      if (o.valuation(fk.first)) return false;
    return true;
  }

  friend Ideal operator*(const Ideal& a, const Ideal& b) {
    std::vector<Factor> r = a.f_;
    r.insert(r.end(), b.f_.begin(), b.f_.end());
    return Ideal(std::move(r));
  }
  bool operator==(const Ideal&) const = default;
  auto operator<=>(const Ideal& o) const { return f_ <=> o.f_; }

  std::string literal() const {
    if (f_.empty()) return "(1)";
    std::string s;
    for (const auto& [p, k] : f_) {
      if (!s.empty()) s += "*";
      s += p.literal();
      if (k > 1) s += "^" + std::to_string(k);
    }
    return s;
  }

 private:
  void normalize() {
    std::sort(f_.begin(), f_.end(), [](const Factor& x, const Factor& y) { return x.first < y.first; });
    std::vector<Factor> out;
    for (const auto& fk : f_) {
      if (fk.second == 0) continue;
      if (!out.empty() && out.back().first == fk.first)
        out.back().second += fk.second;
      else
        out.push_back(fk);
    }
    f_ = std::move(out);
  }

  std::vector<Factor> f_;
};

inline u128 norm(const Ideal& a) { return a.norm(); }
inline std::uint64_t tau(const Ideal& a) { return a.tau(); }
inline std::uint32_t omega(const Ideal& a) { return a.omega(); }
inline int mu_ideal(const Ideal& a) { return a.mu(); }
inline Ideal rad(const Ideal& a) { return a.rad(); }

// (r_S(a), r_{not S}(a))
inline std::pair<Ideal, Ideal> split_S(const Ideal& a, const std::vector<PrimeIdeal>& S) {
  std::vector<Ideal::Factor> in, out;
  for (const auto& fk : a.factors())
    (std::find(S.begin(), S.end(), fk.first) != S.end() ? in : out).push_back(fk);
  return {Ideal(std::move(in)), Ideal(std::move(out))};
}

inline constexpr std::uint64_t default_divisor_cap = 1u << 16;

// Every divisor of a exactly once, in mixed-radix order of exponents.
template <class Fn>
void for_each_divisor(const Ideal& a, Fn&& fn, std::uint64_t cap = default_divisor_cap) {
  if (a.tau() > cap) throw range_error("divisor count " + std::to_string(a.tau()) + " exceeds cap");
  const auto& fs = a.factors();
  std::vector<std::uint32_t> ex(fs.size(), 0);
  while (true) {
    std::vector<Ideal::Factor> d;
    for (std::size_t i = 0; i < fs.size(); ++i)
      if (ex[i]) d.push_back({fs[i].first, ex[i]});
    fn(Ideal(std::move(d)));
    std::size_t i = 0;
    while (i < fs.size() && ex[i] == fs[i].second) ex[i++] = 0;
    if (i == fs.size()) return;
    ++ex[i];
  }
}

inline std::vector<Ideal> divisors(const Ideal& a, std::uint64_t cap = default_divisor_cap) {
  std::vector<Ideal> out;
  for_each_divisor(a, [&](Ideal d) { out.push_back(std::move(d)); }, cap);
  return out;
}

namespace detail {

using zpoly = std::vector<i128>;  // integer polynomial, low degree first

inline zpoly zmul(const zpoly& a, const zpoly& b) {
  if (a.empty() || b.empty()) return {};
  zpoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = checked_add(r[i + j], checked_mul(a[i], b[j]));
  return r;
}

inline zpoly lift(const fp::poly& f) { return zpoly(f.begin(), f.end()); }

inline fp::poly zreduce(const zpoly& f, std::uint64_t p) {
  fp::poly r(f.size());
  const i128 P = p;
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = static_cast<std::uint64_t>(((f[i] % P) + P) % P);
  fp::trim(r);
  return r;
}

}  // namespace detail

class CubicField {
 public:
  // g must be monic and irreducible.
  explicit CubicField(const BinaryCubicForm& g) : form_(g) {
    if (!g.is_monic()) throw invalid_input("build_field: form must be monic");
    if (!is_irreducible(g)) throw invalid_input("build_field: form is reducible");
    disc_ = g.discriminant();
    const u128 ad = static_cast<u128>(abs128(disc_));
    if (ad >> 64) throw range_error("build_field: discriminant exceeds 64 bits");
    disc_primes_ = distinct_prime_factors(static_cast<std::uint64_t>(ad));
    for (auto p : disc_primes_)
      if (ad % (u128(p) * p) == 0 && !dedekind_maximal(p)) index_bound_.push_back(p);
  }

  const BinaryCubicForm& form() const { return form_; }
  // t^3 + b t^2 + c t + d, low degree first
  std::vector<std::int64_t> min_poly() const { return {form_.d(), form_.c(), form_.b(), 1}; }
  i128 discriminant() const { return disc_; }
  // f(x,y) = sign * N(x - yθ)
  int norm_sign() const { return 1; }
  const std::vector<std::uint64_t>& index_bound() const { return index_bound_; }
  const std::vector<std::uint64_t>& disc_primes() const { return disc_primes_; }
  bool in_index_bound(std::uint64_t p) const {
    return std::find(index_bound_.begin(), index_bound_.end(), p) != index_bound_.end();
  }
  bool divides_disc(std::uint64_t p) const {
    return std::find(disc_primes_.begin(), disc_primes_.end(), p) != disc_primes_.end();
  }

  // Prime ideals above p via Dedekind, ordered like PrimeIdeal.
  std::vector<PrimeIdeal> factor_prime(std::uint64_t p) const {
    if (in_index_bound(p)) throw unsupported("unsupported: p may divide the index");
    std::vector<PrimeIdeal> out;
    for (const auto& fe : fp::factor_small(fp::reduce(min_poly(), p), p)) {
      PrimeIdeal q;
      q.p = p;
      q.f = fp::degree(fe.factor);
      q.e = fe.multiplicity;
      q.root = q.f == 1 ? static_cast<std::int64_t>((p - fe.factor[0]) % p) : -1;
      out.push_back(q);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // The degree-1 prime above p with the given root.
  PrimeIdeal linear_prime(std::uint64_t p, std::int64_t root) const {
    if (!divides_disc(p)) return PrimeIdeal{p, root, 1, 1};
    for (const auto& q : factor_prime(p))
      if (q.f == 1 && q.root == root) return q;
    throw corruption("no degree-1 prime above " + std::to_string(p) + " with root " + std::to_string(root));
  }

  // v_P(x - yθ) for any (x,y) != (0,0). P must lie above a prime outside
  // the index bound.
  std::uint32_t valuation(const PrimeIdeal& P, std::int64_t x, std::int64_t y) const {
    if (x == 0 && y == 0) throw invalid_input("valuation of zero");
    if (in_index_bound(P.p)) throw unsupported("unsupported: p may divide the index");
    const auto p = static_cast<std::int64_t>(P.p);
    std::uint32_t j = 0;
    while (x % p == 0 && y % p == 0) {
      x /= p;
      y /= p;
      ++j;
    }
    std::uint32_t v = j * static_cast<std::uint32_t>(P.e);
    if (P.f != 1 || pos_mod(y, p) == 0) return v;
    const auto r = static_cast<std::int64_t>(static_cast<i128>(pos_mod(x, p)) * inv_mod(y, p) % p);
    if (r != P.root) return v;
    i128 n = abs128(form_(x, y));
    while (n % p == 0) {
      n /= p;
      ++v;
    }
    return v;
  }

  // The ideal (x - yθ) for coprime (x,y), from a factorization of f(x,y).
  Ideal ideal_from_point(std::int64_t x, std::int64_t y, const Factorization& fz) const {
    if (std::gcd(x < 0 ? -x : x, y < 0 ? -y : y) != 1) throw invalid_input("ideal_from_point: gcd(x,y) != 1");
    std::vector<Ideal::Factor> fs;
    for (const auto& pe : fz.factors) {
      if (in_index_bound(pe.p)) throw unsupported("unsupported: p may divide the index");
      const auto p = static_cast<std::int64_t>(pe.p);
      if (pos_mod(y, p) == 0) throw corruption("prime dividing y divides a monic form value");
      const auto r = static_cast<std::int64_t>(static_cast<i128>(pos_mod(x, p)) * inv_mod(y, p) % p);
      fs.push_back({linear_prime(pe.p, r), pe.e});
    }
    return Ideal(std::move(fs));
  }

  Ideal ideal_from_point(std::int64_t x, std::int64_t y) const {
    const i128 v = form_(x, y);
    if (v == 0) throw invalid_input("ideal_from_point: f(x,y) = 0");
    return ideal_from_point(x, y, factorize(v));
  }

  // Product of the primes that can divide the index or the discriminant.
  std::uint64_t D0() const {
    std::uint64_t d = 1;
    for (auto p : disc_primes_) d *= p;
    return d;
  }

 private:
  // Dedekind criterion: true iff p does not divide [O_K : Z[θ]].
  bool dedekind_maximal(std::uint64_t p) const {
    const auto mbar = fp::reduce(min_poly(), p);
    detail::zpoly gl{1}, hl{1};
    fp::poly gbar{1}, hbar{1};
    for (const auto& fe : fp::factor_small(mbar, p)) {
      gl = detail::zmul(gl, detail::lift(fe.factor));
      gbar = fp::mul(gbar, fe.factor, p);
      for (int i = 1; i < fe.multiplicity; ++i) {
        hl = detail::zmul(hl, detail::lift(fe.factor));
        hbar = fp::mul(hbar, fe.factor, p);
      }
    }
    detail::zpoly gh = detail::zmul(gl, hl);
    const auto m = min_poly();
    gh.resize(std::max<std::size_t>(gh.size(), m.size()), 0);
    for (std::size_t i = 0; i < m.size(); ++i) gh[i] -= m[i];
    for (auto& c : gh) {
      if (c % static_cast<i128>(p)) throw corruption("Dedekind: g*h != m mod p");
      c /= static_cast<i128>(p);
    }
    const auto F = detail::zreduce(gh, p);
    const auto d = fp::gcd(fp::gcd(F, gbar, p), hbar, p);
    return fp::degree(d) == 0;
  }

  BinaryCubicForm form_;
  i128 disc_ = 0;
  std::vector<std::uint64_t> disc_primes_;
  std::vector<std::uint64_t> index_bound_;
};

inline CubicField build_field(const BinaryCubicForm& g) { return CubicField(g); }
inline std::uint64_t compute_D0(const CubicField& K) { return K.D0(); }

}  // namespace chowla
