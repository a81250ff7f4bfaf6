#pragma once

// Binary cubic forms f(x,y) = a x^3 + b x^2 y + c x y^2 + d y^3.

#include <array>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "chowla/arith.hpp"
#include "chowla/error.hpp"

namespace chowla {

class BinaryCubicForm {
 public:
  BinaryCubicForm(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) : coef_{a, b, c, d} {
    if (a == 0 && b == 0 && c == 0 && d == 0) throw invalid_input("zero form");
    const i128 A = a, B = b, C = c, D = d;
    // b^2c^2 - 4ac^3 - 4b^3d - 27a^2d^2 + 18abcd
    i128 t = checked_mul(checked_mul(B, B), checked_mul(C, C));
    t = checked_add(t, -checked_mul(4, checked_mul(A, checked_mul(C, checked_mul(C, C)))));
    t = checked_add(t, -checked_mul(4, checked_mul(checked_mul(B, checked_mul(B, B)), D)));
    t = checked_add(t, -checked_mul(27, checked_mul(checked_mul(A, A), checked_mul(D, D))));
    t = checked_add(t, checked_mul(18, checked_mul(checked_mul(A, B), checked_mul(C, D))));
    disc_ = t;
  }

  std::int64_t a() const { return coef_[0]; }
  std::int64_t b() const { return coef_[1]; }
  std::int64_t c() const { return coef_[2]; }
  std::int64_t d() const { return coef_[3]; }
  const std::array<std::int64_t, 4>& coefficients() const { return coef_; }
  i128 discriminant() const { return disc_; }
  bool is_monic() const { return coef_[0] == 1; }

  std::int64_t max_abs_coefficient() const {
    std::int64_t m = 0;
    for (auto v : coef_) m = std::max(m, v < 0 ? -v : v);
    return m;
  }

  // Exact value; throws range_error instead of wrapping.
  i128 operator()(std::int64_t x, std::int64_t y) const {
    const i128 X = x, Y = y;
    const i128 x2 = checked_mul(X, X), y2 = checked_mul(Y, Y);
    i128 v = checked_mul(coef_[0], checked_mul(x2, X));
    v = checked_add(v, checked_mul(coef_[1], checked_mul(x2, Y)));
    v = checked_add(v, checked_mul(coef_[2], checked_mul(X, y2)));
    v = checked_add(v, checked_mul(coef_[3], checked_mul(y2, Y)));
    return v;
  }

  bool operator==(const BinaryCubicForm& o) const { return coef_ == o.coef_; }

  std::string literal() const {
    std::ostringstream os;
    os << coef_[0] << ',' << coef_[1] << ',' << coef_[2] << ',' << coef_[3];
    return os.str();
  }

 private:
  std::array<std::int64_t, 4> coef_;
  i128 disc_;
};

inline BinaryCubicForm parse_form(const std::array<std::int64_t, 4>& c) {
  return BinaryCubicForm(c[0], c[1], c[2], c[3]);
}

// "a,b,c,d"
inline BinaryCubicForm parse_form(std::string_view text) {
  std::array<std::int64_t, 4> c{};
  std::size_t pos = 0;
  for (int i = 0; i < 4; ++i) {
    const auto end = text.find(',', pos);
    if ((i < 3) != (end != std::string_view::npos)) throw invalid_input("form literal must be a,b,c,d");
    const std::string tok(text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
    std::size_t used = 0;
    try {
      c[i] = std::stoll(tok, &used);
    } catch (const std::exception&) {
      throw invalid_input("bad form coefficient '" + tok + "'");
    }
    if (used != tok.size()) throw invalid_input("bad form coefficient '" + tok + "'");
    pos = end + 1;
  }
  return parse_form(c);
}

inline i128 evaluate(const BinaryCubicForm& f, std::int64_t x, std::int64_t y) { return f(x, y); }

inline std::int64_t content(const BinaryCubicForm& f) {
  std::int64_t g = 0;
  for (auto v : f.coefficients()) g = std::gcd(g, v < 0 ? -v : v);
  return g;
}

namespace detail {

inline std::vector<std::int64_t> positive_divisors(std::int64_t n) {
  n = n < 0 ? -n : n;
  std::vector<std::int64_t> small, large;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace detail

// For a cubic, irreducible over Q iff there is no linear factor. a = 0 or
// d = 0 exposes y or x as a factor; otherwise run the rational root test on
// f(t,1): a root t = r/s has r | d and s | a.
inline bool is_irreducible(const BinaryCubicForm& f) {
  if (f.a() == 0 || f.d() == 0) return false;
  const auto rs = detail::positive_divisors(f.d());
  const auto ss = detail::positive_divisors(f.a());
  for (auto s : ss)
    for (auto r : rs) {
      if (std::gcd(r, s) != 1) continue;
      if (f(r, s) == 0 || f(-r, s) == 0) return false;
    }
  return true;
}

struct MonicizationData {
  std::int64_t scale;                          // a^2
  std::array<std::array<std::int64_t, 2>, 2> map;  // (x,y) -> (map[0][0] x + map[0][1] y, map[1][0] x + map[1][1] y)
  BinaryCubicForm model;                       // monic g with scale*f(x,y) = g(map(x,y))

  std::pair<std::int64_t, std::int64_t> apply(std::int64_t x, std::int64_t y) const {
    return {map[0][0] * x + map[0][1] * y, map[1][0] * x + map[1][1] * y};
  }
};

// a^2 f(x,y) = g(a x, y) with g(X,Y) = X^3 + b X^2 Y + a c X Y^2 + a^2 d Y^3.
inline MonicizationData monicize(const BinaryCubicForm& f) {
  if (!is_irreducible(f)) throw invalid_input("monicize: form is reducible");
  if (content(f) != 1) throw invalid_input("monicize: form content must be 1");
  const i128 a = f.a();
  const i128 ac = checked_mul(a, f.c());
  const i128 aad = checked_mul(checked_mul(a, a), f.d());
  const i128 lim = i128(INT64_MAX);
  if (abs128(ac) > lim || abs128(aad) > lim || checked_mul(a, a) > lim)
    throw range_error("monicize: model coefficients exceed 64 bits");
  BinaryCubicForm g(1, f.b(), static_cast<std::int64_t>(ac), static_cast<std::int64_t>(aad));
  return MonicizationData{static_cast<std::int64_t>(a * a), {{{f.a(), 0}, {0, 1}}}, g};
}

}  // namespace chowla
