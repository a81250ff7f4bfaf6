#pragma once

// Convex regions S, lattice cosets L in Z^2, and exact enumeration of S ∩ L.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "chowla/arith.hpp"
#include "chowla/error.hpp"

namespace chowla {

namespace detail {

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    auto end = s.find(sep, pos);
    out.emplace_back(s.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

inline double parse_real(const std::string& tok) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw invalid_input("bad number '" + tok + "'");
  }
  if (used != tok.size() || !std::isfinite(v)) throw invalid_input("bad number '" + tok + "'");
  return v;
}

inline std::int64_t parse_int(const std::string& tok) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    throw invalid_input("bad integer '" + tok + "'");
  }
  if (used != tok.size()) throw invalid_input("bad integer '" + tok + "'");
  return v;
}

inline std::string fmt_real(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Lattice cosets

// A coset offset + Λ with Λ stored in Hermite normal form: Λ is generated by
// (period_x, 0) and (shift, period_y), period_x, period_y > 0,
// 0 <= shift < period_x. Index = period_x * period_y.
class LatticeCoset {
 public:
  // Columns (b11, b21) and (b12, b22) generate the lattice.
  LatticeCoset(std::int64_t b11, std::int64_t b21, std::int64_t b12, std::int64_t b22, std::int64_t ox = 0,
               std::int64_t oy = 0)
      : LatticeCoset(std::vector<std::pair<std::int64_t, std::int64_t>>{{b11, b21}, {b12, b22}}, ox, oy) {
    basis_ = {b11, b21, b12, b22};
  }

  // Lattice generated by an arbitrary family of vectors; must have rank 2.
  LatticeCoset(const std::vector<std::pair<std::int64_t, std::int64_t>>& gens, std::int64_t ox, std::int64_t oy) {
    std::int64_t px = 0, py = 0;  // pivot column with nonzero y
    std::int64_t a = 0;            // gcd of the y = 0 part
    for (auto [gx, gy] : gens) {
      if (gy == 0) {
        a = std::gcd(a, gx < 0 ? -gx : gx);
        continue;
      }
      if (py == 0) {
        px = gx;
        py = gy;
        continue;
      }
      std::int64_t s, t;
      const std::int64_t g = ext_gcd(py, gy, s, t);
      const i128 nx = i128(s) * px + i128(t) * gx;
      // leftover column with y = 0: (gy/g) * pivot - (py/g) * gen
      const i128 lx = i128(gy / g) * px - i128(py / g) * gx;
      if (abs128(nx) > INT64_MAX || abs128(lx) > INT64_MAX) throw range_error("lattice basis too large");
      px = static_cast<std::int64_t>(nx);
      py = g;
      const std::int64_t l = static_cast<std::int64_t>(lx);
      a = std::gcd(a, l < 0 ? -l : l);
    }
    if (py == 0 || a == 0) throw invalid_input("lattice basis is degenerate (determinant 0)");
    if (py < 0) {
      py = -py;
      px = -px;
    }
    period_x_ = a;
    period_y_ = py;
    shift_ = pos_mod(px, a);
    // canonical offset: 0 <= oy < period_y, 0 <= ox < period_x
    const std::int64_t k = floor_div(oy, period_y_);
    const i128 cx = i128(ox) - i128(k) * shift_;
    offset_y_ = oy - k * period_y_;
    offset_x_ = static_cast<std::int64_t>(((cx % a) + a) % a);
    if (basis_[0] == 0 && basis_[1] == 0 && basis_[2] == 0 && basis_[3] == 0)
      basis_ = {period_x_, 0, shift_, period_y_};
  }

  static LatticeCoset whole_plane() { return LatticeCoset(1, 0, 0, 1, 0, 0); }

  std::int64_t index() const { return period_x_ * period_y_; }
  std::int64_t period_x() const { return period_x_; }
  std::int64_t period_y() const { return period_y_; }
  std::int64_t shift() const { return shift_; }
  std::int64_t offset_x() const { return offset_x_; }
  std::int64_t offset_y() const { return offset_y_; }

  bool contains(std::int64_t x, std::int64_t y) const {
    const std::int64_t dy = y - offset_y_;
    if (pos_mod(dy, period_y_) != 0) return false;
    const i128 k = dy / period_y_;
    const i128 dx = i128(x) - offset_x_ - k * shift_;
    return dx % period_x_ == 0;
  }

  // Residue of x (mod period_x) for points of the coset on row y, if any.
  std::optional<std::int64_t> row_residue(std::int64_t y) const {
    const std::int64_t dy = y - offset_y_;
    if (pos_mod(dy, period_y_) != 0) return std::nullopt;
    const i128 k = dy / period_y_;
    const i128 r = (i128(offset_x_) + k * shift_) % period_x_;
    return static_cast<std::int64_t>(r < 0 ? r + period_x_ : r);
  }

  std::string literal() const {
    std::ostringstream os;
    os << "coset:" << basis_[0] << ',' << basis_[1] << ',' << basis_[2] << ',' << basis_[3] << ';' << offset_x_ << ','
       << offset_y_;
    return os.str();
  }

  bool operator==(const LatticeCoset& o) const {
    return period_x_ == o.period_x_ && period_y_ == o.period_y_ && shift_ == o.shift_ && offset_x_ == o.offset_x_ &&
           offset_y_ == o.offset_y_;
  }

 private:
  std::int64_t period_x_ = 1, period_y_ = 1, shift_ = 0, offset_x_ = 0, offset_y_ = 0;
  std::array<std::int64_t, 4> basis_{0, 0, 0, 0};
};

inline std::int64_t coset_index(const LatticeCoset& L) { return L.index(); }

// "coset:b11,b21,b12,b22;ox,oy" (offset optional); "Z2" for the whole plane.
inline LatticeCoset parse_coset(std::string_view text) {
  if (text == "Z2" || text == "z2") return LatticeCoset::whole_plane();
  constexpr std::string_view prefix = "coset:";
  if (text.substr(0, prefix.size()) != prefix) throw invalid_input("coset literal must start with 'coset:'");
  auto parts = detail::split(text.substr(prefix.size()), ';');
  if (parts.empty() || parts.size() > 2) throw invalid_input("bad coset literal");
  auto b = detail::split(parts[0], ',');
  if (b.size() != 4) throw invalid_input("coset basis needs 4 integers");
  std::int64_t ox = 0, oy = 0;
  if (parts.size() == 2) {
    auto o = detail::split(parts[1], ',');
    if (o.size() != 2) throw invalid_input("coset offset needs 2 integers");
    ox = detail::parse_int(o[0]);
    oy = detail::parse_int(o[1]);
  }
  return LatticeCoset(detail::parse_int(b[0]), detail::parse_int(b[1]), detail::parse_int(b[2]),
                      detail::parse_int(b[3]), ox, oy);
}

// Intersection of two cosets with coprime indices. With I1, I2 coprime,
// Λ1 ∩ Λ2 = I2 Λ1 + I1 Λ2, and s I2 + t I1 = 1 gives a common point
// o1 (s I2) + o2 (t I1).
inline LatticeCoset intersect_cosets(const LatticeCoset& L1, const LatticeCoset& L2) {
  const std::int64_t i1 = L1.index(), i2 = L2.index();
  if (std::gcd(i1, i2) != 1) throw unsupported("unsupported: indices not coprime");
  std::vector<std::pair<std::int64_t, std::int64_t>> gens = {
      {i2 * L1.period_x(), 0}, {i2 * L1.shift(), i2 * L1.period_y()},
      {i1 * L2.period_x(), 0}, {i1 * L2.shift(), i1 * L2.period_y()}};
  std::int64_t s, t;
  ext_gcd(i2, i1, s, t);
  const i128 ox = i128(L1.offset_x()) * s * i2 + i128(L2.offset_x()) * t * i1;
  const i128 oy = i128(L1.offset_y()) * s * i2 + i128(L2.offset_y()) * t * i1;
  const i128 m = i128(i1) * i2;
  const i128 rx = ((ox % m) + m) % m, ry = ((oy % m) + m) % m;
  return LatticeCoset(gens, static_cast<std::int64_t>(rx), static_cast<std::int64_t>(ry));
}

// ---------------------------------------------------------------------------
// Convex regions

struct Box {
  double x0, x1, y0, y1;
};
struct Disc {
  double cx, cy, r;
};
struct Polygon {
  std::vector<std::pair<double, double>> vertices;  // counterclockwise
};

class ConvexRegion {
 public:
  using Shape = std::variant<Box, Disc, Polygon>;

  explicit ConvexRegion(Shape s) : shape_(std::move(s)) { validate(); }

  static ConvexRegion box(double x0, double x1, double y0, double y1) { return ConvexRegion(Box{x0, x1, y0, y1}); }
  static ConvexRegion square(double n) { return box(-n, n, -n, n); }
  static ConvexRegion disc(double cx, double cy, double r) { return ConvexRegion(Disc{cx, cy, r}); }
  static ConvexRegion polygon(std::vector<std::pair<double, double>> v) { return ConvexRegion(Polygon{std::move(v)}); }
  static ConvexRegion empty() { return box(1, 0, 1, 0); }

  const Shape& shape() const { return shape_; }

  bool is_empty() const {
    if (auto b = std::get_if<Box>(&shape_)) return b->x0 > b->x1 || b->y0 > b->y1;
    if (auto d = std::get_if<Disc>(&shape_)) return d->r < 0;
    return false;
  }

  // Bounding box [xmin, xmax] x [ymin, ymax].
  std::array<double, 4> bounds() const {
    if (auto b = std::get_if<Box>(&shape_)) return {b->x0, b->x1, b->y0, b->y1};
    if (auto d = std::get_if<Disc>(&shape_)) return {d->cx - d->r, d->cx + d->r, d->cy - d->r, d->cy + d->r};
    const auto& v = std::get<Polygon>(shape_).vertices;
    std::array<double, 4> r{v[0].first, v[0].first, v[0].second, v[0].second};
    for (auto [x, y] : v) {
      r[0] = std::min(r[0], x);
      r[1] = std::max(r[1], x);
      r[2] = std::min(r[2], y);
      r[3] = std::max(r[3], y);
    }
    return r;
  }

  // Smallest N with the region inside [-N, N]^2.
  double half_width() const {
    if (is_empty()) return 0;
    auto b = bounds();
    return std::max({std::fabs(b[0]), std::fabs(b[1]), std::fabs(b[2]), std::fabs(b[3])});
  }

  bool contains(double x, double y) const {
    if (auto b = std::get_if<Box>(&shape_)) return x >= b->x0 && x <= b->x1 && y >= b->y0 && y <= b->y1;
    if (auto d = std::get_if<Disc>(&shape_)) {
      const long double dx = x - d->cx, dy = y - d->cy;
      return dx * dx + dy * dy <= static_cast<long double>(d->r) * d->r;
    }
    const auto& v = std::get<Polygon>(shape_).vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto& p = v[i];
      const auto& q = v[(i + 1) % v.size()];
      const long double cr = (static_cast<long double>(q.first) - p.first) * (static_cast<long double>(y) - p.second) -
                             (static_cast<long double>(q.second) - p.second) * (static_cast<long double>(x) - p.first);
      if (cr < 0) return false;
    }
    return true;
  }

  // Integer x-range [lo, hi] of region points on the integer row y.
  std::optional<std::pair<std::int64_t, std::int64_t>> row_extent(std::int64_t y) const {
    if (is_empty()) return std::nullopt;
    double lo, hi;
    if (auto b = std::get_if<Box>(&shape_)) {
      if (y < b->y0 || y > b->y1) return std::nullopt;
      lo = b->x0;
      hi = b->x1;
    } else if (auto d = std::get_if<Disc>(&shape_)) {
      const double dy = y - d->cy;
      const double s = d->r * d->r - dy * dy;
      if (s < 0) return std::nullopt;
      const double w = std::sqrt(s);
      lo = d->cx - w;
      hi = d->cx + w;
    } else {
      auto r = polygon_span(static_cast<double>(y));
      if (!r) return std::nullopt;
      lo = r->first;
      hi = r->second;
    }
    std::int64_t xl = static_cast<std::int64_t>(std::ceil(lo)) - 1;
    std::int64_t xr = static_cast<std::int64_t>(std::floor(hi)) + 1;
    // Tighten against the exact membership predicate.
    for (int i = 0; i < 4 && !contains(double(xl), double(y)); ++i) ++xl;
    for (int i = 0; i < 4 && contains(double(xl - 1), double(y)); ++i) --xl;
    for (int i = 0; i < 4 && !contains(double(xr), double(y)); ++i) --xr;
    for (int i = 0; i < 4 && contains(double(xr + 1), double(y)); ++i) ++xr;
    if (xl > xr || !contains(double(xl), double(y))) return std::nullopt;
    return std::make_pair(xl, xr);
  }

  std::pair<std::int64_t, std::int64_t> row_range() const {
    auto b = bounds();
    return {static_cast<std::int64_t>(std::ceil(b[2])), static_cast<std::int64_t>(std::floor(b[3]))};
  }

  double area() const {
    if (is_empty()) return 0;
    if (auto b = std::get_if<Box>(&shape_)) return (b->x1 - b->x0) * (b->y1 - b->y0);
    if (auto d = std::get_if<Disc>(&shape_)) return std::numbers::pi * d->r * d->r;
    const auto& v = std::get<Polygon>(shape_).vertices;
    long double s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto& p = v[i];
      const auto& q = v[(i + 1) % v.size()];
      s += static_cast<long double>(p.first) * q.second - static_cast<long double>(q.first) * p.second;
    }
    return static_cast<double>(s / 2);
  }

  ConvexRegion scaled(double k) const {
    if (auto b = std::get_if<Box>(&shape_)) return box(b->x0 * k, b->x1 * k, b->y0 * k, b->y1 * k);
    if (auto d = std::get_if<Disc>(&shape_)) return disc(d->cx * k, d->cy * k, d->r * k);
    auto v = std::get<Polygon>(shape_).vertices;
    for (auto& p : v) p = {p.first * k, p.second * k};
    return polygon(std::move(v));
  }

  std::string literal() const {
    using detail::fmt_real;
    if (auto b = std::get_if<Box>(&shape_))
      return "box:" + fmt_real(b->x0) + "," + fmt_real(b->x1) + "," + fmt_real(b->y0) + "," + fmt_real(b->y1);
    if (auto d = std::get_if<Disc>(&shape_))
      return "disc:" + fmt_real(d->cx) + "," + fmt_real(d->cy) + "," + fmt_real(d->r);
    std::string s = "poly:";
    const auto& v = std::get<Polygon>(shape_).vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ";";
      s += fmt_real(v[i].first) + "," + fmt_real(v[i].second);
    }
    return s;
  }

 private:
  void validate() const {
    if (auto d = std::get_if<Disc>(&shape_)) {
      if (!(d->r >= 0)) throw invalid_input("disc radius must be nonnegative");
    } else if (auto p = std::get_if<Polygon>(&shape_)) {
      const auto& v = p->vertices;
      if (v.size() < 3) throw invalid_input("polygon needs at least 3 vertices");
      for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& a = v[i];
        const auto& b = v[(i + 1) % v.size()];
        const auto& c = v[(i + 2) % v.size()];
        const long double cr = (static_cast<long double>(b.first) - a.first) * (c.second - b.second) -
                               (static_cast<long double>(b.second) - a.second) * (c.first - b.first);
        if (!(cr > 0)) throw invalid_input("polygon vertices must be strictly convex and counterclockwise");
      }
    }
  }

  std::optional<std::pair<double, double>> polygon_span(double y) const {
    const auto& v = std::get<Polygon>(shape_).vertices;
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t i = 0; i < v.size(); ++i) {
      auto [x1, y1] = v[i];
      auto [x2, y2] = v[(i + 1) % v.size()];
      if ((y < std::min(y1, y2)) || (y > std::max(y1, y2))) continue;
      if (y1 == y2) {
        lo = std::min({lo, x1, x2});
        hi = std::max({hi, x1, x2});
      } else {
        const double x = x1 + (x2 - x1) * (y - y1) / (y2 - y1);
        lo = std::min(lo, x);
        hi = std::max(hi, x);
      }
    }
    if (lo > hi) return std::nullopt;
    return std::make_pair(lo, hi);
  }

  Shape shape_;
};

// "box:x0,x1,y0,y1", "disc:cx,cy,r", "poly:x1,y1;x2,y2;..."
inline ConvexRegion parse_region(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw invalid_input("region literal needs a 'kind:' prefix");
  const std::string_view kind = text.substr(0, colon);
  const std::string_view body = text.substr(colon + 1);
  if (kind == "box") {
    auto t = detail::split(body, ',');
    if (t.size() != 4) throw invalid_input("box needs x0,x1,y0,y1");
    return ConvexRegion::box(detail::parse_real(t[0]), detail::parse_real(t[1]), detail::parse_real(t[2]),
                             detail::parse_real(t[3]));
  }
  if (kind == "disc") {
    auto t = detail::split(body, ',');
    if (t.size() != 3) throw invalid_input("disc needs cx,cy,r");
    return ConvexRegion::disc(detail::parse_real(t[0]), detail::parse_real(t[1]), detail::parse_real(t[2]));
  }
  if (kind == "poly") {
    std::vector<std::pair<double, double>> v;
    for (const auto& pt : detail::split(body, ';')) {
      auto t = detail::split(pt, ',');
      if (t.size() != 2) throw invalid_input("polygon vertex needs x,y");
      v.emplace_back(detail::parse_real(t[0]), detail::parse_real(t[1]));
    }
    return ConvexRegion::polygon(std::move(v));
  }
  throw invalid_input("unknown region kind '" + std::string(kind) + "'");
}

inline double area(const ConvexRegion& S) { return S.area(); }

// ---------------------------------------------------------------------------
// Enumeration

// Points of S ∩ L on row y form x = first + k * step, k = 0..count-1.
struct RowSpan {
  std::int64_t y;
  std::int64_t first;
  std::int64_t step;
  std::int64_t count;
};

inline std::optional<RowSpan> row_span(const ConvexRegion& S, const LatticeCoset& L, std::int64_t y) {
  auto res = L.row_residue(y);
  if (!res) return std::nullopt;
  auto ext = S.row_extent(y);
  if (!ext) return std::nullopt;
  const std::int64_t a = L.period_x();
  const std::int64_t first = ext->first + pos_mod(*res - ext->first, a);
  if (first > ext->second) return std::nullopt;
  return RowSpan{y, first, a, (ext->second - first) / a + 1};
}

template <class Fn>
void for_each_row(const ConvexRegion& S, const LatticeCoset& L, Fn&& fn) {
  if (S.is_empty()) return;
  auto [y0, y1] = S.row_range();
  for (std::int64_t y = y0; y <= y1; ++y)
    if (auto r = row_span(S, L, y)) fn(*r);
}

inline std::uint64_t count_points(const ConvexRegion& S, const LatticeCoset& L) {
  std::uint64_t n = 0;
  for_each_row(S, L, [&](const RowSpan& r) { n += static_cast<std::uint64_t>(r.count); });
  return n;
}

inline bool coprime_point(std::int64_t x, std::int64_t y) {
  return std::gcd(x < 0 ? -x : x, y < 0 ? -y : y) == 1;
}

template <class Fn>
void for_each_point(const ConvexRegion& S, const LatticeCoset& L, bool coprime_only, Fn&& fn) {
  for_each_row(S, L, [&](const RowSpan& r) {
    for (std::int64_t k = 0; k < r.count; ++k) {
      const std::int64_t x = r.first + k * r.step;
      if (coprime_only && !coprime_point(x, r.y)) continue;
      fn(x, r.y);
    }
  });
}

inline std::vector<std::pair<std::int64_t, std::int64_t>> enumerate_coprime_points(const ConvexRegion& S,
                                                                                     const LatticeCoset& L) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for_each_point(S, L, true, [&](std::int64_t x, std::int64_t y) { out.emplace_back(x, y); });
  return out;
}

}  // namespace chowla
