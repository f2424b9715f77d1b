#include "spinkit/linkgeom.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>

#include "spinkit/text_io.hpp"

namespace spinkit::linkgeom {

namespace {

Rational clamp01(const Rational& t) {
  if (t < 0) return 0;
  if (t > 1) return 1;
  return t;
}

Rational point_segment_distance2(const Vec3& p, const Vec3& a0, const Vec3& a1) {
  const Vec3 d = a1 - a0;
  const Rational dd = dot(d, d);
  const Rational t = dd == 0 ? Rational(0) : clamp01(dot(p - a0, d) / dd);
  const Vec3 diff = p - (a0 + t * d);
  return dot(diff, diff);
}

struct Point2 {
  Rational x, y;
};

Rational cross2(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }
Rational dot2(const Point2& a, const Point2& b) { return a.x * b.x + a.y * b.y; }
Point2 sub2(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }

bool point_on_segment2(const Point2& p, const Point2& a, const Point2& b) {
  const Point2 ab = sub2(b, a), ap = sub2(p, a);
  if (cross2(ab, ap) != 0) return false;
  const Rational t = dot2(ap, ab);
  return t >= 0 && t <= dot2(ab, ab);
}

std::uint64_t splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Exact closed-segment contact test with a bounding-box rejection first.
bool segments_touch(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1) {
  auto apart = [](const Rational& a0, const Rational& a1, const Rational& b0, const Rational& b1) {
    return std::max(a0, a1) < std::min(b0, b1) || std::max(b0, b1) < std::min(a0, a1);
  };
  if (apart(p0.x, p1.x, q0.x, q1.x) || apart(p0.y, p1.y, q0.y, q1.y) || apart(p0.z, p1.z, q0.z, q1.z)) return false;
  return segment_distance2(p0, p1, q0, q1) == 0;
}

Rational round_milli(double v) {
  Rational q(static_cast<long>(std::llround(v * 1000.0)), 1000);
  q.canonicalize();
  return q;
}

}  // namespace

std::string Vec3::to_string() const { return x.get_str() + " " + y.get_str() + " " + z.get_str(); }

Rational dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

Rational segment_distance2(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1) {
  Rational best = std::min({point_segment_distance2(p0, q0, q1), point_segment_distance2(p1, q0, q1),
                            point_segment_distance2(q0, p0, p1), point_segment_distance2(q1, p0, p1)});
  const Vec3 d1 = p1 - p0, d2 = q1 - q0, r = p0 - q0;
  const Rational a = dot(d1, d1), b = dot(d1, d2), e = dot(d2, d2), c = dot(d1, r), f = dot(d2, r);
  const Rational det = a * e - b * b;
  if (det > 0) {
    const Rational s = (b * f - c * e) / det, t = (a * f - b * c) / det;
    if (s >= 0 && s <= 1 && t >= 0 && t <= 1) {
      const Vec3 diff = r + s * d1 - t * d2;
      best = std::min(best, dot(diff, diff));
    }
  }
  return best;
}

PolyCurve3::PolyCurve3(std::vector<Vec3> vertices, std::string name) : v_(std::move(vertices)), name_(std::move(name)) {
  const std::size_t n = v_.size();
  if (n < 3) throw GeometryError("curve " + name_ + ": need at least 3 vertices");
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 d = v_[(i + 1) % n] - v_[i];
    const Vec3 next = v_[(i + 2) % n] - v_[(i + 1) % n];
    if (d.is_zero())
      throw GeometryError("curve " + name_ + ": vertices " + std::to_string(i + 1) + " and " +
                          std::to_string((i + 1) % n + 1) + " coincide");
    if (cross(d, next).is_zero() && dot(d, next) < 0)
      throw GeometryError("curve " + name_ + ": edge folds back at vertex " + std::to_string((i + 1) % n + 1));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      const auto [a0, a1] = edge(i);
      const auto [b0, b1] = edge(j);
      if (segments_touch(a0, a1, b0, b1))
        throw GeometryError("curve " + name_ + ": edges " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                            " intersect");
    }
}

PolyCurve3 PolyCurve3::reversed() const {
  std::vector<Vec3> r(v_.rbegin(), v_.rend());
  return PolyCurve3(std::move(r), name_);
}

NormalField::NormalField(const PolyCurve3& curve, std::vector<Vec3> vectors) : n_(std::move(vectors)) {
  const std::size_t k = curve.size();
  if (n_.size() != k)
    throw GeometryError("normal field has " + std::to_string(n_.size()) + " vectors for a curve with " +
                        std::to_string(k) + " vertices");
  for (std::size_t i = 0; i < k; ++i) {
    if (n_[i].is_zero()) throw GeometryError("normal vector " + std::to_string(i + 1) + " is zero");
    const Vec3 through = curve.vertex((i + 1) % k) - curve.vertex((i + k - 1) % k);
    if (cross(n_[i], through).is_zero())
      throw GeometryError("normal vector " + std::to_string(i + 1) + " is tangent to the curve");
  }
}

bool curves_disjoint(const PolyCurve3& a, const PolyCurve3& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      const auto [a0, a1] = a.edge(i);
      const auto [b0, b1] = b.edge(j);
      if (segments_touch(a0, a1, b0, b1)) return false;
    }
  return true;
}

Vec3 projection_direction(std::size_t k) {
  if (k == 0) return {Rational(3), Rational(7), Rational(11)};
  std::uint64_t state = 0x5EED0000ULL + k;
  while (true) {
    Vec3 d{static_cast<long>(splitmix(state) % 81) - 40, static_cast<long>(splitmix(state) % 81) - 40,
           static_cast<long>(splitmix(state) % 81) - 40};
    if (!d.is_zero()) return d;
  }
}

CrossingCount signed_crossings(const PolyCurve3& a, const PolyCurve3& b, const Vec3& d) {
  if (d.is_zero()) throw std::invalid_argument("projection direction must be nonzero");
  const Vec3 u = (d.x != 0 || d.y != 0) ? Vec3{-d.y, d.x, Rational(0)} : Vec3{Rational(1), Rational(0), Rational(0)};
  const Vec3 w = cross(d, u);
  auto proj = [&](const Vec3& p) { return Point2{dot(p, u), dot(p, w)}; };
  auto degenerate = [&](std::size_t i, std::size_t j) {
    throw DegenerateInput("direction (" + d.to_string() + ") is not generic at edges " + std::to_string(i + 1) +
                          " and " + std::to_string(j + 1));
  };

  std::vector<Point2> pa, pb;
  for (const auto& v : a.vertices()) pa.push_back(proj(v));
  for (const auto& v : b.vertices()) pb.push_back(proj(v));

  CrossingCount out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::size_t i1 = (i + 1) % a.size();
    const Point2 ra = sub2(pa[i1], pa[i]);
    const bool a_point = ra.x == 0 && ra.y == 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const std::size_t j1 = (j + 1) % b.size();
      const Point2 rb = sub2(pb[j1], pb[j]);
      const bool b_point = rb.x == 0 && rb.y == 0;
      if (a_point || b_point) {
        const bool touch = a_point ? point_on_segment2(pa[i], pb[j], pb[j1]) : point_on_segment2(pb[j], pa[i], pa[i1]);
        if (touch) degenerate(i, j);
        continue;
      }
      if (std::max(pa[i].x, pa[i1].x) < std::min(pb[j].x, pb[j1].x) ||
          std::max(pb[j].x, pb[j1].x) < std::min(pa[i].x, pa[i1].x) ||
          std::max(pa[i].y, pa[i1].y) < std::min(pb[j].y, pb[j1].y) ||
          std::max(pb[j].y, pb[j1].y) < std::min(pa[i].y, pa[i1].y))
        continue;
      const Point2 c = sub2(pb[j], pa[i]);
      const Rational denom = cross2(ra, rb);
      if (denom == 0) {
        if (cross2(c, ra) != 0) continue;  // parallel, apart
        const Rational len = dot2(ra, ra);
        Rational t0 = dot2(c, ra) / len, t1 = dot2(sub2(pb[j1], pa[i]), ra) / len;
        if (t0 > t1) std::swap(t0, t1);
        if (std::max(t0, Rational(0)) <= std::min(t1, Rational(1))) degenerate(i, j);
        continue;
      }
      const Rational s = cross2(c, rb) / denom, t = cross2(c, ra) / denom;
      if (s < 0 || s > 1 || t < 0 || t > 1) continue;
      if (s == 0 || s == 1 || t == 0 || t == 1) degenerate(i, j);
      const Vec3 da = a.vertex(i1) - a.vertex(i), db = b.vertex(j1) - b.vertex(j);
      const Rational ha = dot(a.vertex(i) + s * da, d), hb = dot(b.vertex(j) + t * db, d);
      if (ha == hb) throw GeometryError("curves " + a.name() + " and " + b.name() + " intersect");
      // sign of (p_a - p_b) . (da x db), with p_a - p_b a multiple of d
      const int sign = (ha > hb ? 1 : -1) * sgn(dot(d, cross(da, db)));
      (ha > hb ? out.a_over_b : out.b_over_a) += sign;
    }
  }
  return out;
}

std::int64_t linking_number(const PolyCurve3& a, const PolyCurve3& b) {
  if (!curves_disjoint(a, b)) throw GeometryError("curves " + a.name() + " and " + b.name() + " intersect");
  for (std::size_t k = 0; k < 64; ++k) {
    try {
      const CrossingCount c = signed_crossings(a, b, projection_direction(k));
      if (c.a_over_b != c.b_over_a) throw std::logic_error("over and under crossing counts disagree");
      return c.a_over_b;
    } catch (const DegenerateInput&) {
    }
  }
  throw DegenerateInput("no generic projection among 64 directions for " + a.name() + " and " + b.name());
}

double gauss_linking(const PolyCurve3& a, const PolyCurve3& b) {
  if (!curves_disjoint(a, b)) throw GeometryError("curves " + a.name() + " and " + b.name() + " intersect");
  using D3 = std::array<double, 3>;
  auto conv = [](const Vec3& v) { return D3{v.x.get_d(), v.y.get_d(), v.z.get_d()}; };
  auto sub = [](const D3& p, const D3& q) { return D3{p[0] - q[0], p[1] - q[1], p[2] - q[2]}; };
  auto crs = [](const D3& p, const D3& q) {
    return D3{p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]};
  };
  auto dt = [](const D3& p, const D3& q) { return p[0] * q[0] + p[1] * q[1] + p[2] * q[2]; };
  auto unit = [&](const D3& p) {
    const double n = std::sqrt(dt(p, p));
    return D3{p[0] / n, p[1] / n, p[2] / n};
  };
  auto asin_clamped = [](double x) { return std::asin(std::clamp(x, -1.0, 1.0)); };

  std::vector<D3> va, vb;
  for (const auto& v : a.vertices()) va.push_back(conv(v));
  for (const auto& v : b.vertices()) vb.push_back(conv(v));
  double total = 0.0;
  for (std::size_t i = 0; i < va.size(); ++i) {
    const D3& a1 = va[i];
    const D3& a2 = va[(i + 1) % va.size()];
    for (std::size_t j = 0; j < vb.size(); ++j) {
      const D3& b1 = vb[j];
      const D3& b2 = vb[(j + 1) % vb.size()];
      const D3 r00 = sub(a1, b1), r01 = sub(a1, b2), r10 = sub(a2, b1), r11 = sub(a2, b2);
      const D3 u1 = unit(crs(r00, r01)), u2 = unit(crs(r01, r11)), u3 = unit(crs(r11, r10)), u4 = unit(crs(r10, r00));
      double omega = asin_clamped(dt(u1, u2)) + asin_clamped(dt(u2, u3)) + asin_clamped(dt(u3, u4)) +
                     asin_clamped(dt(u4, u1));
      if (dt(crs(sub(a2, a1), sub(b2, b1)), r00) < 0) omega = -omega;
      if (!std::isnan(omega)) total += omega;
    }
  }
  return total / (4.0 * std::numbers::pi);
}

Pushoff pushoff(const PolyCurve3& k, const NormalField& n, const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("pushoff scale must be positive");
  if (n.size() != k.size()) throw GeometryError("normal field does not match the curve");
  auto attempt = [&](const Rational& e) -> std::optional<std::pair<PolyCurve3, std::int64_t>> {
    std::vector<Vec3> shifted;
    for (std::size_t i = 0; i < k.size(); ++i) shifted.push_back(k.vertex(i) + e * n.at(i));
    try {
      PolyCurve3 c(std::move(shifted), k.name() + "'");
      if (!curves_disjoint(k, c)) return std::nullopt;
      const std::int64_t lk = linking_number(k, c);
      return std::make_pair(std::move(c), lk);
    } catch (const GeometryError&) {
      return std::nullopt;
    }
  };

  Rational e = eps;
  auto cur = attempt(e);
  for (int halvings = 0; halvings < 20; ++halvings) {
    const Rational half = e / 2;
    auto next = attempt(half);
    if (cur && next && cur->second == next->second) return Pushoff{std::move(cur->first), e};
    e = half;
    cur = std::move(next);
  }
  throw GeometryError("no stable pushoff scale for " + k.name() + " below " + eps.get_str());
}

std::int64_t self_linking(const PolyCurve3& k, const NormalField& n) {
  const Pushoff p = pushoff(k, n);
  return linking_number(k, p.curve);
}

bool extends_over_seifert(const PolyCurve3& k, const NormalField& n) { return self_linking(k, n) % 2 != 0; }

int so3_loop_class(std::int64_t chi_f, std::int64_t deg) {
  if (chi_f % 2 == 0)
    throw std::invalid_argument("Euler characteristic " + std::to_string(chi_f) +
                                " is even; a connected surface with one boundary circle has odd chi");
  if (chi_f > 1) throw std::invalid_argument("Euler characteristic of a bounded connected surface is at most 1");
  return static_cast<int>(((chi_f + deg) % 2 + 2) % 2);
}

std::pair<PolyCurve3, NormalField> twisted_unknot(std::int64_t k) {
  const std::size_t n = 16 + 8 * static_cast<std::size_t>(k < 0 ? -k : k);
  const double radius = 10.0;
  std::vector<Vec3> verts, normals;
  for (std::size_t i = 0; i < n; ++i) {
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    const double theta = -phi * static_cast<double>(k);
    verts.push_back({round_milli(radius * std::cos(phi)), round_milli(radius * std::sin(phi)), Rational(0)});
    normals.push_back({round_milli(std::cos(theta) * std::cos(phi)), round_milli(std::cos(theta) * std::sin(phi)),
                       round_milli(std::sin(theta))});
  }
  PolyCurve3 curve(std::move(verts), "U" + std::to_string(k));
  NormalField field(curve, std::move(normals));
  return {std::move(curve), std::move(field)};
}

std::string format_curve(const PolyCurve3& c) {
  std::string out = "curve " + c.name() + " " + std::to_string(c.size()) + "\n";
  for (const auto& v : c.vertices()) out += v.to_string() + "\n";
  return out;
}

std::string format_normal(const PolyCurve3& c, const NormalField& n) {
  std::string out = "normal " + c.name() + "\n";
  for (const auto& v : n.vectors()) out += v.to_string() + "\n";
  return out;
}

namespace {

std::vector<Vec3> read_vectors(TextReader& r, std::size_t count, const std::string& what) {
  std::vector<Vec3> out;
  for (std::size_t i = 0; i < count; ++i) {
    if (r.at_end()) r.fail(r.last_line(), what + ": expected " + std::to_string(count) + " vectors, got " + std::to_string(i));
    auto line = r.next();
    if (line.tokens.size() != 3) r.fail(line.number, what + ": expected three coordinates");
    out.push_back({parse_rational(r, line.number, line.tokens[0]), parse_rational(r, line.number, line.tokens[1]),
                   parse_rational(r, line.number, line.tokens[2])});
  }
  return out;
}

PolyCurve3 read_curve(TextReader& r) {
  if (r.at_end()) r.fail(r.last_line(), "expected 'curve <name> <k>'");
  auto head = r.next();
  if (head.tokens.size() != 3 || head.tokens[0] != "curve") r.fail(head.number, "expected 'curve <name> <k>'");
  const std::size_t k = parse_count(r, head.number, head.tokens[2]);
  auto verts = read_vectors(r, k, "curve " + head.tokens[1]);
  try {
    return PolyCurve3(std::move(verts), head.tokens[1]);
  } catch (const GeometryError& e) {
    r.fail(head.number, e.what());
  }
}

}  // namespace

PolyCurve3 parse_curve(std::string_view text, const std::string& source) {
  TextReader r(text, source);
  PolyCurve3 c = read_curve(r);
  if (!r.at_end()) r.fail(r.peek().number, "trailing content after curve");
  return c;
}

std::pair<PolyCurve3, NormalField> parse_framed_curve(std::string_view text, const std::string& source) {
  TextReader r(text, source);
  PolyCurve3 c = read_curve(r);
  if (r.at_end()) r.fail(r.last_line(), "expected 'normal " + c.name() + "'");
  auto head = r.next();
  if (head.tokens.size() != 2 || head.tokens[0] != "normal") r.fail(head.number, "expected 'normal <curvename>'");
  if (head.tokens[1] != c.name())
    r.fail(head.number, "normal field is for '" + head.tokens[1] + "' but the curve is '" + c.name() + "'");
  auto vecs = read_vectors(r, c.size(), "normal " + c.name());
  if (!r.at_end()) r.fail(r.peek().number, "trailing content after normal field");
  try {
    NormalField n(c, std::move(vecs));
    return {std::move(c), std::move(n)};
  } catch (const GeometryError& e) {
    r.fail(head.number, e.what());
  }
}

}  // namespace spinkit::linkgeom
