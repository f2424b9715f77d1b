#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace spinkit::linkgeom {

using Rational = mpq_class;

struct Vec3 {
  Rational x, y, z;

  friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(const Rational& s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
  friend bool operator==(const Vec3& a, const Vec3& b) { return a.x == b.x && a.y == b.y && a.z == b.z; }
  bool is_zero() const { return x == 0 && y == 0 && z == 0; }
  std::string to_string() const;
};

Rational dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);

/// Bad curve, field or curve pair (self-intersection, zero normal, ...).
class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Every direction in the fixed sequence projected some pair of features
/// onto each other.
class DegenerateInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closed polygon with rational vertices; the last vertex joins the first.
class PolyCurve3 {
 public:
  /// Throws GeometryError unless there are >= 3 vertices, consecutive ones
  /// differ, adjacent edges do not fold back, and non-adjacent edges are
  /// disjoint (exact test).
  explicit PolyCurve3(std::vector<Vec3> vertices, std::string name = "K");

  std::size_t size() const { return v_.size(); }
  const Vec3& vertex(std::size_t i) const { return v_[i]; }
  const std::vector<Vec3>& vertices() const { return v_; }
  const std::string& name() const { return name_; }
  /// Edge i runs from vertex i to vertex i+1 (mod size).
  std::pair<const Vec3&, const Vec3&> edge(std::size_t i) const { return {v_[i], v_[(i + 1) % v_.size()]}; }

  PolyCurve3 reversed() const;

 private:
  std::vector<Vec3> v_;
  std::string name_;
};

/// Nowhere-zero vector per vertex, never parallel to v[i+1] - v[i-1].
class NormalField {
 public:
  NormalField(const PolyCurve3& curve, std::vector<Vec3> vectors);

  std::size_t size() const { return n_.size(); }
  const Vec3& at(std::size_t i) const { return n_[i]; }
  const std::vector<Vec3>& vectors() const { return n_; }

 private:
  std::vector<Vec3> n_;
};

/// Exact squared distance between two closed segments.
Rational segment_distance2(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1);

bool curves_disjoint(const PolyCurve3& a, const PolyCurve3& b);

/// k-th entry of the fixed projection sequence (k < 64).
Vec3 projection_direction(std::size_t k);

struct CrossingCount {
  std::int64_t a_over_b = 0;  // signed crossings with a on top
  std::int64_t b_over_a = 0;
};

/// Signed crossings seen from direction d (d points at the viewer). Throws
/// DegenerateInput when d is not generic for the pair.
CrossingCount signed_crossings(const PolyCurve3& a, const PolyCurve3& b, const Vec3& d);

/// (a_over_b + b_over_a) / 2 under the first generic direction of the fixed
/// sequence. Throws GeometryError if the curves meet.
std::int64_t linking_number(const PolyCurve3& a, const PolyCurve3& b);

/// Segment-pair solid angle sum / 4 pi, in double precision.
double gauss_linking(const PolyCurve3& a, const PolyCurve3& b);

struct Pushoff {
  PolyCurve3 curve;
  Rational eps;
};

/// K + eps n, halving eps (at most 20 times) until the result is embedded and
/// disjoint from K and its linking number with K agrees with the one at eps/2.
Pushoff pushoff(const PolyCurve3& k, const NormalField& n, const Rational& eps = Rational(1, 4));

std::int64_t self_linking(const PolyCurve3& k, const NormalField& n);

/// The framing given by n extends over a Seifert surface iff the self-linking
/// number relative to the Seifert framing is odd.
bool extends_over_seifert(const PolyCurve3& k, const NormalField& n);

/// (chi_F + deg) mod 2 for a compact connected surface F with one boundary
/// circle; 0 means the framing extends. Throws std::invalid_argument for even
/// chi_F.
int so3_loop_class(std::int64_t chi_f, std::int64_t deg);

/// Planar polygonal circle (radius about 10, 16 + 8|k| vertices) with a normal
/// field that turns k full times around the tangent; self_linking is k.
std::pair<PolyCurve3, NormalField> twisted_unknot(std::int64_t k);

// "curve <name> <k>" followed by k lines "x y z" of rationals p/q;
// "normal <curvename>" followed by one vector line per vertex.
std::string format_curve(const PolyCurve3& c);
std::string format_normal(const PolyCurve3& c, const NormalField& n);
PolyCurve3 parse_curve(std::string_view text, const std::string& source = "<curve>");
/// A curve block followed by a normal block for that curve.
std::pair<PolyCurve3, NormalField> parse_framed_curve(std::string_view text, const std::string& source = "<curve>");

}  // namespace spinkit::linkgeom
