#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace spinkit::surfaces {

/// Closed connected surface by classification: orientable of genus g, or the
/// connected sum of h >= 1 projective planes.
class ClosedSurface {
 public:
  static ClosedSurface orientable(std::int64_t genus);
  static ClosedSurface nonorientable(std::int64_t crosscaps);

  /// "o<g>" or "n<h>", e.g. "o2", "n3".
  static ClosedSurface parse(std::string_view token);

  bool is_orientable() const { return orientable_; }
  std::int64_t genus() const;      // orientable only
  std::int64_t crosscaps() const;  // non-orientable only
  std::string token() const;

  friend bool operator==(const ClosedSurface&, const ClosedSurface&) = default;

 private:
  ClosedSurface(bool orientable, std::int64_t count) : orientable_(orientable), count_(count) {}
  bool orientable_;
  std::int64_t count_;
};

std::int64_t euler_characteristic(const ClosedSurface& s);

/// Values in F2 of <w(T S), [S]> and <w(det T S) u w(nu_S), [S]> for S
/// embedded in an orientable 3-manifold, where nu_S is isomorphic to det T S.
struct PairingTerms {
  int tangent;        // chi(S) mod 2
  int normal_cup;     // 0 if orientable, h mod 2 otherwise
};

PairingTerms pairing_terms(const ClosedSurface& s);

/// <w(F_v), [S]> = tangent + normal_cup in F2. Zero for every closed surface.
int pairing_w_Fv(const ClosedSurface& s);

}  // namespace spinkit::surfaces
