#include "spinkit/surfaces.hpp"

#include <charconv>

namespace spinkit::surfaces {

namespace {

int mod2(std::int64_t x) { return static_cast<int>(((x % 2) + 2) % 2); }

}  // namespace

ClosedSurface ClosedSurface::orientable(std::int64_t genus) {
  if (genus < 0) throw std::invalid_argument("genus must be non-negative");
  return ClosedSurface(true, genus);
}

ClosedSurface ClosedSurface::nonorientable(std::int64_t crosscaps) {
  if (crosscaps < 1) throw std::invalid_argument("a non-orientable surface needs at least one crosscap");
  return ClosedSurface(false, crosscaps);
}

ClosedSurface ClosedSurface::parse(std::string_view token) {
  if (token.size() < 2 || (token[0] != 'o' && token[0] != 'n'))
    throw std::invalid_argument("surface token must look like o<g> or n<h>, got '" + std::string(token) + "'");
  std::int64_t count = 0;
  const char* first = token.data() + 1;
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, count);
  if (ec != std::errc() || ptr != last)
    throw std::invalid_argument("bad surface count in '" + std::string(token) + "'");
  return token[0] == 'o' ? orientable(count) : nonorientable(count);
}

std::int64_t ClosedSurface::genus() const {
  if (!orientable_) throw std::logic_error("genus of a non-orientable surface");
  return count_;
}

std::int64_t ClosedSurface::crosscaps() const {
  if (orientable_) throw std::logic_error("crosscap count of an orientable surface");
  return count_;
}

std::string ClosedSurface::token() const { return (orientable_ ? "o" : "n") + std::to_string(count_); }

std::int64_t euler_characteristic(const ClosedSurface& s) {
  return s.is_orientable() ? 2 - 2 * s.genus() : 2 - s.crosscaps();
}

PairingTerms pairing_terms(const ClosedSurface& s) {
  const int tangent = mod2(euler_characteristic(s));
  // w(det T S) vanishes on orientable S; otherwise w(nu)^2 evaluates to h mod 2.
  const int normal_cup = s.is_orientable() ? 0 : mod2(s.crosscaps());
  return PairingTerms{tangent, normal_cup};
}

int pairing_w_Fv(const ClosedSurface& s) {
  const auto t = pairing_terms(s);
  return (t.tangent + t.normal_cup) % 2;
}

}  // namespace spinkit::surfaces
