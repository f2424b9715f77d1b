#include <atomic>
#include <sstream>
#include <utility>

#include "spinkit/abelian_group.hpp"

namespace spinkit {

namespace {

std::uint64_t next_group_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace

FGAbelianGroup::FGAbelianGroup() : FGAbelianGroup(0, {}) {}

FGAbelianGroup::FGAbelianGroup(std::size_t free_rank, std::vector<Int> torsion) {
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    if (torsion[i] < 2) throw std::invalid_argument("invariant factor below 2: " + torsion[i].get_str());
    if (i > 0 && !mpz_divisible_p(torsion[i].get_mpz_t(), torsion[i - 1].get_mpz_t()))
      throw std::invalid_argument("invariant factors must form a divisibility chain: " +
                                  torsion[i - 1].get_str() + " does not divide " +
                                  torsion[i].get_str());
  }
  data_ = std::make_shared<const Data>(Data{next_group_id(), free_rank, std::move(torsion)});
}

bool FGAbelianGroup::isomorphic(const FGAbelianGroup& other) const {
  return free_rank() == other.free_rank() && torsion() == other.torsion();
}

GroupElement FGAbelianGroup::element(std::vector<Int> coords) const {
  if (coords.size() != coordinate_count())
    throw DimensionError("group element needs " + std::to_string(coordinate_count()) +
                         " coordinates, got " + std::to_string(coords.size()));
  for (std::size_t i = 0; i < torsion().size(); ++i) coords[i] = mod_floor(coords[i], torsion()[i]);
  return GroupElement(data_, std::move(coords));
}

GroupElement FGAbelianGroup::zero() const {
  return element(std::vector<Int>(coordinate_count()));
}

Int FGAbelianGroup::hom_to_z2_count() const {
  unsigned long k = free_rank();
  for (const Int& d : torsion())
    if (mpz_even_p(d.get_mpz_t())) ++k;
  Int out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, k);
  return out;
}

std::string FGAbelianGroup::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const Int& d : torsion()) {
    os << (first ? "" : " + ") << "Z/" << d;
    first = false;
  }
  for (std::size_t i = 0; i < free_rank(); ++i) {
    os << (first ? "" : " + ") << 'Z';
    first = false;
  }
  return os.str();
}

GroupElement::GroupElement(std::shared_ptr<const FGAbelianGroup::Data> g, std::vector<Int> coords)
    : group_(std::move(g)), coords_(std::move(coords)) {}

void GroupElement::check_same(const GroupElement& o) const {
  if (group_->id != o.group_->id)
    throw GroupMismatch("arithmetic between elements of different groups");
}

bool GroupElement::is_zero() const {
  for (const Int& c : coords_)
    if (c != 0) return false;
  return true;
}

GroupElement GroupElement::operator+(const GroupElement& o) const {
  check_same(o);
  std::vector<Int> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] + o.coords_[i];
  for (std::size_t i = 0; i < group_->torsion.size(); ++i) c[i] = mod_floor(c[i], group_->torsion[i]);
  return GroupElement(group_, std::move(c));
}

GroupElement GroupElement::operator-() const { return scaled(-1); }

GroupElement GroupElement::operator-(const GroupElement& o) const { return *this + (-o); }

GroupElement GroupElement::scaled(const Int& k) const {
  std::vector<Int> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = k * coords_[i];
  for (std::size_t i = 0; i < group_->torsion.size(); ++i) c[i] = mod_floor(c[i], group_->torsion[i]);
  return GroupElement(group_, std::move(c));
}

bool operator==(const GroupElement& a, const GroupElement& b) {
  return a.group_->id == b.group_->id && a.coords_ == b.coords_;
}

std::string GroupElement::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ',';
    s += coords_[i].get_str();
  }
  return s + ")";
}

EvenDecision is_even(const FGAbelianGroup& g, const GroupElement& e) {
  if (!e.belongs_to(g)) throw GroupMismatch("is_even: element is not in the given group");
  const auto& tor = g.torsion();
  const auto& c = e.coords();
  std::vector<Int> half(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const bool torsion_coord = i < tor.size();
    if (torsion_coord && mpz_odd_p(tor[i].get_mpz_t())) {
      // 2 is invertible mod an odd d; its inverse is (d + 1) / 2.
      half[i] = mod_floor(c[i] * ((tor[i] + 1) / 2), tor[i]);
      continue;
    }
    if (mpz_odd_p(c[i].get_mpz_t())) return EvenDecision{false, std::nullopt};
    half[i] = c[i] / 2;
  }
  return EvenDecision{true, g.element(std::move(half))};
}

F2Vector mod2_reduction(const FGAbelianGroup& g, const GroupElement& e) {
  if (!e.belongs_to(g)) throw GroupMismatch("mod2_reduction: element is not in the given group");
  const auto& tor = g.torsion();
  std::vector<bool> bits;
  for (std::size_t i = 0; i < e.coords().size(); ++i) {
    if (i < tor.size() && mpz_odd_p(tor[i].get_mpz_t())) continue;
    bits.push_back(mpz_odd_p(e.coords()[i].get_mpz_t()) != 0);
  }
  F2Vector out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) out.set(i, bits[i]);
  return out;
}

}  // namespace spinkit
