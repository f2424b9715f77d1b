#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinkit/f2.hpp"
#include "spinkit/int_matrix.hpp"

namespace spinkit {

struct SmithForm {
  IntMatrix u;  // unimodular, rows x rows
  IntMatrix d;  // diagonal with d_1 | d_2 | ..., nonnegative
  IntMatrix v;  // unimodular, cols x cols
  std::vector<Int> diagonal() const;
};

/// U * M * V = D. Pivot: smallest nonzero |entry| of the active block,
/// ties to the lowest (row, col). Output is a pure function of M.
SmithForm smith_normal_form(const IntMatrix& m);

class GroupMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class GroupElement;

/// Z^free_rank + Z/d_1 + ... + Z/d_k with d_1 | ... | d_k and d_i >= 2.
///
/// Element coordinates are ordered torsion first (one residue per d_i, in
/// [0, d_i)), then one integer per free generator; this matches the order of
/// a Smith diagonal. Copies share one identity token; independently
/// constructed groups never do, even when isomorphic.
class FGAbelianGroup {
 public:
  FGAbelianGroup();  // trivial group
  FGAbelianGroup(std::size_t free_rank, std::vector<Int> torsion);

  std::size_t free_rank() const { return data_->free_rank; }
  const std::vector<Int>& torsion() const { return data_->torsion; }
  std::size_t coordinate_count() const { return data_->torsion.size() + data_->free_rank; }
  std::uint64_t id() const { return data_->id; }
  bool is_trivial() const { return free_rank() == 0 && torsion().empty(); }

  /// Same invariants (isomorphic), regardless of identity.
  bool isomorphic(const FGAbelianGroup& other) const;

  GroupElement element(std::vector<Int> coords) const;
  GroupElement zero() const;

  /// |Hom(G, Z/2)| = 2^(free_rank + number of even invariant factors).
  Int hom_to_z2_count() const;

  /// "Z/4 + Z", or "0" for the trivial group.
  std::string to_string() const;

 private:
  friend class GroupElement;
  struct Data {
    std::uint64_t id;
    std::size_t free_rank;
    std::vector<Int> torsion;
  };
  std::shared_ptr<const Data> data_;
};

class GroupElement {
 public:
  const std::vector<Int>& coords() const { return coords_; }
  std::uint64_t group_id() const { return group_->id; }
  bool belongs_to(const FGAbelianGroup& g) const { return group_->id == g.id(); }
  bool is_zero() const;

  GroupElement operator+(const GroupElement& o) const;
  GroupElement operator-(const GroupElement& o) const;
  GroupElement operator-() const;
  GroupElement scaled(const Int& k) const;

  friend bool operator==(const GroupElement& a, const GroupElement& b);

  /// "(2,6)"; "()" in the trivial group.
  std::string to_string() const;

 private:
  friend class FGAbelianGroup;
  GroupElement(std::shared_ptr<const FGAbelianGroup::Data> g, std::vector<Int> coords);
  void check_same(const GroupElement& o) const;

  std::shared_ptr<const FGAbelianGroup::Data> group_;
  std::vector<Int> coords_;
};

/// Z^rows / image(M), read off the Smith diagonal.
FGAbelianGroup cokernel(const IntMatrix& m);

struct EvenDecision {
  bool even = false;
  /// Present when even: 2 * half == e. Odd-torsion and free coordinates are
  /// unique; for even d the smaller root r/2 is chosen.
  std::optional<GroupElement> half;
};

/// Is e in 2G? Throws GroupMismatch if e is not an element of g.
EvenDecision is_even(const FGAbelianGroup& g, const GroupElement& e);

/// Image of e in G/2G = (Z/2)^(even torsion count + free_rank), coordinates in
/// the group's order with odd-order factors dropped.
///
/// For H^2 of a closed oriented 3-manifold this is also the image in
/// H^2(M; Z/2): H^3(M; Z) = Z has no 2-torsion, so the Bockstein sequence
/// identifies the reduction with G/2G. Other coefficient situations need the
/// Tor correction, which is not modelled.
F2Vector mod2_reduction(const FGAbelianGroup& g, const GroupElement& e);

}  // namespace spinkit
