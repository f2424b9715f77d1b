#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spinkit/abelian_group.hpp"

namespace spinkit::combing {

/// Handle of a combing registered in a ledger. Combings are opaque symbols:
/// the ledger records their Euler classes and comparison classes, never
/// vector fields.
struct CombingId {
  std::uint32_t value = 0;
  friend auto operator<=>(const CombingId&, const CombingId&) = default;
};

/// Comparison data of an ordered pair (v, w): alpha_plus = alpha(v, w) and
/// alpha_minus = alpha(v, -w). Consistency requires
///   euler(v) =  alpha_plus + alpha_minus
///   euler(w) = -alpha_plus + alpha_minus.
struct PairRecord {
  CombingId first;
  CombingId second;
  GroupElement alpha_plus;
  GroupElement alpha_minus;
};

/// Pontryagin surgery from `from` to `to` along a curve dual to beta.
struct SurgeryEdge {
  CombingId from;
  CombingId to;
  GroupElement beta;
};

class UnknownCombing : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// alpha is pair data; it cannot be recovered from Euler classes when the
/// group has 2-torsion, so unconnected symbols have no comparison class.
class NotConnected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParallelizabilityDecision {
  bool parallelizable = false;
  /// Symbol with Euler class exactly zero, registered by the decision.
  std::optional<CombingId> witness;
  /// Surgery class used to reach the witness from the base combing.
  std::optional<GroupElement> beta;
};

/// Symbolic registry of combings on a closed oriented 3-manifold whose H^2 is
/// modelled by `group()`. Single owner; not safe for concurrent mutation.
class CombingLedger {
 public:
  CombingLedger(FGAbelianGroup group, const GroupElement& base_euler);

  const FGAbelianGroup& group() const { return group_; }
  CombingId base() const { return CombingId{0}; }
  std::size_t size() const { return euler_.size(); }
  const GroupElement& euler(CombingId v) const;
  const std::vector<PairRecord>& pairs() const { return pairs_; }
  const std::vector<SurgeryEdge>& surgeries() const { return surgeries_; }

  /// Registers v' with euler(v') = euler(v) - 2 beta, alpha(v, v') = beta and
  /// alpha(v, -v') = euler(v) - beta.
  CombingId pontryagin_surgery(CombingId v, const GroupElement& beta);

  /// alpha(v, w) summed along recorded pairs (negated when a pair is walked
  /// backwards). Path search is breadth-first in record order.
  GroupElement compare(CombingId v, CombingId w) const;

  /// True iff the base Euler class is even. When true, performs the surgery
  /// by half of it and returns the resulting combing with Euler class 0.
  ParallelizabilityDecision is_parallelizable();

  /// Replays every record against the ledger invariants; empty when consistent.
  std::vector<std::string> validate() const;

  // Raw insertion without consistency checks, used by the parser; validate()
  // reports anything these introduce.
  CombingId add_combing_unchecked(const GroupElement& euler);
  void add_pair_unchecked(PairRecord record);
  void add_surgery_unchecked(SurgeryEdge edge);
  void set_euler_unchecked(CombingId v, const GroupElement& euler);

 private:
  void require(CombingId v) const;
  void require_member(const GroupElement& e, std::string_view what) const;

  FGAbelianGroup group_;
  std::vector<GroupElement> euler_;
  std::vector<PairRecord> pairs_;
  std::vector<SurgeryEdge> surgeries_;
};

CombingLedger new_ledger(const FGAbelianGroup& group, const GroupElement& base_euler);

/// Line format:
///   group free=<r> torsion=<d1>,<d2>,...      (torsion= may be empty)
///   combing <id> euler <coords>
///   pair <id> <id> alpha+ <coords> alpha- <coords>
///   surgery <id> <id> beta <coords>
/// Coordinates are "(c1,c2,...)" in the group's order; ids are 0, 1, ... in
/// declaration order and combing 0 is the base.
std::string serialize(const CombingLedger& ledger);
CombingLedger parse_ledger(std::string_view text, const std::string& source = "<ledger>");

}  // namespace spinkit::combing
