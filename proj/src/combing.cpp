#include "spinkit/combing.hpp"

#include <deque>
#include <sstream>
#include <utility>

#include "spinkit/text_io.hpp"

namespace spinkit::combing {

namespace {

std::string id_str(CombingId v) { return std::to_string(v.value); }

}  // namespace

CombingLedger::CombingLedger(FGAbelianGroup group, const GroupElement& base_euler)
    : group_(std::move(group)) {
  require_member(base_euler, "base Euler class");
  euler_.push_back(base_euler);
}

CombingLedger new_ledger(const FGAbelianGroup& group, const GroupElement& base_euler) {
  return CombingLedger(group, base_euler);
}

void CombingLedger::require(CombingId v) const {
  if (v.value >= euler_.size()) throw UnknownCombing("unknown combing " + id_str(v));
}

void CombingLedger::require_member(const GroupElement& e, std::string_view what) const {
  if (!e.belongs_to(group_))
    throw GroupMismatch(std::string(what) + " is not an element of the ledger group");
}

const GroupElement& CombingLedger::euler(CombingId v) const {
  require(v);
  return euler_[v.value];
}

CombingId CombingLedger::pontryagin_surgery(CombingId v, const GroupElement& beta) {
  require(v);
  require_member(beta, "surgery class");
  const GroupElement ev = euler_[v.value];
  const CombingId w{static_cast<std::uint32_t>(euler_.size())};
  euler_.push_back(ev - beta.scaled(2));
  pairs_.push_back(PairRecord{v, w, beta, ev - beta});
  surgeries_.push_back(SurgeryEdge{v, w, beta});
  return w;
}

GroupElement CombingLedger::compare(CombingId v, CombingId w) const {
  require(v);
  require(w);
  if (v == w) return group_.zero();

  std::vector<std::optional<GroupElement>> reached(euler_.size());
  reached[v.value] = group_.zero();
  std::deque<CombingId> queue{v};
  while (!queue.empty()) {
    const CombingId cur = queue.front();
    queue.pop_front();
    for (const PairRecord& p : pairs_) {
      std::optional<CombingId> next;
      std::optional<GroupElement> step;
      if (p.first == cur) {
        next = p.second;
        step = p.alpha_plus;
      } else if (p.second == cur) {
        next = p.first;
        step = -p.alpha_plus;
      }
      if (!next || reached[next->value]) continue;
      reached[next->value] = *reached[cur.value] + *step;
      if (*next == w) return *reached[w.value];
      queue.push_back(*next);
    }
  }
  throw NotConnected("combings " + id_str(v) + " and " + id_str(w) +
                     " are not connected by recorded pairs");
}

ParallelizabilityDecision CombingLedger::is_parallelizable() {
  const EvenDecision d = is_even(group_, euler_[base().value]);
  if (!d.even) return {};
  const CombingId w = pontryagin_surgery(base(), *d.half);
  return ParallelizabilityDecision{true, w, d.half};
}

std::vector<std::string> CombingLedger::validate() const {
  std::vector<std::string> issues;
  auto known = [&](CombingId v) { return v.value < euler_.size(); };

  for (std::size_t i = 0; i < euler_.size(); ++i)
    if (!euler_[i].belongs_to(group_)) issues.push_back("combing " + std::to_string(i) + ": Euler class outside the ledger group");

  for (const PairRecord& p : pairs_) {
    const std::string tag = "pair " + id_str(p.first) + " " + id_str(p.second);
    if (!known(p.first) || !known(p.second)) {
      issues.push_back(tag + ": unknown combing");
      continue;
    }
    if (!p.alpha_plus.belongs_to(group_) || !p.alpha_minus.belongs_to(group_)) {
      issues.push_back(tag + ": comparison class outside the ledger group");
      continue;
    }
    if (euler_[p.first.value] != p.alpha_plus + p.alpha_minus)
      issues.push_back(tag + ": euler(first) != alpha+ + alpha-");
    if (euler_[p.second.value] != p.alpha_minus - p.alpha_plus)
      issues.push_back(tag + ": euler(second) != alpha- - alpha+");
  }

  for (const SurgeryEdge& s : surgeries_) {
    const std::string tag = "surgery " + id_str(s.from) + " " + id_str(s.to);
    if (!known(s.from) || !known(s.to)) {
      issues.push_back(tag + ": unknown combing");
      continue;
    }
    if (!s.beta.belongs_to(group_)) {
      issues.push_back(tag + ": surgery class outside the ledger group");
      continue;
    }
    if (euler_[s.to.value] != euler_[s.from.value] - s.beta.scaled(2))
      issues.push_back(tag + ": euler(to) != euler(from) - 2 beta");
    bool recorded = false;
    for (const PairRecord& p : pairs_)
      recorded = recorded || (p.first == s.from && p.second == s.to && p.alpha_plus == s.beta);
    if (!recorded) issues.push_back(tag + ": no pair record with alpha+ = beta");
  }

  if (!euler_.empty() && euler_[0].belongs_to(group_)) {
    const bool base_even = is_even(group_, euler_[0]).even;
    for (std::size_t i = 1; i < euler_.size(); ++i)
      if (euler_[i].belongs_to(group_) && is_even(group_, euler_[i]).even != base_even)
        issues.push_back("combing " + std::to_string(i) + ": Euler class parity differs from the base combing");
  }
  return issues;
}

CombingId CombingLedger::add_combing_unchecked(const GroupElement& euler) {
  euler_.push_back(euler);
  return CombingId{static_cast<std::uint32_t>(euler_.size() - 1)};
}

void CombingLedger::add_pair_unchecked(PairRecord record) { pairs_.push_back(std::move(record)); }

void CombingLedger::add_surgery_unchecked(SurgeryEdge edge) { surgeries_.push_back(std::move(edge)); }

void CombingLedger::set_euler_unchecked(CombingId v, const GroupElement& euler) {
  require(v);
  euler_[v.value] = euler;
}

std::string serialize(const CombingLedger& ledger) {
  std::ostringstream os;
  const auto& g = ledger.group();
  os << "group free=" << g.free_rank() << " torsion=";
  for (std::size_t i = 0; i < g.torsion().size(); ++i) os << (i ? "," : "") << g.torsion()[i];
  os << '\n';
  for (std::uint32_t i = 0; i < ledger.size(); ++i)
    os << "combing " << i << " euler " << ledger.euler(CombingId{i}).to_string() << '\n';
  for (const auto& p : ledger.pairs())
    os << "pair " << p.first.value << ' ' << p.second.value << " alpha+ " << p.alpha_plus.to_string()
       << " alpha- " << p.alpha_minus.to_string() << '\n';
  for (const auto& s : ledger.surgeries())
    os << "surgery " << s.from.value << ' ' << s.to.value << " beta " << s.beta.to_string() << '\n';
  return os.str();
}

namespace {

std::vector<Int> parse_coords(const TextReader& r, std::size_t line, const std::string& tok,
                              std::size_t expected) {
  if (tok.size() < 2 || tok.front() != '(' || tok.back() != ')')
    r.fail(line, "expected coordinates like (1,0), got '" + tok + "'");
  std::vector<Int> out;
  const std::string body = tok.substr(1, tok.size() - 2);
  std::size_t start = 0;
  while (!body.empty() && start <= body.size()) {
    std::size_t comma = body.find(',', start);
    if (comma == std::string::npos) comma = body.size();
    out.push_back(parse_integer(r, line, body.substr(start, comma - start)));
    start = comma + 1;
  }
  if (out.size() != expected)
    r.fail(line, "expected " + std::to_string(expected) + " coordinates, got " + std::to_string(out.size()));
  return out;
}

CombingId parse_id(const TextReader& r, std::size_t line, const std::string& tok) {
  return CombingId{static_cast<std::uint32_t>(parse_count(r, line, tok))};
}

void expect_keyword(const TextReader& r, std::size_t line, const std::string& tok, std::string_view kw) {
  if (tok != kw) r.fail(line, "expected '" + std::string(kw) + "', got '" + tok + "'");
}

}  // namespace

CombingLedger parse_ledger(std::string_view text, const std::string& source) {
  TextReader r(text, source);
  auto head = r.next();
  const auto& h = head.tokens;
  if (h.size() != 3 || h[0] != "group") r.fail(head.number, "expected 'group free=<r> torsion=<list>'");
  const std::size_t free_rank = parse_keyed_count(r, head.number, h[1], "free");
  if (h[2].rfind("torsion=", 0) != 0) r.fail(head.number, "expected 'torsion=<list>'");
  std::vector<Int> torsion;
  const std::string list = h[2].substr(8);
  for (std::size_t start = 0; !list.empty() && start <= list.size();) {
    std::size_t comma = list.find(',', start);
    if (comma == std::string::npos) comma = list.size();
    torsion.push_back(parse_integer(r, head.number, list.substr(start, comma - start)));
    start = comma + 1;
  }
  std::optional<FGAbelianGroup> group;
  try {
    group.emplace(free_rank, torsion);
  } catch (const std::invalid_argument& e) {
    r.fail(head.number, e.what());
  }
  const std::size_t k = group->coordinate_count();

  std::optional<CombingLedger> ledger;
  while (!r.at_end()) {
    auto line = r.next();
    const auto& t = line.tokens;
    if (t[0] == "combing") {
      if (t.size() != 4) r.fail(line.number, "expected 'combing <id> euler <coords>'");
      expect_keyword(r, line.number, t[2], "euler");
      const auto id = parse_id(r, line.number, t[1]);
      const auto e = group->element(parse_coords(r, line.number, t[3], k));
      const std::size_t expected_id = ledger ? ledger->size() : 0;
      if (id.value != expected_id)
        r.fail(line.number, "combing ids must be declared in order; expected " + std::to_string(expected_id));
      if (!ledger)
        ledger.emplace(*group, e);
      else
        ledger->add_combing_unchecked(e);
    } else if (t[0] == "pair") {
      if (!ledger) r.fail(line.number, "pair before any combing");
      if (t.size() != 7) r.fail(line.number, "expected 'pair <id> <id> alpha+ <coords> alpha- <coords>'");
      expect_keyword(r, line.number, t[3], "alpha+");
      expect_keyword(r, line.number, t[5], "alpha-");
      ledger->add_pair_unchecked(PairRecord{parse_id(r, line.number, t[1]), parse_id(r, line.number, t[2]),
                                            group->element(parse_coords(r, line.number, t[4], k)),
                                            group->element(parse_coords(r, line.number, t[6], k))});
    } else if (t[0] == "surgery") {
      if (!ledger) r.fail(line.number, "surgery before any combing");
      if (t.size() != 5) r.fail(line.number, "expected 'surgery <id> <id> beta <coords>'");
      expect_keyword(r, line.number, t[3], "beta");
      ledger->add_surgery_unchecked(SurgeryEdge{parse_id(r, line.number, t[1]), parse_id(r, line.number, t[2]),
                                                group->element(parse_coords(r, line.number, t[4], k))});
    } else {
      r.fail(line.number, "unknown ledger record '" + t[0] + "'");
    }
  }
  if (!ledger) r.fail(r.last_line(), "ledger declares no combing");
  return std::move(*ledger);
}

}  // namespace spinkit::combing
