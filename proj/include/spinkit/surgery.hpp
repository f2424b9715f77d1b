#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "spinkit/abelian_group.hpp"
#include "spinkit/f2.hpp"
#include "spinkit/int_matrix.hpp"

namespace spinkit::surgery {

class SymmetryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Linking matrix of a framed link in S^3: framings on the diagonal, pairwise
/// linking numbers off it. The empty matrix is the empty link (surgery gives S^3).
class FramedLinkMatrix {
 public:
  FramedLinkMatrix() = default;
  /// Throws SymmetryError unless q is square and symmetric. Labels default
  /// to K1..Kn.
  explicit FramedLinkMatrix(IntMatrix q, std::vector<std::string> labels = {});

  std::size_t size() const { return q_.rows(); }
  const IntMatrix& linking() const { return q_; }
  const Int& framing(std::size_t i) const { return q_(i, i); }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Labels are display names only; equality compares linking matrices.
  friend bool operator==(const FramedLinkMatrix& a, const FramedLinkMatrix& b) { return a.q_ == b.q_; }

 private:
  IntMatrix q_;
  std::vector<std::string> labels_;
};

// Kirby moves. Indices are 0-based in the API and 1-based in script files.
struct BlowUp {
  int sign;  // +1 or -1: a distant unknot with that framing
  friend bool operator==(const BlowUp&, const BlowUp&) = default;
};
struct BlowDown {
  std::size_t index;
  friend bool operator==(const BlowDown&, const BlowDown&) = default;
};
/// Slide component i over component j: Q' = E Q E^T with E = I + sign e_ij.
struct Slide {
  std::size_t i;
  std::size_t j;
  int sign;
  friend bool operator==(const Slide&, const Slide&) = default;
};
using KirbyMove = std::variant<BlowUp, BlowDown, Slide>;
using MoveScript = std::vector<KirbyMove>;

class MoveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A script move whose precondition fails; position is 0-based.
class ScriptError : public std::invalid_argument {
 public:
  ScriptError(std::size_t position, const std::string& what);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

FramedLinkMatrix blow_up(const FramedLinkMatrix& f, int sign);
/// Requires framing +-1 at i and zero linking with every other component.
FramedLinkMatrix blow_down(const FramedLinkMatrix& f, std::size_t i);
FramedLinkMatrix handle_slide(const FramedLinkMatrix& f, std::size_t i, std::size_t j, int sign);
FramedLinkMatrix apply_move(const FramedLinkMatrix& f, const KirbyMove& m);
FramedLinkMatrix apply_script(const FramedLinkMatrix& f, const MoveScript& s);

/// Solutions x of Q x = diag(Q) mod 2: x plus span(kernel).
struct CharSublink {
  F2Vector x;
  std::vector<F2Vector> kernel;
  std::size_t solution_dimension() const { return kernel.size(); }
};

/// Always solvable: the diagonal of a symmetric F2 matrix lies in its column
/// space. Throws std::logic_error if that ever fails.
CharSublink characteristic_solutions(const FramedLinkMatrix& f);
bool is_characteristic(const FramedLinkMatrix& f, const F2Vector& x);

/// 2^(n - rank_F2 Q).
Int spin_structure_count(const FramedLinkMatrix& f);

/// coker Q.
FGAbelianGroup first_homology(const FramedLinkMatrix& f);

struct HandleParity {
  F2Vector parity;  // framing i mod 2
  bool all_even = true;
};
HandleParity handle_parity(const FramedLinkMatrix& f);

struct EvenizeOptions {
  /// Fallback search: iterative-deepening depth limit.
  std::size_t max_depth = 12;
  /// Blow-ups allowed in either phase.
  std::size_t max_stabilizations = 2;
  /// Fallback search: largest link size it will visit.
  std::size_t max_search_size = 6;
  /// Guided phase: coordinates of candidate +-1 vectors range over [-b, b].
  std::int64_t coordinate_bound = 2;
  /// Node budgets for the guided clique search and the fallback search.
  std::size_t guided_node_budget = 200000;
  std::size_t search_node_budget = 300000;
};

enum class EvenizePhase { AlreadyEven, Guided, Search, Exhausted };
std::string_view phase_name(EvenizePhase p);

struct EvenizeResult {
  bool success = false;
  EvenizePhase phase = EvenizePhase::Exhausted;
  /// On success the even link; on exhaustion the end of the partial script.
  FramedLinkMatrix result;
  MoveScript script;
  std::string detail;
};

/// Finds Kirby moves that make every framing even. Output is a pure
/// function of the input and options. Exhaustion is reported in the result,
/// with the partial script of the closest attempt, never as a wrong answer.
EvenizeResult evenize(const FramedLinkMatrix& f, const EvenizeOptions& opts = {});

// Text formats.
//   link:   "framedlink n=<n>", then "n n" and the n*n entries
//   script: one move per line, "blowup +1|-1", "blowdown <i>", "slide <i> <j> +1|-1"
std::string format_link(const FramedLinkMatrix& f);
FramedLinkMatrix parse_link(std::string_view text, const std::string& source = "<link>");
std::string format_move(const KirbyMove& m);
std::string format_script(const MoveScript& s);
MoveScript parse_script(std::string_view text, const std::string& source = "<script>");

}  // namespace spinkit::surgery
