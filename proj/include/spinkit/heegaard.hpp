#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spinkit/f2.hpp"
#include "spinkit/int_matrix.hpp"
#include "spinkit/surgery.hpp"

namespace spinkit::heegaard {

/// Meridian twist data for a genus-g splitting. a(j, i) is the algebraic
/// intersection number of curve c_i with meridian m_j; framings[j] is the
/// initial framing of c_j. The optional linking block supplies the
/// off-diagonal entries of the resulting framed link.
class HeegaardTwistProblem {
 public:
  /// Throws DimensionError on shape mismatch, std::invalid_argument when g = 0
  /// or the linking block is not symmetric with zero diagonal.
  HeegaardTwistProblem(IntMatrix a, std::vector<Int> framings, std::optional<IntMatrix> linking = std::nullopt);

  std::size_t genus() const { return a_.rows(); }
  const IntMatrix& incidence() const { return a_; }
  const std::vector<Int>& framings() const { return f_; }
  const std::optional<IntMatrix>& linking() const { return linking_; }

 private:
  IntMatrix a_;
  std::vector<Int> f_;
  std::optional<IntMatrix> linking_;
};

/// Solutions of (A mod 2) x = f mod 2: x + span(kernel), or a certificate y
/// with y^T (A mod 2) = 0 and y.f = 1.
struct TwistSolution {
  bool solvable = false;
  F2Vector x;
  std::vector<F2Vector> kernel;
  std::optional<F2Vector> certificate;
};

TwistSolution solve_twists(const HeegaardTwistProblem& p);

/// f'_j = f_j + sum_i x_i a(j, i)^2.
std::vector<Int> apply_twists(const HeegaardTwistProblem& p, const std::vector<Int>& x);

/// 0/1 integer vector of an indicator.
std::vector<Int> to_integers(const F2Vector& x);

class ParityViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Linking matrix with the twisted framings on the diagonal. Throws
/// ParityViolation if any twisted framing is odd.
surgery::FramedLinkMatrix to_framed_link(const HeegaardTwistProblem& p, const std::vector<Int>& x);

// "heegaard g=<g>", the g x g incidence matrix, the g framings on one line,
// then optionally "linking" followed by a g x g matrix.
std::string format_problem(const HeegaardTwistProblem& p);
HeegaardTwistProblem parse_problem(std::string_view text, const std::string& source = "<heegaard>");

}  // namespace spinkit::heegaard
