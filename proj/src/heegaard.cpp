#include "spinkit/heegaard.hpp"

#include "spinkit/text_io.hpp"

namespace spinkit::heegaard {

HeegaardTwistProblem::HeegaardTwistProblem(IntMatrix a, std::vector<Int> framings, std::optional<IntMatrix> linking)
    : a_(std::move(a)), f_(std::move(framings)), linking_(std::move(linking)) {
  if (a_.rows() == 0) throw std::invalid_argument("genus must be at least 1");
  if (!a_.is_square()) throw DimensionError("incidence matrix must be g x g");
  if (f_.size() != a_.rows()) throw DimensionError("need one framing per curve");
  if (linking_) {
    if (linking_->rows() != a_.rows() || linking_->cols() != a_.rows())
      throw DimensionError("linking block must be g x g");
    if (!linking_->is_symmetric()) throw std::invalid_argument("linking block must be symmetric");
    for (std::size_t i = 0; i < a_.rows(); ++i)
      if ((*linking_)(i, i) != 0) throw std::invalid_argument("linking block must have zero diagonal");
  }
}

TwistSolution solve_twists(const HeegaardTwistProblem& p) {
  F2Solution s = f2_solve(F2Matrix::reduce(p.incidence()), F2Vector::from_ints(p.framings()));
  return TwistSolution{s.solvable, std::move(s.x), std::move(s.kernel), std::move(s.certificate)};
}

std::vector<Int> apply_twists(const HeegaardTwistProblem& p, const std::vector<Int>& x) {
  const std::size_t g = p.genus();
  if (x.size() != g) throw DimensionError("need one twist count per meridian");
  std::vector<Int> out = p.framings();
  for (std::size_t j = 0; j < g; ++j)
    for (std::size_t i = 0; i < g; ++i) out[j] += x[i] * p.incidence()(j, i) * p.incidence()(j, i);
  return out;
}

std::vector<Int> to_integers(const F2Vector& x) {
  std::vector<Int> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x.get(i) ? 1 : 0;
  return out;
}

surgery::FramedLinkMatrix to_framed_link(const HeegaardTwistProblem& p, const std::vector<Int>& x) {
  const auto f = apply_twists(p, x);
  const std::size_t g = p.genus();
  IntMatrix q = p.linking() ? *p.linking() : IntMatrix(g, g);
  for (std::size_t j = 0; j < g; ++j) {
    if (mpz_odd_p(f[j].get_mpz_t()))
      throw ParityViolation("twisted framing of curve " + std::to_string(j + 1) + " is odd (" + f[j].get_str() + ")");
    q(j, j) = f[j];
  }
  return surgery::FramedLinkMatrix(std::move(q));
}

std::string format_problem(const HeegaardTwistProblem& p) {
  std::string out = "heegaard g=" + std::to_string(p.genus()) + "\n" + format_int_matrix(p.incidence());
  for (std::size_t j = 0; j < p.genus(); ++j) out += (j ? " " : "") + p.framings()[j].get_str();
  out += "\n";
  if (p.linking()) out += "linking\n" + format_int_matrix(*p.linking());
  return out;
}

HeegaardTwistProblem parse_problem(std::string_view text, const std::string& source) {
  TextReader r(text, source);
  auto head = r.next();
  if (head.tokens.size() != 2 || head.tokens[0] != "heegaard") r.fail(head.number, "expected header 'heegaard g=<g>'");
  const std::size_t g = parse_keyed_count(r, head.number, head.tokens[1], "g");
  if (g == 0) r.fail(head.number, "genus must be at least 1");
  IntMatrix a = read_int_matrix(r);
  if (a.rows() != g || a.cols() != g)
    r.fail(r.last_line(), "incidence matrix must be " + std::to_string(g) + "x" + std::to_string(g));
  if (r.at_end()) r.fail(r.last_line(), "missing framing line");
  auto fl = r.next();
  if (fl.tokens.size() != g)
    r.fail(fl.number, "expected " + std::to_string(g) + " framings, got " + std::to_string(fl.tokens.size()));
  std::vector<Int> f;
  for (const auto& t : fl.tokens) f.push_back(parse_integer(r, fl.number, t));
  std::optional<IntMatrix> linking;
  if (!r.at_end()) {
    auto kw = r.next();
    if (kw.tokens.size() != 1 || kw.tokens[0] != "linking") r.fail(kw.number, "expected 'linking' or end of file");
    linking = read_int_matrix(r);
    if (!r.at_end()) r.fail(r.peek().number, "trailing content after linking block");
  }
  try {
    return HeegaardTwistProblem(std::move(a), std::move(f), std::move(linking));
  } catch (const std::invalid_argument& e) {
    r.fail(r.last_line(), e.what());
  }
}

}  // namespace spinkit::heegaard
