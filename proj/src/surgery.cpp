#include "spinkit/surgery.hpp"

#include <sstream>
#include <utility>

#include "spinkit/text_io.hpp"

namespace spinkit::surgery {

namespace {

std::string one_based(std::size_t i) { return std::to_string(i + 1); }

void check_sign(int sign, const char* what) {
  if (sign != 1 && sign != -1) throw MoveError(std::string(what) + ": sign must be +1 or -1");
}

}  // namespace

FramedLinkMatrix::FramedLinkMatrix(IntMatrix q, std::vector<std::string> labels)
    : q_(std::move(q)), labels_(std::move(labels)) {
  if (!q_.is_square()) throw SymmetryError("linking matrix must be square");
  if (!q_.is_symmetric()) {
    for (std::size_t i = 0; i < q_.rows(); ++i)
      for (std::size_t j = i + 1; j < q_.cols(); ++j)
        if (q_(i, j) != q_(j, i))
          throw SymmetryError("linking matrix is not symmetric: entry (" + one_based(i) + "," + one_based(j) +
                              ") = " + q_(i, j).get_str() + " but (" + one_based(j) + "," + one_based(i) +
                              ") = " + q_(j, i).get_str());
  }
  if (labels_.empty()) {
    for (std::size_t i = 0; i < q_.rows(); ++i) labels_.push_back("K" + one_based(i));
  } else if (labels_.size() != q_.rows()) {
    throw DimensionError("one label per component required");
  }
}

ScriptError::ScriptError(std::size_t position, const std::string& what)
    : std::invalid_argument("move " + one_based(position) + ": " + what), position_(position) {}

FramedLinkMatrix blow_up(const FramedLinkMatrix& f, int sign) {
  check_sign(sign, "blowup");
  IntMatrix unknot(1, 1);
  unknot(0, 0) = sign;
  auto labels = f.labels();
  labels.push_back("U" + std::to_string(labels.size() + 1));
  return FramedLinkMatrix(f.linking().direct_sum(unknot), std::move(labels));
}

FramedLinkMatrix blow_down(const FramedLinkMatrix& f, std::size_t i) {
  const IntMatrix& q = f.linking();
  if (i >= f.size())
    throw MoveError("blowdown " + one_based(i) + ": link has " + std::to_string(f.size()) + " components");
  if (abs(q(i, i)) != 1)
    throw MoveError("blowdown " + one_based(i) + ": framing is " + q(i, i).get_str() + ", not +-1");
  for (std::size_t j = 0; j < f.size(); ++j)
    if (j != i && q(i, j) != 0)
      throw MoveError("blowdown " + one_based(i) + ": links component " + one_based(j) + " with linking number " +
                      q(i, j).get_str());
  auto labels = f.labels();
  labels.erase(labels.begin() + static_cast<long>(i));
  return FramedLinkMatrix(q.without_index(i), std::move(labels));
}

FramedLinkMatrix handle_slide(const FramedLinkMatrix& f, std::size_t i, std::size_t j, int sign) {
  check_sign(sign, "slide");
  if (i >= f.size() || j >= f.size()) throw MoveError("slide: component index out of range");
  if (i == j) throw MoveError("slide: cannot slide component " + one_based(i) + " over itself");
  IntMatrix q = f.linking();
  q.add_row_multiple(i, j, sign);
  q.add_col_multiple(i, j, sign);
  return FramedLinkMatrix(std::move(q), f.labels());
}

FramedLinkMatrix apply_move(const FramedLinkMatrix& f, const KirbyMove& m) {
  return std::visit(
      [&](const auto& mv) -> FramedLinkMatrix {
        using T = std::decay_t<decltype(mv)>;
        if constexpr (std::is_same_v<T, BlowUp>)
          return blow_up(f, mv.sign);
        else if constexpr (std::is_same_v<T, BlowDown>)
          return blow_down(f, mv.index);
        else
          return handle_slide(f, mv.i, mv.j, mv.sign);
      },
      m);
}

FramedLinkMatrix apply_script(const FramedLinkMatrix& f, const MoveScript& s) {
  FramedLinkMatrix cur = f;
  for (std::size_t k = 0; k < s.size(); ++k) {
    try {
      cur = apply_move(cur, s[k]);
    } catch (const MoveError& e) {
      throw ScriptError(k, e.what());
    }
  }
  return cur;
}

CharSublink characteristic_solutions(const FramedLinkMatrix& f) {
  const IntMatrix& q = f.linking();
  std::vector<Int> diag(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) diag[i] = q(i, i);
  F2Solution s = f2_solve(F2Matrix::reduce(q), F2Vector::from_ints(diag));
  if (!s.solvable)
    throw std::logic_error("characteristic system unsolvable for a symmetric matrix: " + q.to_string());
  return CharSublink{std::move(s.x), std::move(s.kernel)};
}

bool is_characteristic(const FramedLinkMatrix& f, const F2Vector& x) {
  const IntMatrix& q = f.linking();
  if (x.size() != f.size()) return false;
  const F2Vector qx = F2Matrix::reduce(q) * x;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (qx.get(i) != (mpz_odd_p(q(i, i).get_mpz_t()) != 0)) return false;
  return true;
}

Int spin_structure_count(const FramedLinkMatrix& f) {
  const std::size_t rank = F2Matrix::reduce(f.linking()).rank();
  Int out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, f.size() - rank);
  return out;
}

FGAbelianGroup first_homology(const FramedLinkMatrix& f) { return cokernel(f.linking()); }

HandleParity handle_parity(const FramedLinkMatrix& f) {
  HandleParity p{F2Vector(f.size()), true};
  for (std::size_t i = 0; i < f.size(); ++i) {
    const bool odd = mpz_odd_p(f.framing(i).get_mpz_t()) != 0;
    p.parity.set(i, odd);
    if (odd) p.all_even = false;
  }
  return p;
}

std::string_view phase_name(EvenizePhase p) {
  switch (p) {
    case EvenizePhase::AlreadyEven: return "already-even";
    case EvenizePhase::Guided: return "guided";
    case EvenizePhase::Search: return "search";
    case EvenizePhase::Exhausted: return "exhausted";
  }
  return "unknown";
}

std::string format_link(const FramedLinkMatrix& f) {
  return "framedlink n=" + std::to_string(f.size()) + "\n" + format_int_matrix(f.linking());
}

FramedLinkMatrix parse_link(std::string_view text, const std::string& source) {
  TextReader r(text, source);
  auto head = r.next();
  if (head.tokens.size() != 2 || head.tokens[0] != "framedlink")
    r.fail(head.number, "expected header 'framedlink n=<n>'");
  const std::size_t n = parse_keyed_count(r, head.number, head.tokens[1], "n");
  IntMatrix q = read_int_matrix(r);
  if (q.rows() != n || q.cols() != n)
    r.fail(r.last_line(), "header declares n=" + std::to_string(n) + " but matrix is " + std::to_string(q.rows()) +
                              "x" + std::to_string(q.cols()));
  if (!r.at_end()) r.fail(r.peek().number, "trailing content after link matrix");
  try {
    return FramedLinkMatrix(std::move(q));
  } catch (const SymmetryError& e) {
    r.fail(r.last_line(), e.what());
  }
}

std::string format_move(const KirbyMove& m) {
  return std::visit(
      [](const auto& mv) -> std::string {
        using T = std::decay_t<decltype(mv)>;
        if constexpr (std::is_same_v<T, BlowUp>)
          return std::string("blowup ") + (mv.sign > 0 ? "+1" : "-1");
        else if constexpr (std::is_same_v<T, BlowDown>)
          return "blowdown " + one_based(mv.index);
        else
          return "slide " + one_based(mv.i) + " " + one_based(mv.j) + (mv.sign > 0 ? " +1" : " -1");
      },
      m);
}

std::string format_script(const MoveScript& s) {
  std::string out;
  for (const auto& m : s) out += format_move(m) + "\n";
  return out;
}

namespace {

int parse_sign(const TextReader& r, std::size_t line, const std::string& tok) {
  if (tok == "+1" || tok == "1") return 1;
  if (tok == "-1") return -1;
  r.fail(line, "expected +1 or -1, got '" + tok + "'");
}

std::size_t parse_index(const TextReader& r, std::size_t line, const std::string& tok) {
  const std::size_t i = parse_count(r, line, tok);
  if (i == 0) r.fail(line, "component indices are 1-based");
  return i - 1;
}

}  // namespace

MoveScript parse_script(std::string_view text, const std::string& source) {
  TextReader r(text, source);
  MoveScript s;
  while (!r.at_end()) {
    auto line = r.next();
    const auto& t = line.tokens;
    if (t[0] == "blowup" && t.size() == 2) {
      s.push_back(BlowUp{parse_sign(r, line.number, t[1])});
    } else if (t[0] == "blowdown" && t.size() == 2) {
      s.push_back(BlowDown{parse_index(r, line.number, t[1])});
    } else if (t[0] == "slide" && t.size() == 4) {
      s.push_back(Slide{parse_index(r, line.number, t[1]), parse_index(r, line.number, t[2]),
                        parse_sign(r, line.number, t[3])});
    } else {
      r.fail(line.number, "unrecognized move '" + t[0] + "' (expected blowup, blowdown or slide)");
    }
  }
  return s;
}

}  // namespace spinkit::surgery
