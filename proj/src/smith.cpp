#include <algorithm>
#include <optional>
#include <utility>

#include "spinkit/abelian_group.hpp"

namespace spinkit {

namespace {

struct Pivot {
  std::size_t row, col;
};

std::optional<Pivot> smallest_entry(const IntMatrix& d, std::size_t t) {
  std::optional<Pivot> best;
  Int best_abs;
  for (std::size_t i = t; i < d.rows(); ++i)
    for (std::size_t j = t; j < d.cols(); ++j) {
      if (d(i, j) == 0) continue;
      Int a = abs(d(i, j));
      if (!best || a < best_abs) {
        best = Pivot{i, j};
        best_abs = a;
      }
    }
  return best;
}

Int floor_quotient(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

std::vector<Int> SmithForm::diagonal() const {
  std::vector<Int> out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
  return out;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithForm s{IntMatrix::identity(m.rows()), m, IntMatrix::identity(m.cols())};
  IntMatrix& d = s.d;
  const std::size_t steps = std::min(m.rows(), m.cols());

  for (std::size_t t = 0; t < steps; ++t) {
    bool finished = false;
    while (true) {
      auto p = smallest_entry(d, t);
      if (!p) {
        finished = true;  // remaining block is zero
        break;
      }
      d.swap_rows(t, p->row);
      s.u.swap_rows(t, p->row);
      d.swap_cols(t, p->col);
      s.v.swap_cols(t, p->col);

      bool clear = true;
      for (std::size_t i = t + 1; i < d.rows(); ++i) {
        if (d(i, t) == 0) continue;
        Int q = floor_quotient(d(i, t), d(t, t));
        d.add_row_multiple(i, t, -q);
        s.u.add_row_multiple(i, t, -q);
        if (d(i, t) != 0) clear = false;
      }
      for (std::size_t j = t + 1; j < d.cols(); ++j) {
        if (d(t, j) == 0) continue;
        Int q = floor_quotient(d(t, j), d(t, t));
        d.add_col_multiple(j, t, -q);
        s.v.add_col_multiple(j, t, -q);
        if (d(t, j) != 0) clear = false;
      }
      if (!clear) continue;

      // Pivot must divide the rest of the block for the divisibility chain.
      std::optional<std::size_t> offender;
      for (std::size_t i = t + 1; i < d.rows() && !offender; ++i)
        for (std::size_t j = t + 1; j < d.cols(); ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            offender = i;
            break;
          }
      if (!offender) break;
      d.add_row_multiple(t, *offender, 1);
      s.u.add_row_multiple(t, *offender, 1);
    }
    if (finished) break;
    if (d(t, t) < 0) {
      d.negate_row(t);
      s.u.negate_row(t);
    }
  }
  return s;
}

FGAbelianGroup cokernel(const IntMatrix& m) {
  const SmithForm s = smith_normal_form(m);
  std::size_t free_rank = m.rows() - std::min(m.rows(), m.cols());
  std::vector<Int> torsion;
  for (const Int& x : s.diagonal()) {
    if (x == 0)
      ++free_rank;
    else if (x >= 2)
      torsion.push_back(x);
  }
  return FGAbelianGroup(free_rank, std::move(torsion));
}

}  // namespace spinkit
