#pragma once

// Test-only reference computations. Nothing here calls into the code paths
// it is used to check: determinants are expanded by permutations, invariant
// factors come from gcds of minors, F2 systems are solved by enumeration.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "spinkit/abelian_group.hpp"
#include "spinkit/f2.hpp"
#include "spinkit/int_matrix.hpp"

namespace oracle {

using spinkit::Int;
using spinkit::IntMatrix;

inline Int leibniz_det(const std::vector<std::vector<Int>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Int total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Int term = (inversions % 2) ? -1 : 1;
    for (std::size_t i = 0; i < n && term != 0; ++i) term *= a[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline Int leibniz_det(const IntMatrix& m) {
  std::vector<std::vector<Int>> a(m.rows(), std::vector<Int>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
  return leibniz_det(a);
}

/// Gaussian elimination over Q; faster than the permutation sum for k > 4.
inline Int rational_det(const std::vector<std::vector<Int>>& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      const mpq_class f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det.get_num();
}

inline void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) s.push_back(i);
    out.push_back(s);
  } while (std::prev_permutation(pick.begin(), pick.end()));
}

/// Invariant factors (including trailing zeros up to min(rows, cols)) from
/// determinantal divisors: d_1 ... d_k = gcd of all k x k minors.
inline std::vector<Int> invariant_factors_by_minors(const IntMatrix& m) {
  const std::size_t r = std::min(m.rows(), m.cols());
  std::vector<Int> divisors{Int(1)};
  for (std::size_t k = 1; k <= r; ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    subsets(m.rows(), k, rs);
    subsets(m.cols(), k, cs);
    Int g = 0;
    for (const auto& ri : rs)
      for (const auto& ci : cs) {
        std::vector<std::vector<Int>> sub(k, std::vector<Int>(k));
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = 0; b < k; ++b) sub[a][b] = m(ri[a], ci[b]);
        Int d = k <= 4 ? leibniz_det(sub) : rational_det(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      }
    divisors.push_back(g);
  }
  std::vector<Int> factors;
  for (std::size_t k = 1; k <= r; ++k) {
    if (divisors[k] == 0) {
      factors.push_back(0);
    } else {
      factors.push_back(divisors[k] / divisors[k - 1]);
    }
  }
  return factors;
}

/// Cokernel invariants (free rank, torsion >= 2) via the minors oracle.
inline std::pair<std::size_t, std::vector<Int>> cokernel_by_minors(const IntMatrix& m) {
  std::size_t free_rank = m.rows() - std::min(m.rows(), m.cols());
  std::vector<Int> torsion;
  for (const Int& d : invariant_factors_by_minors(m)) {
    if (d == 0)
      ++free_rank;
    else if (d >= 2)
      torsion.push_back(d);
  }
  return {free_rank, torsion};
}

/// All x in F2^n with A x = b, by enumeration (n small).
inline std::vector<std::uint64_t> f2_enumerate(const std::vector<std::vector<int>>& a,
                                               const std::vector<int>& b, std::size_t n) {
  std::vector<std::uint64_t> sols;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) {
      int s = 0;
      for (std::size_t j = 0; j < n; ++j) s ^= a[i][j] & static_cast<int>((x >> j) & 1);
      ok = (s == (b[i] & 1));
    }
    if (ok) sols.push_back(x);
  }
  return sols;
}

inline IntMatrix random_symmetric(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  IntMatrix q(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      q(i, j) = dist(rng);
      q(j, i) = q(i, j);
    }
  return q;
}

/// Random unimodular matrix as a product of elementary transvections and
/// sign flips.
inline IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int steps = 8) {
  IntMatrix u = IntMatrix::identity(n);
  if (n == 0) return u;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int s = 0; s < steps; ++s) {
    std::size_t i = idx(rng), j = idx(rng);
    if (i == j) {
      u.negate_row(i);
      continue;
    }
    u.add_row_multiple(i, j, coef(rng));
  }
  return u;
}

/// Random group with at most max_torsion invariant factors, each <= max_factor.
inline spinkit::FGAbelianGroup random_group(std::mt19937_64& rng, std::size_t max_free,
                                            std::size_t max_torsion, long max_factor) {
  std::uniform_int_distribution<std::size_t> fr(0, max_free);
  std::uniform_int_distribution<std::size_t> tc(0, max_torsion);
  const std::size_t k = tc(rng);
  std::vector<Int> torsion;
  long prev = 1;
  for (std::size_t i = 0; i < k; ++i) {
    // next factor: a multiple of prev that stays within max_factor, if any
    std::vector<long> choices;
    for (long d = std::max(2L, prev); d <= max_factor; ++d)
      if (d % prev == 0) choices.push_back(d);
    if (choices.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, choices.size() - 1);
    prev = choices[pick(rng)];
    torsion.push_back(prev);
  }
  return spinkit::FGAbelianGroup(fr(rng), torsion);
}

inline spinkit::GroupElement random_element(std::mt19937_64& rng, const spinkit::FGAbelianGroup& g,
                                            long free_range = 20) {
  std::vector<Int> c;
  for (const Int& d : g.torsion()) {
    std::uniform_int_distribution<long> dist(0, d.get_si() - 1);
    c.push_back(dist(rng));
  }
  std::uniform_int_distribution<long> fd(-free_range, free_range);
  for (std::size_t i = 0; i < g.free_rank(); ++i) c.push_back(fd(rng));
  return g.element(c);
}

/// e in 2G, by trying every residue t with 2t = e on each torsion factor.
inline bool in_double_by_enumeration(const spinkit::FGAbelianGroup& g, const spinkit::GroupElement& e) {
  for (std::size_t i = 0; i < g.torsion().size(); ++i) {
    const long m = g.torsion()[i].get_si();
    bool hit = false;
    for (long t = 0; t < m && !hit; ++t) hit = ((2 * t) % m == e.coords()[i].get_si());
    if (!hit) return false;
  }
  for (std::size_t i = g.torsion().size(); i < e.coords().size(); ++i)
    if (!mpz_even_p(e.coords()[i].get_mpz_t())) return false;
  return true;
}

/// Entries mod 2 as 0/1 ints.
inline std::vector<std::vector<int>> mod2_rows(const IntMatrix& m) {
  std::vector<std::vector<int>> out(m.rows(), std::vector<int>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = mpz_odd_p(m(i, j).get_mpz_t()) ? 1 : 0;
  return out;
}

/// |Hom(coker M, Z/2)| = 2^(free rank + number of even invariant factors).
inline Int hom_to_z2_by_minors(const IntMatrix& m) {
  auto [free_rank, torsion] = cokernel_by_minors(m);
  std::size_t e = free_rank;
  for (const Int& d : torsion)
    if (mpz_even_p(d.get_mpz_t())) ++e;
  Int out = 1;
  for (std::size_t i = 0; i < e; ++i) out *= 2;
  return out;
}

inline IntMatrix e8() {
  IntMatrix q(8, 8);
  for (std::size_t i = 0; i < 8; ++i) q(i, i) = 2;
  // Dynkin diagram: chain 0-1-2-3-4-5-6 with 7 attached to 4.
  const std::pair<std::size_t, std::size_t> edges[] = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 7}};
  for (auto [a, b] : edges) q(a, b) = q(b, a) = -1;
  return q;
}

}  // namespace oracle
