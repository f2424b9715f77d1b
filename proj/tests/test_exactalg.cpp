#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "spinkit/abelian_group.hpp"
#include "spinkit/f2.hpp"
#include "spinkit/text_io.hpp"

using namespace spinkit;

namespace {

void check_smith(const IntMatrix& m) {
  const SmithForm s = smith_normal_form(m);
  REQUIRE(s.u * m * s.v == s.d);
  CHECK(abs(s.u.determinant()) == 1);
  CHECK(abs(s.v.determinant()) == 1);
  for (std::size_t i = 0; i < s.d.rows(); ++i)
    for (std::size_t j = 0; j < s.d.cols(); ++j)
      if (i != j) CHECK(s.d(i, j) == 0);
  const auto diag = s.diagonal();
  for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
    CHECK(diag[i] >= 0);
    if (diag[i] != 0) CHECK(mpz_divisible_p(diag[i + 1].get_mpz_t(), diag[i].get_mpz_t()));
    else CHECK(diag[i + 1] == 0);
  }
  CHECK(diag == oracle::invariant_factors_by_minors(m));
}

}  // namespace

TEST_CASE("smith normal form: fixed examples") {
  CHECK(smith_normal_form(IntMatrix::from_rows({{0}})).d == IntMatrix::from_rows({{0}}));
  CHECK(smith_normal_form(IntMatrix::identity(2)).d == IntMatrix::identity(2));
  // Minors oracle: gcd of entries is 1, determinant is 3.
  const auto m = IntMatrix::from_rows({{2, 1}, {1, 2}});
  CHECK(oracle::invariant_factors_by_minors(m) == std::vector<Int>{1, 3});
  CHECK(smith_normal_form(m).d == IntMatrix::from_rows({{1, 0}, {0, 3}}));
  check_smith(m);
  check_smith(IntMatrix::from_rows({{4, 6, 0}, {6, 9, 12}}));
  check_smith(IntMatrix::from_rows({{0, 0}, {0, 0}, {0, 5}}));
  check_smith(IntMatrix(0, 3));
}

TEST_CASE("smith normal form is deterministic") {
  const auto m = IntMatrix::from_rows({{6, 4, 2}, {4, 10, -8}, {2, -8, 7}});
  const SmithForm a = smith_normal_form(m);
  const SmithForm b = smith_normal_form(m);
  CHECK(a.u == b.u);
  CHECK(a.v == b.v);
  CHECK(a.d == b.d);
}

TEST_CASE("smith normal form: random matrices against the minors oracle") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  std::uniform_int_distribution<long> entry(-9, 9);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t r = dim(rng), c = dim(rng);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = entry(rng);
    check_smith(m);
  }
}

TEST_CASE("determinant matches permutation expansion") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const auto m = oracle::random_symmetric(rng, 1 + trial % 5, -6, 6);
    CHECK(m.determinant() == oracle::leibniz_det(m));
  }
  CHECK(IntMatrix().determinant() == 1);
}

TEST_CASE("cokernel examples") {
  auto z = cokernel(IntMatrix::from_rows({{0}}));
  CHECK(z.free_rank() == 1);
  CHECK(z.torsion().empty());
  auto z3 = cokernel(IntMatrix::from_rows({{3}}));
  CHECK(z3.free_rank() == 0);
  CHECK(z3.torsion() == std::vector<Int>{3});
  auto a = cokernel(IntMatrix::from_rows({{2, 1}, {1, 2}}));
  CHECK(a.to_string() == "Z/3");
  CHECK(cokernel(IntMatrix::from_rows({{1}})).is_trivial());
  CHECK(cokernel(IntMatrix(2, 0)).free_rank() == 2);
}

TEST_CASE("cokernel is invariant under unimodular changes of basis") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const auto m = oracle::random_symmetric(rng, n, -5, 5);
    const auto u = oracle::random_unimodular(rng, n);
    const auto v = oracle::random_unimodular(rng, n);
    const auto g = cokernel(m);
    CHECK(g.isomorphic(cokernel(u * m * v)));
    const auto [free_rank, torsion] = oracle::cokernel_by_minors(m);
    CHECK(g.free_rank() == free_rank);
    CHECK(g.torsion() == torsion);
  }
}

TEST_CASE("f2_solve: fixed examples") {
  SUBCASE("identity") {
    auto s = f2_solve(F2Matrix::identity(3), F2Vector{1, 0, 1});
    REQUIRE(s.solvable);
    CHECK(s.x == F2Vector{1, 0, 1});
    CHECK(s.kernel.empty());
  }
  SUBCASE("zero matrix") {
    auto s = f2_solve(F2Matrix(2, 2), F2Vector{0, 0});
    REQUIRE(s.solvable);
    CHECK(s.x == F2Vector{0, 0});
    CHECK(s.kernel.size() == 2);
  }
  SUBCASE("rank one, enumerated") {
    const F2Matrix a{{1, 1}, {1, 1}};
    // enumeration: of the four vectors only 10 and 01 solve it
    CHECK(oracle::f2_enumerate({{1, 1}, {1, 1}}, {1, 1}, 2) == std::vector<std::uint64_t>{1, 2});
    auto s = f2_solve(a, F2Vector{1, 1});
    REQUIRE(s.solvable);
    CHECK(s.x == F2Vector{1, 0});
    REQUIRE(s.kernel.size() == 1);
    CHECK(s.kernel[0] == F2Vector{1, 1});
  }
  SUBCASE("unsolvable carries a certificate") {
    const F2Matrix a{{1, 1}, {1, 1}};
    const F2Vector b{1, 0};
    auto s = f2_solve(a, b);
    CHECK_FALSE(s.solvable);
    REQUIRE(s.certificate);
    CHECK((a.transpose() * *s.certificate).is_zero());
    CHECK(s.certificate->dot(b));
  }
  CHECK_THROWS_AS(f2_solve(F2Matrix(2, 2), F2Vector{1}), DimensionError);
}

TEST_CASE("f2_solve: random systems against enumeration") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> bit(0, 1);
  std::uniform_int_distribution<std::size_t> dim(1, 7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = dim(rng), n = dim(rng);
    std::vector<std::vector<int>> rows(m, std::vector<int>(n));
    std::vector<int> rhs(m);
    F2Matrix a(m, n);
    F2Vector b(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        rows[i][j] = bit(rng);
        a.set(i, j, rows[i][j]);
      }
      rhs[i] = bit(rng);
      b.set(i, rhs[i]);
    }
    const auto expected = oracle::f2_enumerate(rows, rhs, n);
    const auto s = f2_solve(a, b);
    CHECK(s.solvable == !expected.empty());
    if (!s.solvable) {
      REQUIRE(s.certificate);
      CHECK((a.transpose() * *s.certificate).is_zero());
      CHECK(s.certificate->dot(b));
      continue;
    }
    CHECK(a * s.x == b);
    for (const auto& k : s.kernel) CHECK((a * k).is_zero());
    CHECK(expected.size() == (std::size_t{1} << s.kernel.size()));
    CHECK(a.rank() + s.kernel.size() == n);
  }
}

TEST_CASE("is_even and mod2_reduction: fixed examples") {
  FGAbelianGroup z(1, {});
  auto e = is_even(z, z.element({4}));
  REQUIRE(e.even);
  CHECK(e.half->coords() == std::vector<Int>{2});
  CHECK(mod2_reduction(z, z.element({4})).is_zero());
  CHECK(mod2_reduction(z, z.element({3})) == F2Vector{1});

  FGAbelianGroup z2(0, {2});
  CHECK_FALSE(is_even(z2, z2.element({1})).even);

  // Z/4 + Z: 2G = {0, 2} x 2Z, so (2, 6) is even with halves (1, 3) and (3, 3).
  FGAbelianGroup g(1, {4});
  auto h = is_even(g, g.element({2, 6}));
  REQUIRE(h.even);
  CHECK(h.half->coords() == std::vector<Int>{1, 3});
  CHECK(h.half->scaled(2) == g.element({2, 6}));

  // (Z/4) / 2(Z/4) = Z/2; the coset of 2 is trivial.
  FGAbelianGroup z4(0, {4});
  const auto r = mod2_reduction(z4, z4.element({2}));
  CHECK(r.size() == 1);
  CHECK(r.is_zero());

  // odd torsion is 2-divisible
  FGAbelianGroup z5(0, {5});
  auto f = is_even(z5, z5.element({3}));
  REQUIRE(f.even);
  CHECK(f.half->scaled(2) == z5.element({3}));
  CHECK(mod2_reduction(z5, z5.element({3})).size() == 0);
}

TEST_CASE("group identity tokens") {
  FGAbelianGroup a(1, {});
  FGAbelianGroup b(1, {});
  CHECK(a.isomorphic(b));
  CHECK(a.id() != b.id());
  CHECK_THROWS_AS(a.element({1}) + b.element({1}), GroupMismatch);
  CHECK_THROWS_AS(is_even(a, b.element({2})), GroupMismatch);
  CHECK_THROWS_AS(mod2_reduction(a, b.element({2})), GroupMismatch);
  FGAbelianGroup copy = a;
  CHECK_NOTHROW(copy.element({1}) + a.element({2}));
  CHECK_THROWS_AS(FGAbelianGroup(0, {4, 6}), std::invalid_argument);
  CHECK_THROWS_AS(FGAbelianGroup(0, {1}), std::invalid_argument);
  CHECK(FGAbelianGroup().is_trivial());
  CHECK(FGAbelianGroup(2, {2, 6}).hom_to_z2_count() == 16);
}

TEST_CASE("is_even agrees with mod2_reduction and with enumeration of 2G") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = oracle::random_group(rng, 2, 3, 12);
    const auto e = oracle::random_element(rng, g);
    const auto d = is_even(g, e);
    CHECK(d.even == mod2_reduction(g, e).is_zero());
    if (d.even) CHECK(d.half->scaled(2) == e);

    CHECK(d.even == oracle::in_double_by_enumeration(g, e));
  }
}

TEST_CASE("matrix text format") {
  const auto m = parse_int_matrix("# comment\n2 3\n1 -2 3\n  4 5 +6  # trailing\n");
  CHECK(m == IntMatrix::from_rows({{1, -2, 3}, {4, 5, 6}}));
  CHECK(parse_int_matrix(format_int_matrix(m)) == m);
  CHECK(parse_int_matrix("1 1 7") == IntMatrix::from_rows({{7}}));
  CHECK_THROWS_AS(parse_int_matrix("2 2\n1 2\n3"), ParseError);
  CHECK_THROWS_AS(parse_int_matrix("1 1\nx"), ParseError);
  CHECK_THROWS_AS(parse_int_matrix("1 1\n1 2"), ParseError);
  try {
    parse_int_matrix("2 2\n1 2\n3 q\n", "m.txt");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("m.txt:3") != std::string::npos);
  }
  TextReader r("2 2\n0 1\n1 2\n");
  CHECK_THROWS_AS(read_f2_matrix(r), ParseError);
  TextReader ok("2 2\n0 1\n1 1\n");
  CHECK(read_f2_matrix(ok) == F2Matrix{{0, 1}, {1, 1}});
}
