#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "spinkit/heegaard.hpp"
#include "spinkit/text_io.hpp"

using namespace spinkit;
using namespace spinkit::heegaard;

namespace {

std::vector<Int> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

bool all_even(const std::vector<Int>& f) {
  for (const auto& x : f)
    if (mpz_odd_p(x.get_mpz_t())) return false;
  return true;
}

// Every 0/1 twist vector whose integer effect makes all framings even.
std::vector<std::uint64_t> brute_force(const HeegaardTwistProblem& p) {
  std::vector<std::uint64_t> out;
  const std::size_t g = p.genus();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << g); ++m) {
    std::vector<Int> x(g);
    for (std::size_t i = 0; i < g; ++i) x[i] = (m >> i) & 1;
    if (all_even(apply_twists(p, x))) out.push_back(m);
  }
  return out;
}

std::uint64_t mask(const F2Vector& v) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v.get(i)) m |= std::uint64_t{1} << i;
  return m;
}

}  // namespace

TEST_CASE("solve_twists examples") {
  HeegaardTwistProblem id(IntMatrix::identity(3), ints({1, 0, 1}));
  auto s = solve_twists(id);
  REQUIRE(s.solvable);
  CHECK(s.x == F2Vector{1, 0, 1});
  CHECK(s.kernel.empty());

  HeegaardTwistProblem even(IntMatrix::from_rows({{1, 2}, {3, 1}}), ints({4, -2}));
  CHECK(solve_twists(even).x.is_zero());

  HeegaardTwistProblem p(IntMatrix::from_rows({{1, 1}, {0, 1}}), ints({0, 1}));
  s = solve_twists(p);
  CHECK(s.x == F2Vector{1, 1});
  CHECK(brute_force(p) == std::vector<std::uint64_t>{3});
}

TEST_CASE("unsolvable systems carry a certificate") {
  HeegaardTwistProblem p(IntMatrix::from_rows({{1, 1}, {3, -1}}), ints({0, 1}));
  const auto s = solve_twists(p);
  REQUIRE_FALSE(s.solvable);
  REQUIRE(s.certificate);
  const F2Matrix a = F2Matrix::reduce(p.incidence());
  CHECK((a.transpose() * *s.certificate).is_zero());
  CHECK(s.certificate->dot(F2Vector::from_ints(p.framings())));
  CHECK(brute_force(p).empty());
}

TEST_CASE("apply_twists examples") {
  HeegaardTwistProblem p(IntMatrix::from_rows({{1, 1}, {0, 1}}), ints({0, 1}));
  CHECK(apply_twists(p, ints({0, 0})) == p.framings());
  CHECK(apply_twists(p, ints({1, 1})) == ints({2, 2}));
  HeegaardTwistProblem id(IntMatrix::identity(3), ints({3, 4, -5}));
  CHECK(apply_twists(id, id.framings()) == ints({6, 8, -10}));
  CHECK_THROWS_AS(apply_twists(id, ints({1})), DimensionError);
}

TEST_CASE("to_framed_link") {
  HeegaardTwistProblem id(IntMatrix::identity(2), ints({2, 4}));
  CHECK(to_framed_link(id, ints({0, 0})).linking() == IntMatrix::from_rows({{2, 0}, {0, 4}}));
  HeegaardTwistProblem p(IntMatrix::from_rows({{1, 1}, {0, 1}}), ints({0, 1}));
  const auto f = to_framed_link(p, to_integers(solve_twists(p).x));
  CHECK(f.linking() == IntMatrix::from_rows({{2, 0}, {0, 2}}));
  CHECK(surgery::handle_parity(f).all_even);
  CHECK_THROWS_AS(to_framed_link(p, ints({1, 0})), ParityViolation);

  HeegaardTwistProblem linked(IntMatrix::identity(2), ints({1, 1}), IntMatrix::from_rows({{0, 3}, {3, 0}}));
  CHECK(to_framed_link(linked, ints({1, 1})).linking() == IntMatrix::from_rows({{2, 3}, {3, 2}}));
}

TEST_CASE("problem validation") {
  CHECK_THROWS_AS(HeegaardTwistProblem(IntMatrix(0, 0), {}), std::invalid_argument);
  CHECK_THROWS_AS(HeegaardTwistProblem(IntMatrix(2, 3), ints({0, 0})), DimensionError);
  CHECK_THROWS_AS(HeegaardTwistProblem(IntMatrix::identity(2), ints({0})), DimensionError);
  CHECK_THROWS_AS(HeegaardTwistProblem(IntMatrix::identity(2), ints({0, 0}), IntMatrix::from_rows({{0, 1}, {2, 0}})),
                  std::invalid_argument);
  CHECK_THROWS_AS(HeegaardTwistProblem(IntMatrix::identity(2), ints({0, 0}), IntMatrix::from_rows({{1, 0}, {0, 0}})),
                  std::invalid_argument);
}

TEST_CASE("parity of the integer effect is linear: exhaustive for g <= 2") {
  for (std::size_t g = 1; g <= 2; ++g) {
    const std::size_t cells = g * g;
    std::size_t total = 1;
    for (std::size_t c = 0; c < cells; ++c) total *= 7;
    for (std::size_t code = 0; code < total; ++code) {
      IntMatrix a(g, g);
      std::size_t rest = code;
      for (std::size_t c = 0; c < cells; ++c, rest /= 7) a(c / g, c % g) = static_cast<long>(rest % 7) - 3;
      HeegaardTwistProblem p(a, std::vector<Int>(g, 0));
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << g); ++m) {
        F2Vector x(g);
        for (std::size_t i = 0; i < g; ++i) x.set(i, (m >> i) & 1);
        const auto f = apply_twists(p, to_integers(x));
        CHECK(F2Vector::from_ints(f) == F2Matrix::reduce(a) * x);
      }
    }
  }
}

TEST_CASE("random problems against brute force") {
  std::mt19937_64 rng(53);
  std::uniform_int_distribution<long> e(-3, 3);
  for (int t = 0; t < 400; ++t) {
    const std::size_t g = 1 + rng() % 4;
    IntMatrix a(g, g);
    std::vector<Int> f(g);
    for (std::size_t i = 0; i < g; ++i) {
      f[i] = e(rng);
      for (std::size_t j = 0; j < g; ++j) a(i, j) = e(rng);
    }
    HeegaardTwistProblem p(a, f);
    const auto s = solve_twists(p);
    const auto expected = brute_force(p);
    CHECK(s.solvable == !expected.empty());
    if (s.solvable) {
      CHECK(all_even(apply_twists(p, to_integers(s.x))));
      CHECK(expected.size() == (std::size_t{1} << s.kernel.size()));
      CHECK(std::find(expected.begin(), expected.end(), mask(s.x)) != expected.end());
    }
    if (F2Matrix::reduce(a).rank() == g) CHECK(s.solvable);
  }
}

TEST_CASE("problem text format") {
  HeegaardTwistProblem p(IntMatrix::from_rows({{1, 1}, {0, 1}}), ints({0, -1}));
  const std::string text = format_problem(p);
  CHECK(text == "heegaard g=2\n2 2\n1 1\n0 1\n0 -1\n");
  const auto back = parse_problem(text);
  CHECK(back.incidence() == p.incidence());
  CHECK(back.framings() == p.framings());
  CHECK_FALSE(back.linking());

  HeegaardTwistProblem q(IntMatrix::identity(2), ints({1, 1}), IntMatrix::from_rows({{0, 3}, {3, 0}}));
  CHECK(*parse_problem(format_problem(q)).linking() == *q.linking());

  CHECK_THROWS_AS(parse_problem("heegaard g=2\n2 2\n1 1\n0 1\n0\n"), ParseError);
  CHECK_THROWS_AS(parse_problem("heegaard g=2\n1 1\n1\n0\n"), ParseError);
  CHECK_THROWS_AS(parse_problem("heegaard g=0\n"), ParseError);
  CHECK_THROWS_AS(parse_problem("heegaard g=1\n1 1\n1\n0\nextra\n"), ParseError);
  CHECK_THROWS_AS(parse_problem("heegaard g=1\n1 1\n1\n"), ParseError);
}
