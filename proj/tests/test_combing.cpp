#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "spinkit/combing.hpp"
#include "spinkit/text_io.hpp"

using namespace spinkit;
using namespace spinkit::combing;

TEST_CASE("new_ledger examples") {
  const FGAbelianGroup z5(0, {5});
  auto l = new_ledger(z5, z5.zero());
  CHECK(l.size() == 1);
  CHECK(l.euler(l.base()).is_zero());

  const FGAbelianGroup z(1, {});
  CHECK(new_ledger(z, z.element({2})).euler(CombingId{0}) == z.element({2}));

  const FGAbelianGroup g(1, {4});
  CHECK(new_ledger(g, g.element({2, 0})).euler(CombingId{0}).to_string() == "(2,0)");

  CHECK_THROWS_AS(new_ledger(z, z5.zero()), GroupMismatch);
}

TEST_CASE("pontryagin_surgery examples") {
  const FGAbelianGroup z(1, {});
  auto l = new_ledger(z, z.zero());
  const auto v1 = l.pontryagin_surgery(l.base(), z.element({3}));
  CHECK(l.euler(v1) == z.element({-6}));
  CHECK(l.compare(l.base(), v1) == z.element({3}));
  CHECK(l.compare(v1, l.base()) == z.element({-3}));

  const auto v2 = l.pontryagin_surgery(v1, z.zero());
  CHECK(l.euler(v2) == l.euler(v1));

  const FGAbelianGroup z4(0, {4});
  auto m = new_ledger(z4, z4.element({2}));
  const auto w = m.pontryagin_surgery(m.base(), z4.element({1}));
  CHECK(m.euler(w).is_zero());
  CHECK(m.pairs().back().alpha_minus == z4.element({1}));

  CHECK_THROWS_AS(l.pontryagin_surgery(CombingId{9}, z.zero()), UnknownCombing);
  CHECK_THROWS_AS(l.pontryagin_surgery(l.base(), z4.zero()), GroupMismatch);
  CHECK(l.validate().empty());
}

TEST_CASE("compare along a chain") {
  const FGAbelianGroup g(1, {2, 6});
  auto l = new_ledger(g, g.element({1, 3, 5}));
  const auto b1 = g.element({1, 2, -4});
  const auto b2 = g.element({0, 5, 7});
  const auto v1 = l.pontryagin_surgery(l.base(), b1);
  const auto v2 = l.pontryagin_surgery(v1, b2);
  CHECK(l.compare(l.base(), l.base()).is_zero());
  CHECK(l.compare(l.base(), v2) == b1 + b2);
  CHECK((b1 + b2).scaled(2) == l.euler(l.base()) - l.euler(v2));
  CHECK(l.compare(v2, l.base()) == -(b1 + b2));
}

TEST_CASE("compare refuses unconnected symbols") {
  const FGAbelianGroup z2(0, {2});
  auto l = new_ledger(z2, z2.zero());
  const auto w = l.add_combing_unchecked(z2.zero());
  // 2 alpha = 0 has two solutions in Z/2, so there is nothing to infer.
  CHECK_THROWS_AS(l.compare(l.base(), w), NotConnected);
}

TEST_CASE("is_parallelizable examples") {
  const FGAbelianGroup z(1, {});
  auto l = new_ledger(z, z.element({4}));
  auto d = l.is_parallelizable();
  CHECK(d.parallelizable);
  CHECK(*d.beta == z.element({2}));
  CHECK(l.euler(*d.witness).is_zero());

  const FGAbelianGroup z2(0, {2});
  auto m = new_ledger(z2, z2.element({1}));
  d = m.is_parallelizable();
  CHECK_FALSE(d.parallelizable);
  CHECK_FALSE(d.witness);
  CHECK(m.size() == 1);

  const FGAbelianGroup trivial;
  auto t = new_ledger(trivial, trivial.zero());
  d = t.is_parallelizable();
  CHECK(d.parallelizable);
  CHECK(t.euler(*d.witness).is_zero());
}

TEST_CASE("validate detects injected faults") {
  const FGAbelianGroup z(1, {});
  auto l = new_ledger(z, z.element({2}));
  CHECK(l.validate().empty());
  l.pontryagin_surgery(l.base(), z.element({5}));
  CHECK(l.validate().empty());
  l.set_euler_unchecked(CombingId{1}, z.element({7}));
  const auto issues = l.validate();
  CHECK_FALSE(issues.empty());

  auto m = new_ledger(z, z.zero());
  m.add_surgery_unchecked(SurgeryEdge{CombingId{0}, CombingId{3}, z.zero()});
  CHECK_FALSE(m.validate().empty());
}

TEST_CASE("random surgery histories keep the ledger laws") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 100; ++t) {
    const auto g = oracle::random_group(rng, 2, 3, 12);
    const auto e0 = oracle::random_element(rng, g);
    auto l = new_ledger(g, e0);
    // parent[i] and beta[i] give an independent record of the surgery tree
    std::vector<std::size_t> parent{0};
    std::vector<GroupElement> beta{g.zero()};
    const std::size_t steps = 1 + rng() % 10;
    for (std::size_t s = 0; s < steps; ++s) {
      const std::size_t from = rng() % l.size();
      const auto b = oracle::random_element(rng, g);
      l.pontryagin_surgery(CombingId{static_cast<std::uint32_t>(from)}, b);
      parent.push_back(from);
      beta.push_back(b);
    }
    CHECK(l.validate().empty());
    // alpha(base, v) = sum of betas on the tree path
    auto from_base = [&](std::size_t v) {
      GroupElement a = g.zero();
      for (; v != 0; v = parent[v]) a = a + beta[v];
      return a;
    };
    const bool base_even = oracle::in_double_by_enumeration(g, e0);
    for (std::uint32_t v = 0; v < l.size(); ++v) {
      CHECK(oracle::in_double_by_enumeration(g, l.euler(CombingId{v})) == base_even);
      for (std::uint32_t w = 0; w < l.size(); ++w) {
        const auto a = l.compare(CombingId{v}, CombingId{w});
        CHECK(a == from_base(w) - from_base(v));
        CHECK(a == -l.compare(CombingId{w}, CombingId{v}));
        CHECK(a.scaled(2) == l.euler(CombingId{v}) - l.euler(CombingId{w}));
      }
    }
    const auto d = l.is_parallelizable();
    CHECK(d.parallelizable == base_even);
    if (d.parallelizable) CHECK(l.euler(*d.witness).is_zero());
    CHECK(l.validate().empty());
  }
}

TEST_CASE("surgery realizes every class") {
  const FGAbelianGroup g(0, {2, 4});
  auto l = new_ledger(g, g.element({1, 3}));
  for (long a = 0; a < 2; ++a)
    for (long b = 0; b < 4; ++b) {
      const auto beta = g.element({a, b});
      const auto w = l.pontryagin_surgery(l.base(), beta);
      CHECK(l.compare(l.base(), w) == beta);
    }
}

TEST_CASE("ledger text format round trip") {
  const FGAbelianGroup g(1, {4});
  auto l = new_ledger(g, g.element({2, 6}));
  const auto v = l.pontryagin_surgery(l.base(), g.element({1, 3}));
  l.pontryagin_surgery(v, g.element({3, -1}));
  const std::string text = serialize(l);
  CHECK(text.rfind("group free=1 torsion=4\ncombing 0 euler (2,6)\n", 0) == 0);
  const auto back = parse_ledger(text);
  CHECK(serialize(back) == text);
  CHECK(back.validate().empty());
  CHECK(back.compare(CombingId{0}, CombingId{2}) == back.group().element({0, 2}));
  CHECK_FALSE(back.compare(CombingId{0}, CombingId{2}).belongs_to(g));

  const auto trivial = parse_ledger("group free=0 torsion=\ncombing 0 euler ()\n");
  CHECK(trivial.group().is_trivial());

  CHECK_THROWS_AS(parse_ledger("group free=1 torsion=4\ncombing 1 euler (0,0)\n"), ParseError);
  CHECK_THROWS_AS(parse_ledger("group free=1 torsion=4\ncombing 0 euler (0)\n"), ParseError);
  CHECK_THROWS_AS(parse_ledger("group free=0 torsion=4,6\ncombing 0 euler (0,0)\n"), ParseError);
  CHECK_THROWS_AS(parse_ledger("group free=0 torsion=2\n"), ParseError);
  CHECK_THROWS_AS(parse_ledger("group free=0 torsion=2\ncombing 0 euler (1)\nfoo\n"), ParseError);

  // a consistent-looking file with a wrong pair equation loads, then fails validation
  const auto bad = parse_ledger(
      "group free=1 torsion=\ncombing 0 euler (0)\ncombing 1 euler (-6)\n"
      "pair 0 1 alpha+ (3) alpha- (-2)\nsurgery 0 1 beta (3)\n");
  CHECK_FALSE(bad.validate().empty());
}
