// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "spinkit/abelian_group.hpp"
#include "spinkit/combing.hpp"
#include "spinkit/heegaard.hpp"
#include "spinkit/linkgeom.hpp"
#include "spinkit/surfaces.hpp"
#include "spinkit/surgery.hpp"

using namespace spinkit;
using surgery::FramedLinkMatrix;

namespace {

struct Outcome {
  bool pass = true;
  std::string summary;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", s);
  return buf;
}

bool all_even(const IntMatrix& q) {
  for (std::size_t i = 0; i < q.rows(); ++i)
    if (mpz_odd_p(q(i, i).get_mpz_t())) return false;
  return true;
}

// Solutions of Q x = diag(Q) mod 2, counted by enumeration.
std::size_t characteristic_count(const IntMatrix& q) {
  const auto a = oracle::mod2_rows(q);
  std::vector<int> b(q.rows());
  for (std::size_t i = 0; i < q.rows(); ++i) b[i] = a[i][i];
  return oracle::f2_enumerate(a, b, q.rows()).size();
}

// |{x : Q x = 0 mod 2}| = |Hom(coker Q, Z/2)|, by enumeration.
std::size_t f2_kernel_size(const IntMatrix& q) {
  return oracle::f2_enumerate(oracle::mod2_rows(q), std::vector<int>(q.rows(), 0), q.rows()).size();
}

std::vector<IntMatrix> criterion1_corpus() {
  std::mt19937_64 rng(1001);
  std::vector<IntMatrix> out;
  for (int t = 0; t < 500; ++t) out.push_back(oracle::random_symmetric(rng, 1 + rng() % 8, -5, 5));
  return out;
}

Outcome spin_solvability(const std::vector<IntMatrix>& corpus) {
  const auto t0 = Clock::now();
  std::size_t ok = 0;
  for (const auto& q : corpus) {
    const FramedLinkMatrix f(q);
    const auto s = surgery::characteristic_solutions(f);
    const bool good = surgery::is_characteristic(f, s.x) &&
                      characteristic_count(q) == (std::size_t{1} << s.solution_dimension());
    ok += good;
  }
  const double dt = seconds_since(t0);
  return {ok == corpus.size() && dt < 5.0,
          std::to_string(ok) + "/" + std::to_string(corpus.size()) + " solved and counted, " + secs(dt)};
}

Outcome spin_count(const std::vector<IntMatrix>& corpus) {
  std::size_t ok = 0;
  for (const auto& q : corpus) {
    const Int n = surgery::spin_structure_count(FramedLinkMatrix(q));
    ok += n == oracle::hom_to_z2_by_minors(q) && n == Int(f2_kernel_size(q));
  }
  return {ok == corpus.size(), std::to_string(ok) + "/" + std::to_string(corpus.size()) + " counts equal |Hom(coker Q, Z/2)|"};
}

Outcome evenization() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2002);
  std::size_t solved = 0, verified = 0, exhausted_reported = 0;
  for (int t = 0; t < 100; ++t) {
    const IntMatrix q = oracle::random_symmetric(rng, 1 + rng() % 4, -3, 3);
    const FramedLinkMatrix f(q);
    const auto r = surgery::evenize(f);
    if (!r.success) {
      exhausted_reported += r.phase == surgery::EvenizePhase::Exhausted && !r.detail.empty();
      continue;
    }
    ++solved;
    const auto g = surgery::apply_script(f, r.script);
    verified += g == r.result && all_even(g.linking()) &&
                oracle::cokernel_by_minors(q) == oracle::cokernel_by_minors(g.linking());
  }
  const double dt = seconds_since(t0);
  const bool pass = solved >= 95 && verified == solved && solved + exhausted_reported == 100 && dt < 60.0;
  return {pass, std::to_string(solved) + "/100 evenized, " + std::to_string(verified) + " witnesses verified, " +
                    std::to_string(exhausted_reported) + " exhaustions reported, " + secs(dt)};
}

Outcome combing_calculus() {
  std::mt19937_64 rng(4004);
  std::size_t ok = 0;
  for (int t = 0; t < 200; ++t) {
    const auto g = oracle::random_group(rng, 2, 3, 12);
    auto l = combing::new_ledger(g, oracle::random_element(rng, g));
    const std::size_t steps = rng() % 11;
    for (std::size_t s = 0; s < steps; ++s)
      l.pontryagin_surgery(combing::CombingId{static_cast<std::uint32_t>(rng() % l.size())}, oracle::random_element(rng, g));
    bool good = l.validate().empty();
    for (std::uint32_t v = 0; v < l.size(); ++v)
      for (std::uint32_t w = 0; w < l.size(); ++w) {
        const auto a = l.compare({v}, {w});
        good = good && a == -l.compare({w}, {v}) && a.scaled(2) == l.euler({v}) - l.euler({w});
      }
    const bool base_even = is_even(g, l.euler(l.base())).even;
    const auto d = l.is_parallelizable();
    good = good && d.parallelizable == base_even && base_even == oracle::in_double_by_enumeration(g, l.euler(l.base()));
    if (d.parallelizable) good = good && l.euler(*d.witness).is_zero();
    good = good && l.validate().empty();
    ok += good;
  }
  return {ok == 200, std::to_string(ok) + "/200 ledgers satisfy the comparison laws"};
}

Outcome evenness() {
  std::mt19937_64 rng(5005);
  std::size_t ok = 0;
  for (int t = 0; t < 200; ++t) {
    const auto g = oracle::random_group(rng, 2, 3, 12);
    const auto e = oracle::random_element(rng, g);
    const auto d = is_even(g, e);
    bool good = d.even == mod2_reduction(g, e).is_zero() && d.even == oracle::in_double_by_enumeration(g, e);
    if (d.even) good = good && d.half->scaled(2) == e;
    ok += good;
  }
  return {ok == 200, std::to_string(ok) + "/200 elements agree"};
}

Outcome surface_pairing() {
  std::size_t ok = 0, total = 0;
  for (std::int64_t g = 0; g <= 50; ++g, ++total) {
    const auto s = surfaces::ClosedSurface::orientable(g);
    const auto t = surfaces::pairing_terms(s);
    ok += surfaces::pairing_w_Fv(s) == 0 && t.tangent == 0 && t.normal_cup == 0;
  }
  for (std::int64_t h = 1; h <= 50; ++h, ++total) {
    const auto s = surfaces::ClosedSurface::nonorientable(h);
    const auto t = surfaces::pairing_terms(s);
    const int chi2 = static_cast<int>(((2 - h) % 2 + 2) % 2);
    ok += surfaces::pairing_w_Fv(s) == 0 && t.tangent == chi2 && t.normal_cup == h % 2;
  }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " surfaces pair to 0"};
}

Outcome heegaard_system() {
  std::mt19937_64 rng(7007);
  std::uniform_int_distribution<long> e(-3, 3);
  std::size_t solved = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t g = 1 + rng() % 4;
    IntMatrix a(g, g);
    do {
      for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) a(i, j) = e(rng);
    } while (F2Matrix::reduce(a).rank() != g);
    std::vector<Int> f(g);
    for (auto& x : f) x = e(rng);
    const heegaard::HeegaardTwistProblem p(a, f);
    const auto s = heegaard::solve_twists(p);
    solved += s.solvable && all_even(heegaard::to_framed_link(p, heegaard::to_integers(s.x)).linking());
  }
  std::size_t identity = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t g = 1 + rng() % 4;
    IntMatrix a(g, g);
    std::vector<Int> f(g), x(g);
    for (std::size_t i = 0; i < g; ++i) {
      f[i] = e(rng);
      x[i] = rng() % 2;
      for (std::size_t j = 0; j < g; ++j) a(i, j) = e(rng);
    }
    const auto twisted = heegaard::apply_twists(heegaard::HeegaardTwistProblem(a, f), x);
    bool good = true;
    for (std::size_t j = 0; j < g; ++j) {
      Int linear = f[j];
      for (std::size_t i = 0; i < g; ++i) linear += x[i] * a(j, i);
      good = good && mpz_odd_p(twisted[j].get_mpz_t()) == mpz_odd_p(linear.get_mpz_t());
    }
    identity += good;
  }
  return {solved == 100 && identity == 1000,
          std::to_string(solved) + "/100 invertible systems evened, " + std::to_string(identity) +
              "/1000 parity identities"};
}

Outcome linking_geometry() {
  using linkgeom::PolyCurve3;
  const PolyCurve3 a({{0, 0, 0}, {2, 0, 0}, {2, 2, 0}, {0, 2, 0}}, "A");
  const PolyCurve3 b({{1, 1, -1}, {1, 1, 1}, {1, -1, 1}, {1, -1, -1}}, "B");
  const auto lk = linkgeom::linking_number(a, b);
  const double gauss = linkgeom::gauss_linking(a, b);
  const bool hopf = std::abs(lk) == 1 && std::fabs(gauss - static_cast<double>(lk)) < 0.1;

  std::size_t twists = 0;
  bool route = true;
  for (std::int64_t k = -4; k <= 4; ++k) {
    const auto [c, n] = linkgeom::twisted_unknot(k);
    const auto sl = linkgeom::self_linking(c, n);
    const bool ext = linkgeom::extends_over_seifert(c, n);
    twists += sl == k && ext == (k % 2 != 0);
    route = route && (linkgeom::so3_loop_class(1, sl) == 0) == ext;
  }
  std::size_t pairs = 0;
  for (std::int64_t chi = 1; chi >= -19; chi -= 2)
    for (std::int64_t deg = -6; deg <= 6; ++deg, ++pairs)
      route = route && (linkgeom::so3_loop_class(chi, deg) == 0) == (deg % 2 != 0);
  return {hopf && twists == 9 && route, "Hopf lk " + std::to_string(lk) + " (Gauss " + std::to_string(gauss) + "), " +
                                            std::to_string(twists) + "/9 twisted unknots, so3 route on " +
                                            std::to_string(pairs) + " pairs " + (route ? "consistent" : "inconsistent")};
}

surgery::MoveScript random_script(std::mt19937_64& rng, FramedLinkMatrix f, std::size_t len) {
  surgery::MoveScript s;
  for (std::size_t m = 0; m < len; ++m) {
    std::vector<std::size_t> removable;
    for (std::size_t i = 0; i < f.size(); ++i) {
      bool isolated = abs(f.framing(i)) == 1;
      for (std::size_t j = 0; j < f.size() && isolated; ++j) isolated = j == i || f.linking()(i, j) == 0;
      if (isolated) removable.push_back(i);
    }
    const int kind = rng() % 3;
    surgery::KirbyMove move = surgery::BlowUp{rng() % 2 ? 1 : -1};
    if (kind == 1 && f.size() >= 2) {
      const std::size_t i = rng() % f.size();
      std::size_t j = rng() % (f.size() - 1);
      if (j >= i) ++j;
      move = surgery::Slide{i, j, rng() % 2 ? 1 : -1};
    } else if (kind == 2 && !removable.empty()) {
      move = surgery::BlowDown{removable[rng() % removable.size()]};
    }
    f = surgery::apply_move(f, move);
    s.push_back(move);
  }
  return s;
}

Outcome move_invariance() {
  std::mt19937_64 rng(9009);
  std::size_t ok = 0;
  for (int t = 0; t < 200; ++t) {
    const FramedLinkMatrix f(oracle::random_symmetric(rng, 1 + rng() % 5, -5, 5));
    const auto s = random_script(rng, f, 1 + rng() % 8);
    const auto g = surgery::apply_script(f, s);
    bool good = g.linking().is_symmetric() && surgery::first_homology(f).isomorphic(surgery::first_homology(g));
    good = good && f2_kernel_size(f.linking()) == f2_kernel_size(g.linking());
    std::vector<std::vector<Int>> fa(f.size(), std::vector<Int>(f.size())), ga(g.size(), std::vector<Int>(g.size()));
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = 0; j < f.size(); ++j) fa[i][j] = f.linking()(i, j);
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j) ga[i][j] = g.linking()(i, j);
    good = good && abs(oracle::rational_det(fa)) == abs(oracle::rational_det(ga));
    if (f.size() >= 2) {
      const std::size_t i = rng() % f.size();
      const std::size_t j = (i + 1 + rng() % (f.size() - 1)) % f.size();
      const int sign = rng() % 2 ? 1 : -1;
      good = good && surgery::handle_slide(surgery::handle_slide(f, i, j, sign), i, j, -sign) == f;
    }
    ok += good;
  }
  return {ok == 200, std::to_string(ok) + "/200 scripts preserve symmetry and cokernel; slides invert"};
}

}  // namespace

int main() {
  const auto corpus = criterion1_corpus();
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
      {1, [&] { return spin_solvability(corpus); }},
      {2, evenization},
      {3, [&] { return spin_count(corpus); }},
      {4, combing_calculus},
      {5, evenness},
      {6, surface_pairing},
      {7, heegaard_system},
      {8, linking_geometry},
      {9, move_invariance},
  };
  int failures = 0;
  for (const auto& [id, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("criterion %d: %s  %s\n", id, o.pass ? "PASS" : "FAIL", o.summary.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
