// Evenization of framed links.
//
// Guided phase. Blowing down a component of framing +-1 that is unlinked from
// the rest splits the lattice (Z^n, Q) as <v> + v^perp with v.v = +-1. If
// orthogonal vectors v_1..v_r of norm +-1 have a characteristic sum s
// (Q s = diag Q mod 2), then for w in their complement w.w = s.w = 0 mod 2,
// so the complement is even. The phase stabilizes by at most
// max_stabilizations unknots, enumerates norm +-1 vectors in a small box,
// looks for such an orthogonal family (smallest r first), and realizes it:
// slides reduce each v to a basis vector (Euclid on its coordinates), more
// slides clear its linking numbers, and a blow-down removes it.
//
// Fallback phase. Iterative deepening over {blow-down, slide, blow-up},
// bounded by depth, link size, stabilizations and a node budget.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>

#include "spinkit/simd/kernels.hpp"
#include "spinkit/surgery.hpp"

namespace spinkit::surgery {

namespace {

using Vec = std::vector<std::int64_t>;

constexpr std::int64_t kKernelGramBound = std::int64_t{1} << 20;
constexpr std::size_t kMaxCandidates = std::size_t{1} << 22;

bool all_even(const FramedLinkMatrix& f) { return handle_parity(f).all_even; }

std::size_t odd_count(const FramedLinkMatrix& f) { return handle_parity(f).parity.popcount(); }

std::vector<std::vector<int>> stabilization_patterns(std::size_t max_stabilizations) {
  std::vector<std::vector<int>> out;
  for (std::size_t k = 0; k <= max_stabilizations; ++k)
    for (std::size_t plus = k + 1; plus-- > 0;) {
      std::vector<int> p(plus, 1);
      p.insert(p.end(), k - plus, -1);
      out.push_back(p);
    }
  return out;
}

/// Replays moves on a link while tracking target vectors in the current basis.
class Realizer {
 public:
  Realizer(FramedLinkMatrix link, MoveScript script) : link_(std::move(link)), script_(std::move(script)) {}

  void add_target(std::vector<Int> coords) { targets_.push_back(std::move(coords)); }

  // b_i <- b_i + s b_j, so target coordinate j absorbs -s times coordinate i.
  void slide(std::size_t i, std::size_t j, int s) {
    link_ = handle_slide(link_, i, j, s);
    script_.push_back(Slide{i, j, s});
    for (auto& t : targets_) t[j] -= s * t[i];
  }

  /// Turns the front target into a basis vector, unlinks it and blows it down.
  void split_front() {
    auto& a = targets_.front();
    const std::size_t n = a.size();
    while (true) {
      std::optional<std::size_t> piv;
      std::size_t nonzero = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (a[k] == 0) continue;
        ++nonzero;
        if (!piv || abs(a[k]) < abs(a[*piv])) piv = k;
      }
      if (nonzero <= 1) break;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == *piv || a[k] == 0) continue;
        Int q = a[k] / a[*piv];  // truncating, leaves |a[k]| < |a[piv]|
        const int s = q > 0 ? 1 : -1;
        for (Int c = abs(q); c > 0; --c) slide(*piv, k, s);
      }
    }
    std::size_t k = 0;
    while (a[k] == 0) ++k;
    if (abs(a[k]) != 1) throw std::logic_error("evenize: split vector is not primitive");
    const Int self = link_.framing(k);
    if (abs(self) != 1) throw std::logic_error("evenize: split vector does not have norm +-1");
    const int unit = self > 0 ? 1 : -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      Int lambda = link_.linking()(i, k);
      const int s = (lambda > 0 ? -1 : 1) * unit;
      for (Int c = abs(lambda); c > 0; --c) slide(i, k, s);
    }
    link_ = blow_down(link_, k);
    script_.push_back(BlowDown{k});
    targets_.erase(targets_.begin());
    for (auto& t : targets_) {
      if (t[k] != 0) throw std::logic_error("evenize: split vectors are not orthogonal");
      t.erase(t.begin() + static_cast<long>(k));
    }
  }

  bool done() const { return targets_.empty(); }
  const FramedLinkMatrix& link() const { return link_; }
  const MoveScript& script() const { return script_; }

 private:
  FramedLinkMatrix link_;
  MoveScript script_;
  std::vector<std::vector<Int>> targets_;
};

struct UnitFamilySearch {
  std::size_t dim;
  std::vector<std::uint64_t> qmask;  // rows of Q mod 2
  std::uint64_t diag_mask = 0;
  std::vector<Vec> units;
  std::vector<std::uint64_t> parity;  // unit mod 2
  std::vector<std::vector<std::uint64_t>> orth;  // adjacency bitsets
  std::size_t nodes = 0;
  std::size_t budget;
  std::vector<std::size_t> chosen;

  bool characteristic(std::uint64_t s) const {
    for (std::size_t i = 0; i < dim; ++i)
      if (((std::popcount(qmask[i] & s) & 1) != 0) != (((diag_mask >> i) & 1) != 0)) return false;
    return true;
  }

  bool extend(std::size_t start, std::size_t remaining, std::uint64_t sum,
              const std::vector<std::uint64_t>& allowed) {
    if (++nodes > budget) return false;
    if (remaining == 0) return characteristic(sum);
    for (std::size_t u = start; u < units.size(); ++u) {
      if (!((allowed[u >> 6] >> (u & 63)) & 1U)) continue;
      std::vector<std::uint64_t> next(allowed.size());
      for (std::size_t w = 0; w < allowed.size(); ++w) next[w] = allowed[w] & orth[u][w];
      chosen.push_back(u);
      if (extend(u + 1, remaining - 1, sum ^ parity[u], next)) return true;
      chosen.pop_back();
      if (nodes > budget) return false;
    }
    return false;
  }
};

std::optional<Vec> to_int64(const IntMatrix& q) {
  Vec out;
  out.reserve(q.entries().size());
  for (const Int& x : q.entries()) {
    if (abs(x) >= kKernelGramBound) return std::nullopt;
    out.push_back(x.get_si());
  }
  return out;
}

/// Norm +-1 vectors of the form with coordinates in [-b, b], first nonzero
/// coordinate positive, sorted by l1 norm (stable in odometer order).
std::vector<Vec> enumerate_units(const Vec& gram, std::size_t dim, std::int64_t bound) {
  const std::int64_t width = 2 * bound + 1;
  std::size_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    if (total > kMaxCandidates / static_cast<std::size_t>(width)) return {};
    total *= static_cast<std::size_t>(width);
  }
  const auto& table = simd::active_kernels();
  constexpr std::size_t kBatch = 4096;
  std::vector<Vec> units;
  Vec coords(dim * kBatch);
  std::vector<Vec> pending;
  std::vector<std::int64_t> values(kBatch);
  Vec cur(dim, -bound);

  auto flush = [&]() {
    if (pending.empty()) return;
    const std::size_t count = pending.size();
    Vec soa(dim * count);
    for (std::size_t c = 0; c < count; ++c)
      for (std::size_t i = 0; i < dim; ++i) soa[i * count + c] = pending[c][i];
    std::span<std::int64_t> out(values.data(), count);
    simd::evaluate_quadratic_forms(table, gram, dim, soa, out);
    for (std::size_t c = 0; c < count; ++c)
      if (out[c] == 1 || out[c] == -1) units.push_back(pending[c]);
    pending.clear();
  };

  for (std::size_t n = 0; n < total; ++n) {
    auto first = std::find_if(cur.begin(), cur.end(), [](std::int64_t x) { return x != 0; });
    if (first != cur.end() && *first > 0) {
      pending.push_back(cur);
      if (pending.size() == kBatch) flush();
    }
    for (std::size_t i = dim; i-- > 0;) {
      if (cur[i] < bound) {
        ++cur[i];
        break;
      }
      cur[i] = -bound;
    }
  }
  flush();
  auto l1 = [](const Vec& v) {
    std::int64_t s = 0;
    for (auto x : v) s += x < 0 ? -x : x;
    return s;
  };
  std::stable_sort(units.begin(), units.end(), [&](const Vec& a, const Vec& b) { return l1(a) < l1(b); });
  return units;
}

std::optional<EvenizeResult> guided(const FramedLinkMatrix& f, const EvenizeOptions& opts) {
  for (const auto& pattern : stabilization_patterns(opts.max_stabilizations)) {
    FramedLinkMatrix start = f;
    MoveScript prefix;
    for (int s : pattern) {
      start = blow_up(start, s);
      prefix.push_back(BlowUp{s});
    }
    const std::size_t dim = start.size();
    if (dim == 0 || dim > 64) continue;
    const auto gram = to_int64(start.linking());
    if (!gram) return std::nullopt;

    UnitFamilySearch search{dim, std::vector<std::uint64_t>(dim, 0), 0, {}, {}, {}, 0, opts.guided_node_budget, {}};
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j)
        if ((*gram)[i * dim + j] & 1) search.qmask[i] |= std::uint64_t{1} << j;
      if ((*gram)[i * dim + i] & 1) search.diag_mask |= std::uint64_t{1} << i;
    }
    search.units = enumerate_units(*gram, dim, opts.coordinate_bound);
    const std::size_t k = search.units.size();
    if (k == 0) continue;
    const std::size_t words = (k + 63) / 64;
    std::vector<Vec> qv(k, Vec(dim, 0));
    for (std::size_t u = 0; u < k; ++u) {
      std::uint64_t p = 0;
      for (std::size_t i = 0; i < dim; ++i) {
        if (search.units[u][i] & 1) p |= std::uint64_t{1} << i;
        for (std::size_t j = 0; j < dim; ++j) qv[u][i] += (*gram)[i * dim + j] * search.units[u][j];
      }
      search.parity.push_back(p);
    }
    search.orth.assign(k, std::vector<std::uint64_t>(words, 0));
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b) {
        std::int64_t dot = 0;
        for (std::size_t i = 0; i < dim; ++i) dot += search.units[a][i] * qv[b][i];
        if (dot == 0) {
          search.orth[a][b >> 6] |= std::uint64_t{1} << (b & 63);
          search.orth[b][a >> 6] |= std::uint64_t{1} << (a & 63);
        }
      }

    std::vector<std::uint64_t> all(words, ~std::uint64_t{0});
    if (k % 64) all.back() = (std::uint64_t{1} << (k % 64)) - 1;
    bool found = false;
    for (std::size_t r = 1; r <= dim && !found; ++r) {
      search.chosen.clear();
      found = search.extend(0, r, 0, all);
      if (search.nodes > search.budget) break;
    }
    if (!found) continue;

    Realizer real(start, prefix);
    for (std::size_t u : search.chosen) {
      std::vector<Int> coords;
      for (auto x : search.units[u]) coords.emplace_back(static_cast<long>(x));
      real.add_target(std::move(coords));
    }
    while (!real.done()) real.split_front();
    if (!all_even(real.link())) throw std::logic_error("evenize: guided result is not even");
    return EvenizeResult{true, EvenizePhase::Guided, real.link(), real.script(),
                         "split " + std::to_string(search.chosen.size()) + " unit vector(s) after " +
                             std::to_string(pattern.size()) + " stabilization(s)"};
  }
  return std::nullopt;
}

class FallbackSearch {
 public:
  explicit FallbackSearch(const EvenizeOptions& opts) : opts_(opts) {}

  std::optional<MoveScript> run(const FramedLinkMatrix& f) {
    best_script_.clear();
    best_odd_ = odd_count(f);
    for (std::size_t depth = 1; depth <= opts_.max_depth; ++depth) {
      seen_.clear();
      MoveScript path;
      if (dfs(f, depth, 0, path)) return path;
      if (nodes_ > opts_.search_node_budget) break;
    }
    return std::nullopt;
  }

  const MoveScript& best_script() const { return best_script_; }
  std::size_t nodes() const { return nodes_; }

 private:
  bool dfs(const FramedLinkMatrix& f, std::size_t depth_left, std::size_t stabs, MoveScript& path) {
    if (++nodes_ > opts_.search_node_budget) return false;
    const std::size_t odd = odd_count(f);
    if (odd == 0) return true;
    if (odd < best_odd_ || (odd == best_odd_ && path.size() < best_script_.size())) {
      best_odd_ = odd;
      best_script_ = path;
    }
    if (depth_left == 0) return false;
    if (auto key = to_int64(f.linking())) {
      key->push_back(static_cast<std::int64_t>(f.size()));
      key->push_back(static_cast<std::int64_t>(stabs));
      auto [it, inserted] = seen_.emplace(*key, depth_left);
      if (!inserted) {
        if (it->second >= depth_left) return false;
        it->second = depth_left;
      }
    }

    auto try_move = [&](const KirbyMove& m, std::size_t next_stabs) {
      FramedLinkMatrix g = apply_move(f, m);
      path.push_back(m);
      if (dfs(g, depth_left - 1, next_stabs, path)) return true;
      path.pop_back();
      return false;
    };

    const IntMatrix& q = f.linking();
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (abs(q(i, i)) != 1) continue;
      bool isolated = true;
      for (std::size_t j = 0; j < f.size() && isolated; ++j) isolated = (j == i || q(i, j) == 0);
      if (isolated && try_move(BlowDown{i}, stabs)) return true;
      if (nodes_ > opts_.search_node_budget) return false;
    }
    const Slide* last = path.empty() ? nullptr : std::get_if<Slide>(&path.back());
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = 0; j < f.size(); ++j) {
        if (i == j) continue;
        for (int s : {1, -1}) {
          if (last && last->i == i && last->j == j && last->sign == -s) continue;
          if (try_move(Slide{i, j, s}, stabs)) return true;
          if (nodes_ > opts_.search_node_budget) return false;
        }
      }
    if (stabs < opts_.max_stabilizations && f.size() < opts_.max_search_size)
      for (int s : {1, -1}) {
        if (try_move(BlowUp{s}, stabs + 1)) return true;
        if (nodes_ > opts_.search_node_budget) return false;
      }
    return false;
  }

  const EvenizeOptions& opts_;
  std::size_t nodes_ = 0;
  std::size_t best_odd_ = std::numeric_limits<std::size_t>::max();
  MoveScript best_script_;
  std::map<Vec, std::size_t> seen_;
};

EvenizeResult verified(const FramedLinkMatrix& f, EvenizeResult r) {
  if (!(apply_script(f, r.script) == r.result)) throw std::logic_error("evenize: script does not replay to result");
  if (!all_even(r.result)) throw std::logic_error("evenize: result has an odd framing");
  if (!first_homology(f).isomorphic(first_homology(r.result)))
    throw std::logic_error("evenize: result changes the first homology");
  return r;
}

}  // namespace

EvenizeResult evenize(const FramedLinkMatrix& f, const EvenizeOptions& opts) {
  if (all_even(f)) return EvenizeResult{true, EvenizePhase::AlreadyEven, f, {}, "all framings already even"};

  if (auto g = guided(f, opts)) return verified(f, std::move(*g));

  FallbackSearch search(opts);
  if (f.size() <= opts.max_search_size) {
    if (auto script = search.run(f))
      return verified(f, EvenizeResult{true, EvenizePhase::Search, apply_script(f, *script), *script,
                                       "search visited " + std::to_string(search.nodes()) + " nodes"});
  }
  const MoveScript& partial = search.best_script();
  return EvenizeResult{false, EvenizePhase::Exhausted, apply_script(f, partial), partial,
                       "budget exhausted (depth " + std::to_string(opts.max_depth) + ", " +
                           std::to_string(opts.max_stabilizations) + " stabilizations, " +
                           std::to_string(search.nodes()) + " search nodes); partial script lowers odd framings to " +
                           std::to_string(odd_count(apply_script(f, partial)))};
}

}  // namespace spinkit::surgery
