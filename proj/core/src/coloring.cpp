#include "dlr/coloring.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>

#include "dlr/errors.hpp"

namespace dlr {

namespace detail {

namespace {
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}
}  // namespace

bool is_prime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (x % p == 0) return x == p;
  }
  std::uint64_t d = x - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t y = powmod(a, d, x);
    if (y == 1 || y == x - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      y = mulmod(y, y, x);
      if (y == x - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t x) {
  if (x <= 2) return 2;
  while (!is_prime(x)) ++x;
  return x;
}

std::uint64_t ceil_root(unsigned __int128 n, unsigned k) {
  if (n <= 1) return 1;
  auto pow_at_least = [&](std::uint64_t r) {
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < k; ++i) {
      acc *= r;
      if (acc >= n) return true;
    }
    return acc >= n;
  };
  std::uint64_t lo = 1, hi = 1;
  while (!pow_at_least(hi)) hi *= 2;
  while (lo < hi) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (pow_at_least(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

void PolyField::coeffs(std::uint64_t color, std::vector<std::uint64_t>& out) const {
  out.assign(d + 1, 0);
  for (unsigned i = 0; i <= d; ++i) {
    out[i] = color % q;
    color /= q;
  }
}

std::uint64_t PolyField::eval(const std::vector<std::uint64_t>& a, std::uint64_t x) const {
  std::uint64_t r = 0;
  for (unsigned i = d + 1; i-- > 0;) r = (mulmod(r, x, q) + a[i]) % q;
  return r;
}

void PolyField::agreements(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                           std::vector<std::uint64_t>& out) const {
  out.clear();
  if (d == 1) {
    // a0 + a1 x = b0 + b1 x  =>  x = (b0 - a0) / (a1 - b1)
    if (a[1] == b[1]) return;
    std::uint64_t num = (b[0] + q - a[0]) % q;
    std::uint64_t den = (a[1] + q - b[1]) % q;
    out.push_back(mulmod(num, powmod(den, q - 2, q), q));
    return;
  }
  for (std::uint64_t x = 0; x < q && out.size() < d; ++x)
    if (eval(a, x) == eval(b, x)) out.push_back(x);
}

}  // namespace detail

namespace {

using detail::PolyField;

unsigned __int128 palette_of(const Multigraph& h, const std::vector<std::uint64_t>& color) {
  unsigned __int128 n = 1;
  for (Index v : h.nodes()) n = std::max<unsigned __int128>(n, static_cast<unsigned __int128>(color[v]) + 1);
  return n;
}

std::uint64_t saturate(unsigned __int128 x) {
  return x > std::numeric_limits<std::uint64_t>::max() ? std::numeric_limits<std::uint64_t>::max()
                                                       : static_cast<std::uint64_t>(x);
}

// Best (smallest palette) field with q >= min_q(d) and q^(d+1) >= n that
// strictly reduces the palette.
template <class MinQ>
std::optional<PolyField> choose_field(unsigned __int128 n, MinQ&& min_q) {
  std::optional<PolyField> best;
  unsigned __int128 best_pal = 0;
  constexpr unsigned __int128 kMaxQ = 0xFFFFFFFFULL;
  for (unsigned d = 1; d <= 64; ++d) {
    const unsigned __int128 mq = min_q(d), root = detail::ceil_root(n, d + 1);
    unsigned __int128 lo = std::max<unsigned __int128>({mq, root, 2});
    // min_q grows with d while the root shrinks: nothing better lies beyond.
    const bool last = mq >= root;
    if (lo <= kMaxQ && (!best || lo * lo < best_pal)) {
      std::uint64_t q = detail::next_prime(static_cast<std::uint64_t>(lo));
      unsigned __int128 pal = static_cast<unsigned __int128>(q) * q;
      if (q <= kMaxQ && pal < n && (!best || pal < best_pal)) {
        best = PolyField{q, d};
        best_pal = pal;
      }
    }
    if (last) break;
  }
  return best;
}

unsigned __int128 ceil_mul(const Rational& s, unsigned d, unsigned mult) {
  mpz_class c = (s * Rational(d) * Rational(mult)).ceil();
  if (mpz_sizeinbase(c.get_mpz_t(), 2) > 64) return static_cast<unsigned __int128>(1) << 100;
  return c.get_ui();
}

void require_valid_delta(const Rational& delta) {
  require(delta.sign() > 0 && delta <= Rational(1), "delta must lie in (0, 1]");
}

}  // namespace

ProperColoring id_coloring(const Multigraph& h) {
  ProperColoring c;
  c.color.assign(h.comm().size(), 0);
  unsigned __int128 pal = 1;
  for (Index v : h.nodes()) {
    c.color[v] = h.comm().id(v);
    pal = std::max<unsigned __int128>(pal, static_cast<unsigned __int128>(c.color[v]) + 1);
  }
  c.palette = saturate(pal);
  return c;
}

bool is_proper(const Multigraph& h, const std::vector<std::uint64_t>& color) {
  for (const auto& e : h.edges())
    if (color[e.a] == color[e.b]) return false;
  return true;
}

DefectCertificate scan_defect(const Multigraph& h, const EdgeWeights& w, const std::vector<std::uint64_t>& color,
                              const Rational& delta, DefectKind kind) {
  require(w.size() == h.num_edges(), "one weight per edge is required");
  DefectCertificate c;
  const Index n = h.comm().size();
  c.mono.assign(n, Rational());
  c.weight.assign(n, Rational());
  for (std::size_t i = 0; i < h.num_edges(); ++i) {
    const auto& e = h.edges()[i];
    c.weight[e.a] += w[i];
    c.weight[e.b] += w[i];
    c.weight_total += w[i];
    if (color[e.a] == color[e.b]) {
      c.mono[e.a] += w[i];
      c.mono[e.b] += w[i];
      c.mono_total += w[i];
    }
  }
  if (kind == DefectKind::Average) {
    c.ok = c.mono_total <= delta * c.weight_total;
  } else {
    c.ok = true;
    for (Index v : h.nodes())
      if (c.mono[v] > delta * c.weight[v]) c.ok = false;
  }
  return c;
}

namespace {

// scan_defect(...).ok without materialising the certificate.
bool defect_within(const Multigraph& h, const EdgeWeights& w, const std::vector<std::uint64_t>& color,
                   const Rational& delta, DefectKind kind) {
  if (kind == DefectKind::PerNode) return scan_defect(h, w, color, delta, kind).ok;
  Rational mono, total;
  for (std::size_t i = 0; i < h.num_edges(); ++i) {
    if (w[i].is_zero()) continue;
    total += w[i];
    const auto& e = h.edges()[i];
    if (color[e.a] == color[e.b]) mono += w[i];
  }
  return mono <= delta * total;
}

}  // namespace

ProperColoring linial_coloring(Engine& engine, const Multigraph& h, const ProperColoring& initial) {
  require(initial.color.size() == h.comm().size(), "initial coloring has the wrong size");
  require(is_proper(h, initial.color), "initial coloring is not proper");
  const auto& lay = h.layout();
  NeighbourCache<std::uint64_t> cache(h.comm(), 0);
  for (Index v : h.nodes()) cache.own[v] = initial.color[v];
  unsigned __int128 n = palette_of(h, initial.color);
  const std::uint64_t delta_h = h.max_degree();
  std::vector<std::vector<std::uint64_t>> forbidden(h.comm().size());
  while (true) {
    auto field = choose_field(n, [&](unsigned d) { return static_cast<unsigned __int128>(d) * delta_h + 1; });
    if (!field) break;
    const PolyField f = *field;
    cache.publish(engine, h.nodes(), [&](Index) { return bits_for(saturate(n)); });
    for (Index v : h.nodes()) forbidden[v].clear();
    std::vector<std::uint64_t> ca, cb, roots;
    gather_from_handlers<std::vector<std::uint64_t>>(
        engine, h, h.nodes(),
        [&](const HandlerGroup& gr) {
          std::vector<std::uint64_t> out;
          for (std::uint32_t i = gr.begin; i < gr.end; ++i) {
            const auto& he = lay.handled[i];
            f.coeffs(cache.self_or_heard(gr.endpoint, he.self_slot), ca);
            f.coeffs(cache.heard[he.other_slot], cb);
            f.agreements(ca, cb, roots);
            out.insert(out.end(), roots.begin(), roots.end());
          }
          std::sort(out.begin(), out.end());
          out.erase(std::unique(out.begin(), out.end()), out.end());
          return out;
        },
        [&](const std::vector<std::uint64_t>& l) { return std::max<std::uint64_t>(1, l.size() * bits_for(f.q)); },
        [&](Index v, std::vector<std::uint64_t>&& l) { forbidden[v].insert(forbidden[v].end(), l.begin(), l.end()); },
        true);
    for (Index v : h.nodes()) {
      auto& fb = forbidden[v];
      std::sort(fb.begin(), fb.end());
      fb.erase(std::unique(fb.begin(), fb.end()), fb.end());
      std::uint64_t x = 0;
      for (std::uint64_t y : fb) {
        if (y != x) break;
        ++x;
      }
      ensure(x < f.q, "no conflict-free evaluation point");
      f.coeffs(cache.own[v], ca);
      cache.own[v] = x * f.q + f.eval(ca, x);
    }
    n = static_cast<unsigned __int128>(f.q) * f.q;
  }
  ProperColoring out;
  out.color.assign(h.comm().size(), 0);
  for (Index v : h.nodes()) out.color[v] = cache.own[v];
  out.palette = saturate(palette_of(h, out.color));
  ensure(is_proper(h, out.color), "color reduction produced a conflict");
  return out;
}

ProperColoring linial_coloring(Engine& engine, const Multigraph& h) {
  return linial_coloring(engine, h, id_coloring(h));
}

ProperColoring three_color_paths_cycles(Engine& engine, const Multigraph& h, const ProperColoring& initial) {
  require(h.max_degree() <= 2, "three-coloring needs maximum degree 2");
  ProperColoring c = linial_coloring(engine, h, initial);
  const auto& lay = h.layout();
  NeighbourCache<std::uint64_t> cache(h.comm(), 0);
  for (Index v : h.nodes()) cache.own[v] = c.color[v];
  std::uint64_t pal = saturate(palette_of(h, c.color));
  cache.publish(engine, h.nodes(), [&](Index) { return bits_for(pal); });
  std::vector<std::uint8_t> used(h.comm().size(), 0);
  for (std::uint64_t col = pal; col-- > 3;) {
    std::vector<Index> members;
    for (Index v : h.nodes())
      if (cache.own[v] == col) members.push_back(v);
    if (members.empty()) {
      engine.idle(2);
      continue;
    }
    for (Index v : members) used[v] = 0;
    gather_from_handlers<std::uint8_t>(
        engine, h, members,
        [&](const HandlerGroup& gr) {
          std::uint8_t mask = 0;
          for (std::uint32_t i = gr.begin; i < gr.end; ++i) {
            std::uint64_t oc = cache.heard[lay.handled[i].other_slot];
            if (oc < 3) mask |= static_cast<std::uint8_t>(1u << oc);
          }
          return mask;
        },
        [](std::uint8_t) { return std::uint64_t{3}; }, [&](Index v, std::uint8_t m) { used[v] |= m; });
    for (Index v : members) {
      std::uint64_t x = 0;
      while (used[v] & (1u << x)) ++x;
      ensure(x < 3, "no free color among three");
      cache.own[v] = x;
    }
    cache.publish(engine, members, [](Index) { return std::uint64_t{2}; });
  }
  ProperColoring out;
  out.color.assign(h.comm().size(), 0);
  for (Index v : h.nodes()) out.color[v] = cache.own[v];
  out.palette = h.nodes().empty() ? 0 : 3;
  ensure(is_proper(h, out.color), "three-coloring produced a conflict");
  return out;
}

namespace {

// s_0 = 2/delta, then s_i = 2^(t-i+2)/delta for i = 1..t; sum of 1/s_i < delta.
std::vector<Rational> stage1_schedule(const Rational& delta, unsigned t) {
  std::vector<Rational> s{Rational(2) / delta};
  for (unsigned i = 1; i <= t; ++i) s.push_back(Rational::pow2(static_cast<long>(t - i + 2)) / delta);
  return s;
}

unsigned __int128 simulate_palette(unsigned __int128 n, const std::vector<Rational>& sched, unsigned mult) {
  for (const auto& s : sched) {
    auto f = choose_field(n, [&](unsigned d) { return ceil_mul(s, d, mult); });
    if (f) n = static_cast<unsigned __int128>(f->q) * f->q;
  }
  return n;
}

// Number of halving steps t minimising the stage-1 palette; memoised per thread.
unsigned best_stage1_length(unsigned __int128 n, const Rational& delta, unsigned mult) {
  using Key = std::tuple<std::uint64_t, std::uint64_t, std::string, unsigned>;
  thread_local std::map<Key, unsigned> memo;
  Key key{static_cast<std::uint64_t>(n >> 64), static_cast<std::uint64_t>(n), delta.str(), mult};
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  unsigned best_t = 0;
  unsigned __int128 best_pal = 0;
  for (unsigned t = 0; t <= 40; ++t) {
    unsigned __int128 p = simulate_palette(n, stage1_schedule(delta, t), mult);
    if (t == 0 || p < best_pal) {
      best_pal = p;
      best_t = t;
    }
  }
  if (memo.size() > 4096) memo.clear();
  memo.emplace(key, best_t);
  return best_t;
}

using Candidates = std::vector<std::pair<std::uint64_t, Rational>>;

}  // namespace

DefectiveColoring weighted_defective_coloring(Engine& engine, const Multigraph& h, const EdgeWeights& w,
                                              const Rational& delta, const ProperColoring& initial, Aggregation agg) {
  require_valid_delta(delta);
  require(w.size() == h.num_edges(), "one weight per edge is required");
  for (const auto& x : w) require(x.sign() >= 0, "edge weights must be non-negative");
  require(initial.color.size() == h.comm().size(), "initial coloring has the wrong size");
  require(is_proper(h, initial.color), "initial coloring is not proper");
  const unsigned mult = agg == Aggregation::Factor2 ? 2 : 1;
  const auto& lay = h.layout();
  unsigned __int128 n = palette_of(h, initial.color);

  const unsigned best_t = best_stage1_length(n, delta, mult);

  NeighbourCache<std::uint64_t> cache(h.comm(), 0);
  for (Index v : h.nodes()) cache.own[v] = initial.color[v];
  std::vector<Candidates> cand(h.comm().size());
  for (const auto& s : stage1_schedule(delta, best_t)) {
    auto field = choose_field(n, [&](unsigned d) { return ceil_mul(s, d, mult); });
    if (!field) continue;
    const PolyField f = *field;
    cache.publish(engine, h.nodes(), [&](Index) { return bits_for(saturate(n)); });
    for (Index v : h.nodes()) cand[v].clear();
    std::vector<std::uint64_t> ca, cb, roots;
    gather_from_handlers<Candidates>(
        engine, h, h.nodes(),
        [&](const HandlerGroup& gr) {
          Candidates out;
          for (std::uint32_t i = gr.begin; i < gr.end; ++i) {
            const auto& he = lay.handled[i];
            if (w[he.edge].is_zero()) continue;
            std::uint64_t mine = cache.self_or_heard(gr.endpoint, he.self_slot);
            std::uint64_t theirs = cache.heard[he.other_slot];
            if (mine == theirs) continue;
            f.coeffs(mine, ca);
            f.coeffs(theirs, cb);
            f.agreements(ca, cb, roots);
            for (auto x : roots) out.emplace_back(x, w[he.edge]);
          }
          std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
          Candidates merged;
          for (auto& [x, wt] : out) {
            if (!merged.empty() && merged.back().first == x)
              merged.back().second += wt;
            else
              merged.emplace_back(x, wt);
          }
          if (agg == Aggregation::Factor2 && gr.handler != gr.endpoint)
            for (auto& m : merged) m.second = m.second.floor_pow2();
          return merged;
        },
        [&](const Candidates& l) {
          std::uint64_t b = 0;
          for (const auto& [x, wt] : l) b += bits_for(f.q) + bits_of(wt);
          return std::max<std::uint64_t>(b, 1);
        },
        [&](Index v, Candidates&& l) { cand[v].insert(cand[v].end(), l.begin(), l.end()); }, true);
    for (Index v : h.nodes()) {
      auto& l = cand[v];
      std::sort(l.begin(), l.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      std::uint64_t best_x = 0;
      Rational best_w;
      bool have = false;
      // smallest x with no conflict at all
      std::uint64_t free_x = 0;
      for (std::size_t i = 0; i < l.size(); ++i) {
        if (l[i].first == free_x)
          ++free_x;
        else if (l[i].first > free_x)
          break;
      }
      if (free_x < f.q) {
        best_x = free_x;
        have = true;
      }
      for (std::size_t i = 0; i < l.size();) {
        std::size_t j = i;
        Rational sum;
        while (j < l.size() && l[j].first == l[i].first) sum += l[j++].second;
        if (!have || sum < best_w || (sum == best_w && l[i].first < best_x)) {
          best_x = l[i].first;
          best_w = sum;
          have = true;
        }
        i = j;
      }
      f.coeffs(cache.own[v], ca);
      cache.own[v] = best_x * f.q + f.eval(ca, best_x);
    }
    n = static_cast<unsigned __int128>(f.q) * f.q;
  }
  DefectiveColoring out;
  out.color.assign(h.comm().size(), 0);
  for (Index v : h.nodes()) out.color[v] = cache.own[v];
  out.palette = saturate(palette_of(h, out.color));
  out.stage1_palette = out.palette;
  out.kind = DefectKind::PerNode;
  out.delta = delta;
  ensure(scan_defect(h, w, out.color, delta, DefectKind::PerNode).ok, "per-node defect bound violated");
  return out;
}

namespace {
struct Stage2State {
  std::uint64_t c1 = 0;
  std::uint64_t z = 0;
  bool committed = false;
};
}  // namespace

DefectiveColoring average_defective_coloring(Engine& engine, const Multigraph& h, const EdgeWeights& w,
                                             const Rational& delta, const ProperColoring& initial, Aggregation agg) {
  require_valid_delta(delta);
  const bool f2 = agg == Aggregation::Factor2;
  DefectiveColoring st1 = weighted_defective_coloring(engine, h, w, delta / Rational(2), initial, agg);
  const auto& lay = h.layout();
  const std::uint64_t c1 = std::max<std::uint64_t>(st1.palette, 1);

  std::uint64_t p = detail::next_prime(
      static_cast<std::uint64_t>(mpz_class((Rational(f2 ? 32 : 8) / delta).ceil()).get_ui()));
  while (static_cast<unsigned __int128>(p) * (p - 1) < c1) p = detail::next_prime(p + 1);

  const Index n = h.comm().size();
  NeighbourCache<Stage2State> cache(h.comm(), Stage2State{});
  for (Index v : h.nodes()) cache.own[v].c1 = st1.color[v];
  const std::uint64_t start_rounds = engine.metrics().rounds;
  cache.publish(engine, h.nodes(), [&](Index) { return bits_for(c1); });

  // Total incident weight (floored per manager in factor-2 mode).
  std::vector<Rational> total(n);
  gather_from_handlers<Rational>(
      engine, h, h.nodes(),
      [&](const HandlerGroup& gr) {
        Rational s;
        for (std::uint32_t i = gr.begin; i < gr.end; ++i) s += w[lay.handled[i].edge];
        if (f2 && gr.handler != gr.endpoint && s.sign() > 0) s = s.floor_pow2();
        return s;
      },
      [](const Rational& r) { return bits_of(r); }, [&](Index v, Rational&& r) { total[v] += r; });

  std::vector<Index> pending(h.nodes());
  std::vector<Index> announce;
  std::vector<Rational> conflict(n);
  const Rational threshold = f2 ? delta / Rational(8) : delta / Rational(4);
  std::uint64_t steps = 0;
  for (std::uint64_t j = 0;; ++j) {
    for (Index v : pending) {
      std::uint64_t a = 1 + cache.own[v].c1 / p;
      std::uint64_t b = cache.own[v].c1 % p;
      cache.own[v].z = static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * j + b) % p);
    }
    std::vector<Index> senders(pending);
    senders.insert(senders.end(), announce.begin(), announce.end());
    std::sort(senders.begin(), senders.end());
    cache.publish(engine, senders, [&](Index) { return bits_for(p) + 1; });
    announce.clear();
    if (pending.empty()) break;
    ensure(j < p, "a node failed to commit within p steps");
    steps = j + 1;
    for (Index v : pending) conflict[v] = Rational();
    gather_from_handlers<Rational>(
        engine, h, pending,
        [&](const HandlerGroup& gr) {
          Rational s;
          for (std::uint32_t i = gr.begin; i < gr.end; ++i) {
            const auto& he = lay.handled[i];
            const Stage2State& me = cache.self_or_heard(gr.endpoint, he.self_slot);
            const Stage2State& other = cache.heard[he.other_slot];
            if (me.c1 == other.c1) continue;
            if (other.z == me.z) s += w[he.edge];
          }
          if (f2 && gr.handler != gr.endpoint && s.sign() > 0) s = s.floor_pow2();
          return s;
        },
        [](const Rational& r) { return bits_of(r); }, [&](Index v, Rational&& r) { conflict[v] += r; });
    std::vector<Index> still;
    for (Index v : pending) {
      if (conflict[v] <= threshold * total[v]) {
        cache.own[v].committed = true;
        announce.push_back(v);
      } else {
        still.push_back(v);
      }
    }
    pending.swap(still);
  }
  const std::uint64_t planned = 2 + 2 * p + 1;
  const std::uint64_t used = engine.metrics().rounds - start_rounds;
  if (used < planned) engine.idle(planned - used);

  DefectiveColoring out;
  out.color.assign(n, 0);
  for (Index v : h.nodes()) out.color[v] = cache.own[v].z;
  out.palette = p;
  out.kind = DefectKind::Average;
  out.delta = delta;
  out.stage1_palette = st1.palette;
  out.stage2_steps = steps;
  ensure(defect_within(h, w, out.color, delta, DefectKind::Average), "average defect bound violated");
  return out;
}

DefectiveColoring greedy_defective_oracle(const Multigraph& h, const EdgeWeights& w, const Rational& delta) {
  require_valid_delta(delta);
  require(w.size() == h.num_edges(), "one weight per edge is required");
  const std::uint64_t k = std::max<std::uint64_t>(1, mpz_class((Rational(1) / delta).ceil()).get_ui());
  const Index n = h.comm().size();
  std::vector<std::uint64_t> color(n, 0);
  std::vector<char> done(n, 0);
  std::vector<Rational> load(k);
  for (Index v : h.nodes()) {
    std::fill(load.begin(), load.end(), Rational());
    for (Index e : h.incident(v)) {
      Index u = h.other(e, v);
      if (done[u]) load[color[u]] += w[e];
    }
    std::uint64_t best = 0;
    for (std::uint64_t c = 1; c < k; ++c)
      if (load[c] < load[best]) best = c;
    color[v] = best;
    done[v] = 1;
  }
  DefectiveColoring out;
  out.color = std::move(color);
  out.palette = k;
  out.kind = DefectKind::Average;
  out.delta = delta;
  out.stage1_palette = k;
  ensure(defect_within(h, w, out.color, delta, DefectKind::Average), "greedy coloring exceeds its defect bound");
  return out;
}

}  // namespace dlr
