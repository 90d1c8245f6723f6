#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "dlr/errors.hpp"
#include "dlr/graph.hpp"
#include "dlr/rational.hpp"

namespace dlr {

enum class Model { Local, Congest };

struct EngineConfig {
  Model model = Model::Local;
  std::uint64_t bit_budget = 0;  // 0 selects 64 * ceil(log2 n)
  bool strict_budget = false;    // throw instead of recording a violation
  std::optional<std::uint64_t> shuffle_seed;
  std::uint64_t max_rounds = std::numeric_limits<std::uint64_t>::max();
};

struct BudgetViolation {
  std::uint64_t round = 0;
  NodeId from = 0;
  NodeId to = 0;
  std::uint64_t bits = 0;
};

struct RunMetrics {
  std::uint64_t rounds = 0;
  std::uint64_t max_bits_per_edge_round = 0;
  std::uint64_t messages = 0;
  std::vector<BudgetViolation> violations;
  std::vector<std::pair<std::uint64_t, Rational>> potential;  // (round, value)
  Rational objective;
  bool oracle_assisted = false;
};

class RoundCapExceeded : public std::runtime_error {
 public:
  RoundCapExceeded(const std::string& what, RunMetrics partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const RunMetrics& partial() const { return partial_; }

 private:
  RunMetrics partial_;
};

// ceil(log2 x), at least 1.
std::uint64_t bits_for(std::uint64_t x);
std::uint64_t bits_of(const Rational& r);

template <class Msg>
struct Delivery {
  Index to;
  Index from;
  Msg msg;
};

template <class Msg>
class Outbox;

template <class Msg>
class Inbox {
 public:
  const std::vector<Delivery<Msg>>& items() const { return items_; }
  bool empty() const { return items_.empty(); }

  // fn(receiver, span of deliveries sorted by sender).
  template <class Fn>
  void for_each_receiver(Fn&& fn) const {
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    for (std::size_t i = 0; i < items_.size();) {
      std::size_t j = i;
      while (j < items_.size() && items_[j].to == items_[i].to) ++j;
      ranges.emplace_back(i, j);
      i = j;
    }
    if (rng_) std::shuffle(ranges.begin(), ranges.end(), *rng_);
    for (auto [b, e] : ranges) fn(items_[b].to, std::span<const Delivery<Msg>>(items_.data() + b, e - b));
  }

 private:
  friend class Engine;
  std::vector<Delivery<Msg>> items_;
  std::mt19937_64* rng_ = nullptr;
};

template <class Msg>
class Outbox {
 public:
  void send(Index to, Msg msg, std::uint64_t bits) { out_.push_back({to, std::move(msg), bits}); }

 private:
  friend class Engine;
  struct Item {
    Index to;
    Msg msg;
    std::uint64_t bits;
  };
  std::vector<Item> out_;
};

// Synchronous message-passing simulator over a communication graph. Every
// exchange is one round (more when a fragmentable payload exceeds the CONGEST
// budget). Messages may only travel along edges of the bound graph.
class Engine {
 public:
  Engine(const Graph& g, EngineConfig cfg = {});

  const Graph& graph() const { return *g_; }
  // Switch to another communication graph (e.g. a residual subgraph) while
  // keeping metrics, budget and the shuffle stream.
  void rebind(const Graph& g) { g_ = &g; }

  const EngineConfig& config() const { return cfg_; }
  bool congest() const { return cfg_.model == Model::Congest; }
  std::uint64_t bit_budget() const { return budget_; }
  RunMetrics& metrics() { return metrics_; }
  const RunMetrics& metrics() const { return metrics_; }

  void idle(std::uint64_t rounds);
  void record_potential(const Rational& value) { metrics_.potential.emplace_back(metrics_.rounds, value); }

  // Possibly shuffled copy of `nodes`, used as processing order.
  std::vector<Index> order(std::span<const Index> nodes);

  // Every sender transmits one message of bits(v) bits to each comm neighbour;
  // deliver(from, to, slot of `from` in the receiver's adjacency) stores it.
  template <class BitsFn, class DeliverFn>
  void broadcast(std::span<const Index> senders, BitsFn&& bits, DeliverFn&& deliver, bool fragmentable = false) {
    begin_round();
    for (Index v : order(senders)) {
      std::uint64_t b = bits(v);
      for (Slot s = g_->slot_begin(v); s < g_->slot_begin(v + 1); ++s) {
        Index u = g_->slot_target(s);
        deliver(v, u, g_->reverse_slot(s));
        load(v, u, b, fragmentable);
      }
    }
    end_round();
  }

  // Point-to-point round. send(v, outbox) fills v's outbox; the returned inbox
  // is sorted by (receiver, sender, send order).
  template <class Msg, class SendFn>
  Inbox<Msg> exchange(std::span<const Index> senders, SendFn&& send, bool fragmentable = false) {
    begin_round();
    Inbox<Msg> inbox;
    Outbox<Msg> box;
    std::vector<std::pair<Index, std::uint64_t>> per_edge;
    for (Index v : order(senders)) {
      box.out_.clear();
      send(v, box);
      per_edge.clear();
      for (auto& item : box.out_) {
        if (!g_->adjacent(v, item.to))
          throw InvariantViolation("message from " + std::to_string(g_->id(v)) + " to non-neighbour " +
                                   std::to_string(g_->id(item.to)));
        per_edge.emplace_back(item.to, item.bits);
        inbox.items_.push_back({item.to, v, std::move(item.msg)});
      }
      std::sort(per_edge.begin(), per_edge.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
      for (std::size_t i = 0; i < per_edge.size();) {
        std::size_t j = i;
        std::uint64_t sum = 0;
        while (j < per_edge.size() && per_edge[j].first == per_edge[i].first) sum += per_edge[j++].second;
        load(v, per_edge[i].first, sum, fragmentable);
        i = j;
      }
    }
    std::stable_sort(inbox.items_.begin(), inbox.items_.end(), [](const auto& x, const auto& y) {
      return x.to != y.to ? x.to < y.to : x.from < y.from;
    });
    if (rng_) inbox.rng_ = &*rng_;
    end_round();
    return inbox;
  }

 private:
  void begin_round();
  void load(Index from, Index to, std::uint64_t bits, bool fragmentable);
  void end_round();

  const Graph* g_;
  EngineConfig cfg_;
  std::uint64_t budget_;
  RunMetrics metrics_;
  std::optional<std::mt19937_64> rng_;
  std::uint64_t round_fragments_ = 1;
  std::uint64_t round_max_bits_ = 0;
};

// Combines metrics of a sub-run into an accumulator (rounds add up).
void merge_metrics(RunMetrics& into, const RunMetrics& from);

// Generic driver: each iteration the active nodes send, receivers process
// their inbox, until halt() or the engine's round cap.
template <class Msg, class ActiveFn, class SendFn, class RecvFn, class HaltFn>
void run(Engine& engine, ActiveFn&& active, SendFn&& send, RecvFn&& receive, HaltFn&& halt) {
  while (!halt()) {
    std::vector<Index> senders = active();
    auto inbox = engine.template exchange<Msg>(senders, send);
    inbox.for_each_receiver(receive);
  }
}

// One d2 round: for every endpoint v in `endpoints`, each handler of v's
// H-edges computes contribution(group) from its own knowledge; handlers other
// than v send it to v. combine(v, value) is called for every contribution,
// local or received. Costs exactly one round.
template <class Value, class ContribFn, class BitsFn, class CombineFn>
void gather_from_handlers(Engine& engine, const Multigraph& h, std::span<const Index> endpoints, ContribFn&& contribution,
                          BitsFn&& bits, CombineFn&& combine, bool fragmentable = false) {
  const auto& lay = h.layout();
  std::vector<std::pair<Index, std::uint32_t>> tasks;
  for (Index v : endpoints) {
    for (std::uint32_t gi : lay.groups_of(v)) {
      const auto& gr = lay.groups[gi];
      if (gr.handler == v)
        combine(v, contribution(gr));
      else
        tasks.emplace_back(gr.handler, gi);
    }
  }
  std::sort(tasks.begin(), tasks.end());
  std::vector<Index> senders;
  for (const auto& t : tasks)
    if (senders.empty() || senders.back() != t.first) senders.push_back(t.first);
  auto inbox = engine.exchange<Value>(
      senders,
      [&](Index x, Outbox<Value>& out) {
        auto it = std::lower_bound(tasks.begin(), tasks.end(), std::make_pair(x, std::uint32_t{0}));
        for (; it != tasks.end() && it->first == x; ++it) {
          const auto& gr = lay.groups[it->second];
          Value val = contribution(gr);
          std::uint64_t b = bits(val);
          out.send(gr.endpoint, std::move(val), b);
        }
      },
      fragmentable);
  for (auto& d : inbox.items()) combine(d.to, Value(d.msg));
}

// Per-node view of neighbours' states: slot s of the comm CSR holds what the
// owner of s last heard from slot_target(s).
template <class State>
struct NeighbourCache {
  std::vector<State> own;
  std::vector<State> heard;

  NeighbourCache() = default;
  NeighbourCache(const Graph& g, const State& init) : own(g.size(), init), heard(g.num_slots(), init) {}

  const State& self_or_heard(Index self, Slot s) const { return s == kOwnSlot ? own[self] : heard[s]; }

  // Each sender broadcasts own[v]; receivers record it.
  template <class BitsFn>
  void publish(Engine& engine, std::span<const Index> senders, BitsFn&& bits, bool fragmentable = false) {
    engine.broadcast(
        senders, bits, [&](Index from, Index, Slot slot) { heard[slot] = own[from]; }, fragmentable);
  }
};

}  // namespace dlr
