#include "dlr/sim.hpp"

namespace dlr {

std::uint64_t bits_for(std::uint64_t x) {
  if (x <= 2) return 1;
  return 64 - static_cast<std::uint64_t>(__builtin_clzll(x - 1));
}

std::uint64_t bits_of(const Rational& r) { return r.num_bits() + r.den_bits(); }

Engine::Engine(const Graph& g, EngineConfig cfg) : g_(&g), cfg_(cfg) {
  budget_ = cfg_.bit_budget ? cfg_.bit_budget : 64 * bits_for(std::max<std::uint64_t>(g.size(), 2));
  if (cfg_.shuffle_seed) rng_.emplace(*cfg_.shuffle_seed);
}

std::vector<Index> Engine::order(std::span<const Index> nodes) {
  std::vector<Index> out(nodes.begin(), nodes.end());
  if (rng_) std::shuffle(out.begin(), out.end(), *rng_);
  return out;
}

void Engine::idle(std::uint64_t rounds) {
  metrics_.rounds += rounds;
  if (metrics_.rounds > cfg_.max_rounds) throw RoundCapExceeded("round cap exceeded", metrics_);
}

void Engine::begin_round() {
  round_fragments_ = 1;
  round_max_bits_ = 0;
}

void Engine::load(Index from, Index to, std::uint64_t bits, bool fragmentable) {
  ++metrics_.messages;
  if (congest() && bits > budget_) {
    if (fragmentable) {
      round_fragments_ = std::max(round_fragments_, (bits + budget_ - 1) / budget_);
      round_max_bits_ = std::max(round_max_bits_, budget_);
      return;
    }
    BudgetViolation v{metrics_.rounds + 1, g_->id(from), g_->id(to), bits};
    if (cfg_.strict_budget)
      throw BudgetExceeded("message of " + std::to_string(bits) + " bits from " + std::to_string(v.from) + " to " +
                           std::to_string(v.to) + " exceeds budget " + std::to_string(budget_));
    metrics_.violations.push_back(v);
  }
  round_max_bits_ = std::max(round_max_bits_, bits);
}

void Engine::end_round() {
  metrics_.max_bits_per_edge_round = std::max(metrics_.max_bits_per_edge_round, round_max_bits_);
  idle(round_fragments_);
}

void merge_metrics(RunMetrics& into, const RunMetrics& from) {
  for (const auto& [r, p] : from.potential) into.potential.emplace_back(into.rounds + r, p);
  for (auto v : from.violations) {
    v.round += into.rounds;
    into.violations.push_back(v);
  }
  into.rounds += from.rounds;
  into.messages += from.messages;
  into.max_bits_per_edge_round = std::max(into.max_bits_per_edge_round, from.max_bits_per_edge_round);
  into.oracle_assisted = into.oracle_assisted || from.oracle_assisted;
}

}  // namespace dlr
